"""Quaternions, the complexified Heisenberg group, and its Weyl representation.

Quaternions are stored as pairs of complex numbers alpha + beta j.  The
group elements are upper-triangular triples X(a, b, t) with the cocycle
<a|b'> in the central coordinate.  The representation returned by
``ws_rep`` sends X(a, b, t) to exp(t) times (multiply by exp<x|b>) after
(shift by a); this is the composition for which the group cocycle matches
the shift/multiplication commutation factor exactly, for complex vectors
included.  The dressed form exp(t + <a|b>/2) (multiply, index a) after
(shift, index b) fails the representation property by a non-vanishing
factor; ``ws_rep_displayed`` keeps it available so suites can report its
residual alongside the working form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import polycalc as pc
from .fock_core import EVector, TruncationSpec
from .hardy_chi import HardyChiFunction, f_transform, f_transform_inverse
from .hardy_w import HardyWFunction, shift


# -- quaternions ---------------------------------------------------------------

@dataclass(frozen=True)
class Quaternion:
    """Quaternion alpha + beta j as an ordered pair of complex numbers."""

    alpha: complex
    beta: complex = 0j

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        # j z = conj(z) j for complex z, hence the conjugations below
        a, b = complex(self.alpha), complex(self.beta)
        c, d = complex(other.alpha), complex(other.beta)
        return Quaternion(a * c - b * d.conjugate(), a * d + b * c.conjugate())

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.alpha - other.alpha, self.beta - other.beta)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.alpha, -self.beta)

    def imag_j(self) -> complex:
        """The j-component (second complex coordinate)."""
        return complex(self.beta)

    def as_reals(self) -> tuple[float, float, float, float]:
        a, b = complex(self.alpha), complex(self.beta)
        return (a.real, a.imag, b.real, b.imag)

    def isclose(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return (
            abs(self.alpha - other.alpha) <= tol and abs(self.beta - other.beta) <= tol
        )


QUAT_ONE = Quaternion(1)
QUAT_I = Quaternion(1j)
QUAT_J = Quaternion(0, 1)
QUAT_K = Quaternion(0, 1j)


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    return p * q


@dataclass(frozen=True)
class QuaternionVector:
    """Pair p = a + b j of one-particle vectors."""

    a: EVector
    b: EVector

    def __add__(self, other: "QuaternionVector") -> "QuaternionVector":
        return QuaternionVector(self.a + other.a, self.b + other.b)


def eh_inner(p: QuaternionVector, q: QuaternionVector) -> Quaternion:
    """Quaternion-valued pairing <a+bj | a'+b'j>; its j-part is antisymmetric
    on real vectors and vanishes on the diagonal."""
    if p.a.dim != q.a.dim:
        raise ValueError("dimension mismatch")
    alpha = p.a.inner(q.a) + p.b.inner(q.b)
    beta = q.a.inner(p.b) - p.a.inner(q.b)
    return Quaternion(complex(alpha), complex(beta))


def eh_im(p: QuaternionVector, q: QuaternionVector) -> complex:
    return eh_inner(p, q).imag_j()


# -- the group -----------------------------------------------------------------

@dataclass(frozen=True)
class HeisenbergElement:
    """Upper-triangular triple X(a, b, t)."""

    a: EVector
    b: EVector
    t: complex = 0j

    @classmethod
    def identity(cls, dim: int) -> "HeisenbergElement":
        return cls(EVector.zero(dim), EVector.zero(dim), 0j)


def heis_mul(x: HeisenbergElement, y: HeisenbergElement) -> HeisenbergElement:
    return HeisenbergElement(
        x.a + y.a, x.b + y.b, x.t + y.t + complex(x.a.inner(y.b))
    )


def heis_inv(x: HeisenbergElement) -> HeisenbergElement:
    return HeisenbergElement(
        x.a.scale(-1), x.b.scale(-1), -x.t + complex(x.a.inner(x.b))
    )


def g_iso(x: HeisenbergElement) -> tuple[complex, QuaternionVector]:
    """Map into the auxiliary central extension of the quaternion vectors."""
    return (
        complex(x.t) - 0.5 * complex(x.a.inner(x.b)),
        QuaternionVector(x.a, x.b),
    )


def aux_mul(
    s: tuple[complex, QuaternionVector], u: tuple[complex, QuaternionVector]
) -> tuple[complex, QuaternionVector]:
    """Product (t, p)(t', p') = (t + t' - Im<p|p'>/2, p + p')."""
    t1, p1 = s
    t2, p2 = u
    return (t1 + t2 - 0.5 * eh_im(p1, p2), p1 + p2)


# -- operators on the entire-function side --------------------------------------

def _wide_pipeline(
    f: HardyWFunction, steps, margin: int, scale: complex = 1.0
) -> HardyWFunction:
    """Run shift/mult steps inside an enlarged workspace, then restrict.

    ``scale`` multiplies the resulting function (its monomial coefficients,
    not the underlying Fock vector, which would conjugate the factor).
    """
    spec = f.spec
    wide = TruncationSpec(spec.max_degree + margin, spec.dim) if margin else spec
    c = pc.lift(f.coefficients(), spec, wide) if margin else f.coefficients()
    overflow = f.overflow
    for kind, vec in steps:
        if kind == "shift":
            c = pc.apply_shift(c, vec, wide)
        elif kind == "mult":
            c, over = pc.apply_exp_mult(c, vec, wide)
            overflow = overflow or over
        else:
            raise ValueError(kind)
    c = c * complex(scale)
    if margin:
        c = pc.restrict(c, wide, spec)
    return HardyWFunction.from_coefficients(c, spec, f.pairing, overflow)


@dataclass(frozen=True)
class WeylOperator:
    """exp(<a|b>/2) times (multiply by exp<x|a>) after (shift by b)."""

    p: QuaternionVector
    margin: int = 0

    def apply(self, f: HardyWFunction) -> HardyWFunction:
        a, b = self.p.a, self.p.b
        scale = np.exp(0.5 * complex(a.inner(b)))
        return _wide_pipeline(f, [("shift", b), ("mult", a)], self.margin, scale)


def weyl(p: QuaternionVector, margin: int = 0) -> WeylOperator:
    return WeylOperator(p, margin)


def _widen(f: HardyWFunction, margin: int) -> HardyWFunction:
    wide = TruncationSpec(f.spec.max_degree + margin, f.spec.dim)
    c = pc.lift(f.coefficients(), f.spec, wide)
    return HardyWFunction.from_coefficients(c, wide, f.pairing, f.overflow)


def _narrow_residual(f: HardyWFunction, g: HardyWFunction, spec: TruncationSpec) -> float:
    diff = pc.restrict(f.coefficients() - g.coefficients(), f.spec, spec)
    return pc.w_norm_of_c(diff, f.pairing, spec)


def weyl_relation_residual(
    p: QuaternionVector, q: QuaternionVector, f: HardyWFunction, margin: int = 16
) -> float:
    """Residual of W(p+q) = exp(-Im<p|q>/2) W(p) W(q) on f (weighted norm).

    The whole two-operator composition runs inside an enlarged workspace and
    the residual is measured back on the original one, so dropped tails do
    not contaminate the compared degrees.  Exact for real vectors; complex
    vectors pick up a genuine conjugation factor, so suites draw real
    parameters by default and only record the complex behaviour.
    """
    wide_f = _widen(f, margin)
    lhs = weyl(p + q).apply(wide_f)
    rhs = weyl(p).apply(weyl(q).apply(wide_f))
    scale = np.exp(-0.5 * eh_im(p, q))
    rhs = HardyWFunction.from_coefficients(
        scale * rhs.coefficients(), rhs.spec, rhs.pairing, rhs.overflow
    )
    return _narrow_residual(lhs, rhs, f.spec)


@dataclass(frozen=True)
class WSOperator:
    """Weyl–Schrödinger operator exp(t) (multiply exp<x|b>) after (shift by a)."""

    x: HeisenbergElement
    margin: int = 0

    def apply(self, f: HardyWFunction) -> HardyWFunction:
        return _wide_pipeline(
            f,
            [("shift", self.x.a), ("mult", self.x.b)],
            self.margin,
            np.exp(complex(self.x.t)),
        )


@dataclass(frozen=True)
class WSOperatorChi:
    """The same representation carried to the other model by the transform."""

    x: HeisenbergElement
    margin: int = 0

    def apply(self, f: HardyChiFunction) -> HardyChiFunction:
        g = f_transform(f)
        return f_transform_inverse(WSOperator(self.x, self.margin).apply(g))


def ws_rep(x: HeisenbergElement, model: str = "w", margin: int = 0):
    """Group representation X(a,b,t) -> exp(t) M_b T_a on the chosen model.

    The cross term produced by commuting the shift past the multiplication is
    exp(<a|b'>), exactly the central cocycle of the group, so the
    representation property holds for complex parameters as well.
    """
    if model == "w":
        return WSOperator(x, margin)
    if model == "chi":
        return WSOperatorChi(x, margin)
    raise ValueError(f"unknown model {model!r}")


def ws_rep_displayed(x: HeisenbergElement, margin: int = 0):
    """Dressed variant exp(t + <a|b>/2) M_a T_b, kept for the record.

    Not a representation of this group law: composing two of these against
    the composed element leaves a factor that no choice of real parameters
    removes.  Suites report its residual without a pass contract.
    """

    @dataclass(frozen=True)
    class _Displayed:
        x: HeisenbergElement
        margin: int

        def apply(self, f: HardyWFunction) -> HardyWFunction:
            scale = np.exp(complex(self.x.t) + 0.5 * complex(self.x.a.inner(self.x.b)))
            return _wide_pipeline(
                f, [("shift", self.x.b), ("mult", self.x.a)], self.margin, scale
            )

    return _Displayed(x, margin)


def ws_homomorphism_residual(
    x: HeisenbergElement,
    y: HeisenbergElement,
    f: HardyWFunction,
    margin: int = 16,
    form=WSOperator,
) -> float:
    """Residual of W(xy) f = W(x) W(y) f, measured on the original workspace.

    ``form`` is a callable (element, margin) -> operator; the default is the
    working representation, ``ws_rep_displayed`` gives the dressed variant.
    """
    wide_f = _widen(f, margin)
    lhs = form(heis_mul(x, y), 0).apply(wide_f)
    rhs = form(x, 0).apply(form(y, 0).apply(wide_f))
    return _narrow_residual(lhs, rhs, f.spec)


def ws_chi_agreement(
    x: HeisenbergElement, f: HardyChiFunction, margin: int = 8
) -> float:
    """Distance between the transported route and the stepwise direct route.

    Route one conjugates the whole operator by the transform; route two
    composes the individually transported shift and multiplication (the
    matrix-level creation exponential for the multiplication part).
    """
    from .hardy_chi import shift_group_chi

    route1 = WSOperatorChi(x, margin).apply(f)
    shifted = f_transform_inverse(shift(f_transform(f), x.a))
    route2 = shift_group_chi(shifted, x.b).scale(np.exp(complex(x.t)))
    return (route1 - route2).norm()


def orbit_rank_probe(
    spec: TruncationSpec, count: int, seed: int, margin: int = 8
) -> dict:
    """Heuristic irreducibility shadow: rank of the orbit of the constant.

    Applies ``count`` random group elements to the constant function and
    reports the numerical rank of the stacked coefficient vectors against the
    dimension of the truncated space.  A full-rank outcome is only a finite
    hint, never a proof; the report carries both numbers.
    """
    rng = np.random.default_rng(seed)
    tab = pc.table(spec)
    rows = []
    ones = HardyWFunction.from_coefficients(
        np.eye(tab.size(), dtype=complex)[0], spec, pc.TAYLOR
    )
    for _ in range(count):
        a = EVector(tuple(rng.standard_normal(spec.dim) * 0.7))
        b = EVector(tuple(rng.standard_normal(spec.dim) * 0.7))
        t = complex(rng.standard_normal() * 0.3)
        image = ws_rep(HeisenbergElement(a, b, t), "w", margin).apply(ones)
        rows.append(image.coefficients())
    matrix = np.vstack(rows)
    rank = int(np.linalg.matrix_rank(matrix, tol=1e-10))
    return {"rank": rank, "dimension": tab.size(), "orbit_size": count}
