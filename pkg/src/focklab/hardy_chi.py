"""Hardy space over virtual unitaries: exact coefficient model and MC model.

The exact model stores coefficients over the product-of-first-row-entries
basis functions; the squared basis norms coincide with the weighted Fock
weights, so the basis change to the Fock side is a key-wise conjugation.
The Monte Carlo model evaluates the same basis functions on Haar samples at
a finite level m and estimates the integral transform; closed forms exist at
m = 1 and the finite-level norms of basis functions are reported as data
(they decay with m, unlike the limiting weights - a recorded open point).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import polycalc as pc
from .fock_core import EVector, FockVector, TruncationSpec
from .hardy_w import HardyWFunction
from .operators import exp_annihilation, exp_creation
from .partitions import BasisKey, w_norm_sq
from .unitary_haar import DEFAULT_CHUNK, VirtualUnitary, chunk_plan, haar_batch, substream


@dataclass
class HardyChiFunction:
    """Finite combination of the basis functions over virtual unitaries."""

    spec: TruncationSpec
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, value in self.coeffs.items():
            if not self.spec.contains(key):
                raise ValueError(f"key {key.label()} outside {self.spec}")
            if value != 0:
                clean[key] = value
        self.coeffs = clean

    @classmethod
    def basis(cls, spec: TruncationSpec, key: BasisKey, value=1.0) -> "HardyChiFunction":
        return cls(spec, {key: value})

    @classmethod
    def constant(cls, spec: TruncationSpec, value=1.0) -> "HardyChiFunction":
        return cls(spec, {BasisKey.vacuum(): value})

    def norm_sq(self) -> float:
        return float(
            sum(abs(v) ** 2 * float(w_norm_sq(k.diagram)) for k, v in self.coeffs.items())
        )

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def degree_component(self, n: int) -> "HardyChiFunction":
        return HardyChiFunction(
            self.spec, {k: v for k, v in self.coeffs.items() if k.degree() == n}
        )

    def degrees(self) -> set[int]:
        return {k.degree() for k in self.coeffs}

    def __add__(self, other: "HardyChiFunction") -> "HardyChiFunction":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return HardyChiFunction(self.spec, out)

    def __sub__(self, other: "HardyChiFunction") -> "HardyChiFunction":
        return self + other.scale(-1)

    def scale(self, s) -> "HardyChiFunction":
        return HardyChiFunction(self.spec, {k: s * v for k, v in self.coeffs.items()})

    def max_index(self) -> int:
        return max((k.max_index() for k in self.coeffs), default=0)


# -- basis change and transform ----------------------------------------------

def phi_map(psi: FockVector) -> HardyChiFunction:
    """Conjugate-linear basis change from the Fock side; an exact isometry."""
    return HardyChiFunction(
        psi.spec, {k: complex(v).conjugate() for k, v in psi.coeffs.items()}
    )


def phi_map_adjoint(f: HardyChiFunction) -> FockVector:
    """Adjoint basis change; composing the two gives the identity."""
    return FockVector(
        f.spec, {k: complex(v).conjugate() for k, v in f.coeffs.items()}
    )


def f_transform(f: HardyChiFunction, pairing: str = pc.TAYLOR) -> HardyWFunction:
    """Linear transform onto the entire-function side.

    The Fock vector of the image is the adjoint basis change of f, so the
    norms agree exactly; the pairing tag only selects the readout used by
    downstream function operations.
    """
    return HardyWFunction(phi_map_adjoint(f), pairing)


def f_transform_inverse(g: HardyWFunction) -> HardyChiFunction:
    return phi_map(g.fock)


# -- transported operator groups ----------------------------------------------

def mult_group_chi(f: HardyChiFunction, a: EVector, variant: str) -> HardyChiFunction:
    """Multiplicative group element realised through the annihilation exponential.

    The annihilation variant is a run parameter; the transform intertwines
    this operator with the coefficient shift whose readout matches the
    variant ("w_adjoint" with the weighted readout, "monomial" with the
    plain one).
    """
    psi = exp_annihilation(a, f.spec, variant).apply(phi_map_adjoint(f))
    return phi_map(psi)


def shift_group_chi(f: HardyChiFunction, a: EVector) -> HardyChiFunction:
    """Shift group element realised through the creation exponential."""
    psi = exp_creation(a, f.spec).apply(phi_map_adjoint(f))
    return phi_map(psi)


def chi_shift_generator(f: HardyChiFunction, a: EVector, order: int = 1) -> HardyChiFunction:
    """Generator of the transported shift group (creation conjugated over)."""
    from .operators import creation

    op = creation(a, 1, f.spec)
    psi = phi_map_adjoint(f)
    for _ in range(order):
        psi = op.apply(psi)
    return phi_map(psi)


def chi_mult_generator(
    f: HardyChiFunction, a: EVector, variant: str, order: int = 1
) -> HardyChiFunction:
    """Generator of the transported multiplicative group (adjoint conjugated)."""
    from .operators import GRAM_H, GRAM_W, adjoint, creation

    kind = GRAM_W if variant == "w_adjoint" else GRAM_H
    op = adjoint(kind, creation(a, 1, f.spec))
    psi = phi_map_adjoint(f)
    for _ in range(order):
        psi = op.apply(psi)
    return phi_map(psi)


# -- evaluation on virtual unitaries ------------------------------------------

def phi_eval(u: VirtualUnitary, key: BasisKey, level: int | None = None) -> complex:
    """Value of a basis function: product of powers of first-row entries."""
    m = u.top_level if level is None else level
    matrix = u.level(m)
    value = 1.0 + 0.0j
    for part, index in zip(key.diagram.parts, key.tuple.indices):
        if index > m:
            raise ValueError(f"index {index} exceeds level size {m}")
        value *= matrix[0, index - 1] ** part
    return complex(value)


@dataclass
class PhiSample:
    """One virtual unitary with its cached first-row coordinate values."""

    u: VirtualUnitary
    level: int
    values: np.ndarray

    @classmethod
    def from_unitary(cls, u: VirtualUnitary, level: int, dim: int) -> "PhiSample":
        row = u.level(level)[0, : min(dim, level)]
        values = np.zeros(dim, dtype=complex)
        values[: row.size] = row
        total = float(np.sum(np.abs(values) ** 2))
        if total > 1.0 + 1e-9:
            raise ValueError("first-row mass exceeds 1")
        return cls(u, level, values)

    def eval_key(self, key: BasisKey) -> complex:
        value = 1.0 + 0.0j
        for part, index in zip(key.diagram.parts, key.tuple.indices):
            value *= self.values[index - 1] ** part
        return complex(value)


def _rows_batch(m: int, count: int, rng: np.random.Generator) -> np.ndarray:
    return haar_batch(m, count, rng)[:, 0, :]


def _eval_keys_on_rows(rows: np.ndarray, items) -> np.ndarray:
    """Sum of coeff * product of first-row powers, per sample."""
    total = np.zeros(rows.shape[0], dtype=complex)
    for key, coeff in items:
        term = np.full(rows.shape[0], complex(coeff))
        for part, index in zip(key.diagram.parts, key.tuple.indices):
            term = term * rows[:, index - 1] ** part
        total += term
    return total


@dataclass
class MCEstimate:
    """Monte Carlo estimate with its standard error."""

    estimate: complex
    stderr: float
    samples: int

    def z_against(self, target: complex) -> float:
        gap = abs(self.estimate - complex(target))
        if self.stderr == 0.0:
            return 0.0 if gap <= 1e-12 else math.inf
        return gap / self.stderr


def _combine_complex(sums, count: int) -> MCEstimate:
    s1, s2 = sums
    mean = s1 / count
    var = max(s2 / count - abs(mean) ** 2, 0.0)
    return MCEstimate(complex(mean), math.sqrt(var / count), count)


def _mc_chunk(args):
    m, seed, chunk_index, count, items, x_coords, degrees = args
    rng = substream(seed, chunk_index)
    rows = _rows_batch(m, count, rng)
    xbar = np.array([complex(v).conjugate() for v in x_coords])
    width = min(rows.shape[1], xbar.size)
    phi_x = rows[:, :width] @ xbar[:width]
    weight = np.exp(phi_x.conj())
    f_vals = _eval_keys_on_rows(rows, items)
    full = weight * f_vals
    sums = {"full": (full.sum(), float(np.sum(np.abs(full) ** 2)))}
    for n in degrees:
        part = [(k, c) for k, c in items if k.degree() == n]
        vals = (phi_x.conj() ** n) * _eval_keys_on_rows(rows, part)
        sums[f"deg{n}"] = (vals.sum(), float(np.sum(np.abs(vals) ** 2)))
    return sums


@dataclass
class TransformEstimate:
    """MC record of the integral transform at one evaluation point and level."""

    level: int
    estimate: complex
    stderr: float
    samples: int
    taylor_terms: dict

    def z_against(self, target: complex) -> float:
        gap = abs(self.estimate - complex(target))
        if self.stderr == 0.0:
            return 0.0 if gap <= 1e-12 else math.inf
        return gap / self.stderr

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "estimate": [self.estimate.real, self.estimate.imag],
            "stderr": self.stderr,
            "samples": self.samples,
            "taylor_terms": {
                str(n): {
                    "estimate": [e.estimate.real, e.estimate.imag],
                    "stderr": e.stderr,
                }
                for n, e in sorted(self.taylor_terms.items())
            },
        }


def mc_f_transform(
    f: HardyChiFunction,
    x: EVector,
    level: int,
    samples: int,
    seed: int,
    chunk: int = DEFAULT_CHUNK,
    workers: int = 1,
) -> TransformEstimate:
    """Monte Carlo estimate of the transform integral at level ``level``.

    Estimates the Haar integral of exp(conj(phi_x)) * f together with the
    per-degree moment integrals of conj(phi_x)^n * f_n (the Taylor-term
    estimators).  Requires every index in f and x to stay within the level.
    """
    if f.max_index() > level:
        raise ValueError("function uses an index beyond the sampling level")
    if any(v != 0 for v in x.coords[level:]):
        raise ValueError("evaluation point uses an index beyond the sampling level")
    items = tuple(sorted(f.coeffs.items(), key=lambda kv: kv[0].label()))
    degrees = tuple(sorted(f.degrees()))
    plan = chunk_plan(samples, chunk)
    tasks = [
        (level, seed, index, count, items, tuple(x.coords), degrees)
        for index, count in plan
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_mc_chunk, tasks))
    else:
        results = [_mc_chunk(t) for t in tasks]
    totals: dict[str, list] = {}
    for res in results:
        for name, (s1, s2) in res.items():
            acc = totals.setdefault(name, [0.0 + 0.0j, 0.0])
            acc[0] += s1
            acc[1] += s2
    full = _combine_complex(totals["full"], samples)
    taylor = {
        n: _combine_complex(totals[f"deg{n}"], samples) for n in degrees
    }
    return TransformEstimate(level, full.estimate, full.stderr, samples, taylor)


def _norm_chunk(args):
    m, seed, chunk_index, count, items = args
    rng = substream(seed, chunk_index)
    rows = _rows_batch(m, count, rng)
    vals = np.abs(_eval_keys_on_rows(rows, items)) ** 2
    return float(vals.sum()), float(np.sum(vals**2))


def norm_convergence_study(
    key: BasisKey,
    levels,
    samples: int,
    seed: int,
    chunk: int = DEFAULT_CHUNK,
    workers: int = 1,
) -> list[dict]:
    """Empirical squared norms of one basis function across sampling levels.

    Report-only: the finite-level values decay with the level while the
    limiting weight is a fixed positive rational; the table records both
    without asserting agreement.
    """
    limit = float(w_norm_sq(key.diagram))
    rows = []
    for m in levels:
        if key.max_index() > m:
            raise ValueError(f"key {key.label()} needs level >= {key.max_index()}")
        plan = chunk_plan(samples, chunk)
        tasks = [(m, seed, index, count, ((key, 1.0),)) for index, count in plan]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_norm_chunk, tasks))
        else:
            results = [_norm_chunk(t) for t in tasks]
        s1 = sum(r[0] for r in results)
        s2 = sum(r[1] for r in results)
        mean = s1 / samples
        var = max(s2 / samples - mean**2, 0.0)
        rows.append(
            {
                "level": int(m),
                "empirical": mean,
                "stderr": math.sqrt(var / samples),
                "limit_value": limit,
                "samples": samples,
            }
        )
    return rows


def _pair_chunk(args):
    m, seed, chunk_index, count, items1, items2 = args
    rng = substream(seed, chunk_index)
    rows = _rows_batch(m, count, rng)
    vals = _eval_keys_on_rows(rows, items1) * _eval_keys_on_rows(rows, items2).conj()
    return vals.sum(), float(np.sum(np.abs(vals) ** 2))


def mc_pair_integral(
    key1: BasisKey,
    key2: BasisKey,
    level: int,
    samples: int,
    seed: int,
    chunk: int = DEFAULT_CHUNK,
) -> MCEstimate:
    """Haar integral of one basis function against the conjugate of another."""
    plan = chunk_plan(samples, chunk)
    s1, s2 = 0.0 + 0.0j, 0.0
    for index, count in plan:
        a, b = _pair_chunk((level, seed, index, count, ((key1, 1.0),), ((key2, 1.0),)))
        s1 += a
        s2 += b
    return _combine_complex((s1, s2), samples)


def closed_form_level_one(key: BasisKey, x: EVector) -> complex:
    """Exact level-1 transform of a single-index basis function.

    For the basis function u -> u^k (first coordinate only) the phase
    integral collapses to x_1^k / k!.
    """
    if key.max_index() > 1:
        raise ValueError("closed form only covers first-coordinate keys")
    k = key.degree()
    return complex(x.coords[0] ** k / math.factorial(k))
