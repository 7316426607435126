"""Creation/annihilation operators and their exponential groups.

Operators are stored as dense blocks between degree subspaces, indexed by
the canonical key order.  Adjoints are computed from the block matrices
and the diagonal Gram of the chosen inner product, so the closed-form
annihilation action on monomials stays available as an independent oracle.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field

import numpy as np

from .fock_core import (
    EVector,
    FockVector,
    GRAM_H,
    GRAM_W,
    TruncationSpec,
    norm_sq,
    tensor_power,
)
from .partitions import BasisKey, degree_keys

MONOMIAL = "monomial"
W_ADJOINT = "w_adjoint"
VARIANTS = (MONOMIAL, W_ADJOINT)


def degree_basis(spec: TruncationSpec, n: int) -> tuple[BasisKey, ...]:
    return degree_keys(n, spec.dim) if n <= spec.max_degree else ()


def degree_index(spec: TruncationSpec, n: int) -> dict[BasisKey, int]:
    return {k: i for i, k in enumerate(degree_basis(spec, n))}


def gram_diagonal(kind: str, spec: TruncationSpec, n: int) -> np.ndarray:
    return np.array(
        [float(norm_sq(kind, k.diagram)) for k in degree_basis(spec, n)], dtype=float
    )


@dataclass
class OperatorMatrix:
    """Block linear map on the truncated coefficient space.

    ``blocks[(src_degree, tgt_degree)]`` is a dense complex matrix of shape
    (dim tgt, dim src).  ``dropped_overflow`` records that some block of the
    ideal operator fell beyond the degree cap and was discarded.
    """

    spec: TruncationSpec
    blocks: dict = field(default_factory=dict)
    dropped_overflow: bool = False

    @classmethod
    def identity(cls, spec: TruncationSpec) -> "OperatorMatrix":
        blocks = {}
        for n in range(spec.max_degree + 1):
            size = len(degree_basis(spec, n))
            blocks[(n, n)] = np.eye(size, dtype=complex)
        return cls(spec, blocks)

    @classmethod
    def zero(cls, spec: TruncationSpec) -> "OperatorMatrix":
        return cls(spec, {})

    def apply(self, v: FockVector) -> FockVector:
        if v.spec != self.spec:
            raise ValueError("spec mismatch")
        dense = {}
        for n in v.degrees():
            basis = degree_basis(self.spec, n)
            col = np.zeros(len(basis), dtype=complex)
            index = degree_index(self.spec, n)
            for key, value in v.degree_component(n).coeffs.items():
                col[index[key]] = complex(value)
            dense[n] = col
        out: dict[int, np.ndarray] = {}
        for (src, tgt), block in self.blocks.items():
            col = dense.get(src)
            if col is None:
                continue
            acc = out.setdefault(tgt, np.zeros(block.shape[0], dtype=complex))
            acc += block @ col
        coeffs = {}
        for tgt, col in out.items():
            for key, value in zip(degree_basis(self.spec, tgt), col):
                if value != 0:
                    coeffs[key] = coeffs.get(key, 0) + value
        return FockVector(self.spec, coeffs)

    def compose(self, other: "OperatorMatrix") -> "OperatorMatrix":
        """self after other."""
        if self.spec != other.spec:
            raise ValueError("spec mismatch")
        blocks: dict = {}
        for (src, mid), b_other in other.blocks.items():
            for (mid2, tgt), b_self in self.blocks.items():
                if mid2 != mid:
                    continue
                acc = blocks.get((src, tgt))
                prod = b_self @ b_other
                blocks[(src, tgt)] = prod if acc is None else acc + prod
        return OperatorMatrix(
            self.spec, blocks, self.dropped_overflow or other.dropped_overflow
        )

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if self.spec != other.spec:
            raise ValueError("spec mismatch")
        blocks = {k: b.copy() for k, b in self.blocks.items()}
        for k, b in other.blocks.items():
            blocks[k] = blocks[k] + b if k in blocks else b.copy()
        return OperatorMatrix(
            self.spec, blocks, self.dropped_overflow or other.dropped_overflow
        )

    def scale(self, s: complex) -> "OperatorMatrix":
        return OperatorMatrix(
            self.spec, {k: s * b for k, b in self.blocks.items()}, self.dropped_overflow
        )

    def max_block_difference(self, other: "OperatorMatrix") -> float:
        """Largest entry-wise deviation between two operators."""
        keys = set(self.blocks) | set(other.blocks)
        worst = 0.0
        for k in keys:
            a = self.blocks.get(k)
            b = other.blocks.get(k)
            if a is None:
                worst = max(worst, float(np.abs(b).max(initial=0.0)))
            elif b is None:
                worst = max(worst, float(np.abs(a).max(initial=0.0)))
            else:
                worst = max(worst, float(np.abs(a - b).max(initial=0.0)))
        return worst


def creation(a: EVector, m: int, spec: TruncationSpec) -> OperatorMatrix:
    """Degree-raising symmetric multiplication by the m-th tensor power of a.

    Blocks that would land beyond the degree cap are dropped and flagged.
    The action on a degree-(n-m) monomial equals the m-th t-derivative of
    (x + t a)^(tensor n) at t = 0, rescaled by (n-m)!/n!.
    """
    if m < 1:
        raise ValueError("order m must be >= 1")
    if a.dim != spec.dim:
        raise ValueError("dimension mismatch")
    zero = all(c == 0 for c in a.coords)
    op = OperatorMatrix.zero(spec)
    if zero:
        return op
    amp = tensor_power(a, m, spec) if m <= spec.max_degree else None
    dropped = m > spec.max_degree
    if amp is not None:
        for src in range(spec.max_degree + 1):
            tgt = src + m
            if tgt > spec.max_degree:
                dropped = True
                continue
            src_keys = degree_basis(spec, src)
            tgt_index = degree_index(spec, tgt)
            block = np.zeros((len(tgt_index), len(src_keys)), dtype=complex)
            for j, key in enumerate(src_keys):
                exps = key.exponents(spec.dim)
                for akey, aval in amp.coeffs.items():
                    aexp = akey.exponents(spec.dim)
                    merged = BasisKey.from_exponents(
                        tuple(x + y for x, y in zip(exps, aexp))
                    )
                    block[tgt_index[merged], j] += complex(aval)
            op.blocks[(src, tgt)] = block
    op.dropped_overflow = dropped
    return op


def adjoint(kind: str, T: OperatorMatrix) -> OperatorMatrix:
    """Unique operator S with <T psi | phi> = <psi | S phi> for the given Gram."""
    out = OperatorMatrix(T.spec, {}, T.dropped_overflow)
    for (src, tgt), block in T.blocks.items():
        g_src = gram_diagonal(kind, T.spec, src)
        g_tgt = gram_diagonal(kind, T.spec, tgt)
        out.blocks[(tgt, src)] = (block.conj().T * g_tgt[None, :]) / g_src[:, None]
    return out


def annihilation_monomial(
    a: EVector, m: int, x: EVector, n: int, spec: TruncationSpec
) -> FockVector:
    """Closed-form annihilation on a monomial: <x|a>^m times x^(tensor n-m)."""
    if m > n:
        raise ValueError("annihilation order exceeds monomial degree")
    scalar = x.inner(a) ** m
    return tensor_power(x, n - m, spec).scale(scalar)


def exp_creation(a: EVector, spec: TruncationSpec) -> OperatorMatrix:
    """Exponential creation group element: sum of creation(a, m)/m!.

    Maps the coherent vector of x to the coherent vector of x + a exactly on
    every degree inside the truncation (creation only raises degree, so no
    dropped block feeds back below the cap).
    """
    op = OperatorMatrix.identity(spec)
    for m in range(1, spec.max_degree + 1):
        op = op + creation(a, m, spec).scale(1.0 / math.factorial(m))
    if any(c != 0 for c in a.coords):
        op.dropped_overflow = True
    return op


def exp_annihilation(a: EVector, spec: TruncationSpec, variant: str) -> OperatorMatrix:
    """Exponential annihilation group element, in one of two inequivalent forms.

    ``monomial``: sums the plain-Gram adjoints of the creation powers; this is
    the operator whose action on monomials is ``annihilation_monomial``.
    ``w_adjoint``: the true adjoint of ``exp_creation`` in the weighted Gram.
    The two differ; a pinned witness lives in the test suite.
    """
    if variant == MONOMIAL:
        op = OperatorMatrix.identity(spec)
        for m in range(1, spec.max_degree + 1):
            op = op + adjoint(GRAM_H, creation(a, m, spec)).scale(
                1.0 / math.factorial(m)
            )
        return op
    if variant == W_ADJOINT:
        return adjoint(GRAM_W, exp_creation(a, spec))
    raise ValueError(f"unknown annihilation variant {variant!r}")


# -- raw binary export ------------------------------------------------------
#
# Layout: magic b"FKOP", uint32 version=1, uint32 max_degree, uint32 dim,
# uint32 block count; then per block uint32 src, uint32 tgt, uint32 rows,
# uint32 cols followed by rows*cols little-endian float64 (re, im) pairs in
# row-major order.  Blocks are written sorted by (src, tgt).

_MAGIC = b"FKOP"


def export_blocks(op: OperatorMatrix, path) -> None:
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<III", 1, op.spec.max_degree, op.spec.dim))
        fh.write(struct.pack("<I", len(op.blocks)))
        for (src, tgt) in sorted(op.blocks):
            block = np.ascontiguousarray(op.blocks[(src, tgt)], dtype=complex)
            rows, cols = block.shape
            fh.write(struct.pack("<IIII", src, tgt, rows, cols))
            inter = np.empty((rows, cols, 2), dtype="<f8")
            inter[..., 0] = block.real
            inter[..., 1] = block.imag
            fh.write(inter.tobytes())


def load_blocks(path) -> OperatorMatrix:
    with open(path, "rb") as fh:
        if fh.read(4) != _MAGIC:
            raise ValueError("not an operator block file")
        version, max_degree, dim = struct.unpack("<III", fh.read(12))
        if version != 1:
            raise ValueError(f"unsupported version {version}")
        count = struct.unpack("<I", fh.read(4))[0]
        spec = TruncationSpec(max_degree, dim)
        blocks = {}
        for _ in range(count):
            src, tgt, rows, cols = struct.unpack("<IIII", fh.read(16))
            raw = np.frombuffer(fh.read(rows * cols * 16), dtype="<f8")
            raw = raw.reshape(rows, cols, 2)
            blocks[(src, tgt)] = raw[..., 0] + 1j * raw[..., 1]
        return OperatorMatrix(spec, blocks)
