"""Dense coefficient calculus behind the Hardy-space function operations.

A function on the one-particle space is held as a dense vector of monomial
coefficients over the canonical key order.  Three "dressings" translate a
Fock vector into monomial coefficients:

  taylor : c = conj(psi)                       (homogeneous polynomial reading)
  h      : c = conj(psi) / degree!             (coherent-kernel reading, plain Gram)
  w      : c = conj(psi) * C / degree!         (coherent-kernel reading, weighted Gram)

Shifts, multiplications and derivatives are literal polynomial operations
on the coefficients; they are realised as exponential flows of their
(nilpotent or degree-raising) generators, which keeps every identity exact
up to roundoff inside the truncation.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .fock_core import EVector, FockVector, TruncationSpec
from .partitions import BasisKey, constant_c, enumerate_keys

TAYLOR = "taylor"
PAIRING_W = "w"
PAIRING_H = "h"
PAIRINGS = (PAIRING_W, PAIRING_H, TAYLOR)


class CoeffTable:
    """Cached index tables for one truncation workspace."""

    def __init__(self, spec: TruncationSpec):
        self.spec = spec
        self.keys = enumerate_keys(spec.max_degree, spec.dim)
        self.index = {k: i for i, k in enumerate(self.keys)}
        size = len(self.keys)
        d = spec.dim
        self.exponents = np.zeros((size, d), dtype=np.int64)
        for i, key in enumerate(self.keys):
            self.exponents[i] = key.exponents(d)
        self.degree = self.exponents.sum(axis=1)
        # neighbour tables: index of key +/- e_k, or -1 when outside
        self.up = np.full((size, d), -1, dtype=np.int64)
        self.down = np.full((size, d), -1, dtype=np.int64)
        for i, key in enumerate(self.keys):
            exps = self.exponents[i]
            for k in range(d):
                if self.degree[i] < spec.max_degree:
                    bumped = exps.copy()
                    bumped[k] += 1
                    self.up[i, k] = self.index[BasisKey.from_exponents(bumped)]
                if exps[k] > 0:
                    lowered = exps.copy()
                    lowered[k] -= 1
                    self.down[i, k] = self.index[BasisKey.from_exponents(lowered)]
        factorials = np.array(
            [math.factorial(int(n)) for n in self.degree], dtype=float
        )
        cvals = np.array([float(constant_c(k.diagram)) for k in self.keys])
        self.dress = {
            TAYLOR: np.ones(size),
            PAIRING_H: 1.0 / factorials,
            PAIRING_W: cvals / factorials,
        }
        self.gram_w = np.array(
            [float(_w_norm(k)) for k in self.keys], dtype=float
        )

    def size(self) -> int:
        return len(self.keys)


def _w_norm(key: BasisKey):
    from .partitions import w_norm_sq

    return w_norm_sq(key.diagram)


@lru_cache(maxsize=64)
def table(spec: TruncationSpec) -> CoeffTable:
    return CoeffTable(spec)


def psi_to_c(v: FockVector, pairing: str) -> np.ndarray:
    """Monomial coefficients of the function read out of a Fock vector."""
    tab = table(v.spec)
    c = np.zeros(tab.size(), dtype=complex)
    for key, value in v.coeffs.items():
        c[tab.index[key]] = complex(value).conjugate()
    return c * tab.dress[pairing]


def c_to_psi(c: np.ndarray, pairing: str, spec: TruncationSpec) -> FockVector:
    tab = table(spec)
    psi = (c / tab.dress[pairing]).conjugate()
    coeffs = {}
    for i, value in enumerate(psi):
        if value != 0:
            coeffs[tab.keys[i]] = value
    return FockVector(spec, coeffs)


def w_norm_of_c(c: np.ndarray, pairing: str, spec: TruncationSpec) -> float:
    """Weighted norm of the Fock vector represented by the coefficients."""
    tab = table(spec)
    psi = c / tab.dress[pairing]
    return float(np.sqrt(np.sum(np.abs(psi) ** 2 * tab.gram_w)))


# -- generators --------------------------------------------------------------

def apply_mult_linear(c: np.ndarray, a: EVector, spec: TruncationSpec):
    """Multiply by the linear form <x|a>; returns (result, overflowed)."""
    tab = table(spec)
    out = np.zeros_like(c)
    overflow = False
    nz = np.flatnonzero(c)
    for k in range(spec.dim):
        weight = complex(a.coords[k]).conjugate()
        if weight == 0:
            continue
        targets = tab.up[nz, k]
        ok = targets >= 0
        np.add.at(out, targets[ok], weight * c[nz[ok]])
        if np.any(~ok):
            overflow = True
    return out, overflow


def apply_derivative(c: np.ndarray, a: EVector, spec: TruncationSpec) -> np.ndarray:
    """Directional derivative along a of the polynomial with coefficients c."""
    tab = table(spec)
    out = np.zeros_like(c)
    nz = np.flatnonzero(c)
    for k in range(spec.dim):
        weight = complex(a.coords[k])
        if weight == 0:
            continue
        sources = nz[tab.exponents[nz, k] > 0]
        if sources.size == 0:
            continue
        targets = tab.down[sources, k]
        np.add.at(out, targets, weight * tab.exponents[sources, k] * c[sources])
    return out


def apply_shift(c: np.ndarray, a: EVector, spec: TruncationSpec) -> np.ndarray:
    """Substitute x -> x + a; exact because the derivative flow is nilpotent."""
    out = c.copy()
    term = c
    for m in range(1, spec.max_degree + 1):
        term = apply_derivative(term, a, spec) / m
        if not term.any():
            break
        out = out + term
    return out


def apply_exp_mult(c: np.ndarray, a: EVector, spec: TruncationSpec):
    """Multiply by exp(<x|a>), truncated at the cap; returns (result, overflowed)."""
    out = c.copy()
    term = c
    overflow = False
    for m in range(1, spec.max_degree + 1):
        term, over = apply_mult_linear(term, a, spec)
        term = term / m
        overflow = overflow or over
        if not term.any():
            break
        out = out + term
    else:
        # cap reached with mass still flowing upward
        probe, over = apply_mult_linear(term, a, spec)
        overflow = overflow or over or bool(probe.any())
    return out, overflow


def evaluate_c(c: np.ndarray, x: EVector, spec: TruncationSpec) -> complex:
    """Value of the polynomial with monomial coefficients c at the point x."""
    tab = table(spec)
    coords = np.array([complex(v) for v in x.coords])
    nz = np.flatnonzero(c)
    total = 0.0 + 0.0j
    for i in nz:
        mono = 1.0 + 0.0j
        for k in range(spec.dim):
            e = tab.exponents[i, k]
            if e:
                mono *= coords[k] ** int(e)
        total += c[i] * mono
    return complex(total)


def lift(c: np.ndarray, src: TruncationSpec, dst: TruncationSpec) -> np.ndarray:
    """Re-index coefficients into a larger workspace of the same dimension."""
    if src.dim != dst.dim or dst.max_degree < src.max_degree:
        raise ValueError("target workspace must extend the source")
    t_src, t_dst = table(src), table(dst)
    out = np.zeros(t_dst.size(), dtype=complex)
    for i in np.flatnonzero(c):
        out[t_dst.index[t_src.keys[i]]] = c[i]
    return out


def restrict(c: np.ndarray, src: TruncationSpec, dst: TruncationSpec) -> np.ndarray:
    """Project coefficients onto a smaller workspace of the same dimension."""
    if src.dim != dst.dim or dst.max_degree > src.max_degree:
        raise ValueError("target workspace must be contained in the source")
    t_src, t_dst = table(src), table(dst)
    out = np.zeros(t_dst.size(), dtype=complex)
    for i in np.flatnonzero(c):
        key = t_src.keys[i]
        j = t_dst.index.get(key)
        if j is not None:
            out[j] = c[i]
    return out
