"""Fock vector algebra: inner products, coherent vectors, products, polarization."""

import math
from fractions import Fraction

import numpy as np
import pytest

from focklab.fock_core import (
    EVector,
    FockVector,
    GRAM_H,
    GRAM_W,
    TruncationOverflowError,
    TruncationSpec,
    exponential_vector,
    from_json,
    hs_polynomial_eval,
    inner,
    polarization,
    symmetric_product,
    tensor_power,
    to_json,
)
from focklab.partitions import BasisKey, YoungDiagram

SPEC = TruncationSpec(6, 3)


def _key(parts, indices):
    return BasisKey.make(parts, indices)


def _rand_evector(rng, dim=3, scale=1.0):
    v = scale * (rng.standard_normal(dim) + 1j * rng.standard_normal(dim)) / np.sqrt(2)
    return EVector(tuple(map(complex, v)))


def test_inner_basis_values():
    k11 = _key((1, 1), (1, 2))
    v = FockVector.basis(SPEC, k11)
    assert inner(GRAM_W, v, v) == pytest.approx(1 / 6)
    assert inner(GRAM_H, v, v) == pytest.approx(1 / 2)
    k2 = _key((2,), (1,))
    assert inner(GRAM_W, FockVector.basis(SPEC, k2), v) == 0


def test_inner_sesquilinearity():
    k = _key((1,), (1,))
    v = FockVector.basis(SPEC, k, 2.0 + 1.0j)
    w = FockVector.basis(SPEC, k, 1.0 - 3.0j)
    # linear in the first slot, conjugated in the second
    assert inner(GRAM_H, v, w) == pytest.approx((2 + 1j) * np.conj(1 - 3j))


def test_inner_spec_mismatch():
    other = TruncationSpec(5, 3)
    with pytest.raises(ValueError):
        inner(GRAM_W, FockVector.vacuum(SPEC), FockVector.vacuum(other))


def test_tensor_power_monomial():
    x = EVector.basis(1, 3)
    tp = tensor_power(x, 3, SPEC)
    assert tp.coeffs == {_key((3,), (1,)): 1.0}


def test_tensor_power_expansion():
    x = EVector((1.0, 1.0, 0.0))
    tp = tensor_power(x, 2, SPEC)
    assert tp.coeffs[_key((2,), (1,))] == pytest.approx(1.0)
    assert tp.coeffs[_key((2,), (2,))] == pytest.approx(1.0)
    assert tp.coeffs[_key((1, 1), (1, 2))] == pytest.approx(2.0)
    assert len(tp.coeffs) == 3


def test_tensor_power_zero_and_overflow():
    assert tensor_power(EVector.zero(3), 2, SPEC).coeffs == {}
    assert tensor_power(EVector.zero(3), 0, SPEC).coeffs == {BasisKey.vacuum(): 1.0}
    with pytest.raises(TruncationOverflowError):
        tensor_power(EVector.basis(1, 3), 7, SPEC)


def test_tensor_power_norm_is_power_of_norm():
    rng = np.random.default_rng(0)
    for _ in range(10):
        x = _rand_evector(rng)
        n = int(rng.integers(1, 6))
        value = inner(GRAM_H, tensor_power(x, n, SPEC), tensor_power(x, n, SPEC))
        assert complex(value).real == pytest.approx(x.norm_sq() ** n, rel=1e-10)


def test_exponential_vector_coefficients():
    assert exponential_vector(EVector.zero(3), SPEC).coeffs == {BasisKey.vacuum(): 1.0}
    ev = exponential_vector(EVector.basis(1, 3), SPEC)
    for n in range(SPEC.max_degree + 1):
        key = BasisKey.vacuum() if n == 0 else _key((n,), (1,))
        assert complex(ev.coeffs[key]) == pytest.approx(1 / math.factorial(n))
    both = exponential_vector(EVector((1.0, 1.0, 0.0)), SPEC)
    assert complex(both.coeffs[_key((1, 1), (1, 2))]) == pytest.approx(1.0)


def test_coherent_norm_bound():
    rng = np.random.default_rng(1)
    spec = TruncationSpec(10, 3)
    for _ in range(50):
        x = _rand_evector(rng, scale=2.0 / math.sqrt(3))
        ev = exponential_vector(x, spec)
        w2 = complex(inner(GRAM_W, ev, ev)).real
        h2 = complex(inner(GRAM_H, ev, ev)).real
        assert w2 <= h2 * (1 + 1e-12)
        assert w2 <= math.exp(x.norm_sq()) * (1 + 1e-12)


def test_symmetric_product_unit_and_merge():
    e1 = tensor_power(EVector.basis(1, 3), 1, SPEC)
    e2 = tensor_power(EVector.basis(2, 3), 1, SPEC)
    merged = symmetric_product(e1, e2)
    assert merged.coeffs == {_key((1, 1), (1, 2)): 1.0}
    vac = FockVector.vacuum(SPEC)
    psi = FockVector(SPEC, {_key((2, 1), (1, 3)): 2.5})
    assert symmetric_product(vac, psi).coeffs == psi.coeffs


def test_symmetric_product_power_identity():
    rng = np.random.default_rng(2)
    for _ in range(10):
        x = _rand_evector(rng)
        lhs = symmetric_product(tensor_power(x, 1, SPEC), tensor_power(x, 1, SPEC))
        rhs = tensor_power(x, 2, SPEC)
        assert (lhs - rhs).max_abs_coeff() < 1e-12
        lhs2 = symmetric_product(tensor_power(x, 2, SPEC), tensor_power(x, 3, SPEC))
        rhs2 = tensor_power(x, 5, SPEC)
        assert (lhs2 - rhs2).max_abs_coeff() < 1e-10


def test_symmetric_product_commutes_and_associates():
    rng = np.random.default_rng(3)
    a = tensor_power(_rand_evector(rng), 1, SPEC)
    b = tensor_power(_rand_evector(rng), 2, SPEC)
    c = tensor_power(_rand_evector(rng), 2, SPEC)
    ab = symmetric_product(a, b)
    ba = symmetric_product(b, a)
    assert (ab - ba).max_abs_coeff() < 1e-12
    abc1 = symmetric_product(ab, c)
    abc2 = symmetric_product(a, symmetric_product(b, c))
    assert (abc1 - abc2).max_abs_coeff() < 1e-12


def test_symmetric_product_overflow():
    big = tensor_power(EVector.basis(1, 3), 4, SPEC)
    with pytest.raises(TruncationOverflowError):
        symmetric_product(big, big)


def test_polarization_examples():
    spec = TruncationSpec(4, 3)
    out = polarization(YoungDiagram((1, 1)), (1, 2), spec, exact=True)
    assert out.coeffs == {_key((1, 1), (1, 2)): Fraction(1)}
    out2 = polarization(YoungDiagram((3,)), (2,), spec, exact=True)
    assert out2.coeffs == {_key((3,), (2,)): Fraction(1)}


def test_polarization_all_small_keys():
    spec = TruncationSpec(4, 3)
    for key in spec.keys():
        exact = polarization(key.diagram, key.tuple.indices, spec, exact=True)
        assert exact.coeffs == {key: Fraction(1)}
        approx = polarization(key.diagram, key.tuple.indices, spec, exact=False)
        diff = approx - FockVector.basis(spec, key, 1.0)
        assert diff.max_abs_coeff() < 1e-10


def test_hs_polynomial_eval():
    x = EVector((2.0, 0.0, 0.0))
    assert hs_polynomial_eval(FockVector.basis(SPEC, _key((1,), (1,))), x) == pytest.approx(2.0)
    y = EVector((1.0, 1.0, 0.0))
    assert hs_polynomial_eval(FockVector.basis(SPEC, _key((1, 1), (1, 2))), y) == pytest.approx(1.0)
    assert hs_polynomial_eval(FockVector.vacuum(SPEC, 2.0 - 1.0j), y) == pytest.approx(2.0 + 1.0j)
    with pytest.raises(ValueError):
        hs_polynomial_eval(
            FockVector(SPEC, {BasisKey.vacuum(): 1.0, _key((1,), (1,)): 1.0}), x
        )


def test_hs_matches_h_pairing_of_powers():
    rng = np.random.default_rng(4)
    for _ in range(10):
        x = _rand_evector(rng)
        n = int(rng.integers(1, 5))
        tp = tensor_power(x, n, SPEC)
        for key in (k for k in SPEC.keys() if k.degree() == n):
            basis = FockVector.basis(SPEC, key, 1.0)
            assert inner(GRAM_H, tp, basis) == pytest.approx(
                hs_polynomial_eval(basis, x), abs=1e-10
            )


def test_serialization_rational_bit_exact():
    spec = TruncationSpec(4, 3)
    v = polarization(YoungDiagram((2, 1)), (1, 2), spec, exact=True)
    v = v + FockVector.basis(spec, _key((1,), (3,)), Fraction(22, 7))
    again = from_json(to_json(v))
    assert again.spec == v.spec
    assert again.coeffs == v.coeffs
    assert to_json(again) == to_json(v)


def test_serialization_complex():
    v = FockVector(SPEC, {_key((2,), (1,)): 1.5 - 2.25j, BasisKey.vacuum(): 3.0})
    again = from_json(to_json(v))
    assert again.coeffs == {k: complex(c) for k, c in v.coeffs.items()}
