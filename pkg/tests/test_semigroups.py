"""Gauss-Weierstrass semigroups: quadrature vs closed forms, flow laws."""

import math

import numpy as np
import pytest

from focklab.fock_core import EVector, FockVector, TruncationSpec
from focklab.hardy_chi import f_transform_inverse
from focklab.hardy_w import (
    HardyWFunction,
    directional_derivative,
    random_evector,
    random_polynomial,
    residual,
)
from focklab.partitions import BasisKey
from focklab.semigroups import (
    GW_MULT,
    GW_SHIFT,
    gaussian_kernel,
    gaussian_moment,
    gaussian_raw_moment,
    gw_chi,
    gw_mult,
    gw_mult_oracle,
    gw_shift,
    gw_shift_quadrature,
    hermite_rule,
)

SPEC = TruncationSpec(6, 3)


def test_kernel_normalisation_and_variance():
    nodes, weights = hermite_rule(64)
    r = 0.8
    total = sum(w for w in weights) / math.sqrt(math.pi)
    assert total == pytest.approx(1.0, rel=1e-12)
    var = sum(w * (2 * math.sqrt(r) * x) ** 2 for x, w in zip(nodes, weights))
    var /= math.sqrt(math.pi)
    assert var == pytest.approx(2 * r, rel=1e-12)
    assert gaussian_kernel(r, 0.0) == pytest.approx(1 / math.sqrt(4 * math.pi * r))


def test_gaussian_moment_values():
    assert gaussian_moment(0.5, 1) == pytest.approx(1.0)  # variance 2r
    assert gaussian_moment(1.0, 2) == pytest.approx(12.0)
    assert gaussian_raw_moment(1.0, 3) == 0.0
    assert gaussian_raw_moment(2.0, 0) == 1.0
    # factorial identity 2(2k-1)!/(k-1)! == (2k)!/k!
    for k in range(1, 8):
        lhs = 2 * math.factorial(2 * k - 1) // math.factorial(k - 1)
        rhs = math.factorial(2 * k) // math.factorial(k)
        assert lhs == rhs
    with pytest.raises(ValueError):
        gaussian_moment(1.0, 0)


def test_moment_vs_quadrature():
    nodes, weights = hermite_rule(64)
    for r in (0.5, 1.0, 2.0):
        for k in range(1, 7):
            quad = sum(
                w * (2 * math.sqrt(r) * x) ** (2 * k) for x, w in zip(nodes, weights)
            ) / math.sqrt(math.pi)
            assert quad == pytest.approx(gaussian_moment(r, k), rel=1e-8)


def test_gw_mult_on_constant_is_exp_of_square():
    e1 = EVector.basis(1, 3)
    f = HardyWFunction(FockVector.vacuum(SPEC))
    r = 0.3
    out = gw_mult(f, e1, r)
    for k in range(SPEC.max_degree // 2 + 1):
        key = BasisKey.vacuum() if k == 0 else BasisKey.make((2 * k,), (1,))
        assert out.fock.coeffs[key] == pytest.approx(r**k / math.factorial(k))
    # odd powers cancel by node symmetry, up to roundoff dust
    assert abs(out.fock.coeffs.get(BasisKey.make((1,), (1,)), 0.0)) < 1e-12
    assert abs(out.fock.coeffs.get(BasisKey.make((3,), (1,)), 0.0)) < 1e-12


def test_gw_mult_quadrature_matches_oracle():
    rng = np.random.default_rng(0)
    for r in (0.1, 1.0):
        for _ in range(10):
            a = random_evector(3, rng, 0.8)
            f = random_polynomial(SPEC, rng, 4)
            assert residual(gw_mult(f, a, r), gw_mult_oracle(f, a, r)) < 1e-8


def test_gw_requires_positive_time():
    f = HardyWFunction(FockVector.vacuum(SPEC))
    e1 = EVector.basis(1, 3)
    for fn in (lambda: gw_mult(f, e1, 0.0), lambda: gw_shift(f, e1, -1.0)):
        with pytest.raises(ValueError):
            fn()


def test_gw_shift_heat_flow():
    e1 = EVector.basis(1, 3)
    f = HardyWFunction(FockVector.basis(SPEC, BasisKey.make((2,), (1,))))
    r = 0.25
    out = gw_shift(f, e1, r)
    assert out.fock.coeffs[BasisKey.make((2,), (1,))] == pytest.approx(1.0)
    assert out.fock.coeffs[BasisKey.vacuum()] == pytest.approx(2 * r)
    linear = HardyWFunction(FockVector.basis(SPEC, BasisKey.make((1,), (2,))))
    assert residual(gw_shift(linear, e1, r), linear) < 1e-14


def test_gw_shift_quadrature_route():
    rng = np.random.default_rng(1)
    for _ in range(10):
        a = random_evector(3, rng, 0.8)
        f = random_polynomial(SPEC, rng, 4)
        assert residual(gw_shift(f, a, 1.0), gw_shift_quadrature(f, a, 1.0)) < 1e-8


def test_semigroup_laws():
    rng = np.random.default_rng(2)
    a = random_evector(3, rng, 0.8)
    f = random_polynomial(SPEC, rng, 4)
    assert residual(gw_mult(gw_mult(f, a, 0.3), a, 0.5), gw_mult(f, a, 0.8)) < 1e-8
    assert residual(gw_shift(gw_shift(f, a, 0.3), a, 0.5), gw_shift(f, a, 0.8)) < 1e-8


def test_generator_slopes():
    rng = np.random.default_rng(3)
    a = random_evector(3, rng, 0.8)
    f = random_polynomial(SPEC, rng, 4)
    sq_deriv = directional_derivative(f, a, 2)
    errors = []
    for h in (1e-3, 1e-4):
        flow = gw_shift(f, a, h)
        slope = HardyWFunction.from_coefficients(
            (flow.coefficients() - f.coefficients()) / h, SPEC, f.pairing
        )
        errors.append(residual(slope, sq_deriv))
    assert errors[1] < errors[0] * 0.2  # at least first order


def test_transported_semigroups():
    rng = np.random.default_rng(4)
    a = random_evector(3, rng, 0.8)
    fw = random_polynomial(SPEC, rng, 4)
    f = f_transform_inverse(fw)
    for which in (GW_SHIFT, GW_MULT):
        two = gw_chi(gw_chi(f, a, 0.3, which), a, 0.5, which)
        one = gw_chi(f, a, 0.8, which)
        assert (two - one).norm() < 1e-8
    tiny = gw_chi(f, a, 1e-8, GW_SHIFT)
    assert (tiny - f).norm() < 1e-6
    with pytest.raises(ValueError):
        gw_chi(f, a, 0.5, "other")
