"""Coefficient and Monte Carlo models of the Hardy space over unitaries."""

import math

import numpy as np
import pytest

from focklab import polycalc as pc
from focklab.fock_core import EVector, FockVector, GRAM_W, TruncationSpec
from focklab.hardy_chi import (
    HardyChiFunction,
    PhiSample,
    chi_mult_generator,
    chi_shift_generator,
    closed_form_level_one,
    f_transform,
    f_transform_inverse,
    mc_f_transform,
    mc_pair_integral,
    mult_group_chi,
    norm_convergence_study,
    phi_eval,
    phi_map,
    phi_map_adjoint,
    shift_group_chi,
)
from focklab.hardy_w import (
    directional_derivative,
    evaluate,
    multiply_exp,
    random_evector,
    random_polynomial,
    residual,
    shift,
)
from focklab.operators import MONOMIAL, W_ADJOINT
from focklab.partitions import BasisKey, w_norm_sq
from focklab.unitary_haar import embed_stabilized, haar_sample

SPEC = TruncationSpec(6, 3)


def _random_chi(rng, spec=SPEC, degree=None):
    f = random_polynomial(spec, rng, degree if degree is not None else spec.max_degree)
    return HardyChiFunction(spec, {k: complex(v) for k, v in f.fock.coeffs.items()})


def test_norms_use_weighted_table():
    k = BasisKey.make((1, 1), (1, 2))
    f = HardyChiFunction.basis(SPEC, k, 2.0)
    assert f.norm_sq() == pytest.approx(4 * float(w_norm_sq(k.diagram)))


def test_phi_map_is_isometric_conjugation():
    rng = np.random.default_rng(0)
    psi = random_polynomial(SPEC, rng, 5).fock
    f = phi_map(psi)
    assert f.norm() == pytest.approx(psi.norm(GRAM_W))
    back = phi_map_adjoint(f)
    assert (back - psi).norm(GRAM_W) < 1e-14
    two = FockVector.basis(SPEC, BasisKey.make((1,), (1,)), 1 + 2j)
    assert phi_map(two).coeffs[BasisKey.make((1,), (1,))] == 1 - 2j


def test_f_transform_examples():
    const = HardyChiFunction.constant(SPEC)
    g = f_transform(const)
    x = EVector((0.3, -0.2, 0.1))
    assert evaluate(g, x) == pytest.approx(1.0)
    basis = HardyChiFunction.basis(SPEC, BasisKey.make((1,), (1,)))
    gb = f_transform(basis)
    assert gb.fock.coeffs == {BasisKey.make((1,), (1,)): (1 + 0j)}
    assert evaluate(gb, x) == pytest.approx(0.3)


def test_f_transform_isometry_and_inverse():
    rng = np.random.default_rng(1)
    for _ in range(100):
        f = _random_chi(rng)
        g = f_transform(f)
        assert g.norm() == pytest.approx(f.norm(), abs=1e-12)
        back = f_transform_inverse(g)
        assert (back - f).norm() < 1e-14


def test_intertwining_mult_to_shift():
    rng = np.random.default_rng(2)
    pairs = {GRAM_W: W_ADJOINT, "h": MONOMIAL}
    for pairing, variant in pairs.items():
        for _ in range(10):
            a = random_evector(3, rng, 0.8)
            f = _random_chi(rng)
            lhs = shift(f_transform(f, pairing), a)
            rhs = f_transform(mult_group_chi(f, a, variant), pairing)
            assert residual(lhs, rhs) < 1e-10


def test_intertwining_mismatched_variant_fails():
    rng = np.random.default_rng(3)
    a = random_evector(3, rng, 0.8)
    f = _random_chi(rng)
    lhs = shift(f_transform(f, GRAM_W), a)
    rhs = f_transform(mult_group_chi(f, a, MONOMIAL), GRAM_W)
    assert residual(lhs, rhs) > 1e-3


def test_intertwining_shift_to_mult():
    rng = np.random.default_rng(4)
    for _ in range(10):
        a = random_evector(3, rng, 0.8)
        f = _random_chi(rng, degree=SPEC.max_degree - 3)
        lhs = multiply_exp(f_transform(f, pc.TAYLOR), a)
        rhs = f_transform(shift_group_chi(f, a), pc.TAYLOR)
        assert residual(lhs, rhs) < 1e-10


def test_transported_commutation():
    rng = np.random.default_rng(5)
    for _ in range(20):
        a = random_evector(3, rng, 0.8)
        b = random_evector(3, rng, 0.8)
        f = _random_chi(rng, degree=4)
        lhs = f_transform_inverse(
            directional_derivative(f_transform(chi_shift_generator(f, b)), a)
        )
        rhs = chi_shift_generator(
            f_transform_inverse(directional_derivative(f_transform(f), a)), b
        )
        diff = lhs - rhs - f.scale(complex(a.inner(b)))
        assert diff.norm() < 1e-10


def test_generator_sandwich_matches_transport():
    rng = np.random.default_rng(6)
    for pairing, variant in ((GRAM_W, W_ADJOINT), ("h", MONOMIAL)):
        for _ in range(10):
            a = random_evector(3, rng, 0.8)
            f = _random_chi(rng, degree=5)
            via_sandwich = chi_mult_generator(f, a, variant)
            via_transform = f_transform_inverse(
                directional_derivative(f_transform(f, pairing), a).with_pairing(pc.TAYLOR)
            )
            assert (via_sandwich - via_transform).norm() < 1e-10


def test_phi_eval_examples():
    ident = embed_stabilized(np.eye(3, dtype=complex), 4)
    assert phi_eval(ident, BasisKey.vacuum()) == 1.0
    assert phi_eval(ident, BasisKey.make((4,), (1,)), level=3) == pytest.approx(1.0)
    assert phi_eval(ident, BasisKey.make((1,), (2,))) == pytest.approx(0.0)
    swap = embed_stabilized(np.array([[0, 1], [1, 0]], dtype=complex), 3)
    assert phi_eval(swap, BasisKey.make((1,), (2,)), level=2) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        phi_eval(swap, BasisKey.make((1,), (3,)), level=2)


def test_phi_sample_row_mass():
    rng = np.random.default_rng(7)
    u = embed_stabilized(haar_sample(3, rng), 4)
    sample = PhiSample.from_unitary(u, 3, 5)
    assert np.sum(np.abs(sample.values) ** 2) <= 1 + 1e-12
    key = BasisKey.make((2, 1), (1, 2))
    assert sample.eval_key(key) == pytest.approx(phi_eval(u, key) ** 0 * phi_eval(u, key))


def test_mc_closed_forms_level_one():
    x = EVector((0.7 - 0.2j, 0.0, 0.0))
    const = HardyChiFunction.constant(SPEC)
    est = mc_f_transform(const, x, 1, 40000, seed=11)
    assert est.z_against(1.0) < 4.0
    k1 = BasisKey.make((1,), (1,))
    est1 = mc_f_transform(HardyChiFunction.basis(SPEC, k1), x, 1, 40000, seed=12)
    assert est1.z_against(closed_form_level_one(k1, x)) < 4.0
    # first-row mean vanishes
    est0 = mc_f_transform(HardyChiFunction.basis(SPEC, k1), EVector.zero(3), 1, 40000, seed=13)
    assert est0.z_against(0.0) < 4.0


def test_mc_taylor_terms():
    x = EVector((0.5 + 0.1j, 0.0, 0.0))
    k2 = BasisKey.make((2,), (1,))
    est = mc_f_transform(HardyChiFunction.basis(SPEC, k2), x, 1, 20000, seed=14)
    term = est.taylor_terms[2]
    assert term.z_against(x.coords[0] ** 2) < 4.0


def test_mc_requires_indices_within_level():
    f = HardyChiFunction.basis(SPEC, BasisKey.make((1,), (2,)))
    with pytest.raises(ValueError):
        mc_f_transform(f, EVector.zero(3), 1, 1000, seed=0)
    with pytest.raises(ValueError):
        mc_f_transform(
            HardyChiFunction.constant(SPEC), EVector((0, 1.0, 0)), 1, 1000, seed=0
        )


def test_stderr_scaling():
    x = EVector((0.6, 0.0, 0.0))
    const = HardyChiFunction.constant(SPEC)
    prev = None
    for samples in (5000, 10000, 20000):
        est = mc_f_transform(const, x, 1, samples, seed=15)
        if prev is not None:
            assert est.stderr / prev == pytest.approx(1 / math.sqrt(2), abs=0.08)
        prev = est.stderr


def test_norm_convergence_study_decays():
    key = BasisKey.make((1,), (1,))
    rows = norm_convergence_study(key, (1, 2, 4), 20000, seed=16)
    assert rows[0]["empirical"] == pytest.approx(1.0, abs=1e-12)
    assert rows[1]["empirical"] == pytest.approx(0.5, abs=0.02)
    assert rows[2]["empirical"] == pytest.approx(0.25, abs=0.02)
    assert all(r["limit_value"] == 1.0 for r in rows)


def test_mc_orthogonality():
    est = mc_pair_integral(
        BasisKey.make((2,), (1,)), BasisKey.make((1, 1), (1, 2)), 2, 30000, seed=17
    )
    assert est.z_against(0.0) < 4.0
