"""Threshold resonance: epsilon, band-edge profiles, generalized eigenfunctions."""

import math

import numpy as np
import pytest

from ssqw import PSET_A, PSET_B, QuadratureSpec, Window, require_strong_shift
from ssqw.errors import SpectralDomainError, ThresholdConditionError
from ssqw.lattice import ScalarField
from ssqw.operators import WalkOperator, assemble_from_profile
from ssqw.resonance import (
    ThresholdPoint,
    build_generalized_eigenfunction,
    epsilon,
    epsilon_closed,
    h_lambda_profile,
    j_quadrature,
    phi_q_field,
    pointwise_residual,
    psi_limit_quadrature,
    psi_threshold,
    residual_identity_check,
    resonance_report,
    threshold_profile,
)
from ssqw.spectral import find_f_zeros, unitary_eigenvalues

SP_A = require_strong_shift(PSET_A)
SP_B = require_strong_shift(PSET_B)


def test_threshold_points():
    plus = ThresholdPoint.make(SP_B, +1)
    minus = ThresholdPoint.make(SP_B, -1)
    assert abs(abs(plus.m) - 1.0) <= 1e-15
    assert plus.m.real == pytest.approx(SP_B.lam, abs=1e-15)
    assert minus.m.real == pytest.approx(-SP_B.lam, abs=1e-15)
    conj = ThresholdPoint.make(SP_B, +1, conjugate=True)
    assert conj.m == plus.m.conjugate()
    with pytest.raises(ValueError):
        ThresholdPoint.make(SP_B, 0)


def test_epsilon_agrees_with_closed_form():
    for lam in (0.7, 0.9, -0.8, 1.0, -1.0):
        assert epsilon(lam, SP_B) == pytest.approx(epsilon_closed(lam, SP_B), abs=1e-10)


def test_epsilon_examples():
    # at a zero of f the deficiency is exactly 1
    lam0 = find_f_zeros(SP_A)[1]
    assert epsilon(lam0, SP_A) == pytest.approx(1.0, abs=1e-10)
    # PSET-B at lam = 1: 1 - sqrt(3)/2
    assert epsilon(1.0, SP_B) == pytest.approx(1.0 - 0.5 * math.sqrt(3.0), abs=1e-10)


def test_epsilon_limit_toward_edges():
    for side in (1, -1):
        devs = [abs(epsilon(side * (SP_B.lam + d), SP_B) - 1.0) for d in (1e-2, 1e-3, 1e-4)]
        assert all(b < a for a, b in zip(devs, devs[1:]))


def test_epsilon_domain():
    with pytest.raises(SpectralDomainError):
        epsilon(0.2, SP_B)


def test_psi_threshold_values():
    # sgn(phi21*phi22) = +1 and omega22/phi22 = 1 for PSET-B
    assert psi_threshold(+1, (0, 3), SP_B) == 1.0
    assert psi_threshold(-1, (0, 3), SP_B) == -1.0
    assert psi_threshold(-1, (0, 2), SP_B) == 1.0
    assert psi_threshold(+1, (0, -4), SP_B) == -1.0
    assert psi_threshold(+1, (2, 5), SP_B) == 0.0
    assert psi_threshold(+1, (0, 0), SP_B) == 0.0
    for x2 in range(-8, 9):
        if x2 != 0:
            assert abs(psi_threshold(+1, (0, x2), SP_B)) == 1.0


def test_psi_threshold_requires_threshold():
    with pytest.raises(ThresholdConditionError):
        psi_threshold(+1, (0, 1), SP_A)
    with pytest.raises(ThresholdConditionError):
        build_generalized_eigenfunction(ThresholdPoint.make(SP_B, +1), SP_A, Window(n=8))


def test_psi_limit_quadrature_converges():
    for sign, x2 in ((+1, 1), (+1, 3), (-1, 2), (+1, -2)):
        target = psi_threshold(sign, (0, x2), SP_B)
        seq = psi_limit_quadrature(sign, x2, SP_B)
        errs = [abs(v - target) for v in seq]
        assert all(b < a for a, b in zip(errs, errs[1:]))
        assert errs[-1] <= 1e-2
    # x2 = 0: odd integrand, identically zero along the sequence
    assert max(abs(v) for v in psi_limit_quadrature(+1, 0, SP_B)) <= 1e-12


def test_j_quadrature_closed_form():
    quad = QuadratureSpec(4096)
    assert j_quadrature(+1, 2, quad) == pytest.approx(-math.pi, abs=1e-12)
    assert j_quadrature(-1, 2, quad) == pytest.approx(math.pi, abs=1e-12)
    assert j_quadrature(+1, 0, quad) == 0.0
    for sign in (1, -1):
        for x in range(-6, 7):
            expect = 0.0 if x == 0 else np.sign(x) * (-sign) ** (x + 1) * math.pi
            assert j_quadrature(sign, x, quad) == pytest.approx(expect, abs=1e-10)
            # antisymmetry
            assert j_quadrature(sign, x, quad) == pytest.approx(
                -j_quadrature(sign, -x, quad), abs=1e-12
            )


def test_generalized_eigenfunction_pointwise():
    window = Window(n=32, margin=1)
    op = WalkOperator(PSET_B, window)
    for sign in (1, -1):
        for conj in (False, True):
            point = ThresholdPoint.make(SP_B, sign, conj)
            gen = build_generalized_eigenfunction(point, SP_B, window)
            assert pointwise_residual(gen, op) <= 1e-12
            # spot check a bulk site off the defect column
            diff = op.apply_walk(gen.state).values - point.m * gen.state.values
            i, j = window.index(5, 7)
            assert float(np.linalg.norm(diff[i, j])) <= 1e-13


def test_generalized_eigenfunction_growth():
    point = ThresholdPoint.make(SP_B, +1)
    l2s = []
    for n in (32, 64, 128):
        gen = build_generalized_eigenfunction(point, SP_B, Window(n=n, margin=1))
        l2 = float(np.linalg.norm(gen.state.values))
        l2s.append(l2)
        assert l2 >= 0.5 * math.sqrt(2 * n + 1)
        assert float(np.max(np.abs(gen.state.values))) <= 2.0
    assert all(b > a for a, b in zip(l2s, l2s[1:]))


def test_threshold_profile_field():
    window = Window(n=6)
    g = threshold_profile(+1, window, SP_B)
    for x2 in range(-6, 7):
        expect = psi_threshold(+1, (0, x2), SP_B) - (1.0 if x2 == 0 else 0.0)
        assert g.at(0, x2) == expect
    assert np.max(np.abs(np.delete(g.values, window.n, axis=0))) == 0.0


def test_residual_identity():
    window = Window(n=24, margin=2)
    mu = unitary_eigenvalues(0.9)[0]
    lhs, rhs, diff = residual_identity_check(mu, SP_B, window)
    assert diff <= 1e-10 * (1.0 + lhs)
    assert rhs == pytest.approx(lhs, rel=1e-9)
    # lhs -> 0 approaching the band edge
    lhs_seq = []
    for k in (2, 3, 4):
        mu = unitary_eigenvalues(SP_B.lam + 10.0 ** (-k))[0]
        lhs_seq.append(residual_identity_check(mu, SP_B, window)[0])
    assert all(b < a for a, b in zip(lhs_seq, lhs_seq[1:]))


def test_residual_identity_domain():
    window = Window(n=8)
    with pytest.raises(SpectralDomainError):
        residual_identity_check(unitary_eigenvalues(0.3)[0], SP_B, window)
    with pytest.raises(SpectralDomainError):
        residual_identity_check(2.0 + 0j, SP_B, window)


def test_h_lambda_discriminant_identity():
    # (T - lam) h_lam = (1 - eps(lam)) phi_q on the interior
    window = Window(n=16, margin=2)
    op = WalkOperator(PSET_B, window)
    for lam in (0.7, 0.9, -0.8):
        h, eps = h_lambda_profile(lam, window, SP_B)
        lhs = op.apply_discriminant(h).values - lam * h.values
        rhs = (1.0 - eps) * phi_q_field(window, SP_B).values
        mask = window.interior_mask(2)
        assert float(np.max(np.abs((lhs - rhs)[mask]))) <= 1e-10


def test_h_lambda_decomposition_consistency():
    # Psi_mu built from psi - 1_0 equals the h_lambda route
    # (1 - mu S)d* h + (eps - 1)(1 - mu S)d* 1_0
    window = Window(n=16, margin=1)
    op = WalkOperator(PSET_B, window)
    lam = 0.85
    mu = unitary_eigenvalues(lam)[0]
    h, eps = h_lambda_profile(lam, window, SP_B)
    one0 = ScalarField.point_mass(window)
    route_a = assemble_from_profile(h, mu, op).values + (eps - 1.0) * assemble_from_profile(
        one0, mu, op
    ).values
    g = ScalarField(window, h.values + (eps - 1.0) * one0.values)
    route_b = assemble_from_profile(g, mu, op).values
    assert float(np.max(np.abs(route_a - route_b))) <= 1e-12


def test_phi_q_support():
    window = Window(n=4)
    f = phi_q_field(window, SP_B)
    assert f.at(0, -1) == pytest.approx(SP_B.phi21 * SP_B.omega22, abs=1e-15)
    assert f.at(0, 1) == pytest.approx(SP_B.phi22 * SP_B.omega21, abs=1e-15)
    vals = f.values.copy()
    vals[window.n, window.n - 1] = 0.0
    vals[window.n, window.n + 1] = 0.0
    assert np.max(np.abs(vals)) == 0.0


def test_resonance_report():
    report = resonance_report(SP_B, Window(n=32, margin=1))
    assert report.m_plus.real == pytest.approx(SP_B.lam, abs=1e-15)
    assert report.max_pointwise_residual <= 1e-12
    assert report.sup_norm <= 2.0
    growth = [v for _, v in report.l2_growth]
    assert all(b > a for a, b in zip(growth, growth[1:]))
    devs = [v for _, v in report.epsilon_table]
    assert all(b < a for a, b in zip(devs, devs[1:]))
