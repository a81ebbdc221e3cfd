"""Constituent operators: shift, coin, boundary maps, discriminants."""

import numpy as np
import pytest

from ssqw import PSET_A, VectorState, Window
from ssqw.errors import UnsupportedModeError
from ssqw.lattice import ScalarField
from ssqw.operators import WalkOperator
from ssqw.params import CoinParameters

WINDOW = Window(n=8, margin=1)


@pytest.fixture(scope="module")
def op():
    return WalkOperator(PSET_A, WINDOW)


def _nonzero_sites(values):
    idx = np.argwhere(np.abs(values) > 1e-15)
    n = (values.shape[0] - 1) // 2
    return sorted((int(i - n), int(j - n), int(c)) for i, j, c in idx)


def test_shift_moves_component_pair_axis1(op):
    # strong shift swaps components within a pair and translates by +e_j
    out = op.apply_shift(VectorState.point_mass(WINDOW, (0, 0), 0))
    assert _nonzero_sites(out.values) == [(1, 0, 1)]
    assert out.at(1, 0)[1] == 1.0


def test_shift_moves_component_pair_axis2(op):
    out = op.apply_shift(VectorState.point_mass(WINDOW, (0, 0), 2))
    assert _nonzero_sites(out.values) == [(0, 1, 3)]
    assert out.at(0, 1)[3] == 1.0


def test_shift_squares_to_identity(op):
    rng = np.random.default_rng(1)
    psi = VectorState.random(WINDOW, rng)
    ss = op.apply_shift(op.apply_shift(psi))
    mask = WINDOW.interior_mask(2)
    assert float(np.max(np.abs((ss.values - psi.values)[mask]))) <= 1e-14


def test_coin_matrices_are_reflections(op):
    for mat in (op.coin_bulk, op.coin_defect):
        assert np.max(np.abs(mat - mat.conj().T)) <= 1e-14
        assert np.max(np.abs(mat @ mat - np.eye(4))) <= 1e-14


def test_coin_fixes_chi_and_negates_complement(op):
    # chi field itself is fixed by the reflection
    chi_state = VectorState(WINDOW, op.chi.copy())
    out = op.apply_coin(chi_state)
    assert np.max(np.abs(out.values - chi_state.values)) <= 1e-14
    # a vector orthogonal to Phi everywhere, zeroed at the defect, is negated
    rng = np.random.default_rng(4)
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    v -= op.phi_vec * (op.phi_vec.conj() @ v)
    perp = VectorState.zeros(WINDOW)
    perp.values[:, :] = v
    perp.values[WINDOW.n, WINDOW.n] = 0.0
    out = op.apply_coin(perp)
    assert np.max(np.abs(out.values + perp.values)) <= 1e-13


def test_unitarity(op):
    # norm preservation holds for states vanishing near the window edge
    rng = np.random.default_rng(2)
    psi = VectorState.random(WINDOW, rng)
    psi.values[~WINDOW.interior_mask(2)] = 0.0
    psi = psi.normalized()
    for func in (op.apply_coin, op.apply_shift, op.apply_walk):
        assert abs(float(np.linalg.norm(func(psi).values)) - 1.0) <= 1e-12


def test_boundary_adjoint_of_point_mass(op):
    out = op.apply_boundary_adjoint(ScalarField.point_mass(WINDOW))
    np.testing.assert_allclose(out.at(0, 0), op.omega_vec, atol=1e-15)
    vals = out.values.copy()
    vals[WINDOW.n, WINDOW.n] = 0.0
    assert np.max(np.abs(vals)) == 0.0


def test_dd_star_identity(op):
    rng = np.random.default_rng(6)
    f = ScalarField.random(WINDOW, rng)
    back = op.apply_boundary(op.apply_boundary_adjoint(f))
    assert np.max(np.abs(back.values - f.values)) <= 1e-14


def test_coin_factorization(op):
    # C = 2 d* d - 1 sitewise
    rng = np.random.default_rng(8)
    psi = VectorState.random(WINDOW, rng)
    lhs = op.apply_coin(psi).values
    rhs = 2.0 * op.apply_boundary_adjoint(op.apply_boundary(psi)).values - psi.values
    assert np.max(np.abs(lhs - rhs)) <= 1e-12


def test_discriminant_on_defect_point_mass(op):
    # Tf for f = 1_{0}: the defect couples to its two axis-2 neighbors
    for method in ("via_dSd", "closed_form"):
        tf = op.apply_discriminant(ScalarField.point_mass(WINDOW), method=method)
        assert tf.at(0, -1) == pytest.approx(0.3, abs=1e-14)
        assert tf.at(0, 1) == pytest.approx(-0.3, abs=1e-14)
        vals = tf.values.copy()
        vals[WINDOW.n, WINDOW.n - 1] = 0.0
        vals[WINDOW.n, WINDOW.n + 1] = 0.0
        assert np.max(np.abs(vals)) <= 1e-15


def test_discriminant_methods_agree(op):
    rng = np.random.default_rng(12)
    f = ScalarField.random(WINDOW, rng)
    a = op.apply_discriminant(f, method="via_dSd")
    b = op.apply_discriminant(f, method="closed_form")
    mask = WINDOW.interior_mask(2)
    assert float(np.max(np.abs((a.values - b.values)[mask]))) <= 1e-12


def test_discriminant_equals_t0_away_from_defect(op):
    f = ScalarField.point_mass(WINDOW, (3, -4))
    tf = op.apply_discriminant(f)
    t0f = op.apply_t0(f)
    assert np.max(np.abs(tf.values - t0f.values)) <= 1e-14


def test_t0_on_point_mass(op):
    t0f = op.apply_t0(ScalarField.point_mass(WINDOW))
    assert t0f.at(0, -1) == pytest.approx(0.25, abs=1e-15)
    assert t0f.at(0, 1) == pytest.approx(0.25, abs=1e-15)
    vals = t0f.values.copy()
    vals[WINDOW.n, WINDOW.n - 1] = 0.0
    vals[WINDOW.n, WINDOW.n + 1] = 0.0
    assert np.max(np.abs(vals)) == 0.0


def test_t0_general_diagonal_term():
    params = CoinParameters(p=(1.0, 0.0), q=(0, 1), phi=PSET_A.phi, omega=PSET_A.omega)
    assert params.a_phi() == pytest.approx(0.5, abs=1e-15)
    op = WalkOperator(params, WINDOW)
    t0f = op.apply_t0(ScalarField.point_mass(WINDOW))
    assert t0f.at(0, 0) == pytest.approx(0.5, abs=1e-15)


def test_closed_form_requires_strong_shift():
    params = CoinParameters(p=(1.0, 0.0), q=(0, 1), phi=PSET_A.phi, omega=PSET_A.omega)
    op = WalkOperator(params, WINDOW)
    with pytest.raises(UnsupportedModeError):
        op.apply_discriminant(ScalarField.point_mass(WINDOW), method="closed_form")


def test_discriminants_self_adjoint(op):
    rng = np.random.default_rng(21)
    mask = WINDOW.interior_mask(2)
    for _ in range(5):
        f = ScalarField.random(WINDOW, rng)
        g = ScalarField.random(WINDOW, rng)
        f.values[~mask] = 0.0
        g.values[~mask] = 0.0
        for apply in (op.apply_discriminant, op.apply_t0):
            lhs = np.vdot(apply(f).values, g.values)
            rhs = np.vdot(f.values, apply(g).values)
            assert abs(lhs - rhs) <= 1e-12


def test_light_cone_growth(op):
    state = VectorState.point_mass(WINDOW, (0, 0), 0)
    for t in range(1, 6):
        state = op.apply_walk(state)
        assert state.support_radius(tol=1e-300) <= t
