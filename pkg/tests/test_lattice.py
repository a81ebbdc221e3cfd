"""Window geometry, state containers, and norms."""

import math

import numpy as np
import pytest

from ssqw import ScalarField, VectorState, Window, norms
from ssqw.lattice import crop_state


def test_window_geometry():
    w = Window(n=4, margin=1)
    assert w.size == 9
    assert w.site_count == 81
    assert w.index(0, 0) == (4, 4)
    assert w.index(-4, 4) == (0, 8)
    assert w.contains(4, -4) and not w.contains(5, 0)
    with pytest.raises(IndexError):
        w.index(5, 0)


def test_window_validation():
    with pytest.raises(ValueError):
        Window(n=0)
    with pytest.raises(ValueError):
        Window(n=3, margin=3)


def test_interior_mask_counts():
    w = Window(n=4)
    assert int(np.sum(w.interior_mask(0))) == 81
    assert int(np.sum(w.interior_mask(1))) == 49
    assert int(np.sum(w.interior_mask(2))) == 25


def test_norms_single_entry():
    w = Window(n=3)
    state = VectorState.point_mass(w, (1, -2), 0)
    assert norms(state) == (1.0, 1.0)


def test_norms_zero_state():
    assert norms(VectorState.zeros(Window(n=2))) == (0.0, 0.0)


def test_norms_unit_column():
    # 17 unit entries on the x1 = 0 column of an N=8 window
    w = Window(n=8)
    state = VectorState.zeros(w)
    state.values[w.n, :, 0] = 1.0
    l2, sup = norms(state)
    assert l2 == pytest.approx(math.sqrt(17.0), abs=1e-14)
    assert sup == 1.0


def test_sup_le_l2_random():
    rng = np.random.default_rng(7)
    for _ in range(20):
        l2, sup = norms(VectorState.random(Window(n=6), rng))
        assert sup <= l2
        l2, sup = norms(ScalarField.random(Window(n=6), rng))
        assert sup <= l2


def test_support_radius():
    w = Window(n=6)
    state = VectorState.point_mass(w, (2, -3), 1)
    assert state.support_radius() == 3
    assert VectorState.zeros(w).support_radius() == 0


def test_site_probabilities_sum():
    rng = np.random.default_rng(3)
    state = VectorState.random(Window(n=5), rng)
    assert float(np.sum(state.site_probabilities())) == pytest.approx(1.0, abs=1e-12)


def test_normalized():
    w = Window(n=2)
    state = VectorState.zeros(w)
    state.values[0, 0, 0] = 3.0
    assert norms(state.normalized()) == (1.0, 1.0)
    with pytest.raises(ValueError):
        VectorState.zeros(w).normalized()


def test_crop_state_central_block():
    rng = np.random.default_rng(9)
    big = VectorState.random(Window(n=5), rng)
    small = crop_state(big, Window(n=3))
    assert small.window.n == 3
    np.testing.assert_array_equal(small.values, big.values[2:9, 2:9])
    with pytest.raises(ValueError):
        crop_state(small, Window(n=5))


def test_shape_validation():
    with pytest.raises(ValueError):
        VectorState(Window(n=2), np.zeros((5, 5)))
    with pytest.raises(ValueError):
        ScalarField(Window(n=2), np.zeros((5, 5, 4)))
