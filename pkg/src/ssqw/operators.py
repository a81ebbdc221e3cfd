"""Exact application of the walk's constituent operators on a window.

One step of the walk is U = S C: a sitewise coin reflection followed by the
axis-wise shift.  The shift mixes component pair (0, 1) along axis 1 and
pair (2, 3) along axis 2:

    out0(x) = p1*v0(x) + q1*v1(x + e1)
    out1(x) = conj(q1)*v0(x - e1) - p1*v1(x)
    out2(x) = p2*v2(x) + q2*v3(x + e2)
    out3(x) = conj(q2)*v2(x - e2) - p2*v3(x)

Out-of-window reads are zero.  One application moves amplitude at most one
site per axis, so results on the interior (margin >= 1 per application)
coincide with the infinite-lattice operator.
"""

from __future__ import annotations

import numpy as np

from .errors import UnsupportedModeError
from .lattice import ScalarField, VectorState, Window
from .params import CoinParameters, StrongShiftParameters, validate_parameters


def shift_plus(a: np.ndarray, axis: int) -> np.ndarray:
    """b[x] = a[x + e_axis] with zero fill at the far edge."""
    b = np.zeros_like(a)
    src = [slice(None)] * a.ndim
    dst = [slice(None)] * a.ndim
    src[axis] = slice(1, None)
    dst[axis] = slice(None, -1)
    b[tuple(dst)] = a[tuple(src)]
    return b


def shift_minus(a: np.ndarray, axis: int) -> np.ndarray:
    """b[x] = a[x - e_axis] with zero fill at the near edge."""
    b = np.zeros_like(a)
    src = [slice(None)] * a.ndim
    dst = [slice(None)] * a.ndim
    src[axis] = slice(None, -1)
    dst[axis] = slice(1, None)
    b[tuple(dst)] = a[tuple(src)]
    return b


def _reflection(vec: np.ndarray) -> np.ndarray:
    """2|v><v| - 1 for a unit vector v in C^4."""
    return 2.0 * np.outer(vec, vec.conj()) - np.eye(4)


class WalkOperator:
    """All constituent operators of the walk bound to one parameter set.

    The coin is one-defect: chi(x) is the bulk vector Phi except at the
    origin, where it is Omega, so only two 4x4 reflection matrices are ever
    needed.  All applications are out-of-place; inputs are never mutated.
    """

    def __init__(self, params: CoinParameters, window: Window):
        validate_parameters(params, mode="general")  # not enforced, but cheap sanity
        self.params = params
        self.window = window
        self.phi_vec = np.array(params.phi, dtype=complex)
        self.omega_vec = np.array(params.omega, dtype=complex)
        self.coin_bulk = _reflection(self.phi_vec)
        self.coin_defect = _reflection(self.omega_vec)
        # chi field for the boundary maps: Phi everywhere, Omega at the origin
        size = window.size
        self.chi = np.broadcast_to(self.phi_vec, (size, size, 4)).copy()
        self.chi[window.n, window.n] = self.omega_vec

    # -- constituent operators ------------------------------------------------

    def apply_shift(self, state: VectorState) -> VectorState:
        p1, p2 = self.params.p
        q1, q2 = self.params.q
        v = state.values
        out = np.empty_like(v)
        out[..., 0] = p1 * v[..., 0] + q1 * shift_plus(v[..., 1], axis=0)
        out[..., 1] = np.conj(q1) * shift_minus(v[..., 0], axis=0) - p1 * v[..., 1]
        out[..., 2] = p2 * v[..., 2] + q2 * shift_plus(v[..., 3], axis=1)
        out[..., 3] = np.conj(q2) * shift_minus(v[..., 2], axis=1) - p2 * v[..., 3]
        return VectorState(state.window, out)

    def apply_coin(self, state: VectorState) -> VectorState:
        v = state.values
        out = np.einsum("ab,ijb->ija", self.coin_bulk, v)
        n = state.window.n
        out[n, n] = self.coin_defect @ v[n, n]
        return VectorState(state.window, out)

    def apply_walk(self, state: VectorState) -> VectorState:
        return self.apply_shift(self.apply_coin(state))

    # -- boundary maps and discriminants -------------------------------------

    def apply_boundary(self, state: VectorState) -> ScalarField:
        """d: (d Psi)(x) = <chi(x), Psi(x)>."""
        vals = np.einsum("ijc,ijc->ij", self.chi.conj(), state.values)
        return ScalarField(state.window, vals)

    def apply_boundary_adjoint(self, f: ScalarField) -> VectorState:
        """d*: (d* f)(x) = chi(x) f(x)."""
        return VectorState(f.window, self.chi * f.values[:, :, None])

    def apply_discriminant(self, f: ScalarField, method: str = "via_dSd") -> ScalarField:
        """T = d S d*, either by composition or by the strong-shift closed form.

        The closed form T = chi21 L2 chi22 + chi22 L2* chi21 is only valid
        under the strong-shift conditions.
        """
        if method == "via_dSd":
            return self.apply_boundary(self.apply_shift(self.apply_boundary_adjoint(f)))
        if method == "closed_form":
            report = validate_parameters(self.params, mode="strong_shift")
            if report.strong is None:
                raise UnsupportedModeError(
                    "closed-form discriminant needs strong-shift parameters: "
                    + "; ".join(report.issues)
                )
            chi21 = self.chi[..., 2]
            chi22 = self.chi[..., 3]
            vals = chi21 * shift_plus(chi22 * f.values, axis=1)
            vals += chi22 * shift_minus(chi21 * f.values, axis=1)
            return ScalarField(f.window, vals)
        raise ValueError(f"unknown discriminant method {method!r}")

    def apply_t0(self, f: ScalarField) -> ScalarField:
        """Free discriminant: diagonal a_phi plus one hopping term per axis."""
        p = self.params
        out = p.a_phi() * f.values.astype(complex)
        for j, axis in ((0, 0), (1, 1)):
            c = p.q[j] * np.conj(p.phi[2 * j]) * p.phi[2 * j + 1]
            if c != 0:
                out += c * shift_plus(f.values, axis=axis)
                out += np.conj(c) * shift_minus(f.values, axis=axis)
        return ScalarField(f.window, out)


def assemble_from_profile(
    g: ScalarField, mu: complex, op: WalkOperator
) -> VectorState:
    """Sitewise assembly of (1 - mu S) d* g for a scalar profile g.

    This is the explicit four-component formula used for eigenvectors (with
    g = psi_lambda - 1_{0}) and for generalized eigenfunctions (with the
    threshold profile).  It reads only chi entries and g values, so it stays
    independent of apply_walk, which serves as the residual oracle.
    """
    chi = op.chi
    gv = g.values
    out = np.empty((g.window.size, g.window.size, 4), dtype=complex)
    out[..., 0] = chi[..., 0] * gv
    out[..., 1] = -mu * shift_minus(chi[..., 0] * gv, axis=0)
    out[..., 2] = chi[..., 2] * gv - mu * shift_plus(chi[..., 3] * gv, axis=1)
    out[..., 3] = chi[..., 3] * gv - mu * shift_minus(chi[..., 2] * gv, axis=1)
    return VectorState(g.window, out)
