"""Threshold resonances of the walk for the critical case |phi22| == |omega22|.

At the band edges +-Lam the resolvent profile has a pointwise limit with
unit-modulus values on the defect column,

    psi_{+-Lam}(0, x2) = (+-sgn(phi21*phi22))**x2 * sgn(x2) * omega22/phi22,

which assembles into bounded, non-square-summable generalized eigenfunctions
at the unit-circle points m_{+-} = exp(i*arccos(+-Lam)) and their conjugates.
The module also provides the epsilon deficiency function, the J_{+-}
integrals that back the closed form above, and the residual identity used to
verify the limit construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SpectralDomainError, ThresholdConditionError
from .lattice import ScalarField, VectorState, Window, crop_state
from .operators import WalkOperator, assemble_from_profile
from .params import ALGEBRA_TOL, StrongShiftParameters
from .spectral import QuadratureSpec, eval_f, psi_lambda_column


def _sgn(x: float) -> int:
    # sgn(0) = 0, needed by the threshold profile at x2 = 0
    return (x > 0) - (x < 0)


def require_threshold(sp: StrongShiftParameters, tol: float = ALGEBRA_TOL) -> None:
    if not sp.is_threshold(tol):
        raise ThresholdConditionError(
            f"|phi22| = {abs(sp.phi22)} and |omega22| = {abs(sp.omega22)} must coincide"
        )


@dataclass(frozen=True)
class ThresholdPoint:
    """A band-edge point m = exp(+-i*arccos(sign*Lam)) on the unit circle."""

    sign: int  # +1 or -1: which band edge, lam -> sign*Lam
    conjugate: bool  # False: m, True: m*
    m: complex
    lam_limit: float

    @classmethod
    def make(cls, sp: StrongShiftParameters, sign: int, conjugate: bool = False) -> "ThresholdPoint":
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        lam = sign * sp.lam
        theta = math.acos(lam)
        m = complex(math.cos(theta), math.sin(theta))
        if conjugate:
            m = m.conjugate()
        return cls(sign=sign, conjugate=conjugate, m=m, lam_limit=lam)


def epsilon(
    lam: float,
    sp: StrongShiftParameters,
    quad: QuadratureSpec | None = None,
) -> float:
    """Deficiency epsilon(lam) = -<phi_q, psi_lam>/lam by quadrature.

    Algebraically equals 1 - f(lam)/lam; the closed-form route is available
    as :func:`epsilon_closed` for cross-checking.
    """
    quad = quad or QuadratureSpec()
    quad = quad.scaled_for_gap(abs(lam) - sp.lam)
    psi = psi_lambda_column(lam, np.array([-1, 1]), sp, quad)
    inner = sp.phi21 * sp.omega22 * psi[0] + sp.phi22 * sp.omega21 * psi[1]
    return float((-inner / lam).real)


def epsilon_closed(lam: float, sp: StrongShiftParameters) -> float:
    return 1.0 - eval_f(lam, sp, method="closed") / lam


def psi_threshold(sign: int, x: tuple[int, int], sp: StrongShiftParameters) -> float:
    """Band-edge profile psi_{sign*Lam}(x); unit modulus on its support.

    The support is {x1 = 0, x2 != 0}: the column indicator comes from the
    resolvent profile and the sgn(x2) factor kills x2 = 0.
    """
    require_threshold(sp)
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    x1, x2 = x
    if x1 != 0 or x2 == 0:
        return 0.0
    base = sign * _sgn(sp.phi21 * sp.phi22)
    return float(base ** x2 * _sgn(x2) * sp.omega22 / sp.phi22)


def psi_limit_quadrature(
    sign: int,
    x2: int,
    sp: StrongShiftParameters,
    deltas: tuple[float, ...] = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6),
    quad: QuadratureSpec | None = None,
) -> list[float]:
    """psi_{sign*(Lam+delta)}(0, x2) along a delta sequence toward the edge.

    Converges to :func:`psi_threshold` as delta -> 0; the node count is
    scaled with delta because the integrand's analyticity strip shrinks.
    """
    require_threshold(sp)
    quad = quad or QuadratureSpec()
    out = []
    for delta in deltas:
        if delta <= 0:
            raise SpectralDomainError(f"delta sequence must be positive, got {delta}")
        lam = sign * (sp.lam + delta)
        q = quad.scaled_for_gap(delta)
        out.append(float(psi_lambda_column(lam, np.array([x2]), sp, q)[0].real))
    return out


def j_quadrature(sign: int, x: int, quad: QuadratureSpec | None = None) -> float:
    """Trapezoid evaluation of J_{+-}(x) = int_0^pi sin(k) sin(x k)/(1 +- cos k) dk.

    The integrand has removable endpoint singularities; the analytic limits
    (2x at k=0 for the minus kernel, (-1)**(x+1)*2x at k=pi for the plus
    kernel) are substituted so the oracle stays independent of the closed
    form sgn(x)*(-+1)**(x+1)*pi it is used to check.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if x == 0:
        return 0.0
    quad = quad or QuadratureSpec()
    m = quad.nodes
    k = np.linspace(0.0, np.pi, m + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.sin(k) * np.sin(x * k) / (1.0 + sign * np.cos(k))
    if sign == 1:
        vals[0] = 0.0
        vals[-1] = (-1) ** (x + 1) * 2.0 * x
    else:
        vals[0] = 2.0 * x
        vals[-1] = 0.0
    trapezoid = getattr(np, "trapezoid", None) or np.trapz
    return float(trapezoid(vals, k))


@dataclass
class GeneralizedEigenfunction:
    """A window restriction of the bounded eigen-solution at a band edge."""

    point: ThresholdPoint
    state: VectorState


def threshold_profile(sign: int, window: Window, sp: StrongShiftParameters) -> ScalarField:
    """psi_{sign*Lam} - 1_{0} on the window (closed form, exact values)."""
    require_threshold(sp)
    g = ScalarField.zeros(window)
    x2 = window.axis()
    base = sign * _sgn(sp.phi21 * sp.phi22)
    vals = (float(base) ** x2) * np.sign(x2) * (sp.omega22 / sp.phi22)
    g.values[window.n, :] = vals
    g.values[window.n, window.n] -= 1.0
    return g


def build_generalized_eigenfunction(
    point: ThresholdPoint,
    sp: StrongShiftParameters,
    window: Window,
) -> GeneralizedEigenfunction:
    """Assemble the generalized eigenfunction for a threshold point.

    Satisfies the eigen-equation pointwise at every interior site; its
    window l2-norm grows like sqrt(window size) while the sup-norm stays
    bounded, which is exactly the non-square-summability signature.
    """
    # pad by one site so the edge ring of the window sees true profile values
    padded = Window(n=window.n + 1)
    op = WalkOperator(sp.params, padded)
    g = threshold_profile(point.sign, padded, sp)
    state = crop_state(assemble_from_profile(g, point.m, op), window)
    return GeneralizedEigenfunction(point=point, state=state)


def pointwise_residual(
    gen: GeneralizedEigenfunction, op: WalkOperator, margin: int = 1
) -> float:
    """Max over interior sites of ||(U Psi - m Psi)(x)||."""
    diff = op.apply_walk(gen.state).values - gen.point.m * gen.state.values
    mask = gen.state.window.interior_mask(margin)
    site_norm = np.sqrt(np.sum(np.abs(diff) ** 2, axis=2))
    return float(np.max(site_norm[mask]))


def h_lambda_profile(
    lam: float,
    window: Window,
    sp: StrongShiftParameters,
    quad: QuadratureSpec | None = None,
) -> tuple[ScalarField, float]:
    """(h_lam, eps) with h_lam = psi_lam - eps(lam)*1_{0}."""
    quad = (quad or QuadratureSpec()).scaled_for_gap(abs(lam) - sp.lam)
    h = ScalarField.zeros(window)
    col = psi_lambda_column(lam, window.axis(), sp, quad)
    h.values[window.n, :] = col
    eps = epsilon(lam, sp, quad)
    h.values[window.n, window.n] -= eps
    return h, eps


def phi_q_field(window: Window, sp: StrongShiftParameters) -> ScalarField:
    """The source vector phi_q, supported on {-e2, +e2}."""
    f = ScalarField.zeros(window)
    f.values[window.index(0, -1)] = sp.phi21 * sp.omega22
    f.values[window.index(0, 1)] = sp.phi22 * sp.omega21
    return f


def residual_identity_check(
    mu: complex,
    sp: StrongShiftParameters,
    window: Window,
    quad: QuadratureSpec | None = None,
) -> tuple[float, float, float]:
    """Verify (U - mu)Psi_mu = (eps - 1)*{2 mu S d* phi_q + (U - mu)(1 - mu S) d* 1_{0}}.

    Returns interior l2 norms (lhs, rhs, diff).  The interior margin is 2
    because (U - mu)(1 - mu S) moves support by up to two sites.
    """
    if abs(abs(mu) - 1.0) > 1e-10:
        raise SpectralDomainError(f"|mu| = {abs(mu)}, expected 1")
    lam = float(mu.real)
    if abs(lam) <= sp.lam:
        raise SpectralDomainError(f"Re(mu) = {lam} inside the essential band")
    quad = (quad or QuadratureSpec()).scaled_for_gap(abs(lam) - sp.lam)
    op = WalkOperator(sp.params, window)

    # lhs: Psi_mu from the explicit sitewise formula, assembled on a padded
    # window so the edge sites are exact, then cropped back
    padded = Window(n=window.n + 1)
    op_pad = WalkOperator(sp.params, padded)
    g = ScalarField.zeros(padded)
    col = psi_lambda_column(lam, padded.axis(), sp, quad)
    g.values[padded.n, :] = col
    g.values[padded.n, padded.n] -= 1.0
    psi_mu = crop_state(assemble_from_profile(g, mu, op_pad), window)
    lhs = op.apply_walk(psi_mu).values - mu * psi_mu.values

    # rhs: operator composition on the compactly supported sources
    eps = epsilon(lam, sp, quad)
    src = op.apply_boundary_adjoint(phi_q_field(window, sp))
    term1 = 2.0 * mu * op.apply_shift(src).values
    one0 = op.apply_boundary_adjoint(ScalarField.point_mass(window))
    bracket = VectorState(window, one0.values - mu * op.apply_shift(one0).values)
    term2 = op.apply_walk(bracket).values - mu * bracket.values
    rhs = (eps - 1.0) * (term1 + term2)

    mask = window.interior_mask(max(window.margin, 2))
    lhs_norm = float(np.linalg.norm(lhs[mask]))
    rhs_norm = float(np.linalg.norm(rhs[mask]))
    diff = float(np.linalg.norm((lhs - rhs)[mask]))
    return (lhs_norm, rhs_norm, diff)


@dataclass
class ResonanceReport:
    """Threshold diagnostics: band-edge points, growth table, residuals."""

    m_plus: complex
    m_minus: complex
    sup_norm: float
    l2_growth: list[tuple[int, float]]
    max_pointwise_residual: float
    epsilon_table: list[tuple[float, float]]

    def to_dict(self) -> dict:
        return {
            "m_plus": [self.m_plus.real, self.m_plus.imag],
            "m_minus": [self.m_minus.real, self.m_minus.imag],
            "sup_norm": self.sup_norm,
            "l2_growth": [[n, v] for n, v in self.l2_growth],
            "max_pointwise_residual": self.max_pointwise_residual,
            "epsilon_table": [[d, v] for d, v in self.epsilon_table],
        }


def resonance_report(
    sp: StrongShiftParameters,
    window: Window,
    quad: QuadratureSpec | None = None,
    growth_halfwidths: tuple[int, ...] = (32, 64, 128),
    deltas: tuple[float, ...] = (1e-2, 1e-3, 1e-4, 1e-5),
) -> ResonanceReport:
    require_threshold(sp)
    plus = ThresholdPoint.make(sp, +1)
    minus = ThresholdPoint.make(sp, -1)
    gen = build_generalized_eigenfunction(plus, sp, window)
    op = WalkOperator(sp.params, window)
    growth = []
    for n in growth_halfwidths:
        w = Window(n=n, margin=1)
        g = build_generalized_eigenfunction(plus, sp, w)
        growth.append((n, float(np.linalg.norm(g.state.values))))
    eps_table = [(d, abs(epsilon(sp.lam + d, sp, quad) - 1.0)) for d in deltas]
    return ResonanceReport(
        m_plus=plus.m,
        m_minus=minus.m,
        sup_norm=float(np.max(np.abs(gen.state.values))),
        l2_growth=growth,
        max_pointwise_residual=pointwise_residual(gen, op),
        epsilon_table=eps_table,
    )
