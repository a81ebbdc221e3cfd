"""The gap function f, its zeros, and the explicit eigenvectors of the walk.

For strong-shift parameters the discriminant band is [-Lam, Lam] and the gap
function on [-1, -Lam) u (Lam, 1] is

    f(lam) = 2*phi21*phi22 * (a + (omega22^2/phi22^2) * (-a + sgn(a)*sqrt(a^2 - 1))),
    a = lam / (2*phi21*phi22).

f has zeros iff |phi22| < |omega22|, in which case they are the pair

    lam0_pm = +- 2*omega21*omega22 / sqrt(2*omega22^2/phi22^2 - 1),

and each zero lifts to the unit-circle eigenvalue pair exp(+-i*arccos(lam0))
of the walk.  Everything here is cross-checked by quadrature routes that stay
independent of the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from .errors import PreconditionError, SpectralDomainError
from .lattice import ScalarField, VectorState, Window, crop_state
from .operators import WalkOperator, assemble_from_profile
from .params import StrongShiftParameters


@dataclass(frozen=True)
class QuadratureSpec:
    """Uniform (periodic trapezoid) nodes on [0, 2*pi).

    The integrands are analytic and periodic for |lam| > Lam, so the node
    count buys geometric accuracy; convergence slows as lam approaches the
    band edge, hence configurable.
    """

    nodes: int = 4096

    def __post_init__(self):
        if self.nodes < 16:
            raise ValueError(f"need at least 16 quadrature nodes, got {self.nodes}")

    def scaled_for_gap(self, gap: float) -> "QuadratureSpec":
        """Node count adequate for lam at distance ``gap`` from the band edge.

        The integrand's analyticity strip shrinks like sqrt(gap); 64/sqrt(gap)
        nodes keep the trapezoid error at machine level.
        """
        if gap <= 0:
            raise SpectralDomainError(f"gap must be positive, got {gap}")
        return QuadratureSpec(nodes=max(self.nodes, int(math.ceil(64.0 / math.sqrt(gap)))))


def _require_in_gap(lam: float, sp: StrongShiftParameters) -> None:
    if abs(lam) > 1.0:
        raise SpectralDomainError(f"lam = {lam} outside [-1, 1]")
    if abs(lam) <= sp.lam:
        raise SpectralDomainError(
            f"lam = {lam} inside the essential band [-{sp.lam}, {sp.lam}]"
        )


def eval_f(
    lam: float,
    sp: StrongShiftParameters,
    method: str = "closed",
    quad: QuadratureSpec | None = None,
) -> float:
    """Evaluate the gap function by the closed form or a quadrature route."""
    _require_in_gap(lam, sp)
    if method == "closed":
        return _f_closed(lam, sp)
    quad = quad or QuadratureSpec()
    if method == "quad1d":
        # f = lam + <phi_q, psi_lam>; phi_q is supported on {+-e2}
        psi_m = psi_lambda(lam, (0, -1), sp, quad)
        psi_p = psi_lambda(lam, (0, 1), sp, quad)
        val = lam + sp.phi21 * sp.omega22 * psi_m + sp.phi22 * sp.omega21 * psi_p
        return float(val.real)
    if method == "quad2d":
        return _f_quad2d(lam, sp, quad)
    raise ValueError(f"unknown eval_f method {method!r}")


def _f_closed(lam, sp):
    b = 2.0 * sp.phi21 * sp.phi22
    a = lam / b
    w = sp.omega22 ** 2 / sp.phi22 ** 2
    return b * (a + w * (-a + np.sign(a) * np.sqrt(a * a - 1.0)))


def _f_closed_vec(lams: np.ndarray, sp: StrongShiftParameters) -> np.ndarray:
    b = 2.0 * sp.phi21 * sp.phi22
    a = lams / b
    w = sp.omega22 ** 2 / sp.phi22 ** 2
    return b * (a + w * (-a + np.sign(a) * np.sqrt(a * a - 1.0)))


def _f_quad2d(lam: float, sp: StrongShiftParameters, quad: QuadratureSpec) -> float:
    """Tensor trapezoid of |phi_q_hat(k)|^2 / (T0_hat(k) - lam) over the torus.

    Uses the general symbols (defect-free hopping coefficients), not the
    strong-shift reduction, so it is an independent check of the closed form.
    A reduced per-axis node count keeps the 2D grid affordable.
    """
    p = sp.params
    m = max(64, quad.nodes // 16)
    k = 2.0 * np.pi * np.arange(m) / m
    e = np.exp(1j * k)
    t0 = np.full((m, m), p.a_phi(), dtype=complex)
    phat = np.zeros((m, m), dtype=complex)
    for j, orient in ((0, "row"), (1, "col")):
        c = p.q[j] * np.conj(p.phi[2 * j]) * p.phi[2 * j + 1]
        hop = c * e + np.conj(c * e)
        src = (
            p.q[j] * p.omega[2 * j + 1] * np.conj(p.phi[2 * j]) * e
            + np.conj(p.q[j]) * p.omega[2 * j] * np.conj(p.phi[2 * j + 1]) * np.conj(e)
        )
        if orient == "row":
            t0 += hop[:, None]
            phat += src[:, None]
        else:
            t0 += hop[None, :]
            phat += src[None, :]
    integrand = np.abs(phat) ** 2 / (t0.real - lam)
    return float(lam + np.mean(integrand))


def psi_lambda_column(
    lam: float,
    x2: np.ndarray,
    sp: StrongShiftParameters,
    quad: QuadratureSpec | None = None,
) -> np.ndarray:
    """Resolvent profile psi_lam(0, x2) for an array of x2 values.

    Periodic trapezoid quadrature of
    2i*omega22*phi21*sin(k) / (2*phi21*phi22*cos(k) - lam) * exp(i*k*x2).
    Values are real up to quadrature residue, decay geometrically in |x2|
    with ratio |a| - sqrt(a^2 - 1), and vanish identically off the x1 = 0
    column (handled by the callers).
    """
    _require_in_gap(lam, sp)
    quad = quad or QuadratureSpec()
    m = quad.nodes
    k = 2.0 * np.pi * np.arange(m) / m
    num = 2j * sp.omega22 * sp.phi21 * np.sin(k)
    den = 2.0 * sp.phi21 * sp.phi22 * np.cos(k) - lam
    weight = num / den
    phases = np.exp(1j * np.outer(np.asarray(x2), k))
    return phases @ weight / m


def psi_lambda(
    lam: float,
    x: tuple[int, int],
    sp: StrongShiftParameters,
    quad: QuadratureSpec | None = None,
) -> complex:
    """psi_lam at a single site; zero whenever x1 != 0."""
    x1, x2 = x
    if x1 != 0:
        _require_in_gap(lam, sp)
        return 0.0 + 0.0j
    return complex(psi_lambda_column(lam, np.array([x2]), sp, quad)[0])


def lambda0_closed(sp: StrongShiftParameters) -> tuple[float, float] | None:
    """The closed-form zero pair, or None when |phi22| >= |omega22|."""
    if not abs(sp.phi22) < abs(sp.omega22):
        return None
    root = math.sqrt(2.0 * sp.omega22 ** 2 / sp.phi22 ** 2 - 1.0)
    val = 2.0 * sp.omega21 * sp.omega22 / root
    return (val, -val)


def find_f_zeros(
    sp: StrongShiftParameters, grid: int = 2001, clip: float = 1e-9
) -> list[float]:
    """Bracket-and-bisect zeros of the closed-form f on both gap components.

    Endpoints are clipped to Lam + clip because f is defined on components
    open at the band edge.  Bisection (not Newton) because f has square-root
    behavior near the edge.
    """
    zeros: list[float] = []
    lo = sp.lam + clip
    if lo >= 1.0:
        return zeros
    for lams in (np.linspace(-1.0, -lo, grid), np.linspace(lo, 1.0, grid)):
        fv = _f_closed_vec(lams, sp)
        for i in range(len(lams) - 1):
            a, b = fv[i], fv[i + 1]
            if a == 0.0:
                zeros.append(float(lams[i]))
            elif a * b < 0.0:
                zeros.append(
                    float(bisect(lambda t: _f_closed(t, sp), lams[i], lams[i + 1], xtol=1e-13))
                )
        if fv[-1] == 0.0:
            zeros.append(float(lams[-1]))
    return sorted(zeros)


def unitary_eigenvalues(lam: float) -> tuple[complex, complex]:
    """Lift lam in [-1, 1] to the conjugate pair exp(+-i*arccos(lam))."""
    if abs(lam) > 1.0:
        raise SpectralDomainError(f"lam = {lam} outside [-1, 1]")
    mu = complex(lam, math.sqrt(max(0.0, 1.0 - lam * lam)))
    return (mu, mu.conjugate())


def eigen_profile(
    lam: float,
    window: Window,
    sp: StrongShiftParameters,
    quad: QuadratureSpec | None = None,
) -> ScalarField:
    """psi_lam - 1_{0} as a scalar field (supported on the x1 = 0 column)."""
    g = ScalarField.zeros(window)
    col = psi_lambda_column(lam, window.axis(), sp, quad)
    g.values[window.n, :] = col
    g.values[window.n, window.n] -= 1.0
    return g


def build_eigenvector(
    mu0: complex,
    sp: StrongShiftParameters,
    window: Window,
    quad: QuadratureSpec | None = None,
    f_tol: float = 1e-8,
) -> VectorState:
    """Assemble the explicit eigenvector of U for the eigenvalue mu0.

    mu0 must be unit-modulus with Re(mu0) a zero of f.  The result is
    un-normalized (the formula carries no canonical normalization); its
    support lies inside {x1 in {0, 1}}.
    """
    lam0 = float(mu0.real)
    if abs(abs(mu0) - 1.0) > 1e-10:
        raise PreconditionError(f"|mu0| = {abs(mu0)}, expected 1")
    fval = eval_f(lam0, sp, method="closed")
    if abs(fval) > f_tol:
        raise PreconditionError(f"Re(mu0) = {lam0} is not a zero of f (f = {fval})")
    # assemble on a one-site-padded window so edge sites read true profile
    # values instead of zero fill, then crop back
    padded = Window(n=window.n + 1)
    op = WalkOperator(sp.params, padded)
    g = eigen_profile(lam0, padded, sp, quad)
    return crop_state(assemble_from_profile(g, mu0, op), window)


def eigen_residual(state: VectorState, mu: complex, op: WalkOperator, margin: int = 1) -> float:
    """Relative interior l2 residual ||U psi - mu psi|| / ||psi||."""
    diff = op.apply_walk(state).values - mu * state.values
    mask = state.window.interior_mask(margin)
    num = float(np.linalg.norm(diff[mask]))
    den = float(np.linalg.norm(state.values))
    return num / den if den else 0.0


def decay_window_halfwidth(lam0: float, sp: StrongShiftParameters, target: float = 1e-12) -> int:
    """Smallest N with r**N <= target, r the geometric decay ratio of psi."""
    a = abs(lam0 / (2.0 * sp.phi21 * sp.phi22))
    r = a - math.sqrt(a * a - 1.0)
    if r <= 0:
        return 1
    return max(1, int(math.ceil(math.log(target) / math.log(r))))


@dataclass
class SpectralReport:
    """Band data, zeros of f, lifted eigenvalues, and residual diagnostics."""

    lam_band: float
    essential_interval: tuple[float, float]
    zeros: list[float] = field(default_factory=list)
    eigenvalues: list[complex] = field(default_factory=list)
    residuals: list[float] = field(default_factory=list)
    eigenvector_norms: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "band_half_width": self.lam_band,
            "essential_interval": list(self.essential_interval),
            "zeros": self.zeros,
            "eigenvalues": [[mu.real, mu.imag] for mu in self.eigenvalues],
            "residuals": self.residuals,
            "eigenvector_norms": self.eigenvector_norms,
        }


def spectral_report(
    sp: StrongShiftParameters,
    window: Window | None = None,
    quad: QuadratureSpec | None = None,
    grid: int = 2001,
) -> SpectralReport:
    """Find zeros, lift them to unit-circle eigenvalues, and verify residuals."""
    zeros = find_f_zeros(sp, grid=grid)
    report = SpectralReport(
        lam_band=sp.lam,
        essential_interval=(-sp.lam, sp.lam),
        zeros=zeros,
    )
    if not zeros:
        return report
    if window is None:
        n = max(decay_window_halfwidth(z, sp) for z in zeros) + 2
        window = Window(n=n, margin=1)
    op = WalkOperator(sp.params, window)
    for lam0 in zeros:
        for mu in unitary_eigenvalues(lam0):
            vec = build_eigenvector(mu, sp, window, quad)
            report.eigenvalues.append(mu)
            report.residuals.append(eigen_residual(vec, mu, op))
            report.eigenvector_norms.append(float(np.linalg.norm(vec.values)))
    return report
