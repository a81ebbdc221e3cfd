"""Coin parameters, validation, and the named reference parameter sets.

The walk is specified by ``(p, q, Phi, Omega)``: two shift parameter pairs
with ``p_j**2 + |q_j|**2 == 1``, a bulk coin vector ``Phi`` and a defect coin
vector ``Omega``, both unit vectors in C^4.  The strong-shift subclass
additionally requires

  (C.1)  omega12 == phi12 == 0  and  omega21*phi22 + omega22*phi21 == 0
  (C.2)  omega11, omega21, omega22, phi11, phi21, phi22 real and nonzero
  (C.3)  p1 == p2 == 0  and  q1 == q2 == 1

under which the essential band of the discriminant is [-Lam, Lam] with
``Lam = 2*|phi21*phi22|``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, ParameterValidationError

ALGEBRA_TOL = 1e-12


@dataclass(frozen=True)
class CoinParameters:
    """General walk parameters (p, q, Phi, Omega), no conditions assumed."""

    p: tuple[float, float]
    q: tuple[complex, complex]
    phi: tuple[complex, complex, complex, complex]
    omega: tuple[complex, complex, complex, complex]

    # entry accessors, indexed (row, column) as phi[(i-1)*2 + (j-1)]
    @property
    def phi11(self) -> complex:
        return self.phi[0]

    @property
    def phi12(self) -> complex:
        return self.phi[1]

    @property
    def phi21(self) -> complex:
        return self.phi[2]

    @property
    def phi22(self) -> complex:
        return self.phi[3]

    @property
    def omega11(self) -> complex:
        return self.omega[0]

    @property
    def omega12(self) -> complex:
        return self.omega[1]

    @property
    def omega21(self) -> complex:
        return self.omega[2]

    @property
    def omega22(self) -> complex:
        return self.omega[3]

    def a_phi(self) -> float:
        """Diagonal constant of the free discriminant."""
        return sum(
            self.p[j] * (abs(self.phi[2 * j]) ** 2 - abs(self.phi[2 * j + 1]) ** 2)
            for j in (0, 1)
        )

    def a_omega(self) -> float:
        return sum(
            self.p[j] * (abs(self.omega[2 * j]) ** 2 - abs(self.omega[2 * j + 1]) ** 2)
            for j in (0, 1)
        )


@dataclass(frozen=True)
class StrongShiftParameters:
    """Validated strong-shift parameters with the band half-width cached.

    Construct via :func:`validate_parameters`; direct construction skips the
    condition checks.
    """

    params: CoinParameters
    lam: float  # 2*|phi21*phi22|, half-width of the essential band of T

    @property
    def phi11(self) -> float:
        return self.params.phi11.real

    @property
    def phi21(self) -> float:
        return self.params.phi21.real

    @property
    def phi22(self) -> float:
        return self.params.phi22.real

    @property
    def omega11(self) -> float:
        return self.params.omega11.real

    @property
    def omega21(self) -> float:
        return self.params.omega21.real

    @property
    def omega22(self) -> float:
        return self.params.omega22.real

    def bands(self) -> tuple[tuple[float, float], tuple[float, float]]:
        """The two spectral-gap components [-1, -Lam) and (Lam, 1]."""
        return ((-1.0, -self.lam), (self.lam, 1.0))

    def in_gap(self, lam: float) -> bool:
        return self.lam < abs(lam) <= 1.0

    def is_threshold(self, tol: float = ALGEBRA_TOL) -> bool:
        return abs(abs(self.phi22) - abs(self.omega22)) <= tol


@dataclass
class ValidationReport:
    """Per-constraint outcome of :func:`validate_parameters`."""

    mode: str
    checks: dict[str, bool] = field(default_factory=dict)
    issues: list[str] = field(default_factory=list)
    strong: StrongShiftParameters | None = None

    @property
    def ok(self) -> bool:
        return not self.issues

    def note(self) -> str:
        if self.strong is not None:
            p = self.strong
            if abs(p.phi22) >= abs(p.omega22):
                return "no zeros expected: |phi22| >= |omega22|"
            return "zeros expected: |phi22| < |omega22|"
        return ""


def _check(report: ValidationReport, name: str, ok: bool, message: str) -> None:
    report.checks[name] = bool(ok)
    if not ok:
        report.issues.append(message)


def validate_parameters(
    params: CoinParameters, mode: str = "general", tol: float = ALGEBRA_TOL
) -> ValidationReport:
    """Check the parameter constraints and optionally refine to strong shift.

    ``mode='general'`` checks only the normalizations; ``mode='strong_shift'``
    additionally checks (C.1)-(C.3) and, on success, attaches a
    ``StrongShiftParameters`` with the band half-width cached.
    """
    if mode not in ("general", "strong_shift"):
        raise ValueError(f"unknown validation mode {mode!r}")
    report = ValidationReport(mode=mode)

    for j in (0, 1):
        r = params.p[j] ** 2 + abs(params.q[j]) ** 2
        _check(
            report,
            f"shift_norm_{j + 1}",
            abs(r - 1.0) <= tol,
            f"p{j + 1}^2 + |q{j + 1}|^2 = {r!r}, expected 1",
        )
    for name, vec in (("phi", params.phi), ("omega", params.omega)):
        n = math.sqrt(sum(abs(c) ** 2 for c in vec))
        _check(report, f"{name}_norm", abs(n - 1.0) <= tol, f"||{name}|| = {n!r}, expected 1")

    if mode == "general":
        return report

    c1 = (
        abs(params.omega12) <= tol
        and abs(params.phi12) <= tol
        and abs(params.omega21 * params.phi22 + params.omega22 * params.phi21) <= tol
    )
    _check(report, "C1", c1, "(C.1) requires omega12 = phi12 = 0 and omega21*phi22 + omega22*phi21 = 0")

    entries = {
        "omega11": params.omega11,
        "omega21": params.omega21,
        "omega22": params.omega22,
        "phi11": params.phi11,
        "phi21": params.phi21,
        "phi22": params.phi22,
    }
    c2 = all(abs(v.imag) <= tol and abs(v) > tol for v in entries.values())
    _check(report, "C2", c2, "(C.2) requires omega11, omega21, omega22, phi11, phi21, phi22 real and nonzero")

    c3 = params.p == (0.0, 0.0) and params.q[0] == 1 and params.q[1] == 1
    _check(report, "C3", c3, "(C.3) requires p = (0, 0) and q = (1, 1) exactly")

    if report.ok:
        lam = 2.0 * abs(params.phi21 * params.phi22)
        _check(report, "band", 0.0 < lam < 1.0, f"band half-width {lam!r} outside (0, 1)")
        if report.ok:
            report.strong = StrongShiftParameters(params=params, lam=lam)
    return report


def require_strong_shift(params: CoinParameters) -> StrongShiftParameters:
    """Validate in strong-shift mode, raising on any violation."""
    report = validate_parameters(params, mode="strong_shift")
    if report.strong is None:
        raise ParameterValidationError("; ".join(report.issues))
    return report.strong


def essential_interval(params: CoinParameters) -> tuple[float, float]:
    """Essential spectrum of the discriminant, a symmetric band around a_phi."""
    half = 2.0 * sum(
        abs(params.q[j] * params.phi[2 * j] * params.phi[2 * j + 1]) for j in (0, 1)
    )
    center = params.a_phi()
    return (center - half, center + half)


# ---------------------------------------------------------------------------
# Reference parameter sets and file I/O

_SQ2 = 1.0 / math.sqrt(2.0)

#: localizing: |phi22| < |omega22|, two zeros of f
PSET_A = CoinParameters(
    p=(0.0, 0.0),
    q=(1, 1),
    phi=(_SQ2, 0.0, 0.5, 0.5),
    omega=(math.sqrt(0.28), 0.0, -0.6, 0.6),
)

#: threshold: |phi22| == |omega22|, resonance regime
PSET_B = CoinParameters(
    p=(0.0, 0.0),
    q=(1, 1),
    phi=(_SQ2, 0.0, 0.5, 0.5),
    omega=(_SQ2, 0.0, -0.5, 0.5),
)

#: non-localizing: |phi22| > |omega22|, no zeros
PSET_C = CoinParameters(
    p=(0.0, 0.0),
    q=(1, 1),
    phi=(_SQ2, 0.0, 0.5, 0.5),
    omega=(math.sqrt(0.68), 0.0, -0.4, 0.4),
)

PRESETS: dict[str, CoinParameters] = {
    "pset_a": PSET_A,
    "pset_b": PSET_B,
    "pset_c": PSET_C,
}


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def params_to_dict(params: CoinParameters) -> dict:
    return {
        "p": [params.p[0], params.p[1]],
        "q": [_pair(params.q[0]), _pair(params.q[1])],
        "phi": [_pair(c) for c in params.phi],
        "omega": [_pair(c) for c in params.omega],
    }


def params_from_dict(data: dict) -> CoinParameters:
    try:
        p = tuple(float(v) for v in data["p"])
        q = tuple(complex(re, im) for re, im in data["q"])
        phi = tuple(complex(re, im) for re, im in data["phi"])
        omega = tuple(complex(re, im) for re, im in data["omega"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed parameter data: {exc}") from exc
    if len(p) != 2 or len(q) != 2 or len(phi) != 4 or len(omega) != 4:
        raise ConfigError("parameter arrays must have lengths p:2, q:2, phi:4, omega:4")
    return CoinParameters(p=p, q=q, phi=phi, omega=omega)


def save_parameters(params: CoinParameters, path: str | Path) -> None:
    Path(path).write_text(json.dumps(params_to_dict(params), indent=2) + "\n")


def load_parameters(source: str | Path) -> CoinParameters:
    """Load parameters from a preset name (pset_a/b/c) or a JSON file path."""
    key = str(source).lower()
    if key in PRESETS:
        return PRESETS[key]
    path = Path(source)
    if not path.exists():
        raise ConfigError(f"unknown preset or missing parameter file: {source}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    return params_from_dict(data)
