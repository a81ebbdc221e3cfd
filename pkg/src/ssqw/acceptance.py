"""Executable acceptance criteria.

Each criterion is a function returning (passed, detail).  The CLI ``verify``
subcommand and the pytest acceptance module both run this registry, so a
green test suite and a zero exit status mean the same thing.
"""

from __future__ import annotations

import math
import time

import numpy as np

from .dynamics import column_region, evolve
from .lattice import ScalarField, VectorState, Window
from .operators import WalkOperator
from .params import PSET_A, PSET_B, PSET_C, require_strong_shift
from .resonance import (
    ThresholdPoint,
    build_generalized_eigenfunction,
    epsilon,
    j_quadrature,
    pointwise_residual,
    psi_threshold,
)
from .spectral import (
    QuadratureSpec,
    build_eigenvector,
    eigen_residual,
    eval_f,
    find_f_zeros,
    lambda0_closed,
    unitary_eigenvalues,
)

#: second-half region-probability ratio PSET-A / PSET-C at T=128, pinned to
#: +-20% as a regression band.  Measured 3.16: PSET-C retains probability near
#: the defect through the finitely-supported +-1 eigenvectors that exist for
#: every one-defect coin, so the ratio saturates near 3.2 rather than the
#: order-of-magnitude separation criterion 10 also asserts.
REGIME_CONTRAST_BASELINE = 3.16


def _interior_random_state(window: Window, rng: np.random.Generator, margin: int = 2) -> VectorState:
    state = VectorState.random(window, rng)
    mask = window.interior_mask(margin)
    state.values[~mask] = 0.0
    state.values /= np.linalg.norm(state.values)
    return state


def criterion_1_operator_algebra() -> tuple[bool, str]:
    """Involutions, unitarity, boundary factorization, discriminant agreement."""
    rng = np.random.default_rng(11)
    window = Window(n=32, margin=2)
    op = WalkOperator(PSET_A, window)
    mask2 = window.interior_mask(2)
    worst: dict[str, float] = {}

    def track(key, value):
        worst[key] = max(worst.get(key, 0.0), value)

    for _ in range(20):
        psi = _interior_random_state(window, rng)
        ss = op.apply_shift(op.apply_shift(psi))
        track("S2", float(np.max(np.abs((ss.values - psi.values)[mask2]))))
        cc = op.apply_coin(op.apply_coin(psi))
        track("C2", float(np.max(np.abs((cc.values - psi.values)[mask2]))))
        n0 = np.linalg.norm(psi.values)
        for key, out in (
            ("normS", op.apply_shift(psi)),
            ("normC", op.apply_coin(psi)),
            ("normU", op.apply_walk(psi)),
        ):
            track(key, abs(float(np.linalg.norm(out.values)) - n0))
        track(
            "C_eq_2dd",
            float(
                np.max(
                    np.abs(
                        2.0 * op.apply_boundary_adjoint(op.apply_boundary(psi)).values
                        - psi.values
                        - op.apply_coin(psi).values
                    )
                )
            ),
        )
        f = ScalarField.random(window, rng)
        track("dd*", float(np.max(np.abs(op.apply_boundary(op.apply_boundary_adjoint(f)).values - f.values))))
        t_ref = op.apply_discriminant(f, method="via_dSd")
        t_closed = op.apply_discriminant(f, method="closed_form")
        track("T", float(np.max(np.abs((t_ref.values - t_closed.values)[mask2]))))
    ok = (
        worst["S2"] <= 1e-14
        and worst["C2"] <= 1e-14
        and worst["normS"] <= 1e-12
        and worst["normC"] <= 1e-12
        and worst["normU"] <= 1e-12
        and worst["dd*"] <= 1e-14
        and worst["C_eq_2dd"] <= 1e-12
        and worst["T"] <= 1e-12
    )
    detail = ", ".join(f"{k}={v:.2e}" for k, v in sorted(worst.items()))
    return ok, detail


def _gap_samples(sp, per_side: int = 25, offset: float = 0.01) -> np.ndarray:
    pos = np.linspace(sp.lam + offset, 1.0, per_side)
    return np.concatenate([-pos[::-1], pos])


def criterion_2_f_agreement() -> tuple[bool, str]:
    """Closed form vs 1D and 2D quadrature on 50 samples per parameter set."""
    start = time.perf_counter()
    quad = QuadratureSpec(4096)
    worst1 = worst2 = 0.0
    for params in (PSET_A, PSET_B):
        sp = require_strong_shift(params)
        for lam in _gap_samples(sp):
            fc = eval_f(lam, sp, method="closed")
            worst1 = max(worst1, abs(fc - eval_f(lam, sp, method="quad1d", quad=quad)))
            worst2 = max(worst2, abs(fc - eval_f(lam, sp, method="quad2d", quad=quad)))
    elapsed = time.perf_counter() - start
    ok = worst1 <= 1e-8 and worst2 <= 1e-6 and elapsed < 10.0
    return ok, f"|closed-quad1d|={worst1:.2e}, |closed-quad2d|={worst2:.2e}, {elapsed:.2f}s"


def _random_strong_shift(rng: np.random.Generator):
    """A random parameter set satisfying (C.1)-(C.3), away from the threshold."""
    while True:
        phi = rng.standard_normal(3)
        phi /= np.linalg.norm(phi)
        if np.min(np.abs(phi)) < 0.05:
            continue
        phi11, phi21, phi22 = phi
        w22 = rng.uniform(-0.95, 0.95)
        if abs(w22) < 0.05:
            continue
        w21 = -w22 * phi21 / phi22
        rest = 1.0 - w21 ** 2 - w22 ** 2
        if rest < 0.05 ** 2:
            continue
        w11 = math.copysign(math.sqrt(rest), rng.uniform(-1, 1))
        if abs(abs(phi22) - abs(w22)) < 1e-9:  # guard band around the threshold
            continue
        from .params import CoinParameters

        params = CoinParameters(
            p=(0.0, 0.0),
            q=(1, 1),
            phi=(phi11, 0.0, phi21, phi22),
            omega=(w11, 0.0, w21, w22),
        )
        return require_strong_shift(params)


def criterion_3_zeros() -> tuple[bool, str]:
    """Zero finding vs the closed formula, plus the randomized equivalence."""
    sp_a = require_strong_shift(PSET_A)
    zeros = find_f_zeros(sp_a)
    lam0 = lambda0_closed(sp_a)
    ok = (
        lam0 is not None
        and len(zeros) == 2
        and max(abs(z - ref) for z, ref in zip(zeros, sorted(lam0))) <= 1e-10
    )
    worst = (
        max(abs(z - ref) for z, ref in zip(zeros, sorted(lam0))) if lam0 and len(zeros) == 2 else float("inf")
    )
    for params in (PSET_B, PSET_C):
        sp = require_strong_shift(params)
        ok = ok and find_f_zeros(sp) == [] and lambda0_closed(sp) is None
    rng = np.random.default_rng(23)
    mismatches = 0
    for _ in range(100):
        sp = _random_strong_shift(rng)
        expect = abs(sp.phi22) < abs(sp.omega22)
        if bool(find_f_zeros(sp)) != expect:
            mismatches += 1
    ok = ok and mismatches == 0
    return ok, f"pset_a zero error={worst:.2e}, equivalence mismatches={mismatches}/100"


def criterion_4_eigen_residual() -> tuple[bool, str]:
    """Explicit eigenvectors of PSET-A at N=96: residual and support."""
    start = time.perf_counter()
    sp = require_strong_shift(PSET_A)
    window = Window(n=96, margin=1)
    op = WalkOperator(PSET_A, window)
    worst = 0.0
    support_ok = True
    for lam0 in find_f_zeros(sp):
        for mu in unitary_eigenvalues(lam0):
            vec = build_eigenvector(mu, sp, window)
            worst = max(worst, eigen_residual(vec, mu, op))
            off = np.abs(vec.values).copy()
            off[window.n, :, :] = 0.0  # x1 = 0
            off[window.n + 1, :, :] = 0.0  # x1 = 1
            support_ok = support_ok and float(np.max(off)) == 0.0
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8 and support_ok and elapsed < 15.0
    return ok, f"residual={worst:.2e}, support_ok={support_ok}, {elapsed:.2f}s"


def criterion_5_stationarity() -> tuple[bool, str]:
    """Eigenvector evolution: sitewise probabilities frozen, norm conserved."""
    sp = require_strong_shift(PSET_A)
    window = Window(n=96, margin=1)
    op = WalkOperator(PSET_A, window)
    lam0 = find_f_zeros(sp)[0]
    mu = unitary_eigenvalues(lam0)[0]
    psi = build_eigenvector(mu, sp, window).normalized()
    p0 = psi.site_probabilities()
    state = psi
    worst_dev = 0.0
    worst_norm = 0.0
    for _ in range(48):
        state = op.apply_walk(state)
        probs = state.site_probabilities()
        worst_dev = max(worst_dev, float(np.max(np.abs(probs - p0))))
        worst_norm = max(worst_norm, abs(float(np.sum(probs)) - 1.0))
    ok = worst_dev <= 1e-10 and worst_norm <= 1e-12
    return ok, f"max|P_t-P_0|={worst_dev:.2e}, norm drift={worst_norm:.2e}"


def criterion_6_generalized_eigenfunction() -> tuple[bool, str]:
    """Threshold eigen-solutions: pointwise residual, profile, norm growth."""
    sp = require_strong_shift(PSET_B)
    window = Window(n=128, margin=1)
    op = WalkOperator(PSET_B, window)
    worst_res = 0.0
    for sign in (1, -1):
        for conj in (False, True):
            point = ThresholdPoint.make(sp, sign, conj)
            gen = build_generalized_eigenfunction(point, sp, window)
            worst_res = max(worst_res, pointwise_residual(gen, op))
    profile_ok = True
    for sign in (1, -1):
        for x2 in range(-12, 13):
            val = psi_threshold(sign, (0, x2), sp)
            base = sign * int(np.sign(sp.phi21 * sp.phi22))
            expect = 0.0 if x2 == 0 else base ** x2 * np.sign(x2) * sp.omega22 / sp.phi22
            profile_ok = profile_ok and val == expect
            if x2 != 0:
                profile_ok = profile_ok and abs(abs(val) - abs(sp.omega22 / sp.phi22)) == 0.0
    point = ThresholdPoint.make(sp, +1)
    norms_by_n = []
    sup_ok = True
    for n in (32, 64, 128):
        gen = build_generalized_eigenfunction(point, sp, Window(n=n, margin=1))
        norms_by_n.append(float(np.linalg.norm(gen.state.values)))
        sup_ok = sup_ok and float(np.max(np.abs(gen.state.values))) <= 2.0
    growth_ok = all(
        b > a and b / a >= 1.3 for a, b in zip(norms_by_n, norms_by_n[1:])
    )
    ok = worst_res <= 1e-12 and profile_ok and growth_ok and sup_ok
    return ok, (
        f"residual={worst_res:.2e}, profile_ok={profile_ok}, "
        f"l2 growth={['%.3f' % v for v in norms_by_n]}, sup<=2: {sup_ok}"
    )


def criterion_7_epsilon_limit() -> tuple[bool, str]:
    """|eps - 1| decreases toward both band edges with square-root rate."""
    sp = require_strong_shift(PSET_B)
    deltas = np.array([1e-2, 1e-3, 1e-4, 1e-5])
    ok = True
    slopes = []
    for side in (1, -1):
        devs = np.array([abs(epsilon(side * (sp.lam + d), sp) - 1.0) for d in deltas])
        ok = ok and bool(np.all(np.diff(devs) < 0))
        slope = np.polyfit(np.log(deltas), np.log(devs), 1)[0]
        slopes.append(float(slope))
        ok = ok and 0.4 <= slope <= 0.6
    return ok, f"log-log slopes={['%.4f' % s for s in slopes]}"


def criterion_8_residual_identity() -> tuple[bool, str]:
    """Both sides of the off-edge residual identity agree; lhs -> 0."""
    from .resonance import residual_identity_check

    sp = require_strong_shift(PSET_B)
    window = Window(n=32, margin=2)
    ok = True
    worst_rel = 0.0
    for side in (1, -1):
        lhs_seq = []
        for k in (2, 3, 4, 5):
            lam = side * (sp.lam + 10.0 ** (-k))
            mu = unitary_eigenvalues(lam)[0]
            lhs, _, diff = residual_identity_check(mu, sp, window)
            worst_rel = max(worst_rel, diff / (1.0 + lhs))
            lhs_seq.append(lhs)
        ok = ok and all(b < a for a, b in zip(lhs_seq, lhs_seq[1:]))
    ok = ok and worst_rel <= 1e-10
    return ok, f"max relative diff={worst_rel:.2e}"


def criterion_9_j_oracle() -> tuple[bool, str]:
    """Quadrature J_{+-} against the closed form and antisymmetry."""
    quad = QuadratureSpec(65536)
    worst = 0.0
    anti = 0.0
    for sign in (1, -1):
        for x in range(-10, 11):
            val = j_quadrature(sign, x, quad)
            expect = 0.0 if x == 0 else np.sign(x) * (-sign) ** (x + 1) * math.pi
            worst = max(worst, abs(val - expect))
            anti = max(anti, abs(val + j_quadrature(sign, -x, quad)))
    ok = worst <= 1e-6 and anti <= 1e-12
    return ok, f"closed-form error={worst:.2e}, antisymmetry={anti:.2e}"


def _point_mass_second_half(params, steps: int = 128) -> float:
    window = Window(n=steps + 2, margin=1)
    op = WalkOperator(params, window)
    psi0 = VectorState.point_mass(window, (0, 0), 0)
    region = column_region(window, x1_values=(0, 1), x2_halfwidth=8)
    run = evolve(op, psi0, steps, region=region)
    return run.second_half_average()


def criterion_10_regime_contrast() -> tuple[bool, str]:
    """Localizing vs non-localizing second-half region averages at T=128."""
    avg_a = _point_mass_second_half(PSET_A)
    avg_c = _point_mass_second_half(PSET_C)
    ratio = avg_a / avg_c
    ok = ratio >= 10.0 and (
        0.8 * REGIME_CONTRAST_BASELINE <= ratio <= 1.2 * REGIME_CONTRAST_BASELINE
    )
    return ok, f"avg_a={avg_a:.4e}, avg_c={avg_c:.4e}, ratio={ratio:.2f} (baseline {REGIME_CONTRAST_BASELINE})"


CRITERIA = [
    ("1-operator-algebra", criterion_1_operator_algebra),
    ("2-f-agreement", criterion_2_f_agreement),
    ("3-zeros", criterion_3_zeros),
    ("4-eigen-residual", criterion_4_eigen_residual),
    ("5-stationarity", criterion_5_stationarity),
    ("6-generalized-eigenfunction", criterion_6_generalized_eigenfunction),
    ("7-epsilon-limit", criterion_7_epsilon_limit),
    ("8-residual-identity", criterion_8_residual_identity),
    ("9-j-oracle", criterion_9_j_oracle),
    ("10-regime-contrast", criterion_10_regime_contrast),
]


def run_all(printer=print) -> bool:
    all_ok = True
    for name, func in CRITERIA:
        ok, detail = func()
        all_ok = all_ok and ok
        printer(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return all_ok
