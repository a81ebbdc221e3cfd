"""Time evolution and localization probes.

The walk moves amplitude exactly one site per axis per step, so a run of T
steps started from a state supported within radius r0 is exact on the window
as long as T <= N - r0 - 1.  evolve() refuses runs that would let the light
cone touch the edge rather than silently approximating; for initial states
with no exact finite support (truncated eigenvectors, whose tail is at
machine level) the check can be disabled and probability conservation serves
as the runtime guard.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import LightConeViolationError
from .lattice import VectorState, Window
from .operators import WalkOperator


@dataclass
class EvolutionRun:
    """Recorded probability data for one evolution."""

    steps: int
    site_probes: list[tuple[int, int]]
    site_series: np.ndarray  # shape (steps + 1, len(site_probes))
    region_series: np.ndarray  # shape (steps + 1,)
    total_norm: np.ndarray  # shape (steps + 1,), l2 norm per step
    final_state: VectorState

    def second_half_average(self) -> float:
        half = self.steps // 2
        return float(np.mean(self.region_series[half:]))


def region_mask(window: Window, sites: list[tuple[int, int]] | np.ndarray | None) -> np.ndarray:
    """Boolean site mask from an explicit site list (None -> empty region)."""
    if sites is None:
        return np.zeros((window.size, window.size), dtype=bool)
    if isinstance(sites, np.ndarray) and sites.dtype == bool:
        return sites
    mask = np.zeros((window.size, window.size), dtype=bool)
    for x1, x2 in sites:
        mask[window.index(x1, x2)] = True
    return mask


def column_region(window: Window, x1_values=(0, 1), x2_halfwidth: int | None = None) -> np.ndarray:
    """Mask for {x1 in x1_values, |x2| <= x2_halfwidth} (full columns if None)."""
    mask = np.zeros((window.size, window.size), dtype=bool)
    for x1 in x1_values:
        mask[x1 + window.n, :] = True
    if x2_halfwidth is not None:
        cut = np.zeros(window.size, dtype=bool)
        lo, hi = window.n - x2_halfwidth, window.n + x2_halfwidth
        cut[lo : hi + 1] = True
        mask &= cut[None, :]
    return mask


def evolve(
    op: WalkOperator,
    initial: VectorState,
    steps: int,
    probes: list[tuple[int, int]] | None = None,
    region: np.ndarray | None = None,
    enforce_light_cone: bool = True,
) -> EvolutionRun:
    """Repeated application of the walk with per-step probability records."""
    window = initial.window
    if steps < 0:
        raise ValueError(f"steps must be nonnegative, got {steps}")
    if enforce_light_cone:
        r0 = initial.support_radius()
        if steps > window.n - r0 - 1:
            raise LightConeViolationError(
                f"{steps} steps from support radius {r0} would reach the edge "
                f"of window N={window.n}; allowed maximum is {window.n - r0 - 1}"
            )
    probes = probes or []
    mask = region if region is not None else np.zeros((window.size, window.size), dtype=bool)
    probe_idx = [window.index(*site) for site in probes]

    site_series = np.empty((steps + 1, len(probes)))
    region_series = np.empty(steps + 1)
    total_norm = np.empty(steps + 1)

    state = initial.copy()
    for t in range(steps + 1):
        probs = state.site_probabilities()
        for k, (i1, i2) in enumerate(probe_idx):
            site_series[t, k] = probs[i1, i2]
        region_series[t] = float(np.sum(probs[mask]))
        total_norm[t] = float(np.sqrt(np.sum(probs)))
        if t < steps:
            state = op.apply_walk(state)

    return EvolutionRun(
        steps=steps,
        site_probes=list(probes),
        site_series=site_series,
        region_series=region_series,
        total_norm=total_norm,
        final_state=state,
    )


def localization_probe(
    op: WalkOperator,
    initial: VectorState,
    steps: int,
    region: np.ndarray,
    enforce_light_cone: bool = True,
) -> tuple[np.ndarray, float]:
    """Region probability series and its average over the second half."""
    run = evolve(
        op,
        initial,
        steps,
        region=region,
        enforce_light_cone=enforce_light_cone,
    )
    return run.region_series, run.second_half_average()
