"""Finite lattice windows and state containers.

A window truncates Z^2 to the square {-N..N}^2 with dense row-major storage;
site (x1, x2) lives at array index (x1 + N, x2 + N).  Reads outside the
window are zero (Dirichlet truncation), which together with the walk's strict
light cone makes interior dynamics exact rather than approximate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Window:
    """Square lattice truncation {-n..n}^2 with an interior margin."""

    n: int
    margin: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"window half-width must be >= 1, got {self.n}")
        if not 0 <= self.margin < self.n:
            raise ValueError(f"margin must satisfy 0 <= margin < n, got {self.margin}")

    @property
    def size(self) -> int:
        return 2 * self.n + 1

    @property
    def site_count(self) -> int:
        return self.size ** 2

    def index(self, x1: int, x2: int) -> tuple[int, int]:
        if not self.contains(x1, x2):
            raise IndexError(f"site ({x1}, {x2}) outside window |x| <= {self.n}")
        return (x1 + self.n, x2 + self.n)

    def contains(self, x1: int, x2: int) -> bool:
        return abs(x1) <= self.n and abs(x2) <= self.n

    def axis(self) -> np.ndarray:
        """Coordinate values -n..n along one axis."""
        return np.arange(-self.n, self.n + 1)

    def interior_mask(self, margin: int | None = None) -> np.ndarray:
        """Boolean mask of sites at distance >= margin from the edge."""
        m = self.margin if margin is None else margin
        mask = np.zeros((self.size, self.size), dtype=bool)
        if m < self.size:
            mask[m : self.size - m, m : self.size - m] = True
        return mask


@dataclass
class VectorState:
    """C^4-valued field on a window: values[i1, i2, c] with c in 0..3."""

    window: Window
    values: np.ndarray

    def __post_init__(self):
        expected = (self.window.size, self.window.size, 4)
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != expected:
            raise ValueError(f"values shape {self.values.shape}, expected {expected}")

    @classmethod
    def zeros(cls, window: Window) -> "VectorState":
        return cls(window, np.zeros((window.size, window.size, 4), dtype=complex))

    @classmethod
    def point_mass(cls, window: Window, site: tuple[int, int], component: int) -> "VectorState":
        state = cls.zeros(window)
        i1, i2 = window.index(*site)
        state.values[i1, i2, component] = 1.0
        return state

    @classmethod
    def random(cls, window: Window, rng: np.random.Generator) -> "VectorState":
        shape = (window.size, window.size, 4)
        v = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        v /= np.linalg.norm(v)
        return cls(window, v)

    def at(self, x1: int, x2: int) -> np.ndarray:
        return self.values[self.window.index(x1, x2)]

    def copy(self) -> "VectorState":
        return VectorState(self.window, self.values.copy())

    def site_probabilities(self) -> np.ndarray:
        """||Psi(x)||^2 per site, shape (size, size)."""
        return np.sum(np.abs(self.values) ** 2, axis=2)

    def support_radius(self, tol: float = 0.0) -> int:
        """Largest sup-norm distance of a site with amplitude above tol."""
        probs = np.sqrt(self.site_probabilities())
        idx = np.argwhere(probs > tol)
        if idx.size == 0:
            return 0
        return int(np.max(np.abs(idx - self.window.n)))

    def normalized(self) -> "VectorState":
        n = np.linalg.norm(self.values)
        if n == 0:
            raise ValueError("cannot normalize the zero state")
        return VectorState(self.window, self.values / n)


@dataclass
class ScalarField:
    """C-valued field on a window: values[i1, i2]."""

    window: Window
    values: np.ndarray

    def __post_init__(self):
        expected = (self.window.size, self.window.size)
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != expected:
            raise ValueError(f"values shape {self.values.shape}, expected {expected}")

    @classmethod
    def zeros(cls, window: Window) -> "ScalarField":
        return cls(window, np.zeros((window.size, window.size), dtype=complex))

    @classmethod
    def point_mass(cls, window: Window, site: tuple[int, int] = (0, 0)) -> "ScalarField":
        f = cls.zeros(window)
        f.values[window.index(*site)] = 1.0
        return f

    @classmethod
    def random(cls, window: Window, rng: np.random.Generator) -> "ScalarField":
        shape = (window.size, window.size)
        v = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        v /= np.linalg.norm(v)
        return cls(window, v)

    def at(self, x1: int, x2: int) -> complex:
        return complex(self.values[self.window.index(x1, x2)])

    def copy(self) -> "ScalarField":
        return ScalarField(self.window, self.values.copy())


def crop_state(state: VectorState, window: Window) -> VectorState:
    """Central restriction of a state on a larger window to ``window``."""
    d = state.window.n - window.n
    if d < 0:
        raise ValueError("target window larger than source window")
    vals = state.values[d : d + window.size, d : d + window.size]
    return VectorState(window, vals.copy())


def norms(state: VectorState | ScalarField) -> tuple[float, float]:
    """(l2, sup) norms over the window; sup <= l2 always."""
    v = state.values
    l2 = float(np.linalg.norm(v))
    sup = float(np.max(np.abs(v))) if v.size else 0.0
    return (l2, sup)
