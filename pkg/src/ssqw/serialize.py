"""Deterministic CSV/JSON emission and state-file round-tripping.

All floats are written with 17 significant digits so that a written value
parses back to the identical double.  CSV is comma-separated with a header
row and LF line endings; identical inputs produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .lattice import VectorState, Window


def fmt(v: float) -> str:
    return f"{float(v):.17g}"


def write_csv(path: str | Path, header: list[str], rows) -> None:
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([cell if isinstance(cell, str) else fmt(cell) for cell in row])


def write_json(path: str | Path, data: dict) -> None:
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


STATE_HEADER = ["x1", "x2", "re1", "im1", "re2", "im2", "re3", "im3", "re4", "im4"]


def state_rows(state: VectorState, skip_zero: bool = True):
    """Row-major site rows; all-zero sites are omitted to keep files small."""
    n = state.window.n
    for i1 in range(state.window.size):
        for i2 in range(state.window.size):
            v = state.values[i1, i2]
            if skip_zero and not np.any(v):
                continue
            row: list = [str(i1 - n), str(i2 - n)]
            for c in range(4):
                row.extend((fmt(v[c].real), fmt(v[c].imag)))
            yield row


def save_state(state: VectorState, path: str | Path) -> None:
    write_csv(path, STATE_HEADER, state_rows(state))


def load_state(path: str | Path, window: Window | None = None) -> VectorState:
    """Read a state CSV; the window is inferred from the site extent if absent."""
    path = Path(path)
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != STATE_HEADER:
                raise ConfigError(f"{path}: unexpected state header {header}")
            entries = []
            for row in reader:
                if len(row) != 10:
                    raise ConfigError(f"{path}: malformed state row {row}")
                x1, x2 = int(row[0]), int(row[1])
                vals = [complex(float(row[2 + 2 * c]), float(row[3 + 2 * c])) for c in range(4)]
                entries.append((x1, x2, vals))
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read state file {path}: {exc}") from exc
    if window is None:
        radius = max((max(abs(x1), abs(x2)) for x1, x2, _ in entries), default=0)
        window = Window(n=max(1, radius))
    state = VectorState.zeros(window)
    for x1, x2, vals in entries:
        state.values[window.index(x1, x2)] = vals
    return state
