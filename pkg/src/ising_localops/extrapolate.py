"""Limit extrapolation helpers: Richardson tables and pole-residue extraction."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np


def richardson(values: Sequence[complex], ratio: float) -> complex:
    """Extrapolate a sequence f(h), f(h/r), f(h/r^2), ... to h -> 0.

    Assumes an error expansion in integer powers of h. ``ratio`` is the
    step reduction factor r between consecutive entries.
    """
    vals = [complex(v) for v in values]
    if len(vals) < 2:
        return vals[0]
    level = list(vals)
    for m in range(1, len(vals)):
        factor = ratio**m
        level = [
            (factor * level[i + 1] - level[i]) / (factor - 1.0)
            for i in range(len(level) - 1)
        ]
    return level[0]


def pole_residue(
    f: Callable[[complex], complex],
    pole: complex,
    eps_values: Sequence[float] = (1e-2, 1e-3, 1e-4),
    direction: complex = 1.0,
) -> complex:
    """First-order residue of f at ``pole`` via epsilon extrapolation.

    Evaluates eps * f(pole + direction*eps) on a decreasing epsilon ladder and
    Richardson-extrapolates to eps -> 0.  The ladder must be geometric.
    """
    eps = np.asarray(eps_values, dtype=float)
    ratios = eps[:-1] / eps[1:]
    if not np.allclose(ratios, ratios[0]):
        raise ValueError("eps_values must form a geometric sequence")
    unit = direction / abs(direction)
    samples = [e * unit * f(pole + e * unit) for e in eps]
    return richardson(samples, float(ratios[0]))


def contour_residue(
    f: Callable[[complex], complex],
    pole: complex,
    radius: float = 1e-3,
    n_points: int = 8,
) -> complex:
    """Residue by trapezoid rule on a small circle around ``pole``.

    Audit path for :func:`pole_residue`; exact for an isolated first-order
    pole up to the analytic remainder sampled by ``n_points``.
    """
    phases = np.exp(2j * np.pi * np.arange(n_points) / n_points)
    points = pole + radius * phases
    vals = np.array([f(z) for z in points])
    return complex(np.mean(vals * radius * phases))
