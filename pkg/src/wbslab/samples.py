"""Bundled sample spaces for experiments and tests."""

from __future__ import annotations

import numpy as np

from .metric import FiniteMetricSpace

__all__ = [
    "line_grid",
    "harmonic_with_zero",
    "random_cloud",
    "cycle_graph",
    "bundled_spaces",
]


def line_grid(n: int, spacing: float = 1.0) -> FiniteMetricSpace:
    """n equally spaced points on a line."""
    return FiniteMetricSpace.from_points([i * spacing for i in range(n)])


def harmonic_with_zero(n: int) -> FiniteMetricSpace:
    """{0} together with 1, 1/2, ..., 1/n: points piling up at zero."""
    pts = [0.0] + [1.0 / k for k in range(1, n + 1)]
    labels = ["zero"] + [f"inv{k}" for k in range(1, n + 1)]
    return FiniteMetricSpace.from_points(pts, labels=labels)


def random_cloud(
    n: int, dim: int, seed: int, metric: str = "euclidean"
) -> FiniteMetricSpace:
    rng = np.random.default_rng(seed)
    return FiniteMetricSpace.from_points(rng.uniform(0.0, 10.0, size=(n, dim)), metric=metric)


def cycle_graph(n: int) -> FiniteMetricSpace:
    """Shortest-path metric of the n-cycle with unit edges."""
    edges = [(i, (i + 1) % n, 1.0) for i in range(n)]
    return FiniteMetricSpace.from_graph(n, edges)


def bundled_spaces(seed: int = 0) -> dict[str, FiniteMetricSpace]:
    """The standard battery used by the experiment suites."""
    return {
        "line16": line_grid(16),
        "line24-fine": line_grid(24, spacing=0.25),
        "harmonic20": harmonic_with_zero(20),
        "cloud2d": random_cloud(30, 2, seed=seed + 1),
        "cloud3d": random_cloud(24, 3, seed=seed + 2),
        "cycle12": cycle_graph(12),
    }
