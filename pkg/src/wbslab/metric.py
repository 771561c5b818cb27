"""Finite metric spaces and separated pair families.

A finite metric space is the desk-scale stand-in for a general one:
labeled points plus a validated distance matrix.  A separated pair
family is a list of point pairs (x_n, y_n) with a constant K in (0, 1]
such that no x_m enters any open ball B(y_n, K*d(x_n, y_n)) and the
balls are pairwise disjoint over the point set.  Ball membership is
strict (open balls) throughout; this makes the separation conditions
easiest to satisfy on finite spaces and keeps bump supports inside the
balls exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError, PairSearchFailure
from .tolerances import DEFAULT_TOLERANCES, Tolerances

__all__ = [
    "FiniteMetricSpace",
    "MetricViolation",
    "ValidationReport",
    "validate_metric",
    "SeparatedPairFamily",
    "PairFamilyReport",
    "verify_pair_family",
    "find_pair_family",
    "load_space",
]


@dataclass(frozen=True)
class MetricViolation:
    kind: str  # "shape" | "nan" | "diagonal" | "symmetry" | "positivity" | "triangle"
    points: tuple[str, ...]
    detail: str

    def to_json(self) -> dict:
        return {"kind": self.kind, "points": list(self.points), "detail": self.detail}


@dataclass
class ValidationReport:
    violations: list[MetricViolation] = field(default_factory=list)
    checked_triples: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked_triples": self.checked_triples,
            "violations": [v.to_json() for v in self.violations],
        }


def validate_metric(
    dist,
    labels: Sequence[str] | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    max_reported: int = 50,
) -> ValidationReport:
    """Check the metric axioms on a raw square matrix.

    Returns a report listing every violated axiom with the offending
    points (capped at max_reported entries).  Non-square input or NaN
    entries raise immediately: there is no sensible partial report.
    The triangle inequality is checked with relative slack so that
    float ingestion of Euclidean point clouds never trips it.
    """
    arr = np.asarray(dist, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidInputError(f"distance matrix must be square, got shape {arr.shape}")
    if np.isnan(arr).any():
        raise InvalidInputError("distance matrix contains NaN entries")
    n = arr.shape[0]
    if labels is None:
        labels = default_labels(n)
    elif len(labels) != n:
        raise InvalidInputError(f"{len(labels)} labels for a {n}x{n} matrix")

    report = ValidationReport()

    def add(kind: str, idx: tuple[int, ...], detail: str) -> None:
        if len(report.violations) < max_reported:
            report.violations.append(
                MetricViolation(kind, tuple(labels[i] for i in idx), detail)
            )

    diag = np.abs(np.diagonal(arr))
    for i in np.nonzero(diag > tolerances.triangle_rel)[0]:
        add("diagonal", (int(i),), f"d(x,x) = {arr[i, i]!r} != 0")

    asym = np.abs(arr - arr.T)
    scale = np.maximum(np.abs(arr), 1.0)
    bad = np.argwhere(asym > tolerances.triangle_rel * scale)
    for i, j in bad:
        if i < j:
            add("symmetry", (int(i), int(j)), f"{arr[i, j]!r} vs {arr[j, i]!r}")

    off = ~np.eye(n, dtype=bool)
    for i, j in np.argwhere((arr <= 0) & off):
        if i < j:
            add("positivity", (int(i), int(j)), f"d = {arr[i, j]!r} <= 0 for distinct points")

    # d(i,j) <= d(i,k) + d(k,j) with relative slack on the bound
    for k in range(n):
        bound = arr[:, k][:, None] + arr[k, :][None, :]
        excess = arr - bound
        bad = np.argwhere(excess > tolerances.triangle_rel * np.maximum(bound, 1.0))
        for i, j in bad:
            if i != k and j != k and i < j:
                add(
                    "triangle",
                    (int(i), int(k), int(j)),
                    f"d = {arr[i, j]!r} > {arr[i, k]!r} + {arr[k, j]!r}",
                )
    report.checked_triples = n * n * n
    return report


def default_labels(n: int) -> tuple[str, ...]:
    width = len(str(max(n - 1, 0)))
    return tuple(f"p{str(i).zfill(width)}" for i in range(n))


class FiniteMetricSpace:
    """Labeled points with a validated, immutable distance matrix."""

    def __init__(
        self,
        dist,
        labels: Sequence[str] | None = None,
        validate: bool = True,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
    ):
        arr = np.array(dist, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidInputError(f"distance matrix must be square, got shape {arr.shape}")
        if labels is None:
            labels = default_labels(arr.shape[0])
        labels = tuple(str(l) for l in labels)
        if len(set(labels)) != len(labels):
            raise InvalidInputError("labels must be distinct")
        if validate:
            report = validate_metric(arr, labels, tolerances=tolerances)
            if not report.ok:
                first = report.violations[0]
                raise InvalidInputError(
                    f"not a metric: {len(report.violations)}+ violation(s), "
                    f"first: {first.kind} at {first.points} ({first.detail})"
                )
        arr.setflags(write=False)
        self.labels = labels
        self.dist = arr
        self._index = {label: i for i, label in enumerate(labels)}

    # ---- basic queries --------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InvalidInputError(f"unknown point label {label!r}") from None

    def d(self, a: str, b: str) -> float:
        return float(self.dist[self.index(a), self.index(b)])

    def ball_members(self, center: str, radius: float) -> np.ndarray:
        """Boolean mask of points strictly inside the open ball."""
        return self.dist[self.index(center)] < radius

    def restrict(self, subset: Sequence[str]) -> "FiniteMetricSpace":
        """The induced submatrix on the given labels, in the given order."""
        idx = [self.index(l) for l in subset]
        if len(set(idx)) != len(idx):
            raise InvalidInputError("subset labels must be distinct")
        sub = self.dist[np.ix_(idx, idx)]
        return FiniteMetricSpace(sub, tuple(subset), validate=False)

    # ---- constructors ---------------------------------------------------

    @classmethod
    def from_points(
        cls,
        points,
        metric: str = "euclidean",
        labels: Sequence[str] | None = None,
    ) -> "FiniteMetricSpace":
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        diff = pts[:, None, :] - pts[None, :, :]
        if metric == "euclidean":
            dist = np.sqrt((diff**2).sum(axis=2))
        elif metric == "l1":
            dist = np.abs(diff).sum(axis=2)
        elif metric == "linf":
            dist = np.abs(diff).max(axis=2)
        else:
            raise InvalidInputError(f"unknown metric {metric!r}")
        return cls(dist, labels)

    @classmethod
    def from_graph(
        cls, n: int, edges: Iterable[tuple[int, int, float]], labels=None
    ) -> "FiniteMetricSpace":
        """Shortest-path metric of a weighted undirected graph."""
        dist = np.full((n, n), np.inf)
        np.fill_diagonal(dist, 0.0)
        for u, v, w in edges:
            dist[u, v] = min(dist[u, v], float(w))
            dist[v, u] = dist[u, v]
        for k in range(n):
            dist = np.minimum(dist, dist[:, [k]] + dist[[k], :])
        if np.isinf(dist).any():
            raise InvalidInputError("graph is not connected")
        return cls(dist, labels)

    @classmethod
    def from_json(cls, data: dict) -> "FiniteMetricSpace":
        labels = data.get("labels")
        if "matrix" in data:
            return cls(data["matrix"], labels)
        if "points" in data:
            return cls.from_points(data["points"], data.get("metric", "euclidean"), labels)
        raise InvalidInputError("space JSON needs a 'matrix' or 'points' key")

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "matrix": self.dist.tolist()}


def load_space(source) -> FiniteMetricSpace:
    """Build a space from a dict, a JSON string, or a file path."""
    if isinstance(source, FiniteMetricSpace):
        return source
    if isinstance(source, dict):
        return FiniteMetricSpace.from_json(source)
    path = Path(source)
    if path.exists():
        return FiniteMetricSpace.from_json(json.loads(path.read_text()))
    return FiniteMetricSpace.from_json(json.loads(str(source)))


@dataclass(frozen=True)
class SeparatedPairFamily:
    """Pairs (x_n, y_n) with a separation constant K in (0, 1]."""

    pairs: tuple[tuple[str, str], ...]
    K: float

    def __post_init__(self):
        object.__setattr__(
            self, "pairs", tuple((str(x), str(y)) for x, y in self.pairs)
        )
        if not 0 < self.K <= 1:
            raise InvalidInputError(f"separation constant must be in (0, 1], got {self.K}")

    def __len__(self) -> int:
        return len(self.pairs)

    def radii(self, space: FiniteMetricSpace) -> list[float]:
        return [space.d(x, y) * self.K for x, y in self.pairs]

    def to_json(self) -> dict:
        return {"K": self.K, "pairs": [list(p) for p in self.pairs]}

    @classmethod
    def from_json(cls, data: dict) -> "SeparatedPairFamily":
        return cls(tuple((p[0], p[1]) for p in data["pairs"]), float(data["K"]))


@dataclass
class PairFamilyReport:
    ok: bool
    violations: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": self.violations}


def verify_pair_family(
    space: FiniteMetricSpace, family: SeparatedPairFamily
) -> PairFamilyReport:
    """Check the three separation conditions over the finite point set.

    (distinct)    x_n != y_n for every pair;
    (separation)  d(x_m, y_n) >= K * d(x_n, y_n) for all n, m, i.e. no
                  x-point lies strictly inside any ball;
    (disjoint)    no point of the space lies strictly inside two balls.
    """
    violations: list[dict] = []
    pairs = family.pairs
    for n, (x, y) in enumerate(pairs):
        space.index(x), space.index(y)
        if x == y:
            violations.append({"condition": "distinct", "pair": n, "detail": f"{x} == {y}"})

    radii = family.radii(space)
    for n, (x_n, y_n) in enumerate(pairs):
        for m, (x_m, _) in enumerate(pairs):
            d = space.d(x_m, y_n)
            if d < radii[n]:
                violations.append(
                    {
                        "condition": "separation",
                        "pair": n,
                        "other": m,
                        "detail": f"d({x_m}, {y_n}) = {d!r} < {radii[n]!r}",
                    }
                )

    if pairs:
        membership = np.stack(
            [space.ball_members(y, r) for (_, y), r in zip(pairs, radii)]
        )
        counts = membership.sum(axis=0)
        for p in np.nonzero(counts > 1)[0]:
            inside = np.nonzero(membership[:, p])[0]
            violations.append(
                {
                    "condition": "disjoint",
                    "point": space.labels[int(p)],
                    "balls": [int(i) for i in inside],
                    "detail": f"point lies in {int(counts[p])} balls",
                }
            )
    return PairFamilyReport(ok=not violations, violations=violations)


def find_pair_family(
    space: FiniteMetricSpace, K: float, target_count: int
) -> SeparatedPairFamily:
    """Greedy search for a separated pair family with >= target_count pairs.

    Candidates are all ordered pairs of distinct points, visited by
    distance ascending (small balls are the easiest to keep disjoint),
    ties broken by the label order of the space.  A candidate is accepted
    iff the separation conditions hold against everything accepted so
    far; each point is used at most once, so a space of size s can never
    yield more than floor(s/2) pairs.  The result always re-verifies
    cleanly; on failure the best family found is attached to the raised
    PairSearchFailure.
    """
    if not 0 < K <= 1:
        raise InvalidInputError(f"separation constant must be in (0, 1], got {K}")
    if target_count < 1:
        raise InvalidInputError(f"target_count must be >= 1, got {target_count}")
    n = len(space)
    candidates = sorted(
        ((space.dist[i, j], i, j) for i in range(n) for j in range(n) if i != j),
        key=lambda t: t,
    )
    accepted: list[tuple[int, int, float]] = []  # (x_idx, y_idx, radius)
    used: set[int] = set()
    for d, xi, yi in candidates:
        if xi in used or yi in used:
            continue
        r = K * d
        ok = True
        for xj, yj, rj in accepted:
            if space.dist[xi, yj] < rj or space.dist[xj, yi] < r:
                ok = False
                break
        if ok and accepted:
            # ball disjointness over the whole point set
            new_ball = space.dist[yi] < r
            for _, yj, rj in accepted:
                if np.any(new_ball & (space.dist[yj] < rj)):
                    ok = False
                    break
        if not ok:
            continue
        accepted.append((xi, yi, r))
        used.update((xi, yi))
        if len(accepted) >= target_count:
            break
    family = SeparatedPairFamily(
        tuple((space.labels[xi], space.labels[yi]) for xi, yi, _ in accepted), K
    )
    if len(family) < target_count:
        raise PairSearchFailure(
            f"found only {len(family)} of {target_count} requested pairs",
            best=family,
            target=target_count,
        )
    return family
