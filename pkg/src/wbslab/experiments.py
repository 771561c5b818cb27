"""Seeded experiment suites with reproducible JSON and CSV reports.

Every suite is a pure function of its configuration: identical configs
produce byte-identical reports except for the isolated ``meta`` block,
which carries the timestamp.  Rationals are serialized as "p/q" strings
and big integers as decimal strings, so nothing is lost to floats.
"""

from __future__ import annotations

import csv
import datetime
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .embed import FiniteSequence, structured_vectors, verify_sandwich
from .errors import PairSearchFailure, WbsLabError
from .holder import holder_seminorm, pair_bump, sup_norm
from .metric import find_pair_family
from .samples import bundled_spaces
from .tolerances import DEFAULT_TOLERANCES, Tolerances
from .weaknull import SequenceOracle, Subsequence, certify_not_cesaro_null

__all__ = ["ExperimentConfig", "ExperimentResult", "run_experiment", "EXPERIMENT_NAMES"]

CESARO_N_VALUES = (1, 2, 4, 8, 16, 32)


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 0
    enumeration: str = "canonical"
    tolerances: Tolerances = DEFAULT_TOLERANCES
    out_dir: Path | None = None

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "enumeration": self.enumeration,
            "tolerances": {
                "triangle_rel": self.tolerances.triangle_rel,
                "float_slack": self.tolerances.float_slack,
                "sandwich_rel": self.tolerances.sandwich_rel,
            },
        }


@dataclass
class ExperimentResult:
    name: str
    ok: bool
    config: ExperimentConfig
    rows: list[dict] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    artifacts: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "meta": {"created_utc": datetime.datetime.now(datetime.timezone.utc).isoformat()},
            "experiment": self.name,
            "ok": self.ok,
            "config": self.config.to_json(),
            "rows": self.rows,
            "failures": self.failures,
        }


def _cesaro_suite(config: ExperimentConfig) -> ExperimentResult:
    """100 seeded subsequences, exact mean >= 1/2 at every N."""
    rng = random.Random(config.seed)
    oracle = SequenceOracle(config.enumeration)
    subs: list[Subsequence] = []
    for _ in range(50):
        subs.append(Subsequence.affine(rng.randint(1, 5), rng.randint(0, 9)))
    for _ in range(50):
        subs.append(Subsequence.seeded_increments(rng.randrange(2**31), max_step=3))

    result = ExperimentResult("cesaro-suite", ok=True, config=config)
    half = Fraction(1, 2)
    for sub in subs:
        for N in CESARO_N_VALUES:
            cert = certify_not_cesaro_null(sub, N, oracle=oracle)
            row = {
                "rule": sub.description,
                "N": N,
                "mean": f"{cert.mean.numerator}/{cert.mean.denominator}",
                "i0": str(cert.witness_coordinate),
                "witness_max": cert.witness_set.maximum,
                "prefix_len": cert.prefix_len,
                "ok": cert.mean >= half,
            }
            result.rows.append(row)
            if not row["ok"]:
                result.ok = False
                result.failures.append({"rule": sub.description, "N": N, "certificate": cert.to_json()})
    return result


def _instance_battery(config: ExperimentConfig):
    """(name, space, family, alpha) instances over the bundled spaces."""
    spaces = bundled_spaces(seed=config.seed)
    combos = []
    for name, space in spaces.items():
        for K in (0.25, 0.5, 0.9):
            try:
                family = find_pair_family(space, K, target_count=3)
            except PairSearchFailure as exc:
                family = exc.best
                if len(family) < 1:
                    continue
            for alpha in (0.3, 0.5, 0.8, 1.0):
                combos.append((f"{name}/K={K}/a={alpha}", space, family, alpha))
    return combos


def _sandwich_suite(config: ExperimentConfig) -> ExperimentResult:
    """Seminorm bounds and two-sided embedding bounds over the battery."""
    result = ExperimentResult("sandwich-suite", ok=True, config=config)
    rng = np.random.default_rng(config.seed)
    slack = config.tolerances.float_slack
    for name, space, family, alpha in _instance_battery(config):
        bound = 1.0 / family.K**alpha
        seminorm_worst = 0.0
        sup_worst = 0.0
        for pair in family.pairs:
            bump = pair_bump(space, pair, family.K, alpha)
            seminorm_worst = max(seminorm_worst, holder_seminorm(bump, alpha))
            sup_worst = max(sup_worst, sup_norm(bump))
        bumps_ok = seminorm_worst <= bound + slack and sup_worst <= 1.0 + slack

        vectors = structured_vectors(len(family))
        vectors += [
            FiniteSequence(tuple(rng.uniform(-2.0, 2.0, size=len(family))))
            for _ in range(20)
        ]
        ratio_lo, ratio_hi = np.inf, 0.0
        sandwich_ok = True
        for vec in vectors:
            if vec.sup_value == 0:
                continue
            check = verify_sandwich(
                vec, space, family, alpha,
                tolerances=config.tolerances, raise_on_violation=False,
            )
            ratio_lo = min(ratio_lo, check.ratio)
            ratio_hi = max(ratio_hi, check.ratio)
            if not (check.lower_ok and check.upper_ok):
                sandwich_ok = False
                result.failures.append({"instance": name, "vector": vec.to_json(), "check": check.to_json()})
        row = {
            "instance": name,
            "pairs": len(family),
            "seminorm_worst": seminorm_worst,
            "seminorm_bound": bound,
            "ratio_lo": float(ratio_lo),
            "ratio_hi": float(ratio_hi),
            "ratio_bound": 2.0 / family.K**alpha + 1.0,
            "ok": bumps_ok and sandwich_ok,
        }
        result.rows.append(row)
        if not row["ok"]:
            result.ok = False
            if not bumps_ok:
                result.failures.append({"instance": name, "seminorm_worst": seminorm_worst, "bound": bound})
    return result


def _isometry_suite(config: ExperimentConfig) -> ExperimentResult:
    """Exact isometry of the tent-sum and indicator-sum embeddings."""
    from .embed import embed_cb, embed_linf
    from .samples import line_grid

    result = ExperimentResult("isometry-suite", ok=True, config=config)
    rng = np.random.default_rng(config.seed)
    space = line_grid(12)
    centers = list(space.labels[:6])
    radii = [0.45] * 6
    masses = list(rng.uniform(0.1, 5.0, size=6))
    exact_cb = exact_linf = 0
    trials = 1000
    for _ in range(trials):
        # dyadic entries: exact in binary floating point
        vec = FiniteSequence(tuple(rng.integers(-256, 257, size=6) / 64.0))
        if sup_norm(embed_cb(vec, space, centers, radii)) == vec.sup_value:
            exact_cb += 1
        if embed_linf(vec, masses).ess_sup == vec.sup_value:
            exact_linf += 1
    ok = exact_cb == trials and exact_linf == trials
    result.rows.append(
        {"trials": trials, "exact_cb": exact_cb, "exact_linf": exact_linf, "ok": ok}
    )
    result.ok = ok
    if not ok:
        result.failures.append({"exact_cb": exact_cb, "exact_linf": exact_linf})
    return result


_SUITES = {
    "cesaro-suite": _cesaro_suite,
    "sandwich-suite": _sandwich_suite,
    "isometry-suite": _isometry_suite,
}

EXPERIMENT_NAMES = tuple(_SUITES)


def run_experiment(name: str, config: ExperimentConfig) -> ExperimentResult:
    """Run one suite; write JSON and a CSV summary when out_dir is set."""
    if name not in _SUITES:
        raise WbsLabError(f"unknown experiment {name!r}; choose from {EXPERIMENT_NAMES}")
    result = _SUITES[name](config)
    if config.out_dir is not None:
        out = Path(config.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        json_path = out / f"{name}.json"
        json_path.write_text(json.dumps(result.to_json(), indent=2, sort_keys=True))
        csv_path = out / f"{name}.csv"
        if result.rows:
            with csv_path.open("w", newline="") as fh:
                writer = csv.DictWriter(fh, fieldnames=list(result.rows[0]))
                writer.writeheader()
                writer.writerows(result.rows)
            result.artifacts.append(str(csv_path))
        result.artifacts.append(str(json_path))
    return result
