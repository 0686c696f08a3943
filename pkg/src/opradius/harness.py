"""Seeded randomized campaigns over the check catalog.

Trial ``k`` of a campaign draws its inputs from ``Rng(seed, k)``.  Each check
gets its own jump-ahead substream of that generator, so adding or removing a
suite never changes the inputs another suite sees.
"""
from __future__ import annotations

import csv
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .inequalities import (ANGLE, BUDGET, CATALOG, CHECK_IDS, OP, SCALAR, SIGN, UNITARY,
                           CheckResult, get_check)
from .matcore import (Rng, ginibre, leading_principal_blocks, matrix_from_json,
                      matrix_to_json, random_haar_unitary)
from .radius import DEFAULT_EPS

SCHEMA_VERSION = "1"
MAX_DIM = 32
DISTRIBUTIONS = ("mixed", "ginibre")
# Ginibre / Hermitian / strictly upper triangular / unitary
MIXED_WEIGHTS = (0.7, 0.1, 0.1, 0.1)
CSV_COLUMNS = ("check_id", "trial", "inequality_index", "lhs_lo", "lhs_hi",
               "rhs_lo", "rhs_hi", "margin", "verdict")


@dataclass(frozen=True)
class CampaignConfig:
    suites: tuple[str, ...] = ("all",)
    d: int = 2
    n: int = 1
    trials: int = 10
    seed: int = 0
    eps: float = DEFAULT_EPS
    wmax_budget: int = 100
    out_path: str | None = None
    distribution: str = "mixed"

    def __post_init__(self):
        suites = (self.suites,) if isinstance(self.suites, str) else tuple(self.suites)
        object.__setattr__(self, "suites", suites)
        for s in suites:
            if s != "all" and s not in CATALOG:
                raise ValueError(f"unknown check id {s!r}")
        if not 1 <= self.d <= 8:
            raise ValueError(f"d must be in 1..8, got {self.d}")
        if not 1 <= self.n <= 2:
            raise ValueError(f"n must be 1 or 2, got {self.n}")
        # W_max checks assemble a 2x2 block over level n
        if 2 * self.n * self.d > MAX_DIM:
            raise ValueError(f"block matrices would exceed dimension {MAX_DIM}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if self.wmax_budget < 0:
            raise ValueError("wmax_budget must be >= 0")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"distribution must be one of {DISTRIBUTIONS}")

    @property
    def check_ids(self) -> list[str]:
        if "all" in self.suites:
            return list(CHECK_IDS)
        return [c for c in CHECK_IDS if c in self.suites]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["suites"] = list(self.suites)
        return out

    @classmethod
    def from_dict(cls, obj: dict) -> "CampaignConfig":
        obj = dict(obj)
        obj["suites"] = tuple(obj["suites"])
        return cls(**obj)


@dataclass
class CheckAggregate:
    check_id: str
    mode: str
    trials: int = 0
    results: int = 0
    min_margin: float | None = None
    mean_margin: float | None = None
    violations: int = 0
    equality_witnesses: int = 0
    eigensolves: int = 0
    uncertified: int = 0
    errors: int = 0


@dataclass
class Report:
    config: dict
    checks: dict[str, CheckAggregate]
    violations: list[dict]
    rows: list[dict]
    failures: list[dict] = field(default_factory=list)
    wall_time: float = 0.0
    schema_version: str = SCHEMA_VERSION

    @property
    def total_violations(self) -> int:
        return sum(a.violations for a in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "config": self.config,
            "checks": {k: asdict(v) for k, v in self.checks.items()},
            "violations": self.violations,
            "failures": self.failures,
            "rows": self.rows,
            "wall_time": self.wall_time,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "Report":
        if obj.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {obj.get('schema_version')!r}")
        return cls(config=obj["config"],
                   checks={k: CheckAggregate(**v) for k, v in obj["checks"].items()},
                   violations=obj["violations"], rows=obj["rows"],
                   failures=obj.get("failures", []), wall_time=obj["wall_time"],
                   schema_version=obj["schema_version"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def content(self) -> dict:
        """Everything except the wall-time, for determinism comparisons."""
        out = self.to_dict()
        out.pop("wall_time")
        return out

    def write(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json())

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
            writer.writeheader()
            for row in self.rows:
                writer.writerow({k: row[k] for k in CSV_COLUMNS})


# -- input generation ----------------------------------------------------------


def draw_operator(size: int, gen: np.random.Generator, distribution: str = "mixed") -> np.ndarray:
    g = np.asarray(ginibre(size, size, gen))
    if distribution == "ginibre":
        return g
    kind = gen.choice(4, p=MIXED_WEIGHTS)
    if kind == 1:
        return 0.5 * (g + g.conj().T)
    if kind == 2:
        return np.triu(g, 1)
    if kind == 3:
        return np.asarray(random_haar_unitary(size, gen))
    return g


def draw_inputs(check_id: str, n: int, d: int, gen: np.random.Generator,
                distribution: str = "mixed", budget: int = 100) -> dict:
    spec = get_check(check_id)
    out = {}
    for name, kind in spec.params:
        if kind == OP:
            out[name] = draw_operator(n * d, gen, distribution)
        elif kind == SCALAR:
            out[name] = np.asarray(ginibre(n, n, gen))
        elif kind == UNITARY:
            out[name] = np.asarray(random_haar_unitary(n, gen))
        elif kind == ANGLE:
            out[name] = float(gen.uniform(0.0, 2 * np.pi))
        elif kind == SIGN:
            out[name] = int(gen.choice([1, -1]))
        elif kind == BUDGET:
            out[name] = int(budget)
    return out


def inputs_to_json(inputs: dict) -> dict:
    return {k: matrix_to_json(v) if isinstance(v, np.ndarray) else v for k, v in inputs.items()}


def inputs_from_json(obj: dict) -> dict:
    return {k: np.asarray(matrix_from_json(v)) if isinstance(v, dict) else v
            for k, v in obj.items()}


# -- campaign ------------------------------------------------------------------


def _threads() -> int:
    raw = os.environ.get("OPRADIUS_THREADS", "")
    try:
        v = int(raw)
    except ValueError:
        v = 0
    return v if v > 0 else 1


def run_trial(config: CampaignConfig, check_id: str, trial: int):
    """Run one check on the inputs of trial ``trial``; returns ``(inputs, results)``."""
    spec = get_check(check_id)
    gen = Rng(config.seed, trial).generator(substream=CHECK_IDS.index(check_id) + 1)
    inputs = draw_inputs(check_id, config.n, config.d, gen, config.distribution,
                         config.wmax_budget)
    return inputs, spec.run(inputs, eps=config.eps, n=config.n, rng=gen)


def _safe_trial(args):
    config, check_id, trial = args
    try:
        inputs, results = run_trial(config, check_id, trial)
        return inputs, results, None
    except Exception as exc:  # solver failures are recorded, not fatal
        return None, None, f"{type(exc).__name__}: {exc}"


def run_campaign(config: CampaignConfig, threads: int | None = None) -> Report:
    """Run every selected check for ``config.trials`` trials and aggregate."""
    start = time.perf_counter()
    jobs = [(config, cid, k) for cid in config.check_ids for k in range(config.trials)]
    threads = threads or _threads()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(_safe_trial, jobs))
    else:
        outcomes = [_safe_trial(j) for j in jobs]

    checks = {cid: CheckAggregate(cid, "consistency" if get_check(cid).needs_level
                                  else "certified") for cid in config.check_ids}
    sums = {cid: 0.0 for cid in config.check_ids}
    violations, rows, failures = [], [], []
    for (_, cid, k), (inputs, results, err) in zip(jobs, outcomes):
        agg = checks[cid]
        agg.trials += 1
        if err is not None:
            agg.errors += 1
            failures.append({"check_id": cid, "trial": k, "error": err})
            continue
        for r in results:
            agg.results += 1
            sums[cid] += r.margin
            agg.min_margin = r.margin if agg.min_margin is None else min(agg.min_margin, r.margin)
            agg.eigensolves += r.lhs.evals + r.rhs.evals
            agg.uncertified += not (r.lhs.certified and r.rhs.certified)
            if r.verdict == "violated":
                agg.violations += 1
                violations.append({"trial": k, "result": r.to_dict(),
                                   "inputs": inputs_to_json(inputs)})
            elif r.verdict == "equality_witness":
                agg.equality_witnesses += 1
            rows.append({"check_id": cid, "trial": k, "inequality_index": r.index,
                         "lhs_lo": r.lhs.lo, "lhs_hi": r.lhs.hi, "rhs_lo": r.rhs.lo,
                         "rhs_hi": r.rhs.hi, "margin": r.margin, "verdict": r.verdict})
    for cid, agg in checks.items():
        if agg.results:
            agg.mean_margin = sums[cid] / agg.results
    report = Report(config=config.to_dict(), checks=checks, violations=violations,
                    rows=rows, failures=failures, wall_time=time.perf_counter() - start)
    if config.out_path:
        report.write(config.out_path)
    return report


# -- shrinking -----------------------------------------------------------------


def _violates_default(check_id, n, eps):
    spec = get_check(check_id)

    def violates(inputs):
        return any(r.verdict == "violated" for r in spec.run(inputs, eps=eps, n=n))
    return violates


def shrink(check_id: str, inputs: dict, n: int = 1, eps: float = DEFAULT_EPS,
           violates: Callable[[dict], bool] | None = None, max_halvings: int = 40) -> dict:
    """Greedily shrink a violating input while the violation persists.

    Tries, in order and until nothing helps: halving the block size by
    keeping leading principal blocks, zeroing single entries, and halving
    all operator entries.  Non-violating inputs are returned unchanged.
    """
    spec = get_check(check_id)
    violates = violates or _violates_default(check_id, n, eps)
    ops = [name for name, kind in spec.params if kind == OP]
    best = dict(inputs)
    if not ops or not violates(best):
        return inputs

    def attempt(candidate):
        nonlocal best
        if violates(candidate):
            best = candidate
            return True
        return False

    halvings = 0
    progress = True
    while progress:
        progress = False
        d = np.asarray(best[ops[0]]).shape[0] // n
        if d > 1:
            d_new = d // 2
            cand = dict(best)
            for name in ops:
                cand[name] = np.asarray(leading_principal_blocks(best[name], n, d_new))
            if attempt(cand):
                progress = True
                continue
        for name in ops:
            for idx in zip(*np.nonzero(best[name])):
                mat = np.array(best[name])
                mat[idx] = 0
                if attempt({**best, name: mat}):
                    progress = True
        if halvings < max_halvings:
            cand = {**best, **{name: 0.5 * np.asarray(best[name]) for name in ops}}
            if attempt(cand):
                halvings += 1
                progress = True
    return best
