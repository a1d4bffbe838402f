"""Parallel sweep of verify_all over (diagram, q) combinations."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .dynkin import DynkinType, standard_diagram, supported_types
from .verifier import DEFAULT_Q_LIST, KINDS, SCHEMA_VERSION, verify_all

WORKERS_ENV = "CHEVCERT_WORKERS"


def worker_count(requested: int | None = None) -> int:
    if requested:
        return max(1, requested)
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def sweep_types(rank_cap: int = 12) -> list[DynkinType]:
    """A2.., B2.., C3.., D4.. up to rank_cap, plus E6-E8, F4, G2."""
    return supported_types(rank_cap, min_rank=2)


@dataclass
class SweepSummary:
    q_list: tuple[int, ...]
    rank_cap: int
    rows: list[dict] = field(default_factory=list)

    @property
    def verdicts(self) -> int:
        return sum(r["subsets"] for r in self.rows)

    @property
    def failures(self) -> list[str]:
        return [f"{r['diagram']}({r['q']}) {f}" for r in self.rows for f in r["failures"]]

    def totals(self) -> dict[str, int]:
        return {k: sum(r["counts"][k] for r in self.rows) for k in KINDS}

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": "sweep",
            "q_list": [str(q) for q in self.q_list],
            "rank_cap": self.rank_cap,
            "verdicts": self.verdicts,
            "totals": self.totals(),
            "failures": self.failures,
            "results": self.rows,
        }


def _run_one(task):
    family, rank, q, check = task
    dtype = DynkinType(family, rank)
    report = verify_all(standard_diagram(dtype), q, check=check)
    return {
        "diagram": str(dtype),
        "q": str(q),
        "subsets": len(report.verdicts),
        "counts": {k: report.counts.get(k, 0) for k in KINDS},
        "failures": report.failures,
    }


def run_sweep(q_list=DEFAULT_Q_LIST, rank_cap: int = 12, workers: int | None = None, check: bool = True, types=None) -> SweepSummary:
    types = sweep_types(rank_cap) if types is None else list(types)
    tasks = [(t.family, t.rank, q, check) for t in types for q in q_list]
    n = worker_count(workers)
    if n == 1:
        rows = [_run_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            rows = list(pool.map(_run_one, tasks, chunksize=4))
    return SweepSummary(tuple(q_list), rank_cap, rows)
