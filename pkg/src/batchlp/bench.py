"""Benchmark sweep over shapes, batch sizes, classes, rules, layouts and threads."""

from __future__ import annotations

import csv
import hashlib
import itertools
import os
import statistics
import warnings
from dataclasses import dataclass, field

import numpy as np

from .batch import Layout, LpBatch, per_lp_bytes, solve_batch
from .exceptions import BatchLpError
from .generate import GenSpec, LpClass, generate_arrays
from .model import PivotRule, SolverConfig

__all__ = ["BENCH_FIELDS", "BenchPlan", "run_bench", "write_bench", "checksum"]

BENCH_FIELDS = [
    "dim", "batch", "class", "rule", "layout", "threads",
    "median_wall_s", "speedup", "mean_iter_phase1", "mean_iter_phase2",
    "lpc_mean_iterations", "rpc_mean_iterations", "objective_checksum",
]

# generated inputs above this size are skipped rather than allocated
MAX_INPUT_BYTES = 2 * 2**30


def _threads(t) -> int:
    if t == "max":
        return os.cpu_count() or 1
    return int(t)


@dataclass
class BenchPlan:
    dims: list = field(default_factory=lambda: [5, 28, 50])
    batches: list = field(default_factory=lambda: [100, 10_000])
    classes: list = field(default_factory=lambda: [LpClass.FEASIBLE_START])
    rules: list = field(default_factory=lambda: [PivotRule.LPC])
    layouts: list = field(default_factory=lambda: [Layout.COLUMN_MAJOR])
    threads: list = field(default_factory=lambda: [1, "max"])
    repeat: int = 3
    seed: int = 0
    chunk_size: int = 0


def checksum(result) -> str:
    """Hash of the status and objective arrays; equal iff bitwise equal."""
    h = hashlib.sha256(result.status.tobytes())
    h.update(result.objective.tobytes())
    return h.hexdigest()[:16]


def _batch(dim, count, klass, seed, layout):
    """n = m = dim, except boxes which are encoded as 2 dim bound rows."""
    spec = GenSpec(dim, dim, klass, seed)
    if klass is LpClass.BOX:
        lo, hi = generate_arrays(spec, count)
        rng = np.random.default_rng(seed + 1)
        C = rng.uniform(-1.0, 1.0, size=(count, dim))
        A = np.vstack([np.eye(dim), -np.eye(dim)])
        return LpBatch.from_arrays(C, A, np.hstack([hi, -lo]), layout)
    C, A, B = generate_arrays(spec, count)
    return LpBatch(C, A, B, layout)


def run_bench(plan: BenchPlan, log=None) -> list[dict]:
    """One row per feasible configuration, in sweep order.

    ``speedup`` is the threads=1 median over this row's median for the same
    shape, class, rule and layout (the baseline is measured even when 1 is
    not among ``plan.threads``). Iteration means do not depend on layout or
    threads, so both rules are run once per batch for the LPC/RPC columns.
    """
    rows = []
    for dim, count, klass in itertools.product(plan.dims, plan.batches, plan.classes):
        klass = LpClass(klass)
        m = 2 * dim if klass is LpClass.BOX else dim
        need = count * (m * dim + m + dim) * 8
        if dim < 1 or count < 1 or need > MAX_INPUT_BYTES:
            warnings.warn(f"skipping dim={dim} batch={count} class={klass}: "
                          f"needs {need} input bytes", stacklevel=2)
            continue
        if per_lp_bytes(dim, m) > SolverConfig().memory_budget // 2:
            warnings.warn(f"skipping dim={dim}: one tableau exceeds the memory budget",
                          stacklevel=2)
            continue

        batches = {}
        def get(layout):
            if layout not in batches:
                batches[layout] = _batch(dim, count, klass, plan.seed, layout)
            return batches[layout]

        iters = {}
        for rule in (PivotRule.LPC, PivotRule.RPC):
            res = solve_batch(get(Layout(plan.layouts[0])),
                              SolverConfig(pivot_rule=rule, rng_seed=plan.seed,
                                           chunk_size=plan.chunk_size))
            iters[rule] = float(np.mean(res.phase1_iterations + res.phase2_iterations))

        for rule, layout in itertools.product(plan.rules, plan.layouts):
            rule, layout = PivotRule(rule), Layout(layout)
            timings = {}

            def timed(t):
                if t not in timings:
                    cfg = SolverConfig(pivot_rule=rule, rng_seed=plan.seed, threads=t,
                                       chunk_size=plan.chunk_size)
                    walls, res = [], None
                    for _ in range(max(1, plan.repeat)):
                        try:
                            res = solve_batch(get(layout), cfg)
                        except BatchLpError as exc:
                            warnings.warn(f"skipping configuration: {exc}", stacklevel=3)
                            return None
                        walls.append(res.wall_time)
                    timings[t] = (statistics.median(walls), res)
                return timings[t]

            base = timed(1)
            for t in plan.threads:
                threads = _threads(t)
                got = timed(threads)
                if got is None or base is None:
                    continue
                wall, res = got
                row = {
                    "dim": dim, "batch": count, "class": klass.value,
                    "rule": rule.value, "layout": layout.value, "threads": threads,
                    "median_wall_s": wall,
                    "speedup": 1.0 if threads == 1 else base[0] / wall,
                    "mean_iter_phase1": float(np.mean(res.phase1_iterations)),
                    "mean_iter_phase2": float(np.mean(res.phase2_iterations)),
                    "lpc_mean_iterations": iters[PivotRule.LPC],
                    "rpc_mean_iterations": iters[PivotRule.RPC],
                    "objective_checksum": checksum(res),
                }
                rows.append(row)
                if log:
                    log(row)
    return rows


def write_bench(stream, rows) -> None:
    w = csv.DictWriter(stream, BENCH_FIELDS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
