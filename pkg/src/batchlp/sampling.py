"""Support-function sampling of a box through either engine."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .batch import Layout, LpBatch, solve_batch
from .hyperbox import Hyperbox, support_batch
from .model import SolverConfig

__all__ = ["SampleRun", "simplex_support", "sample_support"]


def simplex_support(box: Hyperbox, dirs, cfg: SolverConfig | None = None,
                    layout=Layout.COLUMN_MAJOR):
    """Support values computed by running the simplex on every direction.

    Uses the shifted encoding ``0 <= x - lo <= hi - lo`` so every LP starts
    feasible. All LPs share one constraint matrix, which is broadcast rather
    than copied. Returns ``(values, result)``.
    """
    L = np.asarray(dirs, dtype=np.float64).reshape(-1, box.n)
    n = box.n
    if L.shape[0] == 0:
        return np.empty(0), None
    batch = LpBatch.from_arrays(L, np.eye(n), box.hi - box.lo, layout)
    result = solve_batch(batch, cfg)
    values = result.objective + L @ box.lo
    bad = result.status != 0
    if bad.any():
        k = int(np.flatnonzero(bad)[0])
        raise RuntimeError(f"direction {k} ended as {result[k].status}")
    return values, result


@dataclass
class SampleRun:
    directions: np.ndarray
    closed_form: np.ndarray | None = None
    simplex: np.ndarray | None = None
    closed_form_time: float | None = None
    simplex_time: float | None = None

    @property
    def max_discrepancy(self) -> float | None:
        if self.closed_form is None or self.simplex is None:
            return None
        if len(self.directions) == 0:
            return 0.0
        return float(np.max(np.abs(self.closed_form - self.simplex)))


def sample_support(box: Hyperbox, dirs, engine: str = "closed-form",
                   cfg: SolverConfig | None = None) -> SampleRun:
    """Sample the support of ``box`` along ``dirs`` with one or both engines."""
    if engine not in ("closed-form", "simplex", "both"):
        raise ValueError(f"unknown engine {engine!r}")
    cfg = cfg or SolverConfig()
    run = SampleRun(np.asarray(dirs, dtype=np.float64))
    if engine in ("closed-form", "both"):
        t = time.perf_counter()
        run.closed_form, _ = support_batch(box, run.directions, cfg.resolved_threads())
        run.closed_form_time = time.perf_counter() - t
    if engine in ("simplex", "both"):
        t = time.perf_counter()
        run.simplex, _ = simplex_support(box, run.directions, cfg)
        run.simplex_time = time.perf_counter() - t
    return run

