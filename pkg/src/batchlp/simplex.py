"""Simplex iterations on a single tableau: pivot rules, ratio test, pivot."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .exceptions import IterationLimitExceeded, PivotTooSmall
from .model import (STATUS_BY_CODE, LpSolution, PivotRule, SolverConfig,
                    StandardLp, Status)
from .tableau import Phase, Tableau, build

__all__ = [
    "PivotChoice",
    "new_rng_state",
    "select_entering",
    "select_leaving",
    "pivot",
    "solve_tableau",
    "solve",
]


@dataclass(frozen=True)
class PivotChoice:
    entering_col: int
    leaving_row: int
    pivot_element: float


def new_rng_state(seed: int) -> np.ndarray:
    """Fresh generator state for the random pivot rule."""
    return np.array([seed & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64)


def select_entering(t: Tableau, cfg: SolverConfig, rng_state=None, *,
                    bland: bool = False) -> int | None:
    """Pick the entering column, or ``None`` when the tableau is optimal.

    LPC takes the largest last-row coefficient above ``eps_pivot`` (lowest
    index on ties); RPC draws uniformly among all such columns using
    ``rng_state`` (advanced in place). ``bland=True`` forces the lowest
    eligible index, which is what :func:`solve_tableau` switches to once
    progress stalls.
    """
    if bland:
        rule = K.BLAND
    elif cfg.pivot_rule is PivotRule.RPC:
        rule = K.RPC
        if rng_state is None:
            rng_state = new_rng_state(cfg.rng_seed)
    else:
        rule = K.LPC
    if rng_state is None:
        rng_state = new_rng_state(0)
    cand = np.empty(t.selectable, dtype=np.int64)
    e = K.choose_entering(t.cells, t.selectable, rule, cfg.eps_pivot, rng_state, cand)
    return None if e < 0 else int(e)


def select_leaving(t: Tableau, e: int, cfg: SolverConfig) -> int | None:
    """Min-ratio row for entering column ``e``; ``None`` means unbounded."""
    ratios = np.empty(t.m)
    l = K.choose_leaving(t.cells, e, cfg.eps_ratio, ratios)
    return None if l < 0 else int(l)


def pivot(t: Tableau, choice: PivotChoice, cfg: SolverConfig | None = None) -> None:
    cfg = cfg or SolverConfig()
    pc = np.empty(t.p)
    ok = K.pivot(t.cells, t.basis, choice.leaving_row, choice.entering_col,
                 t.width, cfg.eps_ratio, pc, t.column_major)
    if not ok:
        raise PivotTooSmall(
            f"|{t.cells[choice.leaving_row, choice.entering_col]!r}| <= {cfg.eps_ratio}")


def make_choice(t: Tableau, e: int, l: int) -> PivotChoice:
    return PivotChoice(e, l, float(t.cells[l, e]))


def solve_tableau(t: Tableau, cfg: SolverConfig | None = None) -> LpSolution:
    """Run both phases on a freshly built tableau.

    Raises :class:`IterationLimitExceeded` or :class:`PivotTooSmall` on
    breakdown; infeasible and unbounded LPs are ordinary results.
    """
    cfg = cfg or SolverConfig()
    rule, fparams, max_iter, bland, seed = cfg.kernel_args(t.n, t.m)
    x = np.zeros(t.n)
    code, it1, it2, phase = K.run_simplex(
        t.cells, t.basis, t.c, t.n, t.m, t.n_art, rule, fparams[0], fparams[1],
        fparams[2], fparams[3], max_iter, bland, seed, t.column_major, x)
    t.phase = Phase(phase)
    if code == K.ITERATION_LIMIT:
        raise IterationLimitExceeded(f"no termination after {max_iter} iterations")
    if code == K.NUMERICAL_ERROR:
        raise PivotTooSmall("pivot element fell below eps_ratio")
    status = STATUS_BY_CODE[code]
    if status is Status.OPTIMAL:
        return LpSolution(status, t.objective_value, x, it1, it2)
    return LpSolution(status, None, None, it1, it2)


def solve(lp: StandardLp, cfg: SolverConfig | None = None, layout: str = "row") -> LpSolution:
    """Build and solve ``lp`` in one call."""
    return solve_tableau(build(lp, layout), cfg)
