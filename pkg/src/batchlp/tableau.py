"""Dense simplex tableau with slack and artificial columns."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .exceptions import PhaseOneNotConverged, PivotTooSmall
from .model import SolverConfig, StandardLp, validate

__all__ = ["Phase", "Tableau", "build", "switch_to_phase2"]


class Phase(enum.IntEnum):
    ONE = 1
    TWO = 2


@dataclass(eq=False)
class Tableau:
    """A ``p x q`` tableau, ``p = m + 1`` and ``q = n + m + n_art + 2``.

    ``cells`` may be C- or Fortran-ordered; every kernel works on either and
    produces the same numbers. ``basis`` is authoritative; the basis-index
    column ``cells[:m, q - 2]`` mirrors it.
    """

    cells: np.ndarray
    basis: np.ndarray
    n: int
    m: int
    n_art: int
    phase: Phase
    c: np.ndarray

    @property
    def p(self) -> int:
        return self.cells.shape[0]

    @property
    def q(self) -> int:
        return self.cells.shape[1]

    @property
    def n_slack(self) -> int:
        return self.m

    @property
    def column_major(self) -> bool:
        return not self.cells.flags.c_contiguous

    @property
    def rhs(self) -> np.ndarray:
        return self.cells[: self.m, -1]

    @property
    def reduced_costs(self) -> np.ndarray:
        """Last-row coefficients over every variable column."""
        return self.cells[self.m, : self.q - 2]

    @property
    def objective_value(self) -> float:
        """Current value of the objective of the active phase."""
        return -float(self.cells[self.m, -1])

    @property
    def selectable(self) -> int:
        """Columns ``[0, selectable)`` may enter the basis in this phase."""
        if self.phase is Phase.ONE:
            return self.n + self.m + self.n_art
        return self.n + self.m

    @property
    def width(self) -> int:
        # variable columns touched by pivots; artificials are kept up to date
        return self.n + self.m + self.n_art

    def basic_solution(self) -> np.ndarray:
        """Values of the structural variables with non-basics held at zero."""
        x = np.zeros(self.n)
        for i, j in enumerate(self.basis):
            if j < self.n:
                x[j] = self.cells[i, -1]
        return x

    def copy(self) -> Tableau:
        return Tableau(self.cells.copy(order="K"), self.basis.copy(), self.n,
                       self.m, self.n_art, self.phase, self.c)


def build(lp: StandardLp, layout: str = "row") -> Tableau:
    """Build the starting tableau of ``lp``.

    Rows with ``b_i < 0`` are negated and receive an artificial variable;
    if any exist the tableau starts in phase one with the artificial-sum
    objective, otherwise in phase two with ``c``. ``layout`` is ``"row"`` or
    ``"col"`` and only changes memory order.
    """
    validate(lp)
    n, m = lp.n, lp.m
    n_art = int(np.count_nonzero(lp.b < 0))
    q = n + m + n_art + 2
    order = "F" if layout in ("col", "column", "F") else "C"
    cells = np.zeros((m + 1, q), order=order)
    basis = np.empty(m, dtype=np.int64)
    k = K.fill_tableau(cells, basis, lp.c, lp.A, lp.b, n, m)
    assert k == n_art
    phase = Phase.ONE if n_art else Phase.TWO
    return Tableau(cells, basis, n, m, n_art, phase, np.array(lp.c))


def switch_to_phase2(t: Tableau, cfg: SolverConfig | None = None) -> Tableau:
    """Drop the artificials from play and install the original objective.

    Artificials left in the basis at zero are pivoted out where a nonzero
    real column exists; rows that are zero over all real columns are left
    in place, since no later pivot can touch them. Mutates and returns ``t``.
    """
    cfg = cfg or SolverConfig()
    if t.phase is not Phase.ONE:
        raise ValueError("tableau is not in phase one")
    code = K.switch_phase(t.cells, t.basis, t.c, t.n, t.m, t.n_art,
                          cfg.eps_phase1, cfg.eps_pivot, cfg.eps_ratio,
                          t.column_major)
    if code == K.INFEASIBLE:
        raise PhaseOneNotConverged(
            f"phase-one optimum {t.objective_value!r} exceeds {cfg.eps_phase1}")
    if code == K.NUMERICAL_ERROR:
        raise PivotTooSmall("pivot element vanished while removing artificials")
    t.phase = Phase.TWO
    return t
