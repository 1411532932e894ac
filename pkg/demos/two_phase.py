"""
Stepping through the two phases
===============================

A negative right-hand side makes the all-slack start infeasible, so the
row is negated and given an artificial variable. Phase one drives the
artificials to zero; phase two then optimizes the real objective.
"""

import numpy as np

from batchlp import SolverConfig, StandardLp, build
from batchlp.simplex import make_choice, pivot, select_entering, select_leaving
from batchlp.tableau import switch_to_phase2

np.set_printoptions(precision=3, suppress=True)

# max x1 + 2x2 with x1 <= 3, x2 >= 1 (written -x2 <= -1) and x1 + x2 <= 5
lp = StandardLp(np.array([1.0, 2.0]),
                np.array([[1.0, 0.0], [0.0, -1.0], [1.0, 1.0]]),
                np.array([3.0, -1.0, 5.0]))
cfg = SolverConfig()
t = build(lp)
print(t.phase, "artificials:", t.n_art, "basis:", t.basis)
print(t.cells)


def run(t):
    while (e := select_entering(t, cfg)) is not None:
        l = select_leaving(t, e, cfg)
        if l is None:
            print("unbounded along column", e)
            return
        pivot(t, make_choice(t, e, l), cfg)
        print(f"  pivot col {e} row {l} -> objective {t.objective_value + 0.0:g}")


print("phase one")
run(t)
switch_to_phase2(t, cfg)
print("phase two, basis", t.basis)
run(t)
print("optimum", t.objective_value + 0.0, "at", t.basic_solution())
