"""
Solving one LP
==============

Standard form is ``max c.x`` subject to ``A x <= b`` and ``x >= 0``.
"""

import numpy as np

from batchlp import StandardLp, solve
from batchlp.model import evaluate

# max 3x1 + 2x2 with x1 + x2 <= 4 and x1 + 3x2 <= 6
lp = StandardLp(np.array([3.0, 2.0]),
                np.array([[1.0, 1.0], [1.0, 3.0]]),
                np.array([4.0, 6.0]))
sol = solve(lp)
print(sol)
print("x =", sol.x)

# evaluate gives the objective and the worst constraint violation
print("check:", evaluate(lp, sol.x))

# Unbounded and infeasible problems are ordinary outcomes, not exceptions.
print(solve(StandardLp(np.array([1.0]), np.array([[-1.0]]), np.array([1.0]))).status)
print(solve(StandardLp(np.array([1.0]), np.array([[1.0]]), np.array([-1.0]))).status)
