"""Batched dense LP solving with a two-phase tableau simplex.

Many small LPs of one shape are packed into a shared buffer and solved in
parallel; axis-aligned boxes get a closed-form support function instead.
"""

from .batch import BatchResult, Layout, LpBatch, pack, solve_batch
from .exceptions import (BatchFileError, BatchLpError, BudgetTooSmall,
                         DimensionMismatch, EmptyBatch, InvalidSpec,
                         IterationLimitExceeded, NonFiniteEntry,
                         PhaseOneNotConverged, PivotTooSmall, ShapeMismatch,
                         TooLarge)
from .generate import (GenSpec, LpClass, box_directions, generate,
                       oct_directions, random_directions)
from .hyperbox import Hyperbox, support, support_batch
from .model import LpSolution, PivotRule, SolverConfig, StandardLp, Status
from .oracle import oracle_solve
from .simplex import solve, solve_tableau
from .tableau import Phase, Tableau, build

__version__ = "0.1.0"

__all__ = [
    "BatchFileError", "BatchLpError", "BatchResult", "BudgetTooSmall",
    "DimensionMismatch", "EmptyBatch", "GenSpec", "Hyperbox", "InvalidSpec",
    "IterationLimitExceeded", "Layout", "LpBatch", "LpClass", "LpSolution",
    "NonFiniteEntry", "Phase", "PhaseOneNotConverged", "PivotRule",
    "PivotTooSmall", "ShapeMismatch", "SolverConfig", "StandardLp", "Status",
    "Tableau", "TooLarge", "box_directions", "build", "generate",
    "oct_directions", "oracle_solve", "pack", "random_directions", "solve",
    "solve_batch", "solve_tableau", "support", "support_batch",
]
