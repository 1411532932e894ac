"""Problem, solution and configuration types shared by every solver."""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DimensionMismatch, NonFiniteEntry

__all__ = [
    "StandardLp",
    "LpSolution",
    "Status",
    "PivotRule",
    "SolverConfig",
    "validate",
    "evaluate",
]


def _frozen(a) -> np.ndarray:
    try:
        arr = np.array(a, dtype=np.float64)
    except ValueError as exc:  # ragged input
        raise DimensionMismatch(str(exc)) from None
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class StandardLp:
    """``maximize c.x  subject to  A x <= b,  x >= 0``.

    ``n`` and ``m`` default to the column and row counts of ``A``. The
    constructor copies its inputs into read-only float arrays but does not
    check consistency; call :func:`validate` for that.
    """

    c: np.ndarray
    A: np.ndarray
    b: np.ndarray
    n: int | None = None
    m: int | None = None

    def __post_init__(self):
        A = _frozen(self.A)
        object.__setattr__(self, "c", _frozen(self.c))
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", _frozen(self.b))
        if self.n is None:
            object.__setattr__(self, "n", int(A.shape[1]) if A.ndim == 2 else 0)
        if self.m is None:
            object.__setattr__(self, "m", int(A.shape[0]) if A.ndim == 2 else 0)

    @property
    def shape(self) -> tuple[int, int]:
        return self.n, self.m

    def __repr__(self):
        return f"StandardLp(n={self.n}, m={self.m})"


def validate(lp: StandardLp) -> None:
    """Raise unless ``lp`` is a well-formed standard-form LP."""
    n, m = lp.n, lp.m
    if n < 1 or m < 1:
        raise DimensionMismatch(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    if lp.c.shape != (n,):
        raise DimensionMismatch(f"c has shape {lp.c.shape}, expected ({n},)")
    if lp.A.shape != (m, n):
        raise DimensionMismatch(f"A has shape {lp.A.shape}, expected ({m}, {n})")
    if lp.b.shape != (m,):
        raise DimensionMismatch(f"b has shape {lp.b.shape}, expected ({m},)")
    for name in ("c", "A", "b"):
        if not np.all(np.isfinite(getattr(lp, name))):
            raise NonFiniteEntry(f"{name} contains NaN or infinity")


def evaluate(lp: StandardLp, x) -> tuple[float, float]:
    """Objective value of ``x`` and its worst constraint violation.

    The violation covers both ``A x <= b`` and ``x >= 0`` and is never
    negative.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (lp.n,):
        raise DimensionMismatch(f"x has shape {x.shape}, expected ({lp.n},)")
    objective = float(lp.c @ x)
    viol = max(0.0, float(np.max(lp.A @ x - lp.b)), float(np.max(-x)))
    return objective, viol


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"
    # per-LP failures recorded by batch solves instead of raising
    ITERATION_LIMIT = "iteration_limit"
    NUMERICAL_ERROR = "numerical_error"

    def __str__(self):
        return self.value


# index order matches the integer codes used by the kernels
STATUS_BY_CODE = (
    Status.OPTIMAL,
    Status.UNBOUNDED,
    Status.INFEASIBLE,
    Status.ITERATION_LIMIT,
    Status.NUMERICAL_ERROR,
)


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: Status
    objective: float | None = None
    x: np.ndarray | None = None
    phase1_iterations: int = 0
    phase2_iterations: int = 0

    def __post_init__(self):
        if (self.status is Status.OPTIMAL) != (self.x is not None):
            raise ValueError("x must be present exactly when status is optimal")
        if self.x is not None:
            x = np.array(self.x, dtype=np.float64)
            x.flags.writeable = False
            object.__setattr__(self, "x", x)

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL

    def __eq__(self, other):
        if not isinstance(other, LpSolution):
            return NotImplemented
        same_x = (self.x is None and other.x is None) or (
            self.x is not None and other.x is not None
            and self.x.tobytes() == other.x.tobytes()
        )
        return (
            self.status is other.status
            and self.objective == other.objective
            and same_x
            and self.phase1_iterations == other.phase1_iterations
            and self.phase2_iterations == other.phase2_iterations
        )

    __hash__ = None

    def __repr__(self):
        if self.optimal:
            return (f"LpSolution({self.status}, objective={self.objective!r}, "
                    f"iterations={self.phase1_iterations}+{self.phase2_iterations})")
        return f"LpSolution({self.status})"


class PivotRule(str, enum.Enum):
    LPC = "lpc"  # largest positive coefficient
    RPC = "rpc"  # random positive coefficient

    def __str__(self):
        return self.value


THREADS_ENV = "BATCHLP_THREADS"
DEFAULT_MEMORY_BUDGET = 256 * 2**20


@dataclass(frozen=True)
class SolverConfig:
    """Knobs for the simplex engine and the batch executor.

    ``max_iterations`` and ``bland_after`` default to ``50 (n + m)`` and
    ``10 (n + m)`` for the shape being solved; see :meth:`limits`.
    ``threads=None`` reads ``BATCHLP_THREADS`` and falls back to the CPU
    count. ``chunk_size=0`` sizes chunks from ``memory_budget``.
    """

    pivot_rule: PivotRule = PivotRule.LPC
    eps_pivot: float = 1e-9
    eps_ratio: float = 1e-12
    eps_phase1: float = 1e-7
    eps_feas: float = 1e-6
    eps_obj: float = 1e-6
    max_iterations: int | None = None
    bland_after: int | None = None
    rng_seed: int = 0
    threads: int | None = None
    chunk_size: int = 0
    pipeline_depth: int = 2
    memory_budget: int = field(default=DEFAULT_MEMORY_BUDGET)

    def __post_init__(self):
        object.__setattr__(self, "pivot_rule", PivotRule(self.pivot_rule))
        for name in ("eps_pivot", "eps_ratio", "eps_phase1", "eps_feas", "eps_obj"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.bland_after is not None and self.bland_after < 0:
            raise ValueError("bland_after must be >= 0")
        if (self.max_iterations is not None and self.bland_after is not None
                and self.bland_after > self.max_iterations):
            raise ValueError("bland_after must not exceed max_iterations")
        if self.threads is not None and self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.chunk_size < 0:
            raise ValueError("chunk_size must be >= 0")
        if self.pipeline_depth < 1:
            raise ValueError("pipeline_depth must be >= 1")

    def limits(self, n: int, m: int) -> tuple[int, int]:
        """Resolved ``(max_iterations, bland_after)`` for an n x m LP."""
        max_iter = self.max_iterations or 50 * (n + m)
        bland = self.bland_after if self.bland_after is not None else 10 * (n + m)
        bland = min(bland, max_iter)
        return max_iter, bland

    def resolved_threads(self) -> int:
        if self.threads is not None:
            return self.threads
        env = os.environ.get(THREADS_ENV)
        if env:
            try:
                value = int(env)
            except ValueError:
                raise ValueError(f"{THREADS_ENV}={env!r} is not an integer") from None
            if value >= 1:
                return value
        return os.cpu_count() or 1

    def kernel_args(self, n: int, m: int):
        """Positional arguments shared by every kernel entry point."""
        from . import _kernels as K

        max_iter, bland = self.limits(n, m)
        rule = K.RPC if self.pivot_rule is PivotRule.RPC else K.LPC
        fparams = np.array(
            [self.eps_pivot, self.eps_ratio, self.eps_phase1, self.eps_obj])
        seed = np.uint64(self.rng_seed & 0xFFFFFFFFFFFFFFFF)
        return rule, fparams, max_iter, bland, seed
