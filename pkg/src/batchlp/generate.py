"""Reproducible random LP batches and support-sampling direction templates."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidSpec
from .hyperbox import Hyperbox
from .model import StandardLp

__all__ = [
    "LpClass",
    "GenSpec",
    "generate",
    "generate_arrays",
    "box_directions",
    "oct_directions",
    "random_directions",
]


class LpClass(str, enum.Enum):
    FEASIBLE_START = "feasible"
    INFEASIBLE_START = "infeasible"
    BOX = "box"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class GenSpec:
    """Recipe for a random batch.

    ``coeff_range`` bounds the entries of ``c`` and ``A``. ``b_range`` must be
    positive for the LP classes: FeasibleStart draws ``b`` from it directly,
    InfeasibleStart negates ``ceil(m / 4)`` of those draws. For boxes it
    bounds both ends of every interval and ``m`` is ignored.
    """

    n: int
    m: int
    klass: LpClass = LpClass.FEASIBLE_START
    seed: int = 0
    coeff_range: tuple[float, float] = (-10.0, 10.0)
    b_range: tuple[float, float] = (1.0, 100.0)

    def __post_init__(self):
        object.__setattr__(self, "klass", LpClass(self.klass))

    def check(self):
        if self.n < 1 or (self.klass is not LpClass.BOX and self.m < 1):
            raise InvalidSpec(f"shape n={self.n}, m={self.m} is empty")
        for name in ("coeff_range", "b_range"):
            lo, hi = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise InvalidSpec(f"{name}={(lo, hi)} is not a finite interval")
        if self.klass is not LpClass.BOX and self.b_range[0] <= 0:
            raise InvalidSpec("b_range must lie in (0, inf)")


def negative_rows(m: int) -> int:
    return math.ceil(m / 4)


def generate_arrays(spec: GenSpec, count: int):
    """Structure-of-arrays form of :func:`generate`.

    Returns ``(C, A, B)`` for LP classes and ``(lo, hi)`` for boxes.
    """
    spec.check()
    if count < 0:
        raise InvalidSpec("count must be >= 0")
    rng = np.random.default_rng(spec.seed)
    n, m = spec.n, spec.m
    if spec.klass is LpClass.BOX:
        ends = rng.uniform(*spec.b_range, size=(count, 2, n))
        lo, hi = ends.min(axis=1), ends.max(axis=1)
        # lo < hi strictly; a tie has probability zero but stay safe
        hi = np.where(lo < hi, hi, np.nextafter(hi, np.inf))
        return lo, hi
    C = rng.uniform(*spec.coeff_range, size=(count, n))
    A = rng.uniform(*spec.coeff_range, size=(count, m, n))
    B = rng.uniform(*spec.b_range, size=(count, m))
    if spec.klass is LpClass.INFEASIBLE_START:
        k = negative_rows(m)
        for i in range(count):
            rows = rng.choice(m, size=k, replace=False)
            B[i, rows] = -B[i, rows]
            # The negated rows must have some column with a negative sum,
            # otherwise phase one stops before its first pivot.
            while not np.any(A[i, rows].sum(axis=0) < 0):
                A[i, rows] = rng.uniform(*spec.coeff_range, size=(k, n))
    return C, A, B


def generate(spec: GenSpec, count: int) -> list:
    """``count`` StandardLp instances, or Hyperbox instances for boxes."""
    arrays = generate_arrays(spec, count)
    if spec.klass is LpClass.BOX:
        lo, hi = arrays
        return [Hyperbox(lo[i], hi[i]) for i in range(count)]
    C, A, B = arrays
    return [StandardLp(C[i], A[i], B[i]) for i in range(count)]


def box_directions(n: int) -> np.ndarray:
    """``+e_1, -e_1, +e_2, -e_2, ...`` as a ``(2n, n)`` array."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = np.zeros((2 * n, n))
    for i in range(n):
        out[2 * i, i] = 1.0
        out[2 * i + 1, i] = -1.0
    return out


def oct_directions(n: int) -> np.ndarray:
    """Box directions followed by every ``(+-e_i +-e_j) / sqrt(2)``, i < j.

    ``2 n^2`` unit vectors in total.
    """
    dirs = [box_directions(n)]
    r = 1.0 / math.sqrt(2.0)
    diag = []
    for i in range(n):
        for j in range(i + 1, n):
            for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                d = np.zeros(n)
                d[i], d[j] = si * r, sj * r
                diag.append(d)
    if diag:
        dirs.append(np.array(diag))
    return np.vstack(dirs)


def random_directions(n: int, count: int, seed: int = 0) -> np.ndarray:
    """``count`` directions uniform on the unit sphere."""
    rng = np.random.default_rng(seed)
    L = rng.standard_normal((count, n))
    norms = np.linalg.norm(L, axis=1, keepdims=True)
    return L / np.where(norms > 0, norms, 1.0)
