"""Closed-form support function of an axis-aligned box.

Over ``[lo_1, hi_1] x ... x [lo_n, hi_n]`` the maximum of ``l.x`` picks
``lo_i`` wherever ``l_i < 0`` and ``hi_i`` otherwise, so a box LP costs ``n``
sign tests and ``n`` multiply-adds with no iteration at all.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .exceptions import DimensionMismatch, NonFiniteEntry
from .model import SolverConfig, StandardLp

__all__ = [
    "Hyperbox",
    "support",
    "support_batch",
    "box_to_lp",
    "box_rows_mask",
    "solve_box_lps",
]


@dataclass(frozen=True, eq=False)
class Hyperbox:
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.array(self.lo, dtype=np.float64)
        hi = np.array(self.hi, dtype=np.float64)
        if lo.ndim != 1 or lo.shape != hi.shape or lo.size == 0:
            raise DimensionMismatch(f"bounds of shape {lo.shape} and {hi.shape}")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise NonFiniteEntry("box bounds must be finite")
        if np.any(lo > hi):
            raise ValueError("box needs lo <= hi componentwise")
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def n(self) -> int:
        return self.lo.shape[0]

    def __repr__(self):
        return f"Hyperbox(n={self.n})"


def _directions(box, dirs) -> np.ndarray:
    try:
        L = np.asarray(dirs, dtype=np.float64)
    except ValueError:  # ragged list
        L = None
    if L is not None and L.size == 0:
        return L.reshape(0, box.n)
    if L is None or L.ndim != 2 or L.shape[1] != box.n:
        bad = next((i for i, d in enumerate(dirs) if np.shape(d) != (box.n,)), 0)
        raise DimensionMismatch(f"direction {bad} does not have length {box.n}")
    return L


def support(box: Hyperbox, l) -> tuple[float, np.ndarray]:
    """``max l.x`` over the box, and the corner attaining it."""
    l = np.asarray(l, dtype=np.float64)
    if l.shape != (box.n,):
        raise DimensionMismatch(f"direction has shape {l.shape}, expected ({box.n},)")
    values = np.empty(1)
    argmax = np.empty((1, box.n))
    K.box_support(box.lo, box.hi, l[None], values, argmax)
    return float(values[0]), argmax[0]


def support_batch(box: Hyperbox, dirs, threads: int | None = None):
    """Support values for many directions at once.

    Returns ``(values, argmax)`` arrays; row ``k`` equals
    ``support(box, dirs[k])`` exactly. Work is split across a thread pool
    by direction.
    """
    L = np.ascontiguousarray(_directions(box, dirs))
    N = L.shape[0]
    values = np.empty(N)
    argmax = np.empty((N, box.n))
    if N == 0:
        return values, argmax
    threads = threads or SolverConfig().resolved_threads()
    step = max(1, math.ceil(N / (threads * 4)))
    with ThreadPoolExecutor(threads) as pool:
        futures = [
            pool.submit(K.box_support, box.lo, box.hi, L[a:a + step],
                        values[a:a + step], argmax[a:a + step])
            for a in range(0, N, step)
        ]
        for f in futures:
            f.result()
    return values, argmax


def box_to_lp(box: Hyperbox, l, shift: bool = False) -> tuple[StandardLp, float]:
    """Standard-form LP whose optimum is the support value.

    Returns ``(lp, offset)``; the support value is ``lp optimum + offset``.
    Without ``shift`` the box is written as ``x <= hi, -x <= -lo`` (needs
    ``lo >= 0``, and any ``lo > 0`` puts the LP through phase one). With
    ``shift`` the variable ``x - lo`` is used instead, which works for any box
    and starts feasible.
    """
    l = np.asarray(l, dtype=np.float64)
    n = box.n
    if shift:
        return StandardLp(l, np.eye(n), box.hi - box.lo), float(l @ box.lo)
    if np.any(box.lo < 0):
        raise ValueError("direct encoding needs lo >= 0; use shift=True")
    A = np.vstack([np.eye(n), -np.eye(n)])
    return StandardLp(l, A, np.concatenate([box.hi, -box.lo])), 0.0


def box_rows_mask(A) -> np.ndarray:
    """True for LPs in which every constraint row has one nonzero entry."""
    return np.all(np.count_nonzero(A, axis=2) == 1, axis=1)


def solve_box_lps(C, A, B):
    """Closed-form solve of standard LPs whose rows each bound one variable.

    Each row ``a x_j <= b`` is an upper bound ``b / a`` when ``a > 0`` and a
    lower bound when ``a < 0``; with ``x >= 0`` this gives a box, and the
    LP is its support in direction ``c``. Returns ``(status, objective, x)``
    arrays with kernel status codes.
    """
    C = np.asarray(C, dtype=np.float64)
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    N, n = C.shape
    col = np.argmax(A != 0, axis=2)  # (N, m) variable bounded by each row
    a = np.take_along_axis(A, col[..., None], axis=2)[..., 0]
    bound = B / a
    hi = np.full((N, n), np.inf)
    lo = np.zeros((N, n))
    rows = np.arange(N)[:, None].repeat(col.shape[1], axis=1)
    np.minimum.at(hi, (rows[a > 0], col[a > 0]), bound[a > 0])
    np.maximum.at(lo, (rows[a < 0], col[a < 0]), bound[a < 0])

    status = np.full(N, K.OPTIMAL, dtype=np.int8)
    infeasible = np.any(lo > hi, axis=1)
    unbounded = np.any((C > 0) & np.isinf(hi), axis=1) & ~infeasible
    status[infeasible] = K.INFEASIBLE
    status[unbounded] = K.UNBOUNDED
    ok = status == K.OPTIMAL

    # l_i < 0 -> lower bound, otherwise upper; zero weight on an open side
    # takes the finite lower bound since it contributes nothing either way
    h = np.where(C < 0, lo, hi)
    h = np.where(np.isinf(h), lo, h)
    objective = np.full(N, np.nan)
    x = np.full((N, n), np.nan)
    objective[ok] = np.einsum("ij,ij->i", C[ok], h[ok])
    x[ok] = h[ok]
    return status, objective, x
