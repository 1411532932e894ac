"""Batched solving of same-shape LPs across a thread pool.

Tableaux for a batch live in one contiguous buffer, one uniform slot per LP.
Slots reserve ``m`` artificial columns whatever the LP needs, so every slot
has the same size and the buffer never reshapes. The buffer is materialized
chunk by chunk: while the pool solves chunk ``k`` the next chunk is already
being packed into a second buffer.
"""

from __future__ import annotations

import enum
import math
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels as K
from .exceptions import BudgetTooSmall, EmptyBatch, NonFiniteEntry, ShapeMismatch
from .model import (STATUS_BY_CODE, LpSolution, SolverConfig, StandardLp,
                    Status, validate)

__all__ = [
    "Layout",
    "LpBatch",
    "BatchResult",
    "pack",
    "solve_batch",
    "per_lp_bytes",
    "auto_chunk_size",
]

DATASIZE = np.dtype(np.float64).itemsize


class Layout(str, enum.Enum):
    ROW_MAJOR = "row"
    COLUMN_MAJOR = "col"

    def __str__(self):
        return self.value


def slot_columns(n: int, m: int) -> int:
    return n + m + m + 2


def per_lp_bytes(n: int, m: int, datasize: int = DATASIZE) -> int:
    """Bytes for one tableau slot plus its two reduction scratch arrays."""
    cols = slot_columns(n, m)
    return (m + 1) * cols * datasize + 2 * cols * datasize


def auto_chunk_size(shape, available_bytes: int) -> int:
    """How many LPs fit in ``available_bytes``.

    ``shape`` is either ``(n, m)`` or an already computed per-LP byte count.
    """
    y = shape if isinstance(shape, (int, np.integer)) else per_lp_bytes(*shape)
    if available_bytes < y:
        raise BudgetTooSmall(f"{available_bytes} bytes cannot hold one {y}-byte LP")
    return max(1, available_bytes // y)


@dataclass(eq=False)
class LpBatch:
    """``count`` LPs of one shape, stored structure-of-arrays.

    ``C`` is ``(N, n)``, ``A`` is ``(N, m, n)`` and ``B`` is ``(N, m)``; ``A``
    and ``B`` may be broadcast views when every LP shares its constraints.
    """

    C: np.ndarray
    A: np.ndarray
    B: np.ndarray
    layout: Layout = Layout.COLUMN_MAJOR

    def __post_init__(self):
        self.layout = Layout(self.layout)

    @classmethod
    def from_arrays(cls, C, A, B, layout=Layout.COLUMN_MAJOR) -> LpBatch:
        C = np.ascontiguousarray(C, dtype=np.float64)
        if C.ndim != 2 or C.shape[0] == 0:
            raise EmptyBatch("C must be a non-empty (N, n) array")
        N, n = C.shape
        A = np.asarray(A, dtype=np.float64)
        B = np.asarray(B, dtype=np.float64)
        if A.ndim == 2:
            A = A[None]
        if B.ndim == 1:
            B = B[None]
        m = A.shape[1]
        try:
            A = np.broadcast_to(A, (N, m, n))
            B = np.broadcast_to(B, (N, m))
        except ValueError:
            raise ShapeMismatch(
                f"A {A.shape} / B {B.shape} do not fit C {C.shape}") from None
        for arr in (C, A, B):
            if not np.all(np.isfinite(arr)):
                raise NonFiniteEntry("batch contains NaN or infinity")
        return cls(C, A, B, layout)

    @property
    def count(self) -> int:
        return self.C.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.C.shape[1], self.B.shape[1]

    @property
    def cols(self) -> int:
        return slot_columns(*self.shape)

    @property
    def per_lp_bytes(self) -> int:
        return per_lp_bytes(*self.shape)

    def __len__(self):
        return self.count

    def lp(self, k: int) -> StandardLp:
        return StandardLp(self.C[k], self.A[k], self.B[k])

    def allocate(self, slots: int):
        """Empty tableau buffer and basis array for ``slots`` LPs."""
        n, m = self.shape
        if self.layout is Layout.ROW_MAJOR:
            storage = np.zeros((slots, m + 1, self.cols))
        else:
            storage = np.zeros((slots, self.cols, m + 1))
        return storage, np.zeros((slots, m), dtype=np.int64)

    def pack_range(self, storage, basis, start: int, stop: int, offset: int = 0):
        """Build tableaux of LPs ``[start, stop)`` into slots ``k - offset``."""
        fn = K.pack_rows if self.layout is Layout.ROW_MAJOR else K.pack_cols
        fn(storage, basis, self.C, self.A, self.B, start, stop, offset)

    def slot(self, storage, k: int) -> np.ndarray:
        """``(m + 1, cols)`` view of slot ``k`` whatever the layout."""
        return storage[k] if self.layout is Layout.ROW_MAJOR else storage[k].T

    def materialize(self, threads: int | None = None):
        """Pack every LP; returns ``(storage, basis)``.

        Packing is split across threads; each slot is written by exactly one
        task so the buffer is identical to a sequential pack.
        """
        threads = threads or SolverConfig().resolved_threads()
        storage, basis = self.allocate(self.count)
        with ThreadPoolExecutor(threads) as pool:
            futures = [pool.submit(self.pack_range, storage, basis, a, b)
                       for a, b in _split(0, self.count, threads * 4)]
            for f in futures:
                f.result()
        return storage, basis

    @cached_property
    def storage(self) -> np.ndarray:
        return self.materialize()[0]


def pack(lps, layout=Layout.COLUMN_MAJOR) -> LpBatch:
    """Collect same-shape LPs into a batch."""
    lps = list(lps)
    if not lps:
        raise EmptyBatch("no LPs to pack")
    for lp in lps:
        validate(lp)
    shape = lps[0].shape
    for i, lp in enumerate(lps):
        if lp.shape != shape:
            raise ShapeMismatch(f"LP {i} has shape {lp.shape}, expected {shape}")
    C = np.stack([lp.c for lp in lps])
    A = np.stack([lp.A for lp in lps])
    B = np.stack([lp.b for lp in lps])
    return LpBatch(C, A, B, Layout(layout))


@dataclass(eq=False)
class BatchResult:
    """Per-LP results, index-aligned with the input batch.

    Arrays rather than objects so that million-LP batches stay cheap;
    :attr:`solutions` builds :class:`LpSolution` objects on demand.
    ``objective`` and ``x`` are NaN where the status is not optimal.
    """

    status: np.ndarray
    objective: np.ndarray
    x: np.ndarray
    phase1_iterations: np.ndarray
    phase2_iterations: np.ndarray
    wall_time: float = 0.0
    per_chunk_times: list = field(default_factory=list)

    def __len__(self):
        return self.status.shape[0]

    def __getitem__(self, k) -> LpSolution:
        st = STATUS_BY_CODE[self.status[k]]
        it1, it2 = int(self.phase1_iterations[k]), int(self.phase2_iterations[k])
        if st is Status.OPTIMAL:
            return LpSolution(st, float(self.objective[k]), self.x[k], it1, it2)
        return LpSolution(st, None, None, it1, it2)

    @cached_property
    def solutions(self) -> list[LpSolution]:
        return [self[k] for k in range(len(self))]

    @property
    def statuses(self) -> list[Status]:
        return [STATUS_BY_CODE[s] for s in self.status]

    def same_solutions(self, other: BatchResult) -> bool:
        """Bitwise equality of everything except timings."""
        return all(
            getattr(self, name).tobytes() == getattr(other, name).tobytes()
            for name in ("status", "objective", "x", "phase1_iterations",
                         "phase2_iterations")
        )


def _split(start, stop, parts):
    size = max(1, math.ceil((stop - start) / max(1, parts)))
    return [(a, min(a + size, stop)) for a in range(start, stop, size)]


def _empty_result(N, n):
    return BatchResult(
        status=np.zeros(N, dtype=np.int8),
        objective=np.full(N, np.nan),
        x=np.full((N, n), np.nan),
        phase1_iterations=np.zeros(N, dtype=np.int64),
        phase2_iterations=np.zeros(N, dtype=np.int64),
    )


def solve_batch(batch: LpBatch, cfg: SolverConfig | None = None, *,
                box_fast_path: bool = False) -> BatchResult:
    """Solve every LP of ``batch``.

    Each LP runs through the same compiled simplex as
    :func:`batchlp.simplex.solve_tableau` with the same configuration, so
    its result is bitwise independent of thread count, chunk size and
    layout. Failures (iteration limit, vanished pivot) are recorded as that
    LP's status rather than raised.

    With ``box_fast_path`` LPs whose every row bounds a single variable are
    answered in closed form instead (phase iteration counts are then 0).
    """
    cfg = cfg or SolverConfig()
    if batch.count == 0:
        raise EmptyBatch("no LPs to solve")
    t0 = time.perf_counter()
    N = batch.count
    n, m = batch.shape
    threads = cfg.resolved_threads()
    res = _empty_result(N, n)

    todo = np.arange(N)
    if box_fast_path:
        from .hyperbox import box_rows_mask, solve_box_lps

        mask = box_rows_mask(batch.A)
        if mask.any():
            idx = np.flatnonzero(mask)
            st, obj, x = solve_box_lps(batch.C[idx], batch.A[idx], batch.B[idx])
            res.status[idx] = st
            res.objective[idx] = obj
            res.x[idx] = x
            if mask.all():
                res.wall_time = time.perf_counter() - t0
                return res
            todo = np.flatnonzero(~mask)
            sub = LpBatch(batch.C[todo], batch.A[todo], batch.B[todo], batch.layout)
            inner = solve_batch(sub, cfg)
            for name in ("status", "objective", "x", "phase1_iterations",
                         "phase2_iterations"):
                getattr(res, name)[todo] = getattr(inner, name)
            res.per_chunk_times = inner.per_chunk_times
            res.wall_time = time.perf_counter() - t0
            return res

    chunk = cfg.chunk_size or auto_chunk_size(
        batch.shape, cfg.memory_budget // cfg.pipeline_depth)
    chunk = min(chunk, N)
    chunks = [(a, min(a + chunk, N)) for a in range(0, N, chunk)]
    rule, fparams, max_iter, bland, seed = cfg.kernel_args(n, m)
    solve_fn = K.solve_rows if batch.layout is Layout.ROW_MAJOR else K.solve_cols
    buffers = [batch.allocate(chunk) for _ in range(min(cfg.pipeline_depth, len(chunks)))]
    parts = threads * 4

    with ThreadPoolExecutor(threads) as pool:
        def submit_pack(ci):
            storage, basis = buffers[ci % len(buffers)]
            a, b = chunks[ci]
            return [pool.submit(batch.pack_range, storage, basis, s, e, a)
                    for s, e in _split(a, b, parts)]

        pending = deque()
        next_pack = 0
        while next_pack < min(len(buffers), len(chunks)):
            pending.append(submit_pack(next_pack))
            next_pack += 1
        for ci, (a, b) in enumerate(chunks):
            tc = time.perf_counter()
            for f in pending.popleft():
                f.result()
            storage, basis = buffers[ci % len(buffers)]
            solves = [
                pool.submit(solve_fn, storage, basis, batch.C, s, e, a, rule,
                            fparams, max_iter, bland, seed, res.status,
                            res.objective, res.x, res.phase1_iterations,
                            res.phase2_iterations)
                for s, e in _split(a, b, parts)
            ]
            done, _ = wait(solves)
            for f in done:
                f.result()
            # this chunk's buffer is free again: queue the next chunk into it
            if next_pack < len(chunks):
                pending.append(submit_pack(next_pack))
                next_pack += 1
            res.per_chunk_times.append(time.perf_counter() - tc)

    res.wall_time = time.perf_counter() - t0
    return res
