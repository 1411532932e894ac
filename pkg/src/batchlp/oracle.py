"""Brute-force vertex enumeration, used as a test oracle for small LPs.

Shares no code with the simplex path: every candidate basis of the slack
system ``[A | I] z = b`` is solved directly with LAPACK.
"""

from __future__ import annotations

import itertools

import numpy as np

from .exceptions import TooLarge
from .model import LpSolution, StandardLp, Status, validate

__all__ = ["oracle_solve", "MAX_SIZE"]

MAX_SIZE = 14


def _best_vertex(c, A, b, tol):
    """Max of ``c.x`` over vertices of ``{A x <= b, x >= 0}``.

    Returns ``(value, x)`` or ``None`` when there is no feasible vertex.
    """
    m, n = A.shape
    M = np.hstack([A, np.eye(m)])
    bases = np.array(list(itertools.combinations(range(n + m), m)))
    mats = M[:, bases].transpose(1, 0, 2)  # (K, m, m)
    # reject (near) singular bases before solving
    scale = np.abs(mats).max(axis=(1, 2))
    dets = np.linalg.det(mats / scale[:, None, None])
    ok = np.abs(dets) > 1e-10
    if not ok.any():
        return None
    bases, mats = bases[ok], mats[ok]
    zb = np.linalg.solve(mats, np.broadcast_to(b, (len(bases), m))[..., None])[..., 0]
    z = np.zeros((len(bases), n + m))
    np.put_along_axis(z, bases, zb, axis=1)
    feasible = np.all(z >= -tol, axis=1)
    if not feasible.any():
        return None
    x = z[feasible, :n]
    values = x @ c
    k = int(np.argmax(values))
    return float(values[k]), x[k]


def oracle_solve(lp: StandardLp) -> LpSolution:
    """Solve ``lp`` by enumerating all ``C(n + m, m)`` bases.

    Infeasible when no basis is feasible. Unboundedness is decided by a
    second enumeration, over the recession cone cut by ``sum(d) <= 1``: the
    LP is unbounded iff some ``d >= 0`` with ``A d <= 0`` has ``c.d > 0``.
    Otherwise the best feasible vertex is optimal. Iteration counts are 0.
    """
    validate(lp)
    n, m = lp.n, lp.m
    if n + m > MAX_SIZE:
        raise TooLarge(f"n + m = {n + m} exceeds {MAX_SIZE}")
    c, A, b = np.asarray(lp.c), np.asarray(lp.A), np.asarray(lp.b)
    tol = 1e-9 * (1.0 + np.abs(b).max())

    best = _best_vertex(c, A, b, tol)
    if best is None:
        return LpSolution(Status.INFEASIBLE)

    ray_A = np.vstack([A, np.ones((1, n))])
    ray_b = np.concatenate([np.zeros(m), [1.0]])
    ray = _best_vertex(c, ray_A, ray_b, 1e-12)
    if ray is not None and ray[0] > 1e-9 * (1.0 + np.abs(c).max()):
        return LpSolution(Status.UNBOUNDED)

    value, x = best
    return LpSolution(Status.OPTIMAL, value, x)
