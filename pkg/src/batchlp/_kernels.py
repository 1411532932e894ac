"""Compiled per-LP simplex kernels.

Everything here operates on a single ``(m + 1, q)`` tableau view and runs
without the GIL, so a thread pool can drive many solves at once. The Python
level API (``tableau``, ``simplex``, ``batch``) is a thin shell around these
functions; there is exactly one arithmetic path.

Tableau column map for ``n`` structural variables, ``m`` rows and an
artificial budget of ``a`` columns::

    [0, n)            structural
    [n, n + m)        slack, one per row
    [n + m, n + m + a) artificial (only the first ``n_art`` are ever used)
    q - 2             basis index of the row (aux column)
    q - 1             right-hand side (aux column)

The last row holds reduced costs and, in the rhs cell, the negated current
objective value.
"""

import numpy as np
from numba import njit

OPTIMAL = 0
UNBOUNDED = 1
INFEASIBLE = 2
ITERATION_LIMIT = 3
NUMERICAL_ERROR = 4

LPC = 0
RPC = 1
BLAND = 2

_JIT = dict(nogil=True, cache=True)

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@njit(**_JIT)
def rng_next(state):
    # splitmix64; state is a length-1 uint64 array owned by one solve
    state[0] = state[0] + _GOLDEN
    z = state[0]
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


@njit(**_JIT)
def rng_below(state, k):
    """Uniform integer in [0, k)."""
    u = np.float64(rng_next(state) >> np.uint64(11)) * (1.0 / 9007199254740992.0)
    i = int(u * k)
    return i if i < k else k - 1


@njit(**_JIT)
def install_objective(T, basis, cost, width):
    # reduced costs r_j = cost_j - sum_i cost[basis_i] * T[i, j]
    m = basis.shape[0]
    rhs = T.shape[1] - 1
    for j in range(width):
        s = 0.0
        for i in range(m):
            s += cost[basis[i]] * T[i, j]
        T[m, j] = cost[j] - s
    s = 0.0
    for i in range(m):
        s += cost[basis[i]] * T[i, rhs]
    T[m, rhs] = -s


@njit(**_JIT)
def fill_tableau(T, basis, c, A, b, n, m):
    """Write the slack form of ``max c.x, A x <= b`` into ``T``.

    Rows with a negative right-hand side are negated and given an artificial
    variable. Returns the number of artificials; when positive the phase-one
    objective (maximize minus the artificial sum) is installed, otherwise the
    original objective is.
    """
    q = T.shape[1]
    idx = q - 2
    rhs = q - 1
    T[:, :] = 0.0
    k = 0
    for i in range(m):
        if b[i] < 0.0:
            for j in range(n):
                T[i, j] = -A[i, j]
            T[i, n + i] = -1.0
            T[i, rhs] = -b[i]
            T[i, n + m + k] = 1.0
            basis[i] = n + m + k
            k += 1
        else:
            for j in range(n):
                T[i, j] = A[i, j]
            T[i, n + i] = 1.0
            T[i, rhs] = b[i]
            basis[i] = n + i
        T[i, idx] = basis[i]
    T[m, idx] = -1.0
    cost = np.zeros(q - 2)
    if k > 0:
        for j in range(k):
            cost[n + m + j] = -1.0
    else:
        for j in range(n):
            cost[j] = c[j]
    install_objective(T, basis, cost, n + m + k)
    return k


@njit(**_JIT)
def choose_entering(T, width, rule, eps_pivot, rng, cand):
    m = T.shape[0] - 1
    if rule == RPC:
        cnt = 0
        for j in range(width):
            if T[m, j] > eps_pivot:
                cand[cnt] = j
                cnt += 1
        if cnt == 0:
            return -1
        return cand[rng_below(rng, cnt)]
    best = -1
    bestv = eps_pivot
    for j in range(width):
        v = T[m, j]
        if v > bestv:
            if rule == BLAND:
                return j
            best = j
            bestv = v
    return best


@njit(**_JIT)
def choose_leaving(T, e, eps_ratio, ratios):
    m = T.shape[0] - 1
    rhs = T.shape[1] - 1
    best = -1
    bestr = np.inf
    for i in range(m):
        a = T[i, e]
        # non-positive denominators get the sentinel so the scan is a plain argmin
        r = T[i, rhs] / a if a > eps_ratio else np.inf
        ratios[i] = r
        if r < bestr:
            bestr = r
            best = i
    return best


@njit(**_JIT)
def pivot(T, basis, l, e, width, eps_ratio, pc, colmajor):
    pe = T[l, e]
    if abs(pe) <= eps_ratio:
        return False
    p = T.shape[0]
    rhs = T.shape[1] - 1
    for i in range(p):
        pc[i] = T[i, e]
    for j in range(width):
        T[l, j] = T[l, j] / pe
    T[l, rhs] = T[l, rhs] / pe
    if colmajor:
        for j in range(width):
            v = T[l, j]
            for i in range(p):
                if i != l:
                    T[i, j] = T[i, j] - pc[i] * v
        v = T[l, rhs]
        for i in range(p):
            if i != l:
                T[i, rhs] = T[i, rhs] - pc[i] * v
    else:
        for i in range(p):
            if i == l:
                continue
            f = pc[i]
            for j in range(width):
                T[i, j] = T[i, j] - f * T[l, j]
            T[i, rhs] = T[i, rhs] - f * T[l, rhs]
    basis[l] = e
    T[l, rhs - 1] = e
    return True


@njit(**_JIT)
def iterate(T, basis, select_width, update_width, rule, eps_pivot, eps_ratio,
            eps_obj, budget, bland_after, rng, colmajor):
    """Pivot until optimal, unbounded or out of budget.

    Returns ``(code, iterations)``; code is OPTIMAL, UNBOUNDED,
    ITERATION_LIMIT or NUMERICAL_ERROR.
    """
    p = T.shape[0]
    m = p - 1
    rhs = T.shape[1] - 1
    cand = np.empty(select_width, dtype=np.int64)
    ratios = np.empty(m)
    pc = np.empty(p)
    it = 0
    stall = 0
    best = -T[m, rhs]
    while True:
        r = rule if stall < bland_after else BLAND
        e = choose_entering(T, select_width, r, eps_pivot, rng, cand)
        if e < 0:
            return OPTIMAL, it
        if it >= budget:
            return ITERATION_LIMIT, it
        l = choose_leaving(T, e, eps_ratio, ratios)
        if l < 0:
            return UNBOUNDED, it
        if not pivot(T, basis, l, e, update_width, eps_ratio, pc, colmajor):
            return NUMERICAL_ERROR, it
        it += 1
        z = -T[m, rhs]
        if z > best + eps_obj * (1.0 + abs(best)):
            best = z
            stall = 0
        else:
            stall += 1


@njit(**_JIT)
def switch_phase(T, basis, c, n, m, nart, eps_phase1, eps_pivot, eps_ratio, colmajor):
    """Leave phase one: returns OPTIMAL on success, INFEASIBLE otherwise."""
    rhs = T.shape[1] - 1
    if abs(T[m, rhs]) > eps_phase1:
        return INFEASIBLE
    width = n + m + nart
    pc = np.empty(m + 1)
    for i in range(m):
        if basis[i] < n + m:
            continue
        # artificial still basic at (near) zero: swap in the largest real column
        best = -1
        bestv = eps_pivot
        for j in range(n + m):
            v = abs(T[i, j])
            if v > bestv:
                best = j
                bestv = v
        if best >= 0:
            if not pivot(T, basis, i, best, width, eps_ratio, pc, colmajor):
                return NUMERICAL_ERROR
        # otherwise the row is zero on every selectable column and stays inert
    cost = np.zeros(T.shape[1] - 2)
    for j in range(n):
        cost[j] = c[j]
    install_objective(T, basis, cost, width)
    return OPTIMAL


@njit(**_JIT)
def run_simplex(T, basis, c, n, m, nart, rule, eps_pivot, eps_ratio, eps_phase1,
                eps_obj, max_iter, bland_after, seed, colmajor, x):
    """Solve a freshly filled tableau in place.

    Returns ``(status, phase1_iterations, phase2_iterations, final_phase)``
    and writes the structural solution into ``x`` when optimal.
    """
    rhs = T.shape[1] - 1
    rng = np.empty(1, dtype=np.uint64)
    rng[0] = seed
    width = n + m + nart
    it1 = 0
    phase = 2
    if nart > 0:
        phase = 1
        code, it1 = iterate(T, basis, width, width, rule, eps_pivot, eps_ratio,
                            eps_obj, max_iter, bland_after, rng, colmajor)
        if code == ITERATION_LIMIT:
            return ITERATION_LIMIT, it1, 0, phase
        if code != OPTIMAL:
            # phase one is bounded above by zero; anything else is breakdown
            return NUMERICAL_ERROR, it1, 0, phase
        code = switch_phase(T, basis, c, n, m, nart, eps_phase1, eps_pivot,
                            eps_ratio, colmajor)
        if code != OPTIMAL:
            return code, it1, 0, phase
        phase = 2
    code, it2 = iterate(T, basis, n + m, width, rule, eps_pivot, eps_ratio,
                        eps_obj, max_iter - it1, bland_after, rng, colmajor)
    if code == OPTIMAL:
        for j in range(n):
            x[j] = 0.0
        for i in range(m):
            if basis[i] < n:
                x[basis[i]] = T[i, rhs]
    return code, it1, it2, phase


@njit(**_JIT)
def pack_rows(storage, basis, C, A, B, start, stop, offset):
    # storage: (slots, p, q) row-major tableaux; LP k lands in slot k - offset
    n = C.shape[1]
    m = B.shape[1]
    for k in range(start, stop):
        fill_tableau(storage[k - offset], basis[k - offset], C[k], A[k], B[k], n, m)


@njit(**_JIT)
def pack_cols(storage, basis, C, A, B, start, stop, offset):
    # storage: (slots, q, p); each slot is a column-major (p, q) tableau
    n = C.shape[1]
    m = B.shape[1]
    for k in range(start, stop):
        fill_tableau(storage[k - offset].T, basis[k - offset], C[k], A[k], B[k], n, m)


@njit(**_JIT)
def _finish(code, T, m, k, objective, x_out, xbuf, status, it1, it2, r1, r2):
    status[k] = code
    it1[k] = r1
    it2[k] = r2
    if code == OPTIMAL:
        objective[k] = -T[m, T.shape[1] - 1]
        for j in range(xbuf.shape[0]):
            x_out[k, j] = xbuf[j]


@njit(**_JIT)
def solve_rows(storage, basis, C, start, stop, offset, rule, fparams, max_iter,
               bland_after, seed, status, objective, x_out, it1, it2):
    n = C.shape[1]
    m = basis.shape[1]
    xbuf = np.empty(n)
    for k in range(start, stop):
        T = storage[k - offset]
        bs = basis[k - offset]
        nart = 0
        for i in range(m):
            if bs[i] >= n + m:
                nart += 1
        code, r1, r2, _ = run_simplex(T, bs, C[k], n, m, nart, rule, fparams[0],
                                      fparams[1], fparams[2], fparams[3],
                                      max_iter, bland_after, seed, False, xbuf)
        _finish(code, T, m, k, objective, x_out, xbuf, status, it1, it2, r1, r2)


@njit(**_JIT)
def solve_cols(storage, basis, C, start, stop, offset, rule, fparams, max_iter,
               bland_after, seed, status, objective, x_out, it1, it2):
    n = C.shape[1]
    m = basis.shape[1]
    xbuf = np.empty(n)
    for k in range(start, stop):
        T = storage[k - offset].T
        bs = basis[k - offset]
        nart = 0
        for i in range(m):
            if bs[i] >= n + m:
                nart += 1
        code, r1, r2, _ = run_simplex(T, bs, C[k], n, m, nart, rule, fparams[0],
                                      fparams[1], fparams[2], fparams[3],
                                      max_iter, bland_after, seed, True, xbuf)
        _finish(code, T, m, k, objective, x_out, xbuf, status, it1, it2, r1, r2)


@njit(**_JIT)
def box_support(lo, hi, L, values, argmax):
    """Closed-form support of the box ``[lo, hi]`` along every row of ``L``."""
    n = lo.shape[0]
    for k in range(L.shape[0]):
        s = 0.0
        for i in range(n):
            li = L[k, i]
            h = lo[i] if li < 0 else hi[i]
            argmax[k, i] = h
            s += li * h
        values[k] = s
