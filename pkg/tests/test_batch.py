import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from batchlp import (BudgetTooSmall, EmptyBatch, Layout, LpBatch, NonFiniteEntry,
                     ShapeMismatch, SolverConfig, Status, build, pack, solve,
                     solve_batch)
from batchlp.batch import auto_chunk_size, per_lp_bytes
from batchlp.generate import GenSpec, generate, generate_arrays

from conftest import lp
from test_simplex import BEALE


def test_identical_pair_packs():
    one = lp([1], [[1]], [1])
    batch = pack([one, one])
    assert batch.count == 2
    assert batch.cols == 5
    # (m + 1) * cols doubles of tableau plus two cols-long scratch rows
    assert batch.per_lp_bytes == 160 == per_lp_bytes(1, 1)


def test_mixed_shapes_rejected():
    with pytest.raises(ShapeMismatch):
        pack([lp([1], [[1]], [1]), lp([1, 1], [[1, 1]], [1])])


def test_empty_batch_rejected():
    with pytest.raises(EmptyBatch):
        pack([])


def test_chunk_arithmetic():
    assert auto_chunk_size(1000, 10_000) == 10
    with pytest.raises(BudgetTooSmall):
        auto_chunk_size(1000, 999)
    # n = m = 100: cols = 302, 103 rows of doubles
    assert per_lp_bytes(100, 100) == 248_848
    assert auto_chunk_size((100, 100), 64 * 2**20) == 269


def test_budget_too_small_for_one_lp():
    batch = pack([lp([1], [[1]], [1])])
    with pytest.raises(BudgetTooSmall):
        solve_batch(batch, SolverConfig(memory_budget=100))


# the three single-LP outcomes, padded to a common 2 x 2 shape
MIXED = [
    lp([1, 1], [[1, 0], [0, 1]], [1, 1]),
    lp([1, 0], [[-1, 0], [0, 1]], [1, 1]),
    lp([1, 0], [[1, 0], [0, 1]], [-1, 1]),
]


def test_mixed_outcomes_in_order():
    res = solve_batch(pack(MIXED))
    assert res.statuses == [Status.OPTIMAL, Status.UNBOUNDED, Status.INFEASIBLE]
    assert res[0].objective == 2.0
    assert np.isnan(res.objective[1:]).all()


def test_copies_solve_identically(textbook_lp):
    res = solve_batch(pack([textbook_lp] * 37), SolverConfig(threads=4, chunk_size=5))
    assert all(s == res[0] for s in res.solutions)
    assert res[0].objective == 12.0


def _random_batch(count, dim, klass="feasible", seed=0, layout="col"):
    C, A, B = generate_arrays(GenSpec(dim, dim, klass, seed), count)
    return LpBatch(C, A, B, layout)


def test_threads_do_not_change_results():
    batch = _random_batch(1000, 10)
    one = solve_batch(batch, SolverConfig(threads=1))
    eight = solve_batch(batch, SolverConfig(threads=8))
    assert one.same_solutions(eight)
    assert one.solutions == eight.solutions


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**31), count=st.integers(1, 60), dim=st.integers(1, 7),
       klass=st.sampled_from(["feasible", "infeasible"]),
       rule=st.sampled_from(["lpc", "rpc"]),
       threads=st.integers(1, 6), chunk=st.integers(0, 70), depth=st.integers(1, 3))
def test_batch_matches_single_solves(seed, count, dim, klass, rule, threads, chunk, depth):
    """Order, layout and scheduling never change a single LP's result."""
    base = SolverConfig(pivot_rule=rule, rng_seed=seed)
    cfg = SolverConfig(pivot_rule=rule, rng_seed=seed, threads=threads,
                       chunk_size=chunk, pipeline_depth=depth)
    lps = generate(GenSpec(dim, dim, klass, seed), count)
    expected = [solve(p, base) for p in lps]
    for layout in Layout:
        res = solve_batch(pack(lps, layout), cfg)
        assert res.solutions == expected


def test_reversed_input_reverses_output():
    lps = generate(GenSpec(6, 6, "infeasible", 9), 50)
    fwd = solve_batch(pack(lps)).solutions
    rev = solve_batch(pack(lps[::-1])).solutions
    assert fwd == rev[::-1]


def test_failure_stays_with_its_lp(unit_box_lp):
    pad = lp(np.r_[unit_box_lp.c, 0, 0], np.pad(unit_box_lp.A, ((0, 1), (0, 2))),
             np.r_[unit_box_lp.b, 1])
    res = solve_batch(pack([pad, BEALE, pad]),
                      SolverConfig(max_iterations=50, bland_after=50))
    assert res.statuses == [Status.OPTIMAL, Status.ITERATION_LIMIT, Status.OPTIMAL]
    assert res[0].objective == res[2].objective == 2.0


def test_broadcast_constraints():
    C = np.array([[1.0, 2.0], [-1.0, 1.0], [3.0, 0.0]])
    batch = LpBatch.from_arrays(C, [[1, 1], [1, 0]], [4, 3])
    assert batch.A.strides[0] == 0
    res = solve_batch(batch)
    assert res.objective.tolist() == [8.0, 4.0, 9.0]


def test_from_arrays_checks():
    with pytest.raises(ShapeMismatch):
        LpBatch.from_arrays(np.ones((2, 2)), np.ones((3, 3)), np.ones(3))
    with pytest.raises(NonFiniteEntry):
        LpBatch.from_arrays(np.ones((2, 1)), [[1.0]], [np.nan])
    with pytest.raises(EmptyBatch):
        LpBatch.from_arrays(np.ones((0, 1)), [[1.0]], [1.0])


@pytest.mark.parametrize("layout", ["row", "col"])
def test_slots_hold_the_single_tableau(layout):
    lps = generate(GenSpec(4, 3, "infeasible", 2), 5)
    batch = pack(lps, layout)
    storage, basis = batch.materialize(threads=2)
    for k, p in enumerate(lps):
        t = build(p)
        slot = batch.slot(storage, k)
        n, m = p.shape
        # structural and slack columns match; artificial block is padded to m
        assert np.array_equal(slot[:, : n + m], t.cells[:, : n + m])
        assert np.array_equal(slot[:, n + m: n + m + t.n_art], t.cells[:, n + m: -2])
        assert not slot[:, n + m + t.n_art: -2].any()
        assert np.array_equal(slot[:, -1], t.cells[:, -1])
        assert np.array_equal(basis[k], t.basis)


def test_box_fast_path_matches_simplex():
    rng = np.random.default_rng(5)
    n, N = 4, 300
    lo = rng.uniform(0, 5, (N, n))
    hi = lo + rng.uniform(0.1, 5, (N, n))
    C = rng.uniform(-1, 1, (N, n))
    A = np.vstack([np.eye(n), -np.eye(n)])
    B = np.hstack([hi, -lo])
    # mix in general LPs so both paths run
    C2, A2, B2 = generate_arrays(GenSpec(n, 2 * n, "feasible", 1), 50)
    batch = LpBatch(np.vstack([C, C2]),
                    np.concatenate([np.broadcast_to(A, (N, 2 * n, n)), A2]),
                    np.vstack([B, B2]))
    slow = solve_batch(batch)
    fast = solve_batch(batch, box_fast_path=True)
    assert np.array_equal(fast.status, slow.status)
    ok = slow.status == 0
    assert np.allclose(fast.objective[ok], slow.objective[ok], rtol=1e-12, atol=1e-12)
    assert (fast.phase2_iterations[:N] == 0).all()
    assert np.array_equal(fast.phase2_iterations[N:], slow.phase2_iterations[N:])


def test_box_fast_path_outcomes():
    # x <= 1 alone is unbounded in x1; -x <= -2 with x <= 1 is infeasible
    lps = [lp([1, 1], [[1, 0], [0, 1]], [1, 2]),
           lp([1, 1], [[1, 0], [0, 0.5]], [1, 2]),
           lp([0, 1], [[-1, 0], [1, 0]], [-2, 1]),
           lp([-1, 1], [[1, 0], [0, 1]], [1, 2])]
    res = solve_batch(pack(lps), box_fast_path=True)
    ref = solve_batch(pack(lps))
    assert res.statuses == ref.statuses
    assert np.array_equal(res.objective, ref.objective, equal_nan=True)


def test_chunk_times_recorded():
    res = solve_batch(_random_batch(100, 5), SolverConfig(chunk_size=30))
    assert len(res.per_chunk_times) == 4
    assert res.wall_time > 0
