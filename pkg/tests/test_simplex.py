import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from batchlp import (IterationLimitExceeded, Phase, SolverConfig, Status, build,
                     solve, solve_tableau)
from batchlp.generate import GenSpec, generate
from batchlp.simplex import (make_choice, new_rng_state, pivot, select_entering,
                             select_leaving)
from batchlp.tableau import switch_to_phase2

from conftest import lp, rel_close

LPC = SolverConfig()


@pytest.mark.parametrize("costs, expected", [
    ([-1, 3, 2], 1),
    ([-1, -2, -0.5], None),
    ([2, 2, -1], 0),
])
def test_entering_under_lpc(costs, expected):
    t = build(lp(costs, [[1, 1, 1]], [1]))
    assert select_entering(t, LPC) == expected


def test_rpc_only_draws_positive_columns():
    t = build(lp([-1, 3, 0, 2, -5], [[1, 1, 1, 1, 1]], [1]))
    cfg = SolverConfig(pivot_rule="rpc")
    state = new_rng_state(42)
    seen = {select_entering(t, cfg, state) for _ in range(200)}
    assert seen == {1, 3}


def test_bland_takes_lowest_index():
    t = build(lp([-1, 3, 0, 2], [[1, 1, 1, 1]], [1]))
    assert select_entering(t, LPC, bland=True) == 1


@pytest.mark.parametrize("column, b, expected", [
    ([2, 2], [4, 2], 1),
    ([-1, 0], [4, 2], None),
    ([1, 1], [0, 5], 0),
])
def test_min_ratio(column, b, expected):
    t = build(lp([1], [[v] for v in column], b))
    assert select_leaving(t, 0, LPC) == expected


def test_single_pivot_reaches_bound():
    t = build(lp([1], [[1]], [3]))
    e = select_entering(t, LPC)
    pivot(t, make_choice(t, e, select_leaving(t, e, LPC)), LPC)
    assert t.objective_value == 3.0
    assert select_entering(t, LPC) is None


def test_separable_box_takes_two_pivots(unit_box_lp):
    sol = solve(unit_box_lp)
    assert sol.status is Status.OPTIMAL
    assert sol.objective == 2.0
    assert sol.x.tolist() == [1.0, 1.0]
    assert (sol.phase1_iterations, sol.phase2_iterations) == (0, 2)


def test_textbook_optimum(textbook_lp):
    sol = solve(textbook_lp)
    assert sol.objective == 12.0
    assert sol.x.tolist() == [4.0, 0.0]


def test_unbounded_ray():
    assert solve(lp([1], [[-1]], [1])).status is Status.UNBOUNDED


def test_infeasible_sign():
    # phase one is optimal at once: no column can reduce the artificial
    sol = solve(lp([1], [[1]], [-1]))
    assert sol.status is Status.INFEASIBLE
    assert sol.phase1_iterations == 0


def test_infeasible_pair():
    # x >= 1 and x <= 0
    assert solve(lp([1], [[-1], [1]], [-1, 0])).status is Status.INFEASIBLE


def test_phase_two_after_phase_one():
    sol = solve(lp([1], [[-1], [1]], [-1, 5]))
    assert sol.status is Status.OPTIMAL
    assert sol.objective == 5.0
    assert sol.phase1_iterations >= 1


# Beale's example: the largest-coefficient rule cycles on it forever
BEALE = lp([0.75, -150, 0.02, -6],
           [[0.25, -60, -0.04, 9], [0.5, -90, -0.02, 3], [0, 0, 1, 0]],
           [0, 0, 1])


def test_cycling_without_fallback_hits_limit():
    with pytest.raises(IterationLimitExceeded):
        solve(BEALE, SolverConfig(max_iterations=200, bland_after=200))


def test_bland_fallback_breaks_cycle():
    sol = solve(BEALE)
    assert sol.status is Status.OPTIMAL
    assert rel_close(sol.objective, 0.05, 1e-12)


feasible_lps = st.builds(
    lambda seed, n, m: generate(GenSpec(n, m, "feasible", seed), 1)[0],
    st.integers(0, 2**31), st.integers(1, 8), st.integers(1, 8))
any_lps = st.builds(
    lambda seed, n, m, k: generate(GenSpec(n, m, k, seed), 1)[0],
    st.integers(0, 2**31), st.integers(1, 8), st.integers(1, 8),
    st.sampled_from(["feasible", "infeasible"]))


@settings(max_examples=60, deadline=None)
@given(p=any_lps, rule=st.sampled_from(["lpc", "rpc"]))
def test_objective_never_decreases_in_phase_two(p, rule):
    cfg = SolverConfig(pivot_rule=rule, rng_seed=3)
    t = build(p)
    state = new_rng_state(cfg.rng_seed)

    def run():
        history = [t.objective_value]
        while (e := select_entering(t, cfg, state)) is not None:
            l = select_leaving(t, e, cfg)
            if l is None:
                return history, False
            pivot(t, make_choice(t, e, l), cfg)
            history.append(t.objective_value)
        return history, True

    if t.phase is Phase.ONE:
        _, bounded = run()
        assert bounded  # phase one is bounded by zero
        if t.objective_value < -cfg.eps_phase1:
            return
        switch_to_phase2(t, cfg)
    history, _ = run()
    for a, b in zip(history, history[1:]):
        assert b >= a - cfg.eps_obj * (1 + abs(a))


@settings(max_examples=60, deadline=None)
@given(p=any_lps, seed=st.integers(0, 2**64 - 1))
def test_rpc_is_deterministic_in_seed(p, seed):
    cfg = SolverConfig(pivot_rule="rpc", rng_seed=seed)
    assert solve(p, cfg) == solve(p, cfg)


@settings(max_examples=60, deadline=None)
@given(p=any_lps, seeds=st.lists(st.integers(0, 2**32), min_size=1, max_size=3))
def test_rules_agree_on_status_and_value(p, seeds):
    ref = solve(p)
    for s in seeds:
        other = solve(p, SolverConfig(pivot_rule="rpc", rng_seed=s))
        assert other.status is ref.status
        if ref.optimal:
            assert rel_close(other.objective, ref.objective)


@settings(max_examples=60, deadline=None)
@given(p=feasible_lps)
def test_no_phase_one_work_for_nonnegative_rhs(p):
    assert solve(p).phase1_iterations == 0


@settings(max_examples=40, deadline=None)
@given(p=any_lps)
def test_layouts_solve_identically(p):
    assert solve(p, layout="row") == solve(p, layout="col")


def test_solve_tableau_reports_phase():
    t = build(lp([1], [[-1], [1]], [-1, 5]))
    solve_tableau(t)
    assert t.phase is Phase.TWO
