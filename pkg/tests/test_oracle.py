import numpy as np
import pytest

from batchlp import GenSpec, Status, TooLarge, generate, oracle_solve, solve

from conftest import lp, rel_close


def test_unit_box(unit_box_lp):
    sol = oracle_solve(unit_box_lp)
    assert sol.status is Status.OPTIMAL and sol.objective == 2.0


def test_textbook(textbook_lp):
    sol = oracle_solve(textbook_lp)
    assert sol.objective == 12.0
    assert np.allclose(sol.x, [4, 0])


@pytest.mark.parametrize("p, status", [
    (lp([1], [[1]], [-1]), Status.INFEASIBLE),
    (lp([1], [[-1], [1]], [-1, 0]), Status.INFEASIBLE),
    (lp([1], [[-1]], [1]), Status.UNBOUNDED),
    # unbounded only along a diagonal ray
    (lp([1, 1], [[1, -1], [-1, 1]], [1, 1]), Status.UNBOUNDED),
    (lp([-1, -1], [[1, 1]], [1]), Status.OPTIMAL),
])
def test_statuses(p, status):
    assert oracle_solve(p).status is status


def test_size_limit():
    with pytest.raises(TooLarge):
        oracle_solve(generate(GenSpec(8, 8), 1)[0])


@pytest.mark.parametrize("klass", ["feasible", "infeasible"])
def test_agrees_with_simplex_sample(klass):
    for p in generate(GenSpec(4, 5, klass, 17), 150):
        a, b = oracle_solve(p), solve(p)
        assert a.status is b.status
        if a.optimal:
            assert rel_close(a.objective, b.objective)
