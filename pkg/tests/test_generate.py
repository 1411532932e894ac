import math

import numpy as np
import pytest

from batchlp import GenSpec, Hyperbox, InvalidSpec, LpClass, box_directions, generate
from batchlp import oct_directions, random_directions, solve
from batchlp.generate import generate_arrays, negative_rows


def test_feasible_start_rhs_positive():
    for p in generate(GenSpec(6, 5, "feasible", 11), 200):
        assert p.b.min() > 0


def test_infeasible_start_quarter_rows():
    assert [negative_rows(m) for m in (1, 4, 5, 8, 9)] == [1, 1, 2, 2, 3]
    for p in generate(GenSpec(3, 4, "infeasible", 2), 200):
        assert np.count_nonzero(p.b < 0) == 1


def test_infeasible_start_always_pivots():
    for p in generate(GenSpec(4, 6, "infeasible", 8), 300):
        assert solve(p).phase1_iterations >= 1


def test_same_seed_same_instances():
    for klass in LpClass:
        a = generate_arrays(GenSpec(5, 3, klass, 99), 20)
        b = generate_arrays(GenSpec(5, 3, klass, 99), 20)
        assert all(x.tobytes() == y.tobytes() for x, y in zip(a, b))
    c = generate_arrays(GenSpec(5, 3, "feasible", 100), 20)
    assert c[0].tobytes() != generate_arrays(GenSpec(5, 3, "feasible", 99), 20)[0].tobytes()


def test_ranges_respected():
    C, A, B = generate_arrays(GenSpec(4, 4, "feasible", 0, (-2, 3), (5, 6)), 50)
    assert C.min() >= -2 and A.max() < 3 and B.min() >= 5 and B.max() < 6


def test_boxes():
    boxes = generate(GenSpec(28, 0, "box", 1), 3)
    assert all(isinstance(b, Hyperbox) and b.n == 28 for b in boxes)
    assert all(np.all(b.lo < b.hi) and b.lo.min() >= 1 for b in boxes)


@pytest.mark.parametrize("spec", [
    GenSpec(0, 3), GenSpec(3, 0), GenSpec(2, 2, b_range=(-1, 5)),
    GenSpec(2, 2, coeff_range=(1, 1)), GenSpec(2, 2, coeff_range=(0, math.inf)),
])
def test_bad_specs(spec):
    with pytest.raises(InvalidSpec):
        generate(spec, 1)


def test_box_directions_order():
    assert box_directions(2).tolist() == [[1, 0], [-1, 0], [0, 1], [0, -1]]


@pytest.mark.parametrize("n, count", [(1, 2), (2, 8), (5, 50), (28, 1568)])
def test_oct_counts_and_norms(n, count):
    dirs = oct_directions(n)
    assert dirs.shape == (count, n)
    assert np.all(np.abs(np.linalg.norm(dirs, axis=1) - 1) <= 1e-12)
    assert len({d.tobytes() for d in dirs}) == count


def test_random_directions_unit_and_seeded():
    a = random_directions(5, 300, seed=4)
    assert np.allclose(np.linalg.norm(a, axis=1), 1, atol=1e-12)
    assert a.tobytes() == random_directions(5, 300, seed=4).tobytes()
