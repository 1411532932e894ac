"""
Sampling support values
=======================

Template directions (axis, octagonal or random) are pushed through both
engines and compared.
"""

from batchlp import GenSpec, Hyperbox
from batchlp.generate import generate_arrays, oct_directions, random_directions
from batchlp.sampling import sample_support

lo, hi = generate_arrays(GenSpec(5, 0, "box", seed=3), 1)
box = Hyperbox(lo[0], hi[0])

dirs = oct_directions(5)
run = sample_support(box, dirs, engine="both")
print(len(dirs), "octagonal directions, max discrepancy", run.max_discrepancy)

dirs = random_directions(5, 200_000, seed=1)
run = sample_support(box, dirs, engine="both")
print(f"{len(dirs)} random directions: closed form {run.closed_form_time * 1e3:.1f} ms,"
      f" simplex {run.simplex_time * 1e3:.1f} ms,"
      f" max discrepancy {run.max_discrepancy:.1e}")
