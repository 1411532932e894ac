"""
Solving a batch
===============

LPs of one shape are stored structure-of-arrays and solved on a thread
pool. Results do not depend on threads, chunk size or memory layout.
"""

from collections import Counter

import numpy as np

from batchlp import GenSpec, LpBatch, SolverConfig, solve_batch
from batchlp.generate import generate_arrays

C, A, B = generate_arrays(GenSpec(n=20, m=20, klass="infeasible", seed=1), 20_000)
batch = LpBatch(C, A, B, layout="col")
print(batch.count, "LPs of shape", batch.shape, "-", batch.per_lp_bytes, "bytes each")

res = solve_batch(batch)  # the first call also loads the compiled kernels
res = solve_batch(batch)
print(f"{res.wall_time:.3f} s over {len(res.per_chunk_times)} chunks")
print("statuses:", dict(Counter(map(str, res.statuses))))
print("mean iterations: phase one %.2f, phase two %.2f"
      % (res.phase1_iterations.mean(), res.phase2_iterations.mean()))

# same batch, row-major, one thread, small chunks
other = solve_batch(LpBatch(C, A, B, layout="row"), SolverConfig(threads=1, chunk_size=500))
print("bit-identical:", res.same_solutions(other))

# a shared constraint matrix is broadcast instead of copied
rng = np.random.default_rng(0)
shared = LpBatch.from_arrays(rng.uniform(-1, 1, (5, 2)), [[1, 1], [1, -1]], [2, 1])
print(shared.A.strides, solve_batch(shared).objective)
