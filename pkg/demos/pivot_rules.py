"""
LPC versus RPC
==============

The largest-coefficient rule usually takes fewer iterations than picking a
random improving column, but both reach the same optimum.
"""

import numpy as np

from batchlp import GenSpec, LpBatch, SolverConfig, solve_batch
from batchlp.generate import generate_arrays

for dim in (5, 20, 50):
    batch = LpBatch(*generate_arrays(GenSpec(dim, dim, "feasible", dim), 2000))
    lpc = solve_batch(batch, SolverConfig(pivot_rule="lpc"))
    rpc = solve_batch(batch, SolverConfig(pivot_rule="rpc", rng_seed=7))
    ok = lpc.status == 0
    gap = np.max(np.abs(lpc.objective[ok] - rpc.objective[ok]) / (1 + np.abs(lpc.objective[ok])))
    print(f"n=m={dim:2d}  iterations LPC {lpc.phase2_iterations.mean():6.2f}"
          f"  RPC {rpc.phase2_iterations.mean():6.2f}  max rel gap {gap:.1e}")
