"""
Layers on all four sides with a variable wave speed
====================================================

The unit square with a slow horizontal band and a fast elliptic inclusion.
Each edge gets its own layer, built from the eigenvalue intervals of the
tangential operator along that edge.  The reference solution lives on the
inner square [0.1, 0.9]^2 with its own layers.

Pass ``full`` for k = 120, h = 1/400 (about a minute); the default runs
k = 30, h = 1/100.
"""

import sys

from zolopml import TensorExperiment, convergence_study

full = "full" in sys.argv[1:]
exp = TensorExperiment() if full else TensorExperiment.quick()
for edge, si in exp.edge_intervals(0.0, 1.0).items():
    print(f"{edge:>6}: {si.K}   ({si.i0} propagating modes)")
print(f"expected rate {exp.expected_rate():.3f}")

ms = [14, 18, 22, 26] if full else [8, 12, 16, 20]
res = convergence_study(exp, ms)
for m, e in zip(res.ms, res.errs):
    print(f"m = {m:2d}   error = {e:.2e}")
print(f"fitted rate {res.fitted_rate:.3f}")
