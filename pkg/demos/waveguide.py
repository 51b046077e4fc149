"""
Waveguide with absorbing ends
==============================

A strip [0, pi] x [0, pi], Dirichlet on top and bottom, with absorbing layers
on the left and right.  The error of a layer with m steps is measured by
comparing against the same problem on a strip twice as long.

Pass ``full`` on the command line for h = pi/512 (about two minutes); the
default is the h = pi/128 variant.
"""

import sys

from zolopml import WaveguideExperiment, convergence_study

full = "full" in sys.argv[1:]
exp = WaveguideExperiment() if full else WaveguideExperiment.quick()
K = exp.intervals().K
print(f"h = pi/{exp.n_cells},  inclusion set {K}")
print(f"expected rate {exp.expected_rate():.3f}")

ms = list(range(8, 37, 4)) if full else list(range(8, 21, 4))
res = convergence_study(exp, ms)
for m, e in zip(res.ms, res.errs):
    print(f"m = {m:2d}   error = {e:.2e}")
print(f"fitted rate {res.fitted_rate:.3f}")
