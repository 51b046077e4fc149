"""
Complex grid steps of an absorbing layer
=========================================

Turns the interpolants into continued-fraction grid steps and writes the
cumulative grid points to CSV.  A single positive interval gives a purely real
grid (evanescent waves only); two intervals give genuinely complex steps.
"""

import sys
from pathlib import Path

import numpy as np

from zolopml import IntervalPair, build_interpolant, to_sfraction
from zolopml.pml_grid import cumulative_points, merge_grid

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

cases = {
    "evanescent": IntervalPair.positive(1, 1e4),
    "two_intervals": IntervalPair(-1e3, -1, 1, 1e4),
}
for name, K in cases.items():
    steps = to_sfraction(build_interpolant(K, 20))
    hhat, h = steps.as_complex()
    print(name)
    for j, (a, b) in enumerate(zip(hhat, h)):
        print(f"  {j:2d}  hhat = {a.real:10.3e} {a.imag:+10.3e}j   h = {b.real:10.3e} {b.imag:+10.3e}j")
    # glue the layer onto a uniform interior grid with 8 interior steps
    prim, dual = cumulative_points(merge_grid(0.01, 8, steps))
    rows = [(j, "primal", p) for j, p in enumerate(prim)] + [(j, "dual", d) for j, d in enumerate(dual)]
    with open(out / f"grid_{name}.csv", "w") as fh:
        fh.write("index,kind,re,im\n")
        for j, kind, z in rows:
            fh.write(f"{j},{kind},{z.real:.17g},{z.imag:.17g}\n")
    # the real parts of the primal points grow geometrically: a layer this thin
    # still reaches far into the exterior
    print(f"  total real extent {np.real(prim[-1]):.3g}, total imaginary extent {np.imag(prim[-1]):.3g}")
print(f"grid points written to {out}/")
