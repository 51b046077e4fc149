"""
Approximation error over the complex plane
===========================================

Evaluates |R(z) - F(z)| / |F(z)| on a grid around the target set, together with
the poles of R.  The error is tiny along the two intervals and grows away from
them; the poles sit in the lower half-plane, away from the spectrum.
"""

import sys
from pathlib import Path

import numpy as np

from zolopml import IntervalPair, build_interpolant
from zolopml.interpolant import ImpedanceKind, impedance_eval_array

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

K = IntervalPair(-1e3, -1, 1, 1e4)
R = build_interpolant(K, 18)

# a signed-log grid in the real direction, linear-log in the imaginary one
x = np.concatenate([-np.geomspace(1e4, 1e-1, 120), np.geomspace(1e-1, 1e5, 140)])
y = np.concatenate([-np.geomspace(1e4, 1e-1, 60), [0.0], np.geomspace(1e-1, 1e4, 60)])
Z = x[None, :] + 1j * y[:, None]
F = impedance_eval_array(ImpedanceKind(), Z.ravel()).reshape(Z.shape)
E = np.abs(R.evaluate(Z.ravel()).reshape(Z.shape) / F - 1)

np.savez(out / "error_surface.npz", x=x, y=y, log10_error=np.log10(E))
poles, residues = R.poles_complex()
np.savetxt(out / "poles.csv", np.column_stack([poles.real, poles.imag]), delimiter=",",
           header="re,im", comments="")

on_K = (np.abs(Z.imag) == 0) & (((x >= -1e3) & (x <= -1)) | ((x >= 1) & (x <= 1e4)))[None, :]
print(f"max error on K:        {E[on_K].max():.2e}")
print(f"median error off K:    {np.median(E[~on_K]):.2e}")
print(f"poles with Im < 0:     {np.sum(poles.imag < 0)} of {len(poles)}")
print(f"surface written to {out}/error_surface.npz")
