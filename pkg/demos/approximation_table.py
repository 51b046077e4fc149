"""
Rational approximation of the impedance on two intervals
=========================================================

Builds the interpolants of z**-1/2 on [-1e3, -1] U [1, 1e4] for m = 6, ..., 60
and prints the measured relative error next to the a priori bounds.
"""

from zolopml import IntervalPair, build_interpolant, relative_error, split_degrees

K = IntervalPair(-1e3, -1, 1, 1e4)

# The rates of the two halves and of the balanced split.
plan = split_degrees(K, 18)
print(f"rho1 = {plan.rho1:.3f}  rho2 = {plan.rho2:.3f}  rho = {plan.rho:.3f}")

print(f"{'m':>3} {'m1':>3} {'m2':>3} {'lower':>10} {'error':>10} {'upper':>10}")
for m in range(6, 61, 6):
    R = build_interpolant(K, m)
    err = relative_error(R)
    pl = R.plan
    print(f"{m:3d} {pl.m1:3d} {pl.m2:3d} {pl.err_lower:10.2e} {err:10.2e} {pl.err_upper:10.2e}")
    # the measured error always sits between the two bounds
    assert pl.err_lower <= err <= pl.err_upper

# The observed decay per unit of m is close to rho.
e30 = relative_error(build_interpolant(K, 30))
e60 = relative_error(build_interpolant(K, 60))
print(f"observed rate between m=30 and m=60: {(e60 / e30) ** (1 / 30):.3f}")
