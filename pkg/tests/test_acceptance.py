"""One test per acceptance criterion; each records a PASS/FAIL line."""

import csv
import io

import mpmath
import numpy as np
import pytest

from zolopml.cli import main
from zolopml.elliptic import Modulus, complete_K, jacobi_sn_dn
from zolopml.helmholtz import (TensorExperiment, WaveguideExperiment, convergence_study,
                               scalar_ntd_solve)
from zolopml.interpolant import ImpedanceKind, build_interpolant, impedance_eval, relative_error
from zolopml.mpnum import precision
from zolopml.sfraction import eval_cf, euclid_steps, lanczos_steps, to_sfraction
from zolopml.zolotarev import IntervalPair, split_degrees

TABLE_K = IntervalPair(-1e3, -1, 1, 1e4)
TABLE_MS = list(range(6, 61, 6))

# m, m1, m2, lower bound, relative error, upper bound
TABLE = {
    6: (3, 3, 1.22e-1, 3.42e-1, 5.52e-1),
    12: (5, 7, 8.41e-3, 2.47e-2, 2.85e-2),
    18: (8, 10, 5.49e-4, 1.15e-3, 1.83e-3),
    24: (11, 13, 3.57e-5, 8.95e-5, 1.19e-4),
    30: (13, 17, 2.32e-6, 7.01e-6, 7.72e-6),
    36: (16, 20, 1.51e-7, 3.29e-7, 5.02e-7),
    42: (19, 23, 9.79e-9, 2.37e-8, 3.26e-8),
    48: (21, 27, 6.36e-10, 2.01e-9, 2.12e-9),
    54: (24, 30, 4.13e-11, 9.43e-11, 1.38e-10),
    60: (27, 33, 2.69e-12, 6.28e-12, 8.94e-12),
}


def sig(x, digits):
    return float(f"{x:.{digits - 1}e}")




def approx_table(capsys):
    code = main(["approx", "--precision-bits", "512"])
    out = capsys.readouterr().out
    assert code == 0
    return {int(r["m"]): r for r in csv.DictReader(io.StringIO(out))}


def random_points_on(K, n, rng):
    half = n // 2
    neg = -10 ** rng.uniform(np.log10(-K.b1), np.log10(-K.a1), half)
    pos = 10 ** rng.uniform(np.log10(K.a2), np.log10(K.b2), n - half)
    return np.concatenate([neg, pos])


def test_criterion_1_table(capsys, criterion):
    rows = approx_table(capsys)
    bad = []
    for m, (m1, m2, lower, err, upper) in TABLE.items():
        r = rows[m]
        if (int(r["m1"]), int(r["m2"])) != (m1, m2):
            bad.append(f"m={m} split")
        if abs(float(r["error"]) / err - 1) > 0.05:
            bad.append(f"m={m} error {r['error']}")
        if sig(float(r["lower"]), 3) != lower or sig(float(r["upper"]), 3) != upper:
            bad.append(f"m={m} bounds")
    criterion(1, not bad and sorted(rows) == TABLE_MS,
              f"table for m=6..60 at 512 bits, mismatches: {bad or 'none'}")


def test_criterion_2_rates(criterion):
    plan = split_degrees(TABLE_K, 18)
    got = tuple(sig(v, 3) for v in (plan.rho1, plan.rho2, plan.rho))
    criterion(2, got == (0.361, 0.439, 0.634), f"rho1, rho2, rho = {got}")


def test_criterion_3_bracketing(criterion):
    violations = []
    checked = 0
    for m in TABLE_MS:
        R = build_interpolant(TABLE_K, m)
        if not R.plan.bounds_valid:
            continue
        checked += 1
        err = relative_error(R)
        if not R.plan.err_lower <= err <= R.plan.err_upper:
            violations.append(m)
    criterion(3, checked == len(TABLE_MS) and not violations,
              f"{checked} rows checked, violations: {violations or 'none'}")


def test_criterion_4_continued_fraction(criterion):
    rng = np.random.default_rng(2024)
    worst_cf = worst_steps = 0.0
    for m in TABLE_MS:
        R = build_interpolant(TABLE_K, m)
        steps = to_sfraction(R, check=False)
        z = random_points_on(TABLE_K, 100, rng)
        ref = R.evaluate(z)
        worst_cf = max(worst_cf, float(np.max(np.abs(eval_cf(steps, z) - ref) / np.abs(ref))))
        with precision(R.precision):
            lz = lanczos_steps(R.poles, R.residues)
            eu = euclid_steps(R.P, R.Q)
            diff = max(abs(a - b) / abs(b) for a, b in zip(lz.hhat + lz.h, eu.hhat + eu.h))
        worst_steps = max(worst_steps, float(diff))
    ok = worst_cf < 1e-10 and worst_steps < 1e-8
    criterion(4, ok, f"round trip {worst_cf:.1e} (< 1e-10), Lanczos vs Euclid "
                     f"{worst_steps:.1e} (< 1e-8)")


def test_criterion_5_single_interval(criterion):
    steps = to_sfraction(build_interpolant(IntervalPair.positive(1, 1e4), 10))
    hh, h = steps.as_complex()
    both = np.concatenate([hh, h])
    scale = np.max(np.abs(both))
    imag = float(np.max(np.abs(both.imag)) / scale)
    ok = steps.n == 5 and np.all(both.real > 0) and imag < 1e-12
    growth = "monotone" if np.all(np.diff(h.real) > 0) else "not monotone"
    criterion(5, bool(ok), f"5 positive step pairs, max |imag|/scale {imag:.1e}, "
                           f"primal steps {growth}")


def test_criterion_6_elliptic(criterion):
    worst = mpmath.mpf(0)
    with precision(256):
        for d in ("1e-6", "1e-3", "0.1", "0.5", "0.9", "0.999"):
            k = mpmath.mpf(d)
            integrand = lambda t: 1 / mpmath.sqrt(1 - (k * mpmath.sin(t)) ** 2)
            ref = mpmath.quad(integrand, [0, mpmath.pi / 4, mpmath.pi / 2])
            worst = max(worst, abs(complete_K(k) - ref))
            for phi in ("0.2", "0.9", "1.4"):
                phi = mpmath.mpf(phi)
                sn, dn = jacobi_sn_dn(mpmath.quad(integrand, [0, phi]), k)
                worst = max(worst, abs(sn - mpmath.sin(phi)),
                            abs(dn - mpmath.sqrt(1 - (k * mpmath.sin(phi)) ** 2)))
            mod = Modulus.from_delta(d)
            K = complete_K(mod)
            sn, dn = jacobi_sn_dn(K, mod)
            worst = max(worst, abs(sn - 1), abs(dn - mod.delta_prime))
            _, dn = jacobi_sn_dn(K / 2, mod)
            worst = max(worst, abs(dn - mpmath.sqrt(mod.delta_prime)))
    criterion(6, worst < mpmath.mpf(10) ** -25,
              f"max deviation from quadrature and identities {float(worst):.1e} (< 1e-25)")


@pytest.mark.slow
def test_criterion_7_waveguide(criterion):
    res = convergence_study(WaveguideExperiment(), list(range(8, 37, 4)))
    dec = all(a > b for a, b in zip(res.errs, res.errs[1:]))
    ok = dec and 0.52 <= res.fitted_rate <= 0.62
    criterion(7, ok, f"errors {', '.join(f'{e:.2e}' for e in res.errs)}; "
                     f"fitted rate {res.fitted_rate:.3f} in [0.52, 0.62], "
                     f"expected {res.expected_rate:.3f}")


@pytest.mark.slow
def test_criterion_8_tensor(criterion):
    exp = TensorExperiment()
    res = convergence_study(exp, [14, 18, 22, 26])
    iv = TensorExperiment(margin=0.0).edge_intervals(0.0, 1.0)
    x_layers = tuple(sig(v, 2) for v in iv["left"].K.as_tuple())
    y_layers = tuple(sig(v, 2) for v in iv["bottom"].K.as_tuple())
    intervals_ok = (x_layers == (-1.4e4, -2.4e2, 4.8e2, 6.3e5)
                    and y_layers == (-1.4e4, -2.5e2, 4.9e2, 6.3e5))
    dec = all(a > b for a, b in zip(res.errs, res.errs[1:]))
    ok = intervals_ok and dec and 0.54 <= res.fitted_rate <= 0.64
    criterion(8, ok, f"errors {', '.join(f'{e:.2e}' for e in res.errs)}; "
                     f"fitted rate {res.fitted_rate:.3f} in [0.54, 0.64], "
                     f"expected {res.expected_rate:.3f}; intervals x {x_layers}, y {y_layers}")


@pytest.mark.parametrize("h", [None, 0.01])
def test_criterion_9_scalar_ntd(h, criterion):
    kind = ImpedanceKind(h)
    R = build_interpolant(TABLE_K, 18, kind)
    steps = to_sfraction(R)
    err = relative_error(R)
    rng = np.random.default_rng(9)
    b = 1.0 - 0.5j
    worst = 0.0
    for a in random_points_on(TABLE_K, 20, rng):
        u0 = scalar_ntd_solve(steps, a, b)
        Ra = complex(R.evaluate(np.array([a]))[0]) * b
        Fa = complex(impedance_eval(kind, float(a))) * b
        assert abs(u0 / Ra - 1) < 1e-9
        worst = max(worst, abs(u0 - Fa) / abs(Fa))
    criterion(9, worst <= 10 * err,
              f"{kind.name} kind: worst |u0 - F(a)b|/|F(a)b| {worst:.1e} vs 10 x error {10 * err:.1e}")
