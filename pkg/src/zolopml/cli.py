"""Command-line front end.

    python -m zolopml approx    [--interval=a1,b1,a2,b2] [--m-list 6,12,...]
    python -m zolopml grid      [--interval=...] --m M [--m1 M1] [--ell L] [--out FILE]
    python -m zolopml waveguide [--quick] [--m-list ...] [--out DIR]
    python -m zolopml tensor    [--quick] [--m-list ...] [--out DIR]
    python -m zolopml selftest

Intervals starting with a minus sign must be attached with ``=``.  A JSON
config file (``--config``) may supply any option; flags given on the command
line override it.  The resolved config is echoed to stderr as JSON and can be
fed back through ``--config`` to reproduce a run.

Exit codes: 0 success, 1 selftest failure, 2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from unittest import mock

import mpmath
import numpy as np

from . import elliptic
from .errors import (BreakdownError, ConsistencyError, DomainError, GridFormatError,
                     RootFindingError, SingularMatrixError)
from .helmholtz import (TensorExperiment, WaveguideExperiment, convergence_study,
                        layered_axis_eigenvalues)
from .interpolant import ImpedanceKind, build_interpolant, relative_error
from .mpnum import poly_from_roots, poly_roots, precision
from .pml_grid import cumulative_points, format_grid, merge_grid, write_grid
from .sfraction import eval_cf, to_sfraction
from .zolotarev import IntervalPair

EXIT_OK, EXIT_SELFTEST, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

TABLE_K = (-1e3, -1.0, 1.0, 1e4)
COMMANDS = ("approx", "grid", "waveguide", "tensor", "selftest")


@dataclass
class RunConfig:
    """Everything a run depends on; serialisable to and from JSON."""

    command: str
    interval: list | None = None
    m_list: list | None = None
    m1: int | None = None
    k: float | None = None
    h: float | None = None
    kind: str = "continuous"
    precision_bits: int | None = None
    samples: int = 10_000
    margin: float | None = None
    ell: int = 0
    out: str | None = None
    seed: int = 0
    quick: bool = False
    fields: bool = False
    normal: bool = False
    corrupt: str | None = field(default=None, repr=False)

    def to_json(self) -> str:
        d = asdict(self)
        if d["corrupt"] is None:
            del d["corrupt"]
        return json.dumps(d, sort_keys=True)

    def interval_pair(self) -> IntervalPair:
        vals = self.interval if self.interval is not None else list(TABLE_K)
        return IntervalPair(*vals)

    def impedance(self) -> ImpedanceKind:
        if self.kind == "continuous":
            return ImpedanceKind()
        if self.kind == "discrete":
            if self.h is None:
                raise DomainError("--kind discrete needs --h")
            return ImpedanceKind(self.h)
        raise DomainError(f"unknown impedance kind {self.kind!r}")


def _parse_interval(text: str) -> list:
    parts = [p.strip().lower() for p in text.split(",")]
    try:
        vals = [None if p in ("", "none") else float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad interval {text!r}") from None
    if len(vals) == 2:
        # a single interval; its sign decides which half it is
        if all(v is not None and v > 0 for v in vals):
            vals = [None, None] + vals
        else:
            vals = vals + [None, None]
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("interval needs a1,b1,a2,b2 (or two endpoints)")
    return vals


def _parse_int_list(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    try:
        if ":" in text:
            lo, hi, *step = (int(v) for v in text.split(":"))
            return list(range(lo, hi + 1, step[0] if step else 1))
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zolopml", description=__doc__.split("\n\n")[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON file with default options")
    p.add_argument("--interval", type=_parse_interval,
                   help="target set a1,b1,a2,b2 (use --interval=-1e3,-1,1,1e4)")
    p.add_argument("--m", type=int, help="single even degree m (= 2n)")
    p.add_argument("--m-list", type=_parse_int_list,
                   help="comma list or lo:hi:step of even degrees")
    p.add_argument("--m1", type=int, help="override degrees on the negative half")
    p.add_argument("--k", type=float, help="wavenumber")
    p.add_argument("--h", type=float, help="interior step (discrete impedance, experiments)")
    p.add_argument("--kind", choices=("continuous", "discrete"))
    p.add_argument("--precision-bits", type=int)
    p.add_argument("--samples", type=int, help="error samples per interval")
    p.add_argument("--margin", type=float, help="relative outward margin of spectral intervals")
    p.add_argument("--ell", type=int, help="interior dual points in a merged grid")
    p.add_argument("--out", help="output file (approx, grid) or directory (experiments)")
    p.add_argument("--seed", type=int)
    p.add_argument("--quick", action="store_true", default=None, help="scaled-down experiment")
    p.add_argument("--fields", action="store_true", default=None,
                   help="also dump the fields of the largest m")
    p.add_argument("--normal", action="store_true", default=None,
                   help="tensor: layer intervals from -d_tt - k^2/c^2 instead of -c^2 d_tt - k^2")
    p.add_argument("--corrupt", help=argparse.SUPPRESS)
    return p


def resolve_config(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    base: dict = {}
    if args.config:
        try:
            base = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise DomainError(f"cannot read config {args.config}: {exc}") from None
        known = {f.name for f in fields(RunConfig)}
        unknown = set(base) - known
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
    base["command"] = args.command
    for name in ("interval", "m_list", "m1", "k", "h", "kind", "precision_bits", "samples",
                 "margin", "ell", "out", "seed", "quick", "fields", "normal", "corrupt"):
        v = getattr(args, name)
        if v is not None:
            base[name] = v
    if args.m is not None:
        base["m_list"] = [args.m]
    return RunConfig(**base)


def _check_m_list(ms, default):
    ms = list(default if ms is None else ms)
    if not ms:
        raise DomainError("empty m list")
    bad = [m for m in ms if m < 2 or m % 2]
    if bad:
        raise DomainError(f"every m must be an even integer >= 2, got {bad}")
    return ms


def _open_out(cfg: RunConfig):
    return open(cfg.out, "w") if cfg.out else sys.stdout


def _fmt(x) -> str:
    return "" if x is None else f"{x:.10g}"


# ----------------------------------------------------------------------------


def cmd_approx(cfg: RunConfig) -> int:
    """Table of bounds and measured relative error, one row per m."""
    K = cfg.interval_pair()
    kind = cfg.impedance()
    ms = _check_m_list(cfg.m_list, range(6, 61, 6))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "m1", "m2", "lower", "error", "upper", "condition"])
    for m in ms:
        R = build_interpolant(K, m, kind, prec=cfg.precision_bits, m1=cfg.m1)
        err = relative_error(R, cfg.samples)
        pl = R.plan
        w.writerow([m, pl.m1, pl.m2, _fmt(pl.err_lower), _fmt(err), _fmt(pl.err_upper),
                    str(pl.bounds_valid).lower()])
    pl = R.plan
    print(f"rho1={_fmt(pl.rho1)} rho2={_fmt(pl.rho2)} rho={_fmt(pl.rho)}", file=sys.stderr)
    fh = _open_out(cfg)
    fh.write(buf.getvalue())
    if fh is not sys.stdout:
        fh.close()
    return EXIT_OK


def cmd_grid(cfg: RunConfig) -> int:
    """Layer steps (and cumulative points) for one m."""
    K = cfg.interval_pair()
    kind = cfg.impedance()
    ms = _check_m_list(cfg.m_list, [])
    if len(ms) != 1:
        raise DomainError("grid takes exactly one m")
    R = build_interpolant(K, ms[0], kind, prec=cfg.precision_bits, m1=cfg.m1)
    steps = to_sfraction(R)
    meta = {"interval": list(K.as_tuple()), "m": ms[0], "m1": R.plan.m1, "m2": R.plan.m2,
            "kind": kind.name, "h": kind.h, "precision": R.precision}
    if cfg.ell:
        if cfg.h is None:
            raise DomainError("--ell needs the interior step --h")
        grid = merge_grid(cfg.h, cfg.ell, steps)
        prim, dual = cumulative_points(grid)
    else:
        grid = steps
        prim, dual = steps.primal_points(), steps.dual_points()
    if cfg.out:
        write_grid(cfg.out, grid, meta)
        with open(cfg.out + ".points.csv", "w") as fh:
            fh.write(_points_csv(prim, dual))
    else:
        if cfg.ell:
            meta.update(h_interior=cfg.h, ell=cfg.ell)
        sys.stdout.write(format_grid(steps, meta))
    return EXIT_OK


def _points_csv(prim, dual) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "index", "re", "im"])
    for name, pts in (("primal", prim), ("dual", dual)):
        for j, v in enumerate(pts):
            w.writerow([name, j, f"{v.real:.17g}", f"{v.imag:.17g}"])
    return buf.getvalue()


def _experiment_kwargs(cfg: RunConfig) -> dict:
    kw = {}
    if cfg.k is not None:
        kw["k"] = cfg.k
    if cfg.margin is not None:
        kw["margin"] = cfg.margin
    if cfg.precision_bits is not None:
        kw["prec"] = cfg.precision_bits
    return kw


def _n_cells(extent: float, h: float) -> int:
    n = int(round(extent / h))
    if n < 4 or abs(n * h - extent) > 1e-9 * extent:
        raise DomainError(f"h={h} does not divide the domain extent {extent}")
    return n


def _run_experiment(cfg: RunConfig, exp, default_ms, quick_ms, extra=None) -> int:
    ms = _check_m_list(cfg.m_list, quick_ms if cfg.quick else default_ms)
    res = convergence_study(exp, ms)
    csv_text = res.to_csv()
    outdir = Path(cfg.out) if cfg.out else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "convergence.csv").write_text(csv_text)
        (outdir / "config.json").write_text(cfg.to_json() + "\n")
        if extra:
            extra(outdir)
        if cfg.fields:
            u1, u2 = exp.solve_pair(ms[-1])
            u1.save(outdir / f"field_m{ms[-1]}_outer.npz")
            u2.save(outdir / f"field_m{ms[-1]}_inner.npz")
    sys.stdout.write(csv_text)
    print(f"fitted_rate={res.fitted_rate:.4f} expected_rate={res.expected_rate:.4f}",
          file=sys.stderr)
    return EXIT_OK


def cmd_waveguide(cfg: RunConfig) -> int:
    kw = _experiment_kwargs(cfg)
    h = cfg.h if cfg.h is not None else (math.pi / 128 if cfg.quick else math.pi / 512)
    exp = WaveguideExperiment(n_cells=_n_cells(math.pi, h), **kw)
    return _run_experiment(cfg, exp, range(8, 37, 4), range(8, 21, 4))


def cmd_tensor(cfg: RunConfig) -> int:
    kw = _experiment_kwargs(cfg)
    if cfg.quick:
        kw.setdefault("k", 30.0)
    h = cfg.h if cfg.h is not None else (1 / 100 if cfg.quick else 1 / 400)
    exp = TensorExperiment(n_cells=_n_cells(1.0, h), normal=cfg.normal, **kw)

    def extra(outdir: Path):
        lines = ["domain,edge,a1,b1,a2,b2,i0"]
        for dom, (lo, hi) in (("outer", (0.0, 1.0)), ("inner", exp.inner)):
            for edge, si in exp.edge_intervals(lo, hi).items():
                lines.append(",".join([dom, edge, *(f"{v:.10g}" for v in si.K.as_tuple()),
                                       str(si.i0)]))
        (outdir / "intervals.csv").write_text("\n".join(lines) + "\n")
        # eigenvalues of the layered axis operators leave the real axis
        m = (cfg.m_list or [14])[-1]
        prob = exp.problem(m, 0.0, 1.0)
        rows = ["axis,re,im"]
        for name, axis in (("x", prob.x_axis), ("y", prob.y_axis)):
            for v in np.sort_complex(layered_axis_eigenvalues(axis)):
                rows.append(f"{name},{v.real:.17g},{v.imag:.17g}")
        (outdir / "layered_eigenvalues.csv").write_text("\n".join(rows) + "\n")

    return _run_experiment(cfg, exp, [14, 18, 22, 26], [8, 12, 16, 20], extra)


# ----------------------------------------------------------------------------
# selftest


def _suite_elliptic(rng, prec=192):
    worst = mpmath.mpf(0)
    with precision(prec):
        for delta in ("0.1", "0.5", "0.9", "0.999"):
            k = mpmath.mpf(delta)
            ref = mpmath.quad(lambda t: 1 / mpmath.sqrt(1 - (k * mpmath.sin(t)) ** 2),
                              [0, mpmath.pi / 2])
            worst = max(worst, abs(elliptic.complete_K(k) / ref - 1))
            for phi in ("0.3", "1.0", "1.5"):
                phi = mpmath.mpf(phi)
                u = mpmath.quad(lambda t: 1 / mpmath.sqrt(1 - (k * mpmath.sin(t)) ** 2), [0, phi])
                sn, dn = elliptic.jacobi_sn_dn(u, k)
                worst = max(worst, abs(sn - mpmath.sin(phi)),
                            abs(dn - mpmath.sqrt(1 - (k * mpmath.sin(phi)) ** 2)))
    return float(worst), worst < mpmath.mpf(10) ** -25


def _suite_roots(rng, prec=256):
    worst = 0.0
    with precision(prec):
        for _ in range(5):
            roots = [mpmath.mpc(*rng.uniform(-3, 3, 2)) for _ in range(8)]
            found = poly_roots(poly_from_roots(roots))
            for r in roots:
                worst = max(worst, float(min(abs(r - f) for f in found)))
    return worst, worst < 1e-40


def _suite_cf(rng):
    K = IntervalPair(*TABLE_K)
    R = build_interpolant(K, 12)
    steps = to_sfraction(R)
    z = np.concatenate([-10 ** rng.uniform(0, 3, 50), 10 ** rng.uniform(0, 4, 50)])
    ref = R.evaluate(z)
    worst = float(np.max(np.abs(eval_cf(steps, z) / ref - 1)))
    return worst, worst < 1e-10


def _suite_bracket(rng):
    K = IntervalPair(*TABLE_K)
    worst = 0.0
    ok = True
    for m in (12, 18):
        R = build_interpolant(K, m)
        err = relative_error(R)
        lo, hi = R.plan.err_lower, R.plan.err_upper
        ok &= hi is not None and lo <= err <= hi
        worst = max(worst, err)
    return worst, ok


SUITES = (("elliptic", _suite_elliptic), ("roots", _suite_roots),
          ("continued_fraction", _suite_cf), ("bracketing", _suite_bracket))


def run_selftest(seed: int = 0, corrupt: str | None = None) -> tuple[str, bool]:
    """Run the oracle-backed checks; returns the report text and overall status.

    ``corrupt="elliptic"`` perturbs the complete integral as a negative control.
    """
    lines = []
    all_ok = True
    for name, suite in SUITES:
        rng = np.random.default_rng(seed)
        if corrupt == name == "elliptic":
            real_K = elliptic.complete_K
            with mock.patch.object(elliptic, "complete_K",
                                   lambda *a, **k: real_K(*a, **k) * (1 + mpmath.mpf(10) ** -20)):
                value, ok = suite(rng)
        else:
            value, ok = suite(rng)
        all_ok &= bool(ok)
        lines.append(f"{name}: {'PASS' if ok else 'FAIL'} (max deviation {value:.1e})")
    lines.append("overall: " + ("PASS" if all_ok else "FAIL"))
    return "\n".join(lines) + "\n", all_ok


def cmd_selftest(cfg: RunConfig) -> int:
    report, ok = run_selftest(cfg.seed, cfg.corrupt)
    fh = _open_out(cfg)
    fh.write(report)
    if fh is not sys.stdout:
        fh.close()
    return EXIT_OK if ok else EXIT_SELFTEST


HANDLERS = {"approx": cmd_approx, "grid": cmd_grid, "waveguide": cmd_waveguide,
            "tensor": cmd_tensor, "selftest": cmd_selftest}


def main(argv=None) -> int:
    try:
        cfg = resolve_config(argv)
    except SystemExit as exc:      # argparse usage errors
        return EXIT_USAGE if exc.code else EXIT_OK
    except (DomainError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print("# config: " + cfg.to_json(), file=sys.stderr)
    try:
        return HANDLERS[cfg.command](cfg)
    except (DomainError, GridFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SingularMatrixError, RootFindingError, BreakdownError, ConsistencyError,
            ZeroDivisionError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
