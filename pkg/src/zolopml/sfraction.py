"""Stieltjes-type continued fractions and the grid steps they encode.

A rational function of type ``(n-1, n)`` is written as

    R(z) = 1 / (hh0 z + 1 / (h1 + 1 / (hh1 z + ... + 1 / (hh_{n-1} z + 1 / h_n))))

with dual steps ``hh_j`` and primal steps ``h_j``.  These are exactly the
step sizes of a three-point finite-difference scheme whose Neumann-to-
Dirichlet map at the first node is ``R``.

Two independent conversions are provided: a complex-symmetric Lanczos
process on the pole/residue data, and Euclidean division of ``P`` and ``Q``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import BreakdownError, ConsistencyError, DomainError
from .interpolant import RationalInterpolant
from .mpnum import Poly, precision

__all__ = [
    "GridSteps",
    "to_sfraction",
    "lanczos_steps",
    "euclid_steps",
    "eval_cf",
    "steps_to_csv",
    "steps_from_csv",
]

_mp = mpmath.mp


@dataclass(frozen=True)
class GridSteps:
    """Dual steps ``hhat[0..n-1]`` and primal steps ``h[0..n-1]`` (= h_1..h_n)."""

    hhat: tuple
    h: tuple

    def __post_init__(self):
        if len(self.hhat) != len(self.h):
            raise DomainError("dual and primal step lists must have equal length")
        if not self.hhat:
            raise DomainError("grid has no steps")

    @property
    def n(self) -> int:
        return len(self.hhat)

    def as_complex(self):
        """``(hhat, h)`` as complex128 arrays."""
        return (np.array([complex(v) for v in self.hhat]),
                np.array([complex(v) for v in self.h]))

    def primal_points(self):
        """Cumulative primal points ``x_0 = 0, x_1, ..., x_n``."""
        _, h = self.as_complex()
        return np.concatenate([[0], np.cumsum(h)])

    def dual_points(self):
        """Cumulative dual points ``xhat_0 = 0, ..., xhat_n``."""
        hh, _ = self.as_complex()
        return np.concatenate([[0], np.cumsum(hh)])

    def scaled(self, factor) -> "GridSteps":
        return GridSteps(tuple(factor * v for v in self.hhat), tuple(factor * v for v in self.h))


def eval_cf(steps: GridSteps, z):
    """Evaluate the continued fraction bottom-up.

    Works for scalars (float, complex, mpmath) and for NumPy arrays, in which
    case the steps are first rounded to double precision.
    """
    if isinstance(z, np.ndarray):
        hh, h = steps.as_complex()
        acc = 1 / h[-1] + 0 * z
        for j in range(steps.n - 1, -1, -1):
            acc = 1 / (hh[j] * z + acc)
            if j:
                acc = 1 / (h[j - 1] + acc)
        return acc
    acc = 1 / steps.h[-1]
    for j in range(steps.n - 1, -1, -1):
        den = steps.hhat[j] * z + acc
        if den == 0:
            raise ZeroDivisionError(f"continued fraction hits a pole at level {j}")
        acc = 1 / den
        if j:
            den = steps.h[j - 1] + acc
            if den == 0:
                raise ZeroDivisionError(f"continued fraction hits a pole at level {j}")
            acc = 1 / den
    return acc


def lanczos_steps(poles, residues, prec: int | None = None) -> GridSteps:
    """Steps from pole/residue data via quasi-Lanczos with full reorthogonalisation.

    With ``lambda_j = -p_j`` and weights ``w_j = r_j / sum(r)``, the
    tridiagonal matrix ``T`` produced by Lanczos on ``diag(lambda)`` in the
    bilinear (unconjugated) inner product satisfies
    ``T = D^-1/2 S D^-1/2``, ``D = diag(hhat)``, ``S`` the stiffness matrix
    of the primal steps, which is then unwound row by row.
    """
    with precision(prec):
        n = len(poles)
        lam = [-_mp.mpc(p) for p in poles]
        r = [_mp.mpc(v) for v in residues]
        total = sum(r)
        if total == 0:
            raise BreakdownError("residues sum to zero", step=0)
        q = [_mp.sqrt(v / total) for v in r]
        Q = [q]
        alpha, beta2 = [], []
        tiny = _mp.mpf(2) ** (-_mp.prec // 2)

        def dot(x, y):
            return _mp.fsum(a * b for a, b in zip(x, y))

        prev, bprev = None, None
        for k in range(n):
            v = [l * x for l, x in zip(lam, Q[k])]
            a = dot(Q[k], v)
            alpha.append(a)
            if k == n - 1:
                break
            v = [vi - a * qi for vi, qi in zip(v, Q[k])]
            if prev is not None:
                v = [vi - bprev * pi for vi, pi in zip(v, prev)]
            for _ in range(2):
                for qq in Q:
                    c = dot(qq, v)
                    v = [vi - c * qi for vi, qi in zip(v, qq)]
            b2 = dot(v, v)
            scale = _mp.fsum(abs(x) ** 2 for x in v)
            if scale == 0 or abs(b2) <= tiny * scale:
                raise BreakdownError(f"quasi-Lanczos breakdown at step {k + 1}", step=k + 1)
            b = _mp.sqrt(b2)
            beta2.append(b2)
            prev, bprev = Q[k], b
            Q.append([vi / b for vi in v])

        hhat = [1 / total]
        hs = []
        inv_prev = _mp.mpc(0)
        for k in range(n):
            inv_h = alpha[k] * hhat[k] - inv_prev
            if inv_h == 0:
                raise BreakdownError(f"zero reciprocal primal step at level {k + 1}", step=k + 1)
            hs.append(1 / inv_h)
            inv_prev = inv_h
            if k < n - 1:
                hhat.append(1 / (hs[k] ** 2 * hhat[k] * beta2[k]))
        return GridSteps(tuple(hhat), tuple(hs))


def euclid_steps(P: Poly, Q: Poly, prec: int | None = None) -> GridSteps:
    """Steps by alternating leading-term divisions of ``Q`` by ``z P`` and ``P`` by the remainder."""
    with precision(prec):
        n = Q.degree
        num = [P[k] for k in range(n)]        # degree n-1
        den = [Q[k] for k in range(n + 1)]    # degree n
        scale = max(abs(c) for c in den)
        tiny = _mp.mpf(2) ** (-_mp.prec // 2)
        hhat, hs = [], []
        for j in range(n):
            dn = n - j          # degree of den
            lead_num = num[dn - 1]
            if abs(lead_num) <= tiny * scale:
                raise BreakdownError(f"Euclidean breakdown (dual) at level {j}", step=j)
            hh = den[dn] / lead_num
            hhat.append(hh)
            # den <- den - hh z num, now degree dn - 1
            den = [den[k] - (hh * num[k - 1] if k >= 1 else 0) for k in range(dn)]
            lead_den = den[dn - 1]
            if abs(lead_den) <= tiny * scale:
                raise BreakdownError(f"Euclidean breakdown (primal) at level {j + 1}", step=j + 1)
            h = num[dn - 1] / lead_den
            hs.append(h)
            # num <- num - h den, now degree dn - 2
            num = [num[k] - h * den[k] for k in range(dn - 1)]
        return GridSteps(tuple(hhat), tuple(hs))


def _max_rel_diff(a: GridSteps, b: GridSteps):
    return max(abs(x - y) / abs(y) for x, y in zip(a.hhat + a.h, b.hhat + b.h))


def to_sfraction(R: RationalInterpolant, check: bool = True, rtol: float = 1e-8) -> GridSteps:
    """Grid steps equivalent to ``R``.

    The Lanczos route is primary.  On breakdown it is retried once with
    residues perturbed by a relative ``2**(8 - prec)``.  With ``check`` the
    Euclidean route is run as well and the two must agree entrywise to
    ``rtol`` or a :class:`ConsistencyError` is raised.
    """
    with precision(R.precision):
        try:
            steps = lanczos_steps(R.poles, R.residues)
        except BreakdownError:
            eps = _mp.mpf(2) ** (8 - R.precision)
            pert = [r * (1 + eps * (j + 1)) for j, r in enumerate(R.residues)]
            steps = lanczos_steps(R.poles, pert)
        if check:
            other = euclid_steps(R.P, R.Q)
            diff = _max_rel_diff(steps, other)
            if diff > rtol:
                raise ConsistencyError(
                    f"Lanczos and Euclidean steps differ by {mpmath.nstr(diff, 3)} (relative)"
                )
        return steps


def steps_to_csv(steps: GridSteps) -> str:
    """CSV with columns index, hhat_re, hhat_im, h_re, h_im (17 significant digits)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "hhat_re", "hhat_im", "h_re", "h_im"])
    hh, h = steps.as_complex()
    for j in range(steps.n):
        w.writerow([j, f"{hh[j].real:.17g}", f"{hh[j].imag:.17g}",
                    f"{h[j].real:.17g}", f"{h[j].imag:.17g}"])
    return buf.getvalue()


def steps_from_csv(text: str) -> GridSteps:
    from .pml_grid import parse_steps_table
    return parse_steps_table(text)


def steps_to_json(steps: GridSteps) -> str:
    hh, h = steps.as_complex()
    return json.dumps({
        "hhat": [[f"{v.real:.17g}", f"{v.imag:.17g}"] for v in hh],
        "h": [[f"{v.real:.17g}", f"{v.imag:.17g}"] for v in h],
    })
