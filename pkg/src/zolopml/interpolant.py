"""Near-optimal rational interpolants of the inverse square root on two intervals.

The interpolant ``R = P/Q`` of type ``(n-1, n)`` comes from the degree-``2n``
polynomial

    H(s) = Z1(-i s) * Z2(s) = -s P(s^2) + Q(s^2)

where ``Z1``/``Z2`` are Zolotarev polynomials for the square roots of the
negative/positive halves of the target set.  Then

    s R(s^2) - 1 = -2 H(s) / (H(-s) + H(s)),

so the relative error is governed by ``|H(s)/H(-s)|``.  The discrete lattice
impedance is handled by the linear fractional map ``w = z / (sigma z + 1)``.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .errors import DomainError, RootFindingError
from .mpnum import Poly, default_precision, linear_solve, poly_from_roots, poly_roots, precision
from .zolotarev import IntervalPair, SplitPlan, split_degrees, zolotarev_roots

__all__ = [
    "ImpedanceKind",
    "RationalInterpolant",
    "impedance_eval",
    "impedance_eval_array",
    "mobius",
    "mobius_inverse",
    "build_interpolant",
    "interpolate_linear_system",
    "relative_error",
    "sample_points",
]

_mp = mpmath.mp


@dataclass(frozen=True)
class ImpedanceKind:
    """Continuous impedance ``z**-1/2`` (``h is None``) or the lattice one for step ``h``."""

    h: float | None = None

    def __post_init__(self):
        if self.h is not None and not self.h > 0:
            raise DomainError(f"lattice step must be positive, got {self.h}")

    @classmethod
    def continuous(cls) -> "ImpedanceKind":
        return cls(None)

    @classmethod
    def discrete(cls, h: float) -> "ImpedanceKind":
        return cls(float(h))

    @property
    def is_discrete(self) -> bool:
        return self.h is not None

    @property
    def sigma(self) -> float:
        return 0.0 if self.h is None else self.h * self.h / 4

    @property
    def name(self) -> str:
        return "discrete" if self.is_discrete else "continuous"

    def check(self, K: IntervalPair):
        """Raise if ``K`` violates the two-points-per-wavelength condition."""
        if self.is_discrete and K.has_negative and not -1 / self.sigma < K.a1:
            raise DomainError(
                f"Nyquist condition violated: need -1/sigma = {-1 / self.sigma:.6g} < a1 = {K.a1:.6g}"
            )


def _sqrt_lower_cut(z):
    # square root with branch cut on the negative imaginary axis: arg in (-pi/2, 3pi/2]
    if isinstance(z, (mpmath.mpf, mpmath.mpc)):
        z = _mp.mpc(z)
        if z.imag == 0:
            x = z.real
            return _mp.mpc(_mp.sqrt(x)) if x > 0 else _mp.mpc(0, _mp.sqrt(-x))
        return _mp.expjpi(_mp.mpf(1) / 4) * _mp.sqrt(-1j * z)
    z = complex(z)
    if z.imag == 0:
        return complex(math.sqrt(z.real)) if z.real > 0 else 1j * math.sqrt(-z.real)
    return cmath.exp(0.25j * math.pi) * cmath.sqrt(-1j * z)


def _sqrt_lower_cut_array(z):
    z = np.asarray(z, dtype=complex)
    general = np.exp(0.25j * np.pi) * np.sqrt(-1j * z)
    x = z.real
    on_axis = np.where(x > 0, np.sqrt(np.abs(x)) + 0j, 1j * np.sqrt(np.abs(x)))
    return np.where(z.imag == 0, on_axis, general)


def mobius(z, sigma):
    """``w = z / (sigma z + 1)``."""
    den = sigma * z + 1
    if den == 0:
        raise DomainError("z is the pole of the Mobius map")
    return z / den


def mobius_inverse(w, sigma):
    """``z = w / (1 - sigma w)``."""
    den = 1 - sigma * w
    if den == 0:
        raise DomainError("w is the pole of the inverse Mobius map")
    return w / den


def impedance_eval(kind: ImpedanceKind, z):
    """Evaluate the impedance at a scalar ``z`` (Python or mpmath number).

    Continuous: ``F(z) = z**-1/2`` continued from the positive axis through
    the upper half-plane, so ``F(-x) = -i x**-1/2``.  Discrete:
    ``F_h(z) = F(w) / (sigma z + 1)`` with ``w = z / (sigma z + 1)``, which
    squares to ``1 / (z + (h z / 2)**2)``.
    """
    if z == 0:
        raise DomainError("impedance has a branch point at 0")
    if not kind.is_discrete:
        return 1 / _sqrt_lower_cut(z)
    sigma = kind.sigma
    if isinstance(z, (mpmath.mpf, mpmath.mpc)):
        sigma = _mp.mpf(kind.h) ** 2 / 4
    w = mobius(z, sigma)
    return 1 / (_sqrt_lower_cut(w) * (sigma * z + 1))


def impedance_eval_array(kind: ImpedanceKind, z):
    """Vectorised double-precision impedance."""
    z = np.asarray(z, dtype=complex)
    sigma = kind.sigma
    w = z / (sigma * z + 1)
    return 1 / (_sqrt_lower_cut_array(w) * (sigma * z + 1))


def _mpc_pair(x):
    x = _mp.mpc(x)
    return [mpmath.nstr(x.real, _mp.dps + 5, strip_zeros=False),
            mpmath.nstr(x.imag, _mp.dps + 5, strip_zeros=False)]


def _from_pair(p):
    return _mp.mpc(_mp.mpf(p[0]), _mp.mpf(p[1]))


@dataclass(frozen=True)
class RationalInterpolant:
    """``R = P/Q`` with its nodes, poles and residues.

    ``Q`` is monic of degree ``n``; ``P`` has degree ``<= n - 1``.  ``K`` is
    the target set in the original variable; ``plan`` was computed on the
    working set (the Mobius image of ``K`` for the discrete kind).
    """

    P: Poly
    Q: Poly
    nodes: tuple
    poles: tuple
    residues: tuple
    K: IntervalPair
    kind: ImpedanceKind
    plan: SplitPlan
    precision: int
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.Q.degree

    def __call__(self, z):
        """High-precision ``P(z)/Q(z)``."""
        with precision(self.precision):
            return self.P(z) / self.Q(z)

    def poles_complex(self):
        if "poles" not in self._cache:
            self._cache["poles"] = np.array([complex(p) for p in self.poles])
            self._cache["residues"] = np.array([complex(r) for r in self.residues])
        return self._cache["poles"], self._cache["residues"]

    def evaluate(self, z):
        """Double-precision evaluation through the partial-fraction form."""
        poles, res = self.poles_complex()
        z = np.asarray(z, dtype=complex)
        flat = z.reshape(-1)
        out = np.zeros(flat.shape, dtype=complex)
        for chunk in range(0, flat.size, 4096):
            zz = flat[chunk:chunk + 4096, None]
            out[chunk:chunk + 4096] = (res[None, :] / (zz - poles[None, :])).sum(axis=1)
        return out.reshape(z.shape)

    def node_residual(self):
        """``max_j |R(z_j)/F(z_j) - 1|`` in working precision."""
        with precision(self.precision):
            kind = self.kind
            return max(abs(self(z) / impedance_eval(kind, _mp.mpf(z)) - 1) for z in self.nodes)

    def to_dict(self) -> dict:
        with precision(self.precision):
            return {
                "K": list(self.K.as_tuple()),
                "kind": self.kind.name,
                "h": self.kind.h,
                "precision": self.precision,
                "plan": self.plan.to_dict(),
                "P": [_mpc_pair(c) for c in self.P.coeffs],
                "Q": [_mpc_pair(c) for c in self.Q.coeffs],
                "nodes": [mpmath.nstr(x, _mp.dps + 5, strip_zeros=False) for x in self.nodes],
                "poles": [_mpc_pair(p) for p in self.poles],
                "residues": [_mpc_pair(r) for r in self.residues],
            }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "RationalInterpolant":
        prec = int(d["precision"])
        with precision(prec):
            plan = SplitPlan(**d["plan"])
            return cls(
                P=Poly(_from_pair(c) for c in d["P"]),
                Q=Poly(_from_pair(c) for c in d["Q"]),
                nodes=tuple(_mp.mpf(x) for x in d["nodes"]),
                poles=tuple(_from_pair(p) for p in d["poles"]),
                residues=tuple(_from_pair(r) for r in d["residues"]),
                K=IntervalPair(*d["K"]),
                kind=ImpedanceKind(d["h"]),
                plan=plan,
                precision=prec,
            )

    @classmethod
    def from_json(cls, text: str) -> "RationalInterpolant":
        return cls.from_dict(json.loads(text))


def _compose_mobius(coeffs, degree, sigma):
    """Coefficients of ``sum_k c_k z^k (sigma z + 1)^(degree - k)``."""
    lin = Poly([1, sigma])
    powers = [Poly([1])]
    for _ in range(degree):
        powers.append(powers[-1] * lin)
    out = Poly()
    for k, c in enumerate(coeffs):
        out = out + Poly([0] * k + [1]) * powers[degree - k] * c
    return out


def build_interpolant(K: IntervalPair, m: int, kind: ImpedanceKind | None = None,
                      prec: int | None = None, m1: int | None = None) -> RationalInterpolant:
    """Zolotarev-based interpolant of type ``(m/2 - 1, m/2)`` on ``K``.

    For the discrete kind the construction runs on the Mobius image of ``K``
    and is pulled back, so ``R`` approximates ``F_h`` on ``K`` itself.
    """
    kind = kind or ImpedanceKind()
    if int(m) != m or m < 2 or m % 2:
        raise DomainError(f"m must be an even integer >= 2, got {m}")
    m = int(m)
    kind.check(K)
    n = m // 2
    prec = int(prec or default_precision(m))
    with precision(prec):
        sigma = _mp.mpf(kind.h) ** 2 / 4 if kind.is_discrete else _mp.mpf(0)
        Kw = K.map(lambda v: float(v / (kind.sigma * v + 1))) if kind.is_discrete else K

        def to_w(v):
            return _mp.mpf(v) / (sigma * _mp.mpf(v) + 1)

        plan = split_degrees(Kw, m, m1=m1)
        s_roots, w_nodes = [], []
        if plan.m1:
            f1 = zolotarev_roots(_mp.sqrt(-to_w(K.b1)), _mp.sqrt(-to_w(K.a1)), plan.m1)
            s_roots += [_mp.mpc(0, t) for t in f1.roots]
            w_nodes += [-t * t for t in f1.roots]
        if plan.m2:
            f2 = zolotarev_roots(_mp.sqrt(to_w(K.a2)), _mp.sqrt(to_w(K.b2)), plan.m2)
            s_roots += [_mp.mpc(t) for t in f2.roots]
            w_nodes += [t * t for t in f2.roots]
        H = poly_from_roots(s_roots)
        even, odd = H.even_odd()
        Qw, Pw = even, -odd
        if kind.is_discrete:
            Q = _compose_mobius(Qw.coeffs, n, sigma)
            P = _compose_mobius([Pw[k] for k in range(n)], n - 1, sigma)
            nodes = [w / (1 - sigma * w) for w in w_nodes]
        else:
            Q, P, nodes = Qw, Pw, w_nodes
        lead = Q[n]
        Q = Poly(c / lead for c in Q.coeffs)
        P = Poly(c / lead for c in P.coeffs)

        poles = poly_roots(Q)
        dQ = Q.derivative()
        residues = []
        qscale = Q.norm()
        for p in poles:
            d = dQ(p)
            if abs(d) <= qscale * _mp.mpf(2) ** (-prec // 2) * max(1, abs(p)) ** n:
                raise RootFindingError("denominator has a (numerically) multiple root", poly=Q)
            residues.append(P(p) / d)
        order = sorted(range(n), key=lambda j: (float(abs(poles[j])), float(_mp.arg(poles[j]))))
        return RationalInterpolant(
            P=P, Q=Q,
            nodes=tuple(sorted(nodes)),
            poles=tuple(poles[j] for j in order),
            residues=tuple(residues[j] for j in order),
            K=K, kind=kind, plan=plan, precision=prec,
        )


def interpolate_linear_system(nodes, values, n: int, prec: int | None = None):
    """Type ``(n-1, n)`` interpolant through ``2n`` points by a dense solve.

    Solves ``P(z_j) - f_j Q(z_j) = 0`` with ``Q`` monic.  Columns are scaled
    by powers of the largest node magnitude to tame the Vandermonde growth.
    Returns ``(P, Q)``.
    """
    with precision(prec):
        z = [_mp.mpc(v) for v in nodes]
        f = [_mp.mpc(v) for v in values]
        if len(z) != 2 * n or len(f) != 2 * n:
            raise DomainError("need exactly 2n nodes and values")
        scale = max(abs(v) for v in z)
        zs = [v / scale for v in z]
        A, b = [], []
        for zj, fj in zip(zs, f):
            row = [zj ** k for k in range(n)] + [-fj * zj ** k for k in range(n)]
            A.append(row)
            b.append(fj * zj ** n)
        x = linear_solve(A, b)
        # undo the scaling: Q(z) = scale^n Qs(z/scale), P likewise
        P = Poly(x[k] * scale ** (n - k) for k in range(n))
        Q = Poly([x[n + k] * scale ** (n - k) for k in range(n)] + [1])
        return P, Q


def sample_points(K: IntervalPair, samples_per_interval: int = 10_000):
    """Log-spaced sample points on each half of ``K`` (endpoints included)."""
    pts = []
    if K.has_negative:
        pts.append(-np.logspace(np.log10(-K.b1), np.log10(-K.a1), samples_per_interval))
    if K.has_positive:
        pts.append(np.logspace(np.log10(K.a2), np.log10(K.b2), samples_per_interval))
    return np.concatenate(pts)


def relative_error(R: RationalInterpolant, samples_per_interval: int = 10_000, points=None) -> float:
    """``max |R(z)/F(z) - 1|`` over log-spaced samples of ``R.K`` (double precision)."""
    z = sample_points(R.K, samples_per_interval) if points is None else np.asarray(points)
    F = impedance_eval_array(R.kind, z)
    return float(np.max(np.abs(R.evaluate(z) / F - 1)))
