"""Zolotarev polynomials on one interval and degree balancing on two.

For ``0 < c < d`` the real monic degree-``m`` polynomial ``Z`` minimising
``max_{c<=s<=d} |Z(s)/Z(-s)|`` has the closed-form roots

    s_j = d * dn((2m - 2j + 1) K(k') / (2m), k'),   k = c/d,

and its minimal deviation ``E_m`` behaves like ``rate(k)**m``.  Two such
polynomials, one for each half of a target set straddling zero, are combined
downstream; :func:`split_degrees` picks how many roots each half receives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .elliptic import Modulus, complete_K, jacobi_sn_dn
from .errors import DomainError
from .mpnum import precision

__all__ = [
    "IntervalPair",
    "ZolotarevFactor",
    "SplitPlan",
    "zolotarev_roots",
    "rate",
    "split_degrees",
    "error_bounds",
    "deviation_bounds",
]

_mp = mpmath.mp


@dataclass(frozen=True)
class IntervalPair:
    """Target set ``[a1, b1] U [a2, b2]`` with ``a1 < b1 < 0 < a2 < b2``.

    Either half may be omitted (``None`` endpoints) to describe a single
    interval; this is the degenerate case of the construction.
    """

    a1: float | None
    b1: float | None
    a2: float | None
    b2: float | None

    def __post_init__(self):
        neg = (self.a1, self.b1)
        pos = (self.a2, self.b2)
        if (None in neg) and neg != (None, None):
            raise DomainError("negative interval needs both endpoints")
        if (None in pos) and pos != (None, None):
            raise DomainError("positive interval needs both endpoints")
        if not self.has_negative and not self.has_positive:
            raise DomainError("interval pair is empty")
        if self.has_negative and not self.a1 < self.b1 < 0:
            raise DomainError(f"need a1 < b1 < 0, got a1={self.a1}, b1={self.b1}")
        if self.has_positive and not 0 < self.a2 < self.b2:
            raise DomainError(f"need 0 < a2 < b2, got a2={self.a2}, b2={self.b2}")

    @classmethod
    def positive(cls, a2, b2) -> "IntervalPair":
        return cls(None, None, a2, b2)

    @classmethod
    def negative(cls, a1, b1) -> "IntervalPair":
        return cls(a1, b1, None, None)

    @property
    def has_negative(self) -> bool:
        return self.a1 is not None

    @property
    def has_positive(self) -> bool:
        return self.a2 is not None

    def as_tuple(self):
        return (self.a1, self.b1, self.a2, self.b2)

    def map(self, f) -> "IntervalPair":
        """Apply an increasing map to every endpoint."""
        return IntervalPair(*(None if v is None else f(v) for v in self.as_tuple()))

    def __str__(self):
        parts = []
        if self.has_negative:
            parts.append(f"[{self.a1:.6g}, {self.b1:.6g}]")
        if self.has_positive:
            parts.append(f"[{self.a2:.6g}, {self.b2:.6g}]")
        return " U ".join(parts)


@dataclass(frozen=True)
class ZolotarevFactor:
    """Roots of the degree-``m`` Zolotarev polynomial on ``[c, d]``."""

    c: mpmath.mpf
    d: mpmath.mpf
    m: int
    roots: tuple
    rate: mpmath.mpf
    lower_E: mpmath.mpf
    upper_E: mpmath.mpf

    def ratio(self, s):
        """``Z(s) / Z(-s)`` evaluated in the current precision."""
        out = _mp.mpf(1)
        for r in self.roots:
            out *= (s - r) / (-s - r)
        return out


def _nome_exponent(delta):
    # pi K(mu') / (4 K(mu)) with mu = ((1 - sqrt(delta)) / (1 + sqrt(delta)))^2
    sd = _mp.sqrt(_mp.mpf(delta))
    mu = ((1 - sd) / (1 + sd)) ** 2
    # 1 - mu = 4 sqrt(delta) / (1 + sqrt(delta))^2, computed without cancellation
    one_minus_mu = 4 * sd / (1 + sd) ** 2
    mu_prime = _mp.sqrt(one_minus_mu * (1 + mu))
    Kmu = complete_K(Modulus(mu, mu_prime))
    Kmu_prime = complete_K(Modulus(mu_prime, mu))
    return _mp.pi * Kmu_prime / (4 * Kmu)


def rate(delta, prec: int | None = None):
    """Asymptotic convergence rate of Zolotarev's problem for ratio ``delta = c/d``."""
    with precision(prec):
        delta = _mp.mpf(delta)
        if not 0 < delta < 1:
            raise DomainError(f"interval ratio must lie in (0, 1), got {delta}")
        return _mp.exp(-_nome_exponent(delta))


def deviation_bounds(delta, m: int, prec: int | None = None):
    """Lower and upper bounds on the minimal deviation ``E_m`` for ratio ``delta``.

    The upper bound ``2 q**m`` is capped at 1 since ``E_m < 1`` always.
    """
    with precision(prec):
        q = rate(delta) ** m
        lower = 2 * q / (1 + q * q)
        upper = min(2 * q, _mp.mpf(1))
        return lower, upper


def zolotarev_roots(c, d, m: int, prec: int | None = None) -> ZolotarevFactor:
    """Zolotarev factor of degree ``m`` on ``[c, d]``; roots sorted increasingly."""
    with precision(prec):
        c = _mp.mpf(c)
        d = _mp.mpf(d)
        if not 0 < c < d:
            raise DomainError(f"need 0 < c < d, got c={c}, d={d}")
        if int(m) != m or m < 1:
            raise DomainError(f"degree must be a positive integer, got {m}")
        m = int(m)
        delta = c / d
        # modulus delta' is close to 1 for small delta: keep delta exact as its complement
        kmod = Modulus.from_complement(delta)
        K = complete_K(kmod)
        roots = []
        for j in range(1, m + 1):
            _, dn = jacobi_sn_dn((2 * m - 2 * j + 1) * K / (2 * m), kmod)
            roots.append(d * dn)
        lower, upper = deviation_bounds(delta, m)
        return ZolotarevFactor(c, d, m, tuple(roots), rate(delta), lower, upper)


@dataclass(frozen=True)
class SplitPlan:
    """Split of the total degree ``m`` between the negative and positive halves.

    ``rho1``/``rho2`` are the single-interval rates of the two halves (None
    for an absent half), ``rho`` the balanced rate.  The a priori
    bounds on the relative error of the combined interpolant are attached;
    ``err_upper`` is None when the applicability condition fails.
    """

    m: int
    m1: int
    m2: int
    theta: float
    rho1: float | None
    rho2: float | None
    rho: float
    err_lower: float
    err_upper: float | None
    bounds_valid: bool

    def to_dict(self):
        return {
            "m": self.m, "m1": self.m1, "m2": self.m2, "theta": self.theta,
            "rho1": self.rho1, "rho2": self.rho2, "rho": self.rho,
            "err_lower": self.err_lower, "err_upper": self.err_upper,
            "bounds_valid": self.bounds_valid,
        }


def half_rates(K: IntervalPair, prec: int | None = None):
    """Rates of the negative and positive halves of ``K`` (None when absent)."""
    with precision(prec):
        rho1 = rho2 = None
        if K.has_negative:
            rho1 = rate(_mp.sqrt(_mp.mpf(K.b1) / _mp.mpf(K.a1)))
        if K.has_positive:
            rho2 = rate(_mp.sqrt(_mp.mpf(K.a2) / _mp.mpf(K.b2)))
        return rho1, rho2


def split_degrees(K: IntervalPair, m: int, m1: int | None = None,
                  prec: int | None = None) -> SplitPlan:
    """Balance ``m = m1 + m2`` so both halves reach similar accuracy.

    ``m1`` is the nearest integer to ``m log(rho2) / (log(rho1) + log(rho2))``;
    an exact tie goes to the positive half.  Passing ``m1`` explicitly
    overrides the rule (e.g. ``m1=0`` for a single positive interval).
    """
    if int(m) != m or m < 1:
        raise DomainError(f"m must be a positive integer, got {m}")
    m = int(m)
    with precision(prec):
        rho1, rho2 = half_rates(K)
        if rho1 is not None and rho2 is not None:
            l1, l2 = _mp.log(rho1), _mp.log(rho2)
            x = m * l2 / (l1 + l2)
            rho = _mp.exp(l1 * l2 / (l1 + l2))
            if m1 is None:
                # round half toward the negative side -> extra degree to m2
                m1 = int(_mp.ceil(x - _mp.mpf(1) / 2))
            theta = float(m1 - x)
        else:
            x = None
            rho = rho1 if rho1 is not None else rho2
            auto = m if rho1 is not None else 0
            if m1 is None:
                m1 = auto
            if m1 != auto:
                raise DomainError("single-interval target: all degrees go to the present half")
            theta = 0.0
        m1 = int(m1)
        if not 0 <= m1 <= m:
            raise DomainError(f"m1={m1} outside [0, {m}]")
        m2 = m - m1
        plan = SplitPlan(
            m=m, m1=m1, m2=m2, theta=theta,
            rho1=None if rho1 is None else float(rho1),
            rho2=None if rho2 is None else float(rho2),
            rho=float(rho), err_lower=0.0, err_upper=None, bounds_valid=False,
        )
        lower, upper, cond = error_bounds(plan, m)
        return SplitPlan(**{**plan.__dict__, "err_lower": lower, "err_upper": upper,
                            "bounds_valid": cond})


def error_bounds(plan: SplitPlan, m: int):
    """Lower/upper bounds on ``max_K |R/F - 1|`` and the applicability flag.

    Two halves::

        lower = 2 rho^m / (1 + rho^m)
        upper = 4 M rho^m / (1 - 2 M rho^m),  M = max(rho1^-1/2, rho2^-1/2)

    valid when ``2 M rho^m < 1``.  For a single interval the bracket follows
    from the Zolotarev deviation bounds ``[El, Eu]`` as ``2E/(1 - E)``.
    """
    if plan.rho1 is not None and plan.rho2 is not None:
        rm = plan.rho ** m
        M = max(plan.rho1 ** -0.5, plan.rho2 ** -0.5)
        lower = 2 * rm / (1 + rm)
        cond = 2 * M * rm < 1
        upper = 4 * M * rm / (1 - 2 * M * rm) if cond else None
        return lower, upper, bool(cond)
    q = plan.rho ** m
    El, Eu = 2 * q / (1 + q * q), 2 * q
    lower = 2 * El / (1 - El) if El < 1 else math.inf
    cond = Eu < 1
    upper = 2 * Eu / (1 - Eu) if cond else None
    return lower, upper, bool(cond)
