"""Complete elliptic integral K and Jacobi sn/dn by AGM and Landen descent.

Arguments are *moduli* ``k`` (not parameters ``m = k**2``)::

    K(k) = int_0^1 dt / sqrt((1 - t^2) (1 - k^2 t^2))

so ``K(k)`` equals ``mpmath.ellipk(k**2)`` and Matlab's ``ellipke(k^2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .errors import DomainError
from .mpnum import precision

__all__ = ["Modulus", "complete_K", "jacobi_sn_dn"]

_mp = mpmath.mp
_MAX_AGM = 200


@dataclass(frozen=True)
class Modulus:
    """An elliptic modulus together with its complement.

    Both members are kept explicitly: when the modulus is close to 1 its
    complement cannot be recovered accurately from ``sqrt(1 - k**2)``.
    """

    delta: mpmath.mpf
    delta_prime: mpmath.mpf

    @classmethod
    def from_delta(cls, delta) -> "Modulus":
        d = _mp.mpf(delta)
        if not 0 <= d < 1:
            raise DomainError(f"modulus must lie in [0, 1), got {delta}")
        return cls(d, _mp.sqrt((1 - d) * (1 + d)))

    @classmethod
    def from_complement(cls, delta_prime) -> "Modulus":
        """Modulus whose complement is ``delta_prime`` (in (0, 1])."""
        dp = _mp.mpf(delta_prime)
        if not 0 < dp <= 1:
            raise DomainError(f"complementary modulus must lie in (0, 1], got {delta_prime}")
        return cls(_mp.sqrt((1 - dp) * (1 + dp)), dp)

    @property
    def complement(self) -> "Modulus":
        return Modulus(self.delta_prime, self.delta)


def _as_modulus(k) -> Modulus:
    return k if isinstance(k, Modulus) else Modulus.from_delta(k)


def _guard_bits(mod: Modulus) -> int:
    # Landen descent loses about 2*log2(1/k') bits as k -> 1
    if mod.delta_prime >= 0.5:
        return 16
    return 16 + 2 * int(-_mp.log(mod.delta_prime, 2) + 1)


def complete_K(delta, prec: int | None = None):
    """Complete elliptic integral of the first kind, ``K = pi / (2 AGM(1, k'))``."""
    with precision(prec):
        mod = _as_modulus(delta)
        if mod.delta_prime == 0:
            raise DomainError("K diverges at modulus 1")
        a, b = _mp.mpf(1), mod.delta_prime
        with mpmath.extraprec(16):
            tol = _mp.mpf(2) ** (8 - _mp.prec)
            for _ in range(_MAX_AGM):
                if abs(a - b) <= tol * a:
                    break
                a, b = (a + b) / 2, _mp.sqrt(a * b)
            K = _mp.pi / (a + b)
        return +K


def jacobi_sn_dn(u, kappa, prec: int | None = None):
    """Jacobi elliptic ``(sn, dn)`` of real argument ``u`` and modulus ``kappa``.

    Uses the descending Landen (AGM) sequence; ``dn**2 = 1 - kappa**2 sn**2``.
    Extra guard bits are added automatically when ``kappa`` is close to 1.
    """
    with precision(prec):
        mod = _as_modulus(kappa)
        work = _mp.prec
        u = _mp.mpf(u)
        if mod.delta == 0:
            return _mp.sin(u), _mp.mpf(1)
        with mpmath.workprec(work + _guard_bits(mod)):
            a = [_mp.mpf(1)]
            c = [_mp.mpf(mod.delta)]
            b = _mp.mpf(mod.delta_prime)
            tol = _mp.mpf(2) ** (8 - _mp.prec)
            while abs(c[-1]) > tol * a[-1] and len(a) <= _MAX_AGM:
                an, bn, cn = (a[-1] + b) / 2, _mp.sqrt(a[-1] * b), (a[-1] - b) / 2
                a.append(an)
                c.append(cn)
                b = bn
            N = len(a) - 1
            phi = _mp.mpf(2) ** N * a[N] * u
            phis = [phi]
            for j in range(N, 0, -1):
                phi = (phi + _mp.asin(c[j] * _mp.sin(phi) / a[j])) / 2
                phis.append(phi)
            phi0 = phis[-1]
            sn = _mp.sin(phi0)
            cn = _mp.cos(phi0)
            # dn^2 = k'^2 + k^2 cn^2 avoids the cancellation in 1 - k^2 sn^2
            dn = _mp.sqrt(mod.delta_prime ** 2 + (mod.delta * cn) ** 2)
        return +sn, +dn
