"""Multiprecision polynomial algebra, root finding and dense linear solves.

All routines run on top of :mod:`mpmath`.  Precision is controlled by an
explicit ``prec`` argument (bits); when omitted, the ambient ``mpmath.mp``
precision is used.  Nothing here mutates module-level state outside of a
scoped :func:`mpmath.workprec` block.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass
from typing import Iterable, Sequence

import mpmath

from .errors import DomainError, RootFindingError, SingularMatrixError

__all__ = [
    "Poly",
    "default_precision",
    "precision",
    "poly_from_roots",
    "poly_eval",
    "poly_roots",
    "linear_solve",
]

_mp = mpmath.mp


def default_precision(m: int = 0) -> int:
    """Working precision in bits for a Zolotarev degree ``m``.

    The parity split of the degree-``m`` product polynomial loses roughly a
    fixed number of bits per degree, hence the linear growth.
    """
    return max(256, 16 * int(m))


def precision(prec: int | None):
    """Context manager setting the working precision, or a no-op for None."""
    if prec is None:
        return contextlib.nullcontext()
    return mpmath.workprec(int(prec))


def _mpc(x):
    return x if isinstance(x, mpmath.mpc) else _mp.mpc(x)


@dataclass(frozen=True)
class Poly:
    """Polynomial with complex coefficients, ascending degree order.

    Trailing (high-degree) coefficients that are exactly zero are stripped,
    so ``degree`` is the index of the last nonzero coefficient.  The zero
    polynomial has no coefficients; ``is_zero`` flags it and ``degree``
    reports -1 as a stand-in for minus infinity.
    """

    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()):
        cs = [_mpc(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        if self.is_zero:
            return _mp.mpc(0)
        return self.coeffs[-1]

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _mp.mpc(0)

    def __call__(self, z):
        return poly_eval(self, z)

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self), len(other))
        return Poly(self[k] + other[k] for k in range(n))

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self), len(other))
        return Poly(self[k] - other[k] for k in range(n))

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if self.is_zero or other.is_zero:
            return Poly()
        out = [_mp.mpc(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def derivative(self) -> "Poly":
        return Poly(k * self.coeffs[k] for k in range(1, len(self)))

    def norm(self):
        """Max-abs coefficient norm."""
        if self.is_zero:
            return _mp.mpf(0)
        return max(abs(c) for c in self.coeffs)

    def even_odd(self) -> tuple["Poly", "Poly"]:
        """Split ``p(s) = E(s**2) + s*O(s**2)`` and return ``(E, O)``."""
        return Poly(self.coeffs[0::2]), Poly(self.coeffs[1::2])

    def to_complex(self) -> list[complex]:
        return [complex(c) for c in self.coeffs]


def poly_from_roots(roots: Sequence, leading=1, prec: int | None = None) -> Poly:
    """Expand ``leading * prod(z - r)`` over the given roots."""
    with precision(prec):
        cs = [_mpc(leading)]
        for r in roots:
            r = _mpc(r)
            nxt = [_mp.mpc(0)] * (len(cs) + 1)
            for k, c in enumerate(cs):
                nxt[k + 1] += c
                nxt[k] -= r * c
            cs = nxt
        return Poly(cs)


def poly_eval(p: Poly, z, prec: int | None = None):
    """Horner evaluation of ``p`` at ``z``."""
    with precision(prec):
        acc = _mp.mpc(0)
        z = _mpc(z)
        for c in reversed(p.coeffs):
            acc = acc * z + c
        return acc


def _eval_with_derivs(cs, z):
    # value, first and second derivative by a single Horner sweep
    p = cs[-1]
    dp = _mp.mpc(0)
    d2p = _mp.mpc(0)
    for c in reversed(cs[:-1]):
        d2p = d2p * z + dp
        dp = dp * z + p
        p = p * z + c
    return p, dp, 2 * d2p


def _companion_eigenvalues(monic_cs):
    n = len(monic_cs) - 1
    if n == 1:
        return [-monic_cs[0]]
    C = _mp.matrix(n, n)
    for i in range(1, n):
        C[i, i - 1] = 1
    for i in range(n):
        C[i, n - 1] = -monic_cs[i]
    return list(_mp.eig(C, left=False, right=False))


def _polish(cs, r0, others, tol_scale, max_iter=80):
    """Laguerre steps followed by Newton steps, stopping on stagnation."""
    n = len(cs) - 1
    r = r0
    # a Laguerre step must not jump past half the gap to the nearest neighbour
    gap = min((abs(r0 - o) for o in others), default=_mp.inf)
    best_r, best_res = r, abs(_eval_with_derivs(cs, r)[0])
    stagnant = 0
    use_laguerre = n > 1
    for _ in range(max_iter):
        p, dp, d2p = _eval_with_derivs(cs, r)
        res = abs(p)
        if res < best_res:
            best_r, best_res = r, res
            stagnant = 0
        else:
            stagnant += 1
        if res <= tol_scale * max(1, abs(r)) ** n or stagnant >= 3:
            break
        if use_laguerre:
            G = dp / p
            H = G * G - d2p / p
            sq = _mp.sqrt((n - 1) * (n * H - G * G))
            den = G + sq if abs(G + sq) >= abs(G - sq) else G - sq
            step = n / den if den != 0 else None
            if step is None or abs(step) > gap / 2:
                use_laguerre = False
                continue
            r = r - step
            if abs(step) <= abs(r) * _mp.eps * 2 ** 16:
                use_laguerre = False
        else:
            if dp == 0:
                break
            r = r - p / dp
    return best_r, best_res


def poly_roots(p: Poly, prec: int | None = None, guard: int = 16) -> list:
    """All roots of ``p`` (with multiplicity).

    Eigenvalues of the companion matrix are computed by complex Hessenberg
    QR and each one is then refined on the original polynomial with
    Laguerre and Newton iterations.
    """
    if p.is_zero or p.degree < 1:
        raise DomainError("poly_roots needs a polynomial of degree >= 1")
    with precision(prec):
        cs = list(p.coeffs)
        zeros = 0
        while cs[0] == 0:
            cs.pop(0)
            zeros += 1
        roots = [_mp.mpc(0)] * zeros
        if len(cs) == 1:
            return roots
        lead = cs[-1]
        monic = [c / lead for c in cs]
        try:
            est = _companion_eigenvalues(monic)
        except Exception as exc:  # mpmath raises bare RuntimeError/ZeroDivisionError
            raise RootFindingError(f"companion QR failed: {exc}", poly=p) from exc
        est = [_mpc(e) for e in est]
        norm = max(abs(c) for c in monic)
        tol_scale = norm * _mp.mpf(2) ** (-_mp.prec + guard)
        polished = []
        for i, e in enumerate(est):
            others = est[:i] + est[i + 1:]
            r, res = _polish(monic, e, others, tol_scale)
            polished.append(r)
        # acceptance: residual within a loose multiple of the rounding floor
        bad = []
        loose = norm * _mp.mpf(2) ** (-_mp.prec // 2)
        for r in polished:
            if abs(_eval_with_derivs(monic, r)[0]) > loose * max(1, abs(r)) ** (len(monic) - 1):
                bad.append(r)
        if bad:
            raise RootFindingError(
                f"{len(bad)} root(s) failed to converge", poly=p, iterates=polished
            )
        return roots + polished


def linear_solve(A, b, prec: int | None = None, guard: int = 8) -> list:
    """Solve ``A x = b`` by LU with partial pivoting.

    ``A`` is a square nested sequence (or ``mpmath.matrix``), ``b`` a vector.
    Raises :class:`SingularMatrixError` if a pivot drops below
    ``2**(guard - prec) * max|A|``.
    """
    with precision(prec):
        if isinstance(A, mpmath.matrix):
            rows = [[A[i, j] for j in range(A.cols)] for i in range(A.rows)]
        else:
            rows = [list(r) for r in A]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DomainError("matrix is not square")
        x = [_mpc(v) for v in b]
        if len(x) != n:
            raise DomainError(f"right-hand side has length {len(x)}, expected {n}")
        M = [[_mpc(v) for v in r] for r in rows]
        scale = max((abs(v) for r in M for v in r), default=_mp.mpf(0))
        thresh = scale * _mp.mpf(2) ** (guard - _mp.prec)
        for k in range(n):
            piv = max(range(k, n), key=lambda i: abs(M[i][k]))
            if abs(M[piv][k]) <= thresh:
                raise SingularMatrixError(f"pivot {k} is numerically zero")
            if piv != k:
                M[k], M[piv] = M[piv], M[k]
                x[k], x[piv] = x[piv], x[k]
            inv = 1 / M[k][k]
            for i in range(k + 1, n):
                f = M[i][k] * inv
                if f == 0:
                    continue
                Mi, Mk = M[i], M[k]
                for j in range(k + 1, n):
                    Mi[j] -= f * Mk[j]
                x[i] -= f * x[k]
        for k in range(n - 1, -1, -1):
            s = x[k]
            for j in range(k + 1, n):
                s -= M[k][j] * x[j]
            x[k] = s / M[k][k]
        return x
