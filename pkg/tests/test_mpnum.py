import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from zolopml.errors import DomainError, SingularMatrixError
from zolopml.mpnum import (Poly, default_precision, linear_solve, poly_eval, poly_from_roots,
                           poly_roots, precision)

mp = mpmath.mp


def _match(found, expected):
    """Greedy matching of two root multisets; returns the worst relative distance."""
    found = list(found)
    worst = mpmath.mpf(0)
    for r in expected:
        j = min(range(len(found)), key=lambda i: abs(found[i] - r))
        worst = max(worst, abs(found[j] - r) / max(1, abs(r)))
        found.pop(j)
    return worst


def test_poly_basics():
    p = Poly([1, 0, 0])
    assert p.degree == 0 and p.coeffs == (1,)
    z = Poly([])
    assert z.is_zero and z.degree == -1
    assert (Poly([1, 2]) * Poly([3, 4])).coeffs == (3, 10, 8)
    assert (Poly([1, 2]) - Poly([1, 2])).is_zero
    assert Poly([5, 3, 1]).derivative().coeffs == (3, 2)
    E, O = Poly([1, 2, 3, 4, 5]).even_odd()
    assert E.coeffs == (1, 3, 5) and O.coeffs == (2, 4)
    assert Poly([1, 2])[7] == 0


def test_poly_from_roots_small_cases():
    assert poly_from_roots([]).coeffs == (1,)
    assert poly_from_roots([1, -1]).coeffs == (-1, 0, 1)
    assert poly_from_roots([2], leading=3).coeffs == (-6, 3)


def test_poly_eval():
    assert poly_eval(Poly([1]), 7) == 1
    assert poly_eval(Poly([-1, 0, 1]), 2) == 3


def test_roots_simple_and_multiple_at_origin():
    r = sorted(poly_roots(Poly([-1, 0, 1]), prec=256), key=lambda v: v.real)
    assert abs(r[0] + 1) < 1e-60 and abs(r[1] - 1) < 1e-60
    assert poly_roots(Poly([0, 0, 0, 1])) == [0, 0, 0]


def test_roots_reject_constant():
    with pytest.raises(DomainError):
        poly_roots(Poly([3]))
    with pytest.raises(DomainError):
        poly_roots(Poly([]))


def test_degree30_round_trip():
    import random
    rnd = random.Random(3)
    with precision(256):
        # well separated: jittered points on three circles
        roots = []
        for k in range(30):
            rad = (1, 1.7, 2.5)[k % 3]
            ang = 2 * mpmath.pi * (k + rnd.uniform(-0.2, 0.2)) / 30
            roots.append(rad * mpmath.expjpi(2 * ang / (2 * mpmath.pi)))
        found = poly_roots(poly_from_roots(roots))
        assert len(found) == 30
        assert _match(found, roots) < 1e-30


def test_twenty_roots_in_unit_disk():
    import random
    rnd = random.Random(11)
    with precision(256):
        roots = []
        while len(roots) < 20:
            z = mp.mpc(rnd.uniform(-1, 1), rnd.uniform(-1, 1))
            if abs(z) < 1 and all(abs(z - w) > 0.1 for w in roots):
                roots.append(z)
        p = poly_from_roots(roots)
        floor = mpmath.mpf(2) ** (-128)
        assert max(abs(poly_eval(p, r)) for r in roots) < floor
        assert _match(poly_roots(p), roots) < floor


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.floats(-4, 4), st.floats(-4, 4)), min_size=1, max_size=8))
def test_round_trip_property(pairs):
    roots = [mpmath.mpc(a, b) for a, b in pairs]
    if any(abs(roots[i] - roots[j]) < 0.05 for i in range(len(roots)) for j in range(i)):
        return
    with precision(200):
        found = poly_roots(poly_from_roots(roots, leading=mpmath.mpc(2, -1)))
        assert _match(found, roots) < mpmath.mpf(2) ** -100


def test_linear_solve_small():
    assert linear_solve([[1, 0], [0, 1]], [3, 4]) == [3, 4]
    assert linear_solve([[2, 0], [0, 4]], [2, 4]) == [1, 1]


def test_linear_solve_random_system():
    import random
    rnd = random.Random(5)
    with precision(256):
        n = 20
        A = [[mp.mpc(rnd.gauss(0, 1), rnd.gauss(0, 1)) + (5 if i == j else 0) for j in range(n)]
             for i in range(n)]
        x = [mp.mpc(rnd.gauss(0, 1), rnd.gauss(0, 1)) for _ in range(n)]
        b = [mp.fsum(A[i][j] * x[j] for j in range(n)) for i in range(n)]
        y = linear_solve(A, b)
        assert max(abs(u - v) for u, v in zip(x, y)) < 1e-40


def test_linear_solve_singular():
    with pytest.raises(SingularMatrixError):
        linear_solve([[1, 2], [2, 4]], [1, 1], prec=128)


def test_linear_solve_shape_errors():
    with pytest.raises(DomainError):
        linear_solve([[1, 2]], [1])
    with pytest.raises(DomainError):
        linear_solve([[1, 0], [0, 1]], [1])


def test_default_precision():
    assert default_precision(0) == 256
    assert default_precision(60) == 960


def test_precision_is_scoped():
    before = mp.prec
    with precision(300):
        assert mp.prec == 300
    assert mp.prec == before
