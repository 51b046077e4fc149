"""Finite-difference Helmholtz solver on grids extended by absorbing layers.

Second-order three-point differences are used along each axis with
variable (complex) steps::

    (D u)_i = ((u_{i+1} - u_i) / h_{i+1} - (u_i - u_{i-1}) / h_i) / hhat_i

and the 2D operator is ``c^2 (D_x + D_y) + k^2``.  Layers are obtained from
a rational interpolant of the lattice impedance on spectral inclusion
intervals of the tangential operator.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import DomainError, SingularMatrixError
from .interpolant import ImpedanceKind, build_interpolant, impedance_eval
from .pml_grid import MergedGrid, merge_grid
from .sfraction import GridSteps, to_sfraction
from .zolotarev import IntervalPair, split_degrees

__all__ = [
    "TangentialOperator",
    "SpectralIntervals",
    "spectral_intervals",
    "AxisGrid",
    "build_axis",
    "HelmholtzProblem2D",
    "FieldSolution",
    "assemble",
    "assemble_and_solve",
    "restriction_error",
    "layered_axis_eigenvalues",
    "ConvergenceResult",
    "convergence_study",
    "fitted_rate",
    "layer_steps",
    "scalar_ntd_solve",
    "merged_scalar_solve",
    "lattice_scalar_solve",
    "WaveguideExperiment",
    "TensorExperiment",
    "layered_wave_speed",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TangentialOperator:
    """Dirichlet discretisation of ``-c(t)^2 d^2/dt^2`` on ``[0, length]``.

    ``c`` holds the wave speed at the ``N`` interior points ``t_j = j h``.
    """

    length: float
    N: int
    c: np.ndarray

    @classmethod
    def uniform(cls, length: float, N: int, c: float = 1.0) -> "TangentialOperator":
        return cls(length, N, np.full(N, float(c)))

    @classmethod
    def from_profile(cls, length: float, N: int, profile: Callable, start: float = 0.0):
        h = length / (N + 1)
        t = start + h * np.arange(1, N + 1)
        return cls(length, N, np.asarray(profile(t), dtype=float))

    @property
    def h(self) -> float:
        return self.length / (self.N + 1)

    @property
    def is_constant(self) -> bool:
        return bool(np.all(self.c == self.c[0]))

    def eigenvalues(self, k: float = 0.0, normal: bool = False) -> np.ndarray:
        """Sorted eigenvalues of ``L - k^2`` (or of ``-d^2 - k^2/c^2`` if ``normal``).

        The second form is the operator that multiplies ``u`` in the normal
        direction once ``c^2 (u_nn + u_tt) + k^2 u = 0`` is divided by ``c^2``;
        it coincides with the first when ``c == 1``.
        """
        h2 = self.h ** 2
        if self.is_constant:
            c2 = self.c[0] ** 2
            j = np.arange(1, self.N + 1)
            lap = (2 - 2 * np.cos(j * np.pi / (self.N + 1))) / h2
            ev = lap - k * k / c2 if normal else c2 * lap - k * k
            return np.sort(ev)
        if normal:
            d = 2 / h2 - k * k / self.c ** 2
            e = np.full(self.N - 1, -1 / h2)
            return scipy.linalg.eigh_tridiagonal(d, e, eigvals_only=True)
        # C^2 (-D2) is similar to the symmetric C (-D2) C
        d = 2 * self.c ** 2 / h2
        e = -self.c[:-1] * self.c[1:] / h2
        return scipy.linalg.eigh_tridiagonal(d, e, eigvals_only=True) - k * k


@dataclass(frozen=True)
class SpectralIntervals:
    K: IntervalPair
    i0: int
    margin: float
    eigenvalues: np.ndarray = field(repr=False, compare=False)


def spectral_intervals(op: TangentialOperator, k: float, margin: float = 0.05,
                       normal: bool = False) -> SpectralIntervals:
    """Inclusion intervals for the negative and positive eigenvalues of ``L - k^2``.

    ``margin`` widens each interval outward by that relative amount.
    """
    ev = op.eigenvalues(k, normal=normal)
    scale = np.max(np.abs(ev))
    if np.any(np.abs(ev) <= 1e-12 * scale):
        raise DomainError("k^2 coincides with an eigenvalue: no spectral gap")
    neg, pos = ev[ev < 0], ev[ev > 0]
    i0 = len(neg)
    lo, hi = 1 + margin, 1 - margin
    K = IntervalPair(
        *(neg[0] * lo, neg[-1] * hi) if len(neg) else (None, None),
        *(pos[0] * hi, pos[-1] * lo) if len(pos) else (None, None),
    )
    return SpectralIntervals(K=K, i0=i0, margin=margin, eigenvalues=ev)


@lru_cache(maxsize=64)
def _layer_steps_cached(K: IntervalPair, m: int, h: float | None, prec: int | None):
    kind = ImpedanceKind(h)
    R = build_interpolant(K, m, kind, prec=prec)
    return to_sfraction(R), R


def layer_steps(K: IntervalPair, m: int, h: float | None, prec: int | None = None) -> GridSteps:
    """Absorbing-layer steps for target set ``K``; lattice impedance when ``h`` is given."""
    return _layer_steps_cached(K, int(m), None if h is None else float(h), prec)[0]


@dataclass(frozen=True)
class AxisGrid:
    """One axis of a tensor grid.

    ``dual[i]`` is the dual step at unknown ``i``; ``primal[i]`` the primal
    step between unknowns ``i-1`` and ``i`` (``primal[0]`` and ``primal[N]``
    connect to the zero Dirichlet nodes beyond both ends).  ``coord`` is the
    physical coordinate (layer nodes get the coordinate of the interface they
    hang from) and ``lattice`` the integer multiple of ``h`` for physical
    nodes, -1 for layer nodes.
    """

    h: float
    dual: np.ndarray
    primal: np.ndarray
    coord: np.ndarray
    lattice: np.ndarray

    @property
    def size(self) -> int:
        return len(self.dual)

    @property
    def physical(self) -> np.ndarray:
        return np.flatnonzero(self.lattice >= 0)

    def second_difference(self) -> sp.csr_matrix:
        hh, hp = self.dual, self.primal
        main = -(1 / hp[:-1] + 1 / hp[1:]) / hh
        lower = 1 / (hp[1:-1] * hh[1:])
        upper = 1 / (hp[1:-1] * hh[:-1])
        return sp.diags([lower, main, upper], [-1, 0, 1], format="csr")


def build_axis(h: float, n_steps: int, origin: float = 0.0,
               left: GridSteps | None = None, right: GridSteps | None = None) -> AxisGrid:
    """Uniform axis ``origin + i h`` (``i = 0..n_steps``) with optional layers.

    Without a layer the end node carries a homogeneous Dirichlet condition
    and is dropped; with a layer it becomes the interface node whose dual
    step is ``hhat_0 + h/2``.
    """
    dual, primal, coord, lat = [], [], [], []
    if left is not None:
        end = merge_grid(h, 0, left)
        n = left.n
        # mirror image of the right-hand convention
        primal += list(end.merged_h[n:0:-1])
        dual += list(end.merged_hhat[n - 1:0:-1])
        coord += [origin] * (n - 1)
        lat += [-1] * (n - 1)
        first = 0
    else:
        primal.append(h)
        first = 1
    last = n_steps if right is not None else n_steps - 1
    for i in range(first, last + 1):
        at_left = i == 0
        at_right = i == n_steps
        if at_left:
            dual.append(merge_grid(h, 0, left).merged_hhat[0])
        elif at_right:
            dual.append(merge_grid(h, 0, right).merged_hhat[0])
        else:
            dual.append(h)
        if i < last:
            primal.append(h)
        coord.append(origin + i * h)
        lat.append(i)
    if right is not None:
        end = merge_grid(h, 0, right)
        n = right.n
        primal += list(end.merged_h[1:n + 1])
        dual += list(end.merged_hhat[1:n])
        coord += [origin + n_steps * h] * (n - 1)
        lat += [-1] * (n - 1)
    else:
        primal.append(h)
    # lattice positions are global multiples of h; coordinates are taken from
    # them so that two grids sharing h agree bit for bit on common nodes
    shift = int(round(origin / h))
    if abs(origin - shift * h) > 1e-9 * h:
        raise DomainError(f"origin {origin} is not a multiple of h={h}")
    lat = np.array(lat)
    lat = np.where(lat >= 0, lat + shift, -1)
    coord = np.array(coord, dtype=float)
    coord[lat >= 0] = lat[lat >= 0] * h
    return AxisGrid(
        h=h,
        dual=np.array(dual, dtype=complex),
        primal=np.array(primal, dtype=complex),
        coord=coord,
        lattice=lat,
    )


@dataclass
class HelmholtzProblem2D:
    """``c^2 (u_xx + u_yy) + k^2 u = f`` with a point source.

    ``c`` is a vectorised callable of physical ``(x, y)`` or None for 1.
    """

    x_axis: AxisGrid
    y_axis: AxisGrid
    k: float
    source: tuple[float, float]
    amplitude: complex = 1.0
    c: Callable | None = None


@dataclass(frozen=True)
class FieldSolution:
    u: np.ndarray            # shape (Nx, Ny)
    x_axis: AxisGrid
    y_axis: AxisGrid

    def physical_values(self, region):
        """Values on physical nodes inside ``region = (x0, x1, y0, y1)``, keyed by lattice pair."""
        x0, x1, y0, y1 = region
        tol = 1e-9 * max(self.x_axis.h, self.y_axis.h)
        xa, ya = self.x_axis, self.y_axis
        ix = [i for i in xa.physical if x0 - tol <= xa.coord[i] <= x1 + tol]
        iy = [j for j in ya.physical if y0 - tol <= ya.coord[j] <= y1 + tol]
        keys = (tuple(xa.lattice[ix]), tuple(ya.lattice[iy]))
        return keys, self.u[np.ix_(ix, iy)]

    def save(self, path):
        """Dump to ``.npz`` or, for any other suffix, CSV with re/im columns."""
        path = str(path)
        if path.endswith(".npz"):
            np.savez(path, u=self.u, x=self.x_axis.coord, y=self.y_axis.coord,
                     x_lattice=self.x_axis.lattice, y_lattice=self.y_axis.lattice)
            return
        with open(path, "w") as fh:
            fh.write(f"# h_x={self.x_axis.h!r} h_y={self.y_axis.h!r} "
                     f"shape={self.u.shape[0]}x{self.u.shape[1]}\n")
            fh.write("ix,iy,x,y,re,im\n")
            for i in range(self.u.shape[0]):
                for j in range(self.u.shape[1]):
                    v = self.u[i, j]
                    fh.write(f"{i},{j},{self.x_axis.coord[i]:.17g},{self.y_axis.coord[j]:.17g},"
                             f"{v.real:.17g},{v.imag:.17g}\n")


def assemble(problem: HelmholtzProblem2D):
    """Sparse system matrix and right-hand side (unknown ``(i, j)`` at ``i*Ny + j``)."""
    xa, ya = problem.x_axis, problem.y_axis
    Nx, Ny = xa.size, ya.size
    Dx, Dy = xa.second_difference(), ya.second_difference()
    lap = sp.kron(Dx, sp.identity(Ny), format="csr") + sp.kron(sp.identity(Nx), Dy, format="csr")
    if problem.c is None:
        A = lap
    else:
        X, Y = np.meshgrid(xa.coord, ya.coord, indexing="ij")
        c2 = np.asarray(problem.c(X, Y), dtype=float) ** 2
        A = sp.diags(c2.ravel()) @ lap
    A = (A + problem.k ** 2 * sp.identity(Nx * Ny)).tocsc()

    b = np.zeros(Nx * Ny, dtype=complex)
    xs, ys = problem.source
    phx, phy = xa.physical, ya.physical
    i = phx[np.argmin(np.abs(xa.coord[phx] - xs))]
    j = phy[np.argmin(np.abs(ya.coord[phy] - ys))]
    b[i * Ny + j] = problem.amplitude / (xa.dual[i] * ya.dual[j])
    return A, b


def assemble_and_solve(problem: HelmholtzProblem2D) -> FieldSolution:
    """Direct sparse LU solve of the assembled system."""
    A, b = assemble(problem)
    try:
        lu = spla.splu(A, permc_spec="COLAMD")
    except RuntimeError as exc:
        raise SingularMatrixError(f"sparse LU failed (near resonance?): {exc}") from exc
    u = lu.solve(b)
    if not np.all(np.isfinite(u)):
        raise SingularMatrixError("sparse LU produced non-finite values (near resonance?)")
    return FieldSolution(u.reshape(problem.x_axis.size, problem.y_axis.size),
                         problem.x_axis, problem.y_axis)


def layered_axis_eigenvalues(axis: AxisGrid, c2=None) -> np.ndarray:
    """Eigenvalues of ``-c^2 D`` along one layered axis (dense; for diagnostics).

    With complex layer steps the matrix is no longer Hermitian and its
    spectrum leaves the real axis.
    """
    A = -axis.second_difference().toarray()
    if c2 is not None:
        A = np.asarray(c2, float)[:, None] * A
    return np.linalg.eigvals(A)


def restriction_error(u1: FieldSolution, u2: FieldSolution, region) -> float:
    """``max |u1 - u2| / max |u1|`` over the common physical nodes in ``region``."""
    k1, v1 = u1.physical_values(region)
    k2, v2 = u2.physical_values(region)
    if k1 != k2:
        raise DomainError("fields do not share the same physical nodes on the region")
    return float(np.max(np.abs(v1 - v2)) / np.max(np.abs(v1)))


def fitted_rate(ms: Sequence[int], errs: Sequence[float]) -> float:
    """``exp`` of the least-squares slope of ``log(err)`` against ``m``."""
    slope = np.polyfit(np.asarray(ms, float), np.log(np.asarray(errs, float)), 1)[0]
    return float(np.exp(slope))


@dataclass(frozen=True)
class ConvergenceResult:
    ms: tuple
    errs: tuple
    fitted_rate: float
    expected_rate: float | None = None

    def to_csv(self) -> str:
        lines = ["m,err,fitted_rate,expected_rate"]
        for m, e in zip(self.ms, self.errs):
            lines.append(f"{m},{e:.17g},{self.fitted_rate:.17g},"
                         f"{'' if self.expected_rate is None else format(self.expected_rate, '.17g')}")
        return "\n".join(lines) + "\n"


def convergence_study(experiment, m_list: Sequence[int]) -> ConvergenceResult:
    """Restriction error of ``experiment`` for each ``m`` and the fitted decay rate."""
    ms = list(m_list)
    if any(b <= a for a, b in zip(ms, ms[1:])):
        raise DomainError("m_list must be strictly increasing")
    if any(m % 2 for m in ms):
        raise DomainError("every m must be even")
    errs = []
    for m in ms:
        e = experiment.error(m)
        log.info("m=%d err=%.3e", m, e)
        errs.append(e)
    expected = getattr(experiment, "expected_rate", lambda: None)()
    return ConvergenceResult(tuple(ms), tuple(errs), fitted_rate(ms, errs), expected)


# ----------------------------------------------------------------------------
# 1D checks of the continued-fraction / finite-difference equivalence


def _tridiag_solve(dual, primal, a, rhs):
    """Solve ``(D - a) u = rhs`` for one axis with scalar ``a``."""
    hh, hp = np.asarray(dual, complex), np.asarray(primal, complex)
    main = -(1 / hp[:-1] + 1 / hp[1:]) / hh - a
    lower = 1 / (hp[1:-1] * hh[1:])
    upper = 1 / (hp[1:-1] * hh[:-1])
    ab = np.zeros((3, len(hh)), dtype=complex)
    ab[0, 1:] = upper
    ab[1] = main
    ab[2, :-1] = lower
    return scipy.linalg.solve_banded((1, 1), ab, np.asarray(rhs, complex))


def scalar_ntd_solve(steps: GridSteps, a: complex, b: complex = 1.0) -> complex:
    """``u_0`` of the layer recursion driven by Neumann data ``-b``; equals ``R(a) b``."""
    hh, hp = steps.as_complex()
    # (1/hh_0)((u_1 - u_0)/h_1 + b) = a u_0  ->  move b to the right-hand side
    primal = np.concatenate([[np.inf], hp])
    rhs = np.zeros(steps.n, dtype=complex)
    rhs[0] = -b / hh[0]
    return complex(_tridiag_solve(hh, primal, a, rhs)[0])


def merged_scalar_solve(grid: MergedGrid, a: complex, q) -> np.ndarray:
    """Solve the merged recursion ``D u - a u = q`` for ``j = -ell..n-1``.

    ``q`` holds the interior source at ``j = -ell..0``; zero Dirichlet values
    sit at ``j = -ell - 1`` and ``j = n``.  Returns ``u_{-ell..n-1}``.
    """
    dual = np.array(grid.merged_hhat, dtype=complex)
    primal = np.array(grid.merged_h, dtype=complex)
    rhs = np.zeros(len(dual), dtype=complex)
    rhs[: grid.ell + 1] = q
    return _tridiag_solve(dual, primal, a, rhs)


def lattice_scalar_solve(h: float, ell: int, a: float, q) -> np.ndarray:
    """Reference solution of the infinite uniform lattice, restricted to ``j = -ell..0``.

    The exterior ``j > 0`` is eliminated exactly through the lattice impedance.
    """
    Fh = complex(impedance_eval(ImpedanceKind(h), a))
    n = ell + 1
    dual = np.full(n, h, dtype=complex)
    dual[-1] = h / 2
    primal = np.full(n + 1, h, dtype=complex)
    hh, hp = dual, primal
    main = -(1 / hp[:-1] + 1 / hp[1:]) / hh - a
    main[-1] = (-1 / hp[-2] - 1 / Fh) / hh[-1] - a
    lower = 1 / (hp[1:-1] * hh[1:])
    upper = 1 / (hp[1:-1] * hh[:-1])
    ab = np.zeros((3, n), dtype=complex)
    ab[0, 1:] = upper
    ab[1] = main
    ab[2, :-1] = lower
    return scipy.linalg.solve_banded((1, 1), ab, np.asarray(q, complex))


# ----------------------------------------------------------------------------
# Experiments


def _lattice_rate(K: IntervalPair, h: float) -> float:
    sigma = ImpedanceKind(h).sigma
    return split_degrees(K.map(lambda v: v / (sigma * v + 1)), 2).rho


@dataclass
class WaveguideExperiment:
    """Strip ``[0, L] x [0, H]``: Dirichlet in ``y``, absorbing layers in ``x``.

    Solutions for lengths ``L`` and ``2L`` are compared on ``[0, L] x [0, H]``.
    """

    k: float = 50.0
    height: float = np.pi
    length: float = np.pi
    n_cells: int = 512
    source: tuple | None = None
    amplitude: float = 10.0
    margin: float = 0.05
    prec: int | None = None

    def __post_init__(self):
        if self.source is None:
            # one node short of the right interface, about a tenth of the way up
            n = self.n_cells
            self.source = ((n - 1) * self.h, round(50 * n / 512) * self.h)

    @classmethod
    def quick(cls, **kw) -> "WaveguideExperiment":
        """Scaled-down variant (``h = pi/128``) for smoke runs."""
        return cls(n_cells=128, **kw)

    @property
    def h(self) -> float:
        return self.height / self.n_cells

    def intervals(self) -> SpectralIntervals:
        op = TangentialOperator.uniform(self.height, self.n_cells - 1)
        return spectral_intervals(op, self.k, self.margin)

    def expected_rate(self) -> float:
        """Balanced two-interval rate on the inclusion set."""
        return split_degrees(self.intervals().K, 2).rho

    def lattice_rate(self) -> float:
        """The same rate after the Moebius map that turns ``F_h`` into ``F``."""
        return _lattice_rate(self.intervals().K, self.h)

    def layer(self, m: int) -> GridSteps:
        return layer_steps(self.intervals().K, m, self.h, self.prec)

    def problem(self, m: int, length: float) -> HelmholtzProblem2D:
        steps = self.layer(m)
        nx = int(round(length / self.h))
        xa = build_axis(self.h, nx, 0.0, steps, steps)
        ya = build_axis(self.h, self.n_cells, 0.0)
        return HelmholtzProblem2D(xa, ya, self.k, self.source, self.amplitude)

    def solve_pair(self, m: int):
        u1 = assemble_and_solve(self.problem(m, self.length))
        u2 = assemble_and_solve(self.problem(m, 2 * self.length))
        return u1, u2

    @property
    def region(self):
        return (0.0, self.length, 0.0, self.height)

    def error(self, m: int) -> float:
        u1, u2 = self.solve_pair(m)
        return restriction_error(u1, u2, self.region)


BAND = (0.2575, 0.4425)       # lattice rows 103..177 at h = 1/400
INCLUSION = (0.6, 0.175, 0.15, 0.05)   # centre x, centre y, semi-axes


def layered_wave_speed(x, y):
    """Background 1, a slow horizontal band (``c = 1/sqrt 2``) and a fast
    elliptic inclusion near the bottom (``c = sqrt 2``)."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    c = np.ones(np.broadcast(x, y).shape)
    lo, hi = BAND
    eps = 1e-9
    c = np.where((y >= lo - eps) & (y <= hi + eps), 1 / np.sqrt(2), c)
    x0, y0, ax, ay = INCLUSION
    inside = ((x - x0) / ax) ** 2 + ((y - y0) / ay) ** 2 <= 1 + eps
    return np.where(inside, np.sqrt(2), c)


@dataclass
class TensorExperiment:
    """Absorbing layers on all four edges of ``[0, 1]^2`` with variable ``c``.

    The reference is the inner square ``[0.1, 0.9]^2`` solved with its own
    layers; both fields are compared there.  Each edge gets a layer built from
    inclusion intervals of ``-c(t)^2 d_tt - k^2`` along that edge.  With
    ``normal=True`` the intervals of ``-d_tt - k^2 / c(t)^2`` are used instead;
    that is the operator the layer recursion actually sees once the equation
    is divided by ``c^2`` (both have the same inertia).
    """

    k: float = 120.0
    n_cells: int = 400
    source: tuple = (120 / 400, 280 / 400)
    amplitude: float = 1.0
    inner: tuple = (0.1, 0.9)
    margin: float = 0.05
    normal: bool = False
    wave_speed: Callable = layered_wave_speed
    prec: int | None = None

    @property
    def h(self) -> float:
        return 1.0 / self.n_cells

    @classmethod
    def quick(cls, **kw) -> "TensorExperiment":
        """Scaled-down variant (``h = 1/100``, ``k = 30``) keeping ``k h`` fixed."""
        kw.setdefault("k", 30.0)
        return cls(n_cells=100, **kw)

    def edge_operators(self, lo: float, hi: float):
        """Tangential operators on the four edges of ``[lo, hi]^2``: left, right, bottom, top."""
        h = self.h
        N = int(round((hi - lo) / h)) - 1
        length = (hi - lo)
        c = self.wave_speed
        return {
            "left": TangentialOperator.from_profile(length, N, lambda t: c(lo, t), lo),
            "right": TangentialOperator.from_profile(length, N, lambda t: c(hi, t), lo),
            "bottom": TangentialOperator.from_profile(length, N, lambda t: c(t, lo), lo),
            "top": TangentialOperator.from_profile(length, N, lambda t: c(t, hi), lo),
        }

    def edge_intervals(self, lo: float, hi: float, normal: bool | None = None):
        normal = self.normal if normal is None else normal
        return {e: spectral_intervals(op, self.k, self.margin, normal=normal)
                for e, op in self.edge_operators(lo, hi).items()}

    def expected_rate(self) -> float:
        """Slowest balanced rate over the four edges of the outer square."""
        return max(split_degrees(si.K, 2).rho for si in self.edge_intervals(0.0, 1.0).values())

    def lattice_rate(self) -> float:
        return max(_lattice_rate(si.K, self.h) for si in self.edge_intervals(0.0, 1.0).values())

    def problem(self, m: int, lo: float, hi: float) -> HelmholtzProblem2D:
        h = self.h
        layers = {e: layer_steps(si.K, m, h, self.prec)
                  for e, si in self.edge_intervals(lo, hi).items()}
        nsteps = int(round((hi - lo) / h))
        xa = build_axis(h, nsteps, lo, layers["left"], layers["right"])
        ya = build_axis(h, nsteps, lo, layers["bottom"], layers["top"])
        return HelmholtzProblem2D(xa, ya, self.k, self.source, self.amplitude, c=self.wave_speed)

    def solve_pair(self, m: int):
        u1 = assemble_and_solve(self.problem(m, 0.0, 1.0))
        u2 = assemble_and_solve(self.problem(m, *self.inner))
        return u1, u2

    @property
    def region(self):
        lo, hi = self.inner
        return (lo, hi, lo, hi)

    def error(self, m: int) -> float:
        u1, u2 = self.solve_pair(m)
        return restriction_error(u1, u2, self.region)
