"""Complex finite-difference absorbing layers for indefinite Helmholtz problems.

The pipeline runs ``IntervalPair`` -> Zolotarev roots -> rational interpolant
of the impedance ``z**-1/2`` (or its lattice version) -> continued-fraction
grid steps -> layers appended to a finite-difference grid.
"""

from .elliptic import Modulus, complete_K, jacobi_sn_dn
from .errors import (BreakdownError, ConsistencyError, DomainError, GridFormatError,
                     RootFindingError, SingularMatrixError, ZolopmlError)
from .helmholtz import (HelmholtzProblem2D, TangentialOperator, TensorExperiment,
                        WaveguideExperiment, assemble_and_solve, build_axis,
                        convergence_study, spectral_intervals)
from .interpolant import (ImpedanceKind, RationalInterpolant, build_interpolant,
                          impedance_eval, relative_error)
from .mpnum import Poly, poly_from_roots, poly_roots
from .pml_grid import MergedGrid, merge_grid, read_grid, write_grid
from .sfraction import GridSteps, eval_cf, euclid_steps, lanczos_steps, to_sfraction
from .zolotarev import IntervalPair, SplitPlan, rate, split_degrees, zolotarev_roots

__version__ = "0.1.0"

__all__ = [
    "Modulus", "complete_K", "jacobi_sn_dn",
    "BreakdownError", "ConsistencyError", "DomainError", "GridFormatError",
    "RootFindingError", "SingularMatrixError", "ZolopmlError",
    "HelmholtzProblem2D", "TangentialOperator", "TensorExperiment", "WaveguideExperiment",
    "assemble_and_solve", "build_axis", "convergence_study", "spectral_intervals",
    "ImpedanceKind", "RationalInterpolant", "build_interpolant", "impedance_eval",
    "relative_error",
    "Poly", "poly_from_roots", "poly_roots",
    "MergedGrid", "merge_grid", "read_grid", "write_grid",
    "GridSteps", "eval_cf", "euclid_steps", "lanczos_steps", "to_sfraction",
    "IntervalPair", "SplitPlan", "rate", "split_degrees", "zolotarev_roots",
]
