"""Numerical laboratory for matrix concentration bounds.

The package evaluates trace inequalities for Hermitian matrices, simulates
exchangeable pairs and kernel couplings, computes closed form tail and moment
bounds, and runs the 2-D Ising correlation estimation experiment that ties
them together.
"""

__version__ = "0.1.0"

from .hermitian import (
    DimensionError,
    EighConvergenceError,
    HermitianMatrix,
    SpectralDecomposition,
    SpectralDomainError,
    eigh,
    hermitian_dilation,
    induced_norm,
    matrix_function,
    psd_leq,
    schatten_norm,
)
from .lifted import LiftedOperator, lift_left, lift_right, unvec, vec

__all__ = [
    "DimensionError",
    "EighConvergenceError",
    "HermitianMatrix",
    "LiftedOperator",
    "SpectralDecomposition",
    "SpectralDomainError",
    "__version__",
    "eigh",
    "hermitian_dilation",
    "induced_norm",
    "lift_left",
    "lift_right",
    "matrix_function",
    "psd_leq",
    "schatten_norm",
    "unvec",
    "vec",
]
