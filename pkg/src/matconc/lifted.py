"""Lifted multiplication operators: self-adjoint linear maps on matrix space.

A linear map on the d x d matrices is represented by its d^2 x d^2 matrix in
the vectorized basis.  Vectorization stacks rows (C order), under which left
multiplication by A lifts to ``kron(A, I)`` and right multiplication by B to
``kron(I, B.T)``.  The right-multiplication lift depends on this convention,
so it is fixed here once and used everywhere.
"""

from __future__ import annotations

import numpy as np

from .hermitian import DimensionError, as_hermitian_array

LIFT_ACTION_RTOL = 1e-10


def vec(m) -> np.ndarray:
    """Flatten a matrix by stacking rows."""
    return np.asarray(m, dtype=np.complex128).reshape(-1)


def unvec(v, dim: int) -> np.ndarray:
    """Inverse of :func:`vec` for square matrices of the given dimension."""
    v = np.asarray(v, dtype=np.complex128)
    if v.size != dim * dim:
        raise DimensionError(f"vector of length {v.size} is not {dim}x{dim}")
    return v.reshape(dim, dim)


class LiftedOperator:
    """Hermitian d^2 x d^2 representation of a self-adjoint map on matrices."""

    __slots__ = ("dim", "matrix")

    def __init__(self, dim: int, matrix):
        m = as_hermitian_array(matrix)
        if m.shape[0] != dim * dim:
            raise DimensionError(
                f"lift of a dim-{dim} space must be {dim * dim}x{dim * dim}, "
                f"got {m.shape}"
            )
        self.dim = dim
        self.matrix = m

    def apply(self, m) -> np.ndarray:
        """Apply the lifted map to a d x d matrix."""
        m = np.asarray(m, dtype=np.complex128)
        if m.shape != (self.dim, self.dim):
            raise DimensionError(f"operand shape {m.shape} != ({self.dim}, {self.dim})")
        return unvec(self.matrix @ vec(m), self.dim)

    def __add__(self, other: "LiftedOperator") -> "LiftedOperator":
        return LiftedOperator(self.dim, self.matrix + other.matrix)

    def __sub__(self, other: "LiftedOperator") -> "LiftedOperator":
        return LiftedOperator(self.dim, self.matrix - other.matrix)

    def __repr__(self):
        return f"LiftedOperator(dim={self.dim})"


def lift_left(a) -> LiftedOperator:
    """Lift of M -> A @ M for Hermitian A."""
    am = as_hermitian_array(a)
    d = am.shape[0]
    return LiftedOperator(d, np.kron(am, np.eye(d)))


def lift_right(b) -> LiftedOperator:
    """Lift of M -> M @ B for Hermitian B."""
    bm = as_hermitian_array(b)
    d = bm.shape[0]
    return LiftedOperator(d, np.kron(np.eye(d), bm.T))


def frobenius_inner(m, n) -> complex:
    """Trace inner product <M, N> = tr[M* N]."""
    return complex(np.vdot(np.asarray(m, dtype=np.complex128), np.asarray(n)))


__all__ = [
    "LiftedOperator",
    "frobenius_inner",
    "lift_left",
    "lift_right",
    "unvec",
    "vec",
]
