"""Dense Hermitian linear algebra on small matrices.

Everything downstream (trace inequalities, conditional variance estimates,
tail bounds) consumes the primitives defined here: a cyclic Jacobi
eigensolver, standard matrix functions, Schatten and induced norms, the
positive semidefinite order, and the Hermitian dilation.

The eigensolver deliberately trades asymptotic speed for robustness and
determinism; every matrix in this project has dimension well under 100.  All
stack-shaped helpers accept arrays of shape ``(..., d, d)`` so Monte Carlo
campaigns can amortize the Python-level rotation loop across trials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

HERMITICITY_RTOL = 1e-12
JACOBI_MAX_SWEEPS = 100
JACOBI_TOL_FACTOR = 1e-13


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


class EighConvergenceError(RuntimeError):
    """Jacobi sweeps hit the iteration cap before annihilating the off-diagonal."""

    def __init__(self, dim: int, residual: float):
        self.dim = dim
        self.residual = residual
        super().__init__(
            f"eigensolver did not converge for dimension {dim}: "
            f"off-diagonal Frobenius residual {residual:.3e} after "
            f"{JACOBI_MAX_SWEEPS} sweeps"
        )


class SpectralDomainError(ValueError):
    """An eigenvalue falls outside the domain of the scalar function."""


class HermitianMatrix:
    """A d x d complex Hermitian matrix, the universal value type.

    Construction symmetrizes the input through (M + M*)/2 when the deviation
    from the conjugate transpose is within ``1e-12 * (1 + max |entry|)`` and
    rejects it otherwise.  The stored array is frozen.
    """

    __slots__ = ("mat",)

    def __init__(self, entries):
        if isinstance(entries, HermitianMatrix):
            self.mat = entries.mat
            return
        m = np.asarray(entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {m.shape}")
        if m.shape[0] < 1:
            raise DimensionError("dimension must be at least 1")
        if not np.all(np.isfinite(m.view(np.float64))):
            raise ValueError("matrix entries must be finite")
        dev = float(np.max(np.abs(m - m.conj().T)))
        eta = HERMITICITY_RTOL * (1.0 + float(np.max(np.abs(m))))
        if dev > eta:
            raise ValueError(
                f"matrix is not Hermitian: max deviation {dev:.3e} exceeds "
                f"tolerance {eta:.3e}"
            )
        sym = (m + m.conj().T) / 2.0
        sym.setflags(write=False)
        self.mat = sym

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.mat, dtype=dtype)

    def __add__(self, other):
        return HermitianMatrix(self.mat + as_hermitian_array(other))

    def __sub__(self, other):
        return HermitianMatrix(self.mat - as_hermitian_array(other))

    def __neg__(self):
        return HermitianMatrix(-self.mat)

    def __rmul__(self, scalar):
        if not np.isrealobj(np.asarray(scalar)):
            raise ValueError("only real scalars preserve hermiticity")
        return HermitianMatrix(float(scalar) * self.mat)

    __mul__ = __rmul__

    def __repr__(self):
        return f"HermitianMatrix(dim={self.dim})"


def as_hermitian_array(a) -> np.ndarray:
    """Coerce a HermitianMatrix or array-like into a validated ndarray."""
    if isinstance(a, HermitianMatrix):
        return a.mat
    return HermitianMatrix(a).mat


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues of a Hermitian matrix (ascending) and a unitary eigenbasis."""

    eigenvalues: np.ndarray
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        u = self.basis
        return (u * self.eigenvalues) @ u.conj().T

    def validate(self, original) -> None:
        """Assert the type invariants against the decomposed matrix."""
        d = self.dim
        u = self.basis
        unit_dev = float(np.max(np.abs(u @ u.conj().T - np.eye(d))))
        if unit_dev > 1e-10 * d:
            raise AssertionError(f"basis not unitary: deviation {unit_dev:.3e}")
        a = as_hermitian_array(original)
        scale = 1.0 + (float(np.max(np.abs(self.eigenvalues))) if d else 0.0)
        rec_dev = float(np.max(np.abs(self.reconstruct() - a)))
        if rec_dev > 1e-9 * scale:
            raise AssertionError(f"reconstruction residual {rec_dev:.3e}")
        if np.any(np.diff(self.eigenvalues) < 0):
            raise AssertionError("eigenvalues not ascending")


def eigh_stack(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a stack of Hermitian matrices by cyclic Jacobi rotations.

    Parameters
    ----------
    a:
        Array of shape ``(..., d, d)``.  Hermiticity is assumed, not checked;
        use :class:`HermitianMatrix` at API boundaries.

    Returns
    -------
    ``(eigenvalues, basis)`` with shapes ``(..., d)`` and ``(..., d, d)``;
    eigenvalues ascending, basis columns the matching eigenvectors.

    The pivot order is fixed, so identical input bytes give identical output
    bytes.  Raises :class:`EighConvergenceError` after 100 sweeps.
    """
    a = np.array(a, dtype=np.complex128)
    lead = a.shape[:-2]
    d = a.shape[-1]
    if a.shape[-2] != d:
        raise DimensionError(f"expected square trailing dims, got {a.shape}")
    a = a.reshape((-1, d, d))
    nb = a.shape[0]
    u = np.broadcast_to(np.eye(d, dtype=np.complex128), a.shape).copy()
    if d == 1 or nb == 0:
        vals = a[..., 0].real.copy() if d == 1 else np.empty((0, d))
        return vals.reshape(lead + (d,)), u.reshape(lead + (d, d))

    tol = JACOBI_TOL_FACTOR * np.sqrt((np.abs(a) ** 2).sum(axis=(1, 2)))
    offmask = ~np.eye(d, dtype=bool)
    pairs = [(p, q) for p in range(d - 1) for q in range(p + 1, d)]

    converged = False
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.sqrt((np.abs(a[:, offmask]) ** 2).sum(axis=1))
        active = off > tol
        if not active.any():
            converged = True
            break
        for p, q in pairs:
            gam = a[:, p, q]
            g = np.abs(gam)
            rot = active & (g > 0.0)
            if not rot.any():
                continue
            gsafe = np.where(rot, g, 1.0)
            phase = np.where(rot, gam / gsafe, 1.0)
            tau = (a[:, q, q].real - a[:, p, p].real) / (2.0 * gsafe)
            # smaller-magnitude root of t^2 - 2*tau*t - 1 = 0; hypot avoids
            # overflow when the diagonal gap dwarfs the pivot entry
            t = np.where(
                tau == 0.0, 1.0, -np.sign(tau) / (np.abs(tau) + np.hypot(1.0, tau))
            )
            c = np.where(rot, 1.0 / np.sqrt(1.0 + t * t), 1.0)[:, None]
            s = np.where(rot, t / np.sqrt(1.0 + t * t), 0.0)[:, None]
            ph = np.where(rot, phase, 1.0)[:, None]

            ap = a[:, :, p].copy()
            aq = a[:, :, q].copy()
            a[:, :, p] = c * ph * ap + s * aq
            a[:, :, q] = -s * ph * ap + c * aq
            rp = a[:, p, :].copy()
            rq = a[:, q, :].copy()
            a[:, p, :] = c * np.conj(ph) * rp + s * rq
            a[:, q, :] = -s * np.conj(ph) * rp + c * rq
            # the targeted entry is zero in exact arithmetic: pin it
            a[:, p, q] = np.where(rot, 0.0, a[:, p, q])
            a[:, q, p] = np.where(rot, 0.0, a[:, q, p])
            a[:, p, p] = np.where(rot, a[:, p, p].real, a[:, p, p])
            a[:, q, q] = np.where(rot, a[:, q, q].real, a[:, q, q])

            up = u[:, :, p].copy()
            uq = u[:, :, q].copy()
            u[:, :, p] = c * ph * up + s * uq
            u[:, :, q] = -s * ph * up + c * uq
    if not converged:
        off = np.sqrt((np.abs(a[:, offmask]) ** 2).sum(axis=1))
        raise EighConvergenceError(d, float(np.max(off)))

    vals = np.diagonal(a, axis1=1, axis2=2).real.copy()
    order = np.argsort(vals, axis=1, kind="stable")
    vals = np.take_along_axis(vals, order, axis=1)
    u = np.take_along_axis(u, order[:, None, :], axis=2)
    return vals.reshape(lead + (d,)), u.reshape(lead + (d, d))


def eigh(a) -> SpectralDecomposition:
    """Spectral decomposition of one Hermitian matrix, eigenvalues ascending."""
    m = as_hermitian_array(a)
    vals, vecs = eigh_stack(m[None])
    vals = vals[0]
    vecs = vecs[0]
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return SpectralDecomposition(eigenvalues=vals, basis=vecs)


def eigvalsh_stack(a: np.ndarray) -> np.ndarray:
    """Eigenvalues only, for a stack of Hermitian matrices."""
    return eigh_stack(a)[0]


def matrix_function_stack(
    a: np.ndarray, f: Callable[[np.ndarray], np.ndarray]
) -> np.ndarray:
    """Apply a scalar function to a stack of Hermitian matrices spectrally."""
    vals, vecs = eigh_stack(a)
    fvals = np.asarray(f(vals), dtype=np.float64)
    return np.einsum("...ij,...j,...kj->...ik", vecs, fvals, vecs.conj())


def matrix_function(
    a,
    f: Callable[[np.ndarray], np.ndarray],
    domain: tuple[float, float] | None = None,
) -> HermitianMatrix:
    """Standard matrix function: f applied to the eigenvalues in an eigenbasis.

    ``domain`` optionally declares the interval on which ``f`` is defined;
    eigenvalues outside it raise :class:`SpectralDomainError` naming the
    offender.  Non-finite values of ``f`` on an eigenvalue are also rejected.
    """
    m = as_hermitian_array(a)
    dec = eigh(m)
    vals = dec.eigenvalues
    if domain is not None:
        lo, hi = domain
        bad = (vals < lo) | (vals > hi)
        if bad.any():
            off = float(vals[bad][0])
            raise SpectralDomainError(
                f"eigenvalue {off!r} outside function domain [{lo}, {hi}]"
            )
    with np.errstate(all="ignore"):
        fvals = np.asarray(f(vals), dtype=np.float64)
    if not np.all(np.isfinite(fvals)):
        off = float(vals[~np.isfinite(fvals)][0])
        raise SpectralDomainError(f"function not finite at eigenvalue {off!r}")
    out = (dec.basis * fvals) @ dec.basis.conj().T
    return HermitianMatrix(out)


@dataclass(frozen=True)
class PsdComparison:
    """Outcome of a semidefinite-order test A is-below B, with a witness."""

    holds: bool
    lambda_min: float
    witness: np.ndarray
    slack: float

    def __bool__(self) -> bool:
        return self.holds


def psd_leq(a, b, tol: float = 1e-8) -> PsdComparison:
    """Test A <= B in the positive semidefinite order.

    Returns ``holds`` true iff ``lambda_min(B - A) >= -tol * (1 + ||A|| + ||B||)``
    together with the minimal eigenpair of ``B - A`` as a witness.
    """
    am = as_hermitian_array(a)
    bm = as_hermitian_array(b)
    if am.shape != bm.shape:
        raise DimensionError(f"dimension mismatch: {am.shape} vs {bm.shape}")
    dec = eigh(HermitianMatrix(bm - am))
    lam_min = float(dec.eigenvalues[0])
    norm_a = float(np.max(np.abs(eigvalsh_stack(am[None])[0])))
    norm_b = float(np.max(np.abs(eigvalsh_stack(bm[None])[0])))
    slack = tol * (1.0 + norm_a + norm_b)
    return PsdComparison(
        holds=lam_min >= -slack,
        lambda_min=lam_min,
        witness=dec.basis[:, 0].copy(),
        slack=slack,
    )


def singular_values(b) -> np.ndarray:
    """Singular values (descending) via the spectrum of the Hermitian dilation."""
    m = _as_general(b)
    d1, d2 = m.shape
    dil = hermitian_dilation(m)
    vals = eigh(dil).eigenvalues
    return vals[::-1][: min(d1, d2)].copy()


def schatten_norm(b, p) -> float:
    """Schatten p-norm: the l_p norm of the singular value vector.

    ``p`` must satisfy ``p >= 1``; ``p = inf`` gives the spectral norm.
    """
    if p != np.inf and not p >= 1:
        raise ValueError(f"Schatten norm requires p >= 1 or p = inf, got {p}")
    sv = singular_values(b)
    if p == np.inf:
        return float(sv[0]) if sv.size else 0.0
    # guard 0**p warnings for fractional p on exactly-zero singular values
    return float(np.sum(sv**float(p)) ** (1.0 / p))


def induced_norm(b, p) -> float:
    """Matrix norm induced by the l_p vector norm, for p in {1, inf}.

    p=1 is the maximum l_1 norm of a column; p=inf the maximum l_1 norm of
    a row.
    """
    m = _as_general(b)
    if p == 1:
        return float(np.max(np.abs(m).sum(axis=0)))
    if p == np.inf:
        return float(np.max(np.abs(m).sum(axis=1)))
    raise ValueError(f"induced norm implemented for p in {{1, inf}}, got {p}")


def hermitian_dilation(b) -> HermitianMatrix:
    """Embed a d1 x d2 matrix B as [[0, B], [B*, 0]], preserving ||B||."""
    m = _as_general(b)
    d1, d2 = m.shape
    out = np.zeros((d1 + d2, d1 + d2), dtype=np.complex128)
    out[:d1, d1:] = m
    out[d1:, :d1] = m.conj().T
    return HermitianMatrix(out)


def _as_general(b) -> np.ndarray:
    if isinstance(b, HermitianMatrix):
        return b.mat
    m = np.asarray(b, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {m.shape}")
    return m


def random_hermitian_stack(
    rng: np.random.Generator, count: int, dim: int, scale: float = 1.0
) -> np.ndarray:
    """Stack of Hermitian matrices with symmetrized iid standard normal entries."""
    g = rng.standard_normal((count, dim, dim)) + 1j * rng.standard_normal(
        (count, dim, dim)
    )
    return scale * (g + np.conj(np.swapaxes(g, -1, -2))) / 2.0


def trace_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Real trace of X @ Y for stacks of Hermitian matrices."""
    return np.einsum("...ij,...ji->...", x, y).real
