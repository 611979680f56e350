"""
Dense complex linear algebra for the small matrices used by the model.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; the helpers here
only add validation and the conventions the rest of the package relies on
(eigenvalue ordering, Alice-leftmost tensor ordering, relative tolerances).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
import scipy.linalg

from .errors import DimensionMismatch, NotHermitian
from .tolerances import DEFAULT, Tolerances

ComplexMatrix = npt.NDArray[np.complex128]

MAX_DIM = 16

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (np.eye(2, dtype=complex), SIGMA_X, SIGMA_Y, SIGMA_Z)


def as_matrix(m, *, square: bool = True) -> ComplexMatrix:
    """Coerce ``m`` to a finite 2-D complex array, checking shape."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionMismatch(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    if max(arr.shape) > MAX_DIM:
        raise DimensionMismatch(f"dimension {max(arr.shape)} exceeds {MAX_DIM}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def fro(m) -> float:
    return float(np.linalg.norm(m))


def adjoint(m) -> ComplexMatrix:
    """Conjugate transpose."""
    return as_matrix(m, square=False).conj().T


def is_hermitian(m, tol: float = DEFAULT.hermiticity) -> bool:
    m = as_matrix(m)
    scale = max(fro(m), np.finfo(float).tiny)
    return fro(m - m.conj().T) <= tol * scale


@dataclass(frozen=True)
class EigenSystem:
    """Right/left eigenvectors of a square matrix.

    ``right`` holds eigenvectors as columns, ``left`` holds the dual rows,
    ``left @ right == I``. ``degenerate`` is set when the smallest eigenvalue
    gap relative to the Frobenius norm falls below the degeneracy tolerance;
    the vectors are still returned but biorthogonality is then meaningless.
    """

    values: npt.NDArray[np.complex128]
    right: ComplexMatrix
    left: ComplexMatrix
    degenerate: bool

    def right_vector(self, i: int) -> npt.NDArray[np.complex128]:
        return self.right[:, i]

    def left_vector(self, i: int) -> npt.NDArray[np.complex128]:
        return self.left[i, :]


def _min_gap(values) -> float:
    if len(values) < 2:
        return np.inf
    diffs = np.abs(values[:, None] - values[None, :])
    diffs[np.diag_indices(len(values))] = np.inf
    return float(diffs.min())


def eigensystem(m, tol: Tolerances = DEFAULT) -> EigenSystem:
    """Eigendecomposition with a fixed ordering (real part, then imaginary part).

    Examples
    --------
    >>> es = eigensystem(np.eye(2))
    >>> es.values.real.tolist(), es.degenerate
    ([1.0, 1.0], True)
    """
    m = as_matrix(m)
    values, right = np.linalg.eig(m)
    order = np.lexsort((values.imag, values.real))
    values = values[order]
    right = right[:, order]
    right = right / np.linalg.norm(right, axis=0)

    scale = max(fro(m), np.finfo(float).tiny)
    degenerate = _min_gap(values) < tol.degeneracy * scale
    if degenerate:
        left = np.linalg.pinv(right)
    else:
        left = np.linalg.inv(right)
    return EigenSystem(values=values, right=right, left=left, degenerate=bool(degenerate))


def expm(m) -> ComplexMatrix:
    """Matrix exponential via scaling and squaring with a Pade approximant.

    Works for defective matrices (no eigendecomposition is involved).
    """
    return scipy.linalg.expm(as_matrix(m))


def kron(a, b) -> ComplexMatrix:
    """Kronecker product with ``a`` as the slow (leftmost) factor."""
    return np.kron(as_matrix(a, square=False), as_matrix(b, square=False))


def partial_trace_A(m, dim_a: int, dim_b: int) -> ComplexMatrix:
    """Trace out the leftmost factor of an ``A (x) B`` operator."""
    m = as_matrix(m)
    if dim_a < 1 or dim_b < 1 or m.shape != (dim_a * dim_b, dim_a * dim_b):
        raise DimensionMismatch(
            f"matrix of shape {m.shape} is not ({dim_a}*{dim_b}) x ({dim_a}*{dim_b})"
        )
    return np.einsum("ijik->jk", m.reshape(dim_a, dim_b, dim_a, dim_b))


def trace_distance(a, b, tol: Tolerances = DEFAULT) -> float:
    """Half the trace norm of ``a - b`` for Hermitian ``a`` and ``b``."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    for name, x in (("a", a), ("b", b)):
        if not is_hermitian(x, tol.hermiticity):
            raise NotHermitian(f"argument {name} is not Hermitian")
    d = a - b
    d = 0.5 * (d + d.conj().T)
    return 0.5 * float(np.abs(np.linalg.eigvalsh(d)).sum())
