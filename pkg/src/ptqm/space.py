"""
Physical Hilbert space defined by a positive metric.

A :class:`PhysicalSpace` pairs the dimension with a Hermitian positive
definite metric ``theta``. Inner products, adjoints and admissibility of
observables are all taken relative to that metric; ``theta = I`` recovers
ordinary (Dirac) quantum mechanics.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from .errors import DimensionMismatch, InadmissibleObservable, ZeroState
from .linalg import ComplexMatrix, as_matrix, eigensystem, expm, fro
from .tolerances import DEFAULT, Tolerances

StateVector = npt.NDArray[np.complex128]


def as_state(psi, dim: int | None = None) -> StateVector:
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatch(f"state has {v.shape[0]} components, expected {dim}")
    if not np.all(np.isfinite(v)):
        raise ValueError("state has non-finite components")
    return v


@dataclass(frozen=True)
class PhysicalSpace:
    theta: ComplexMatrix
    tol: Tolerances = field(default=DEFAULT, repr=False)

    def __post_init__(self):
        theta = as_matrix(self.theta).copy()
        if fro(theta - theta.conj().T) > self.tol.equality * fro(theta):
            raise ValueError("metric is not Hermitian")
        theta = 0.5 * (theta + theta.conj().T)
        if np.linalg.eigvalsh(theta)[0] <= 0:
            raise ValueError("metric is not positive definite")
        theta.setflags(write=False)
        object.__setattr__(self, "theta", theta)

    @classmethod
    def dirac(cls, dim: int) -> PhysicalSpace:
        return cls(np.eye(dim, dtype=complex))

    @property
    def dimension(self) -> int:
        return self.theta.shape[0]

    @property
    def theta_inv(self) -> ComplexMatrix:
        w, v = np.linalg.eigh(self.theta)
        return (v / w) @ v.conj().T


def inner_product_f(a, b) -> complex:
    """Dirac product ``sum conj(a_i) b_i``."""
    a = as_state(a)
    b = as_state(b, a.shape[0])
    return complex(np.vdot(a, b))


def inner_product_s(space: PhysicalSpace, a, b) -> complex:
    """Metric product ``a^dagger theta b``."""
    a = as_state(a, space.dimension)
    b = as_state(b, space.dimension)
    return complex(np.vdot(a, space.theta @ b))


def s_norm2(space: PhysicalSpace, psi) -> float:
    return inner_product_s(space, psi, psi).real


def s_adjoint(space: PhysicalSpace, op) -> ComplexMatrix:
    """``theta^-1 op^dagger theta``; equals ``op`` exactly for admissible observables."""
    op = _op_for(space, op)
    return space.theta_inv @ op.conj().T @ space.theta


def _op_for(space: PhysicalSpace, op) -> ComplexMatrix:
    op = as_matrix(op)
    if op.shape[0] != space.dimension:
        raise DimensionMismatch(f"operator is {op.shape}, space has dimension {space.dimension}")
    return op


def admissibility_residual(space: PhysicalSpace, lam) -> float:
    lam = _op_for(space, lam)
    denom = fro(lam) * fro(space.theta)
    if denom == 0:
        return 0.0
    return fro(lam.conj().T @ space.theta - space.theta @ lam) / denom


def is_admissible_observable(space: PhysicalSpace, lam) -> bool:
    """True iff ``lam^dagger theta = theta lam`` to the property tolerance."""
    return admissibility_residual(space, lam) <= space.tol.property


def expectation(space: PhysicalSpace, lam, psi) -> float:
    """``<psi|theta lam|psi> / <psi|theta|psi>``; no pre-normalization required."""
    if not is_admissible_observable(space, lam):
        raise InadmissibleObservable("observable is not self-adjoint in this metric")
    psi = as_state(psi, space.dimension)
    norm2 = s_norm2(space, psi)
    if norm2 <= 0:
        raise ZeroState("cannot take an expectation in the zero state")
    return complex(np.vdot(psi, space.theta @ (as_matrix(lam) @ psi))).real / norm2


def evolve(space: PhysicalSpace, h, psi, t: float) -> StateVector:
    """``expm(-i h t) psi``, refusing generators that would not be unitary here."""
    if not is_admissible_observable(space, h):
        raise InadmissibleObservable(
            "generator fails H^dagger theta = theta H; evolution would not be unitary in this space"
        )
    psi = as_state(psi, space.dimension)
    return expm(-1j * t * as_matrix(h)) @ psi


def eigenstates(space: PhysicalSpace, h) -> tuple[npt.NDArray[np.complex128], ComplexMatrix]:
    """Eigenvalues and eigenvectors (columns) of ``h``, each vector S-normalized."""
    es = eigensystem(_op_for(space, h), space.tol)
    vecs = es.right.copy()
    for i in range(vecs.shape[1]):
        vecs[:, i] /= np.sqrt(s_norm2(space, vecs[:, i]))
    return es.values, vecs
