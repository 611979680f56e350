"""
The PT-symmetric two-level model and its family of physical metrics.

The Hamiltonian is ``s * [[i sin(alpha), 1], [1, -i sin(alpha)]]``. It is
not Hermitian for ``sin(alpha) != 0`` but its spectrum ``+-s cos(alpha)`` is
real, and it is self-adjoint in any inner product ``<a|Theta|b>`` whose
metric satisfies ``H^dagger Theta = Theta H``.  For the 2x2 model every such
positive metric has the closed form returned by :func:`build_metric`.

Metric family parameter map
---------------------------
:func:`solve_metric_family` builds rank-1 rays ``L_i^dagger L_i`` from the
unit-norm left eigenvectors of ``H``.  For the 2x2 model with ``s > 0`` the
rays are ``(1/2) [[1, +-cos - i sin], [+-cos + i sin, 1]]`` (lower sign for
the ray of eigenvalue ``-s cos(alpha)``), so a positive combination
``c_minus * ray_minus + c_plus * ray_plus`` equals ``build_metric`` with

    a^2 = (c_minus + c_plus) / 2,
    u   = cos(alpha) * (c_plus - c_minus) / (c_plus + c_minus),

and conversely ``c_plus, c_minus = a^2 (1 +- u / cos(alpha))``.  Positivity
of both coefficients is exactly ``|u| < |cos(alpha)|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .errors import (
    ComplexSpectrum,
    DegenerateSpectrum,
    DimensionMismatch,
    ExceptionalPoint,
    InvalidMetricParams,
)
from .linalg import SIGMA_X, ComplexMatrix, as_matrix, eigensystem, fro
from .tolerances import DEFAULT, Tolerances


@dataclass(frozen=True)
class ModelParams:
    """Coupling scale ``s`` and non-Hermiticity angle ``alpha`` (radians)."""

    s: float
    alpha: float

    def __post_init__(self):
        if not (math.isfinite(self.s) and math.isfinite(self.alpha)):
            raise ValueError("s and alpha must be finite")
        if self.s == 0:
            raise ValueError("s must be nonzero")

    @property
    def is_physical(self) -> bool:
        return abs(self.alpha) < math.pi / 2 and not self.at_exceptional_point()

    def at_exceptional_point(self, tol: Tolerances = DEFAULT) -> bool:
        return abs(math.cos(self.alpha)) <= tol.degeneracy


@dataclass(frozen=True)
class MetricParams:
    """Scale ``a`` and asymmetry ``u`` selecting one metric of the family."""

    a: float
    u: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.u)):
            raise ValueError("a and u must be finite")

    def is_valid_for(self, alpha: float) -> bool:
        return self.a != 0 and abs(self.u) < abs(math.cos(alpha))


def build_hamiltonian(p: ModelParams) -> ComplexMatrix:
    """
    Examples
    --------
    >>> build_hamiltonian(ModelParams(1.0, 0.0)).real.tolist()
    [[0.0, 1.0], [1.0, 0.0]]
    """
    sa = math.sin(p.alpha)
    return p.s * np.array([[1j * sa, 1.0], [1.0, -1j * sa]], dtype=complex)


def hamiltonian_eigenvectors(p: ModelParams) -> tuple[npt.NDArray, npt.NDArray]:
    """Closed-form Dirac-normalized eigenvectors ``(v_minus, v_plus)``.

    ``v_plus`` belongs to ``+|s| cos(alpha)`` for ``s > 0``; for ``s < 0`` the
    labels swap. Valid at the exceptional point, where both coincide.
    """
    c, sa = math.cos(p.alpha), math.sin(p.alpha)
    sign = 1.0 if p.s > 0 else -1.0
    v_plus = np.array([1.0, sign * c - 1j * sa]) / math.sqrt(2)
    v_minus = np.array([1.0, -sign * c - 1j * sa]) / math.sqrt(2)
    return v_minus, v_plus


def check_pt_symmetry(h, tol: Tolerances = DEFAULT) -> bool:
    """True iff ``P T`` commutes with ``h`` (``P = sigma_x``, ``T`` = conjugation)."""
    h = as_matrix(h)
    if h.shape != (2, 2):
        raise DimensionMismatch("PT check is defined for 2x2 matrices")
    scale = max(fro(h), np.finfo(float).tiny)
    return fro(SIGMA_X @ h.conj() @ SIGMA_X - h) <= tol.equality * scale


def metric_matrix(alpha: float, a: float, u: float) -> ComplexMatrix:
    """The closed-form metric without any validity check (used by diagnostics)."""
    sa = math.sin(alpha)
    return a * a * np.array([[1.0, u - 1j * sa], [u + 1j * sa, 1.0]], dtype=complex)


def build_metric(p: ModelParams, m: MetricParams, tol: Tolerances = DEFAULT) -> ComplexMatrix:
    """Positive-definite metric for ``H(p)`` selected by ``(a, u)``.

    Raises
    ------
    ExceptionalPoint
        ``|cos(alpha)|`` is within the degeneracy tolerance of zero.
    InvalidMetricParams
        ``|u| >= |cos(alpha)|`` or ``a == 0``.
    """
    if p.at_exceptional_point(tol):
        raise ExceptionalPoint(f"no metric exists at alpha={p.alpha!r} (cos(alpha) ~ 0)")
    if m.a == 0:
        raise InvalidMetricParams("scale a must be nonzero")
    if abs(m.u) >= abs(math.cos(p.alpha)):
        raise InvalidMetricParams(
            f"|u|={abs(m.u)!r} must be below |cos(alpha)|={abs(math.cos(p.alpha))!r}"
        )
    return metric_matrix(p.alpha, m.a, m.u)


def metric_eigenvalues(alpha: float, a: float, u: float) -> tuple[float, float]:
    """Analytic eigenvalues ``a^2 (1 -+ sqrt(u^2 + sin^2 alpha))``."""
    r = math.hypot(u, math.sin(alpha))
    return a * a * (1.0 - r), a * a * (1.0 + r)


def quasi_hermiticity_residual(h, theta) -> float:
    """``||H^dagger Theta - Theta H||_F / (||H||_F ||Theta||_F)``; zero iff Theta intertwines."""
    h = as_matrix(h)
    theta = as_matrix(theta)
    if h.shape != theta.shape:
        raise DimensionMismatch(f"shapes differ: {h.shape} vs {theta.shape}")
    denom = fro(h) * fro(theta)
    if denom == 0:
        return 0.0
    return fro(h.conj().T @ theta - theta @ h) / denom


@dataclass(frozen=True)
class MetricFamily:
    """Positive cone spanned by rank-1 rays ``L_i^dagger L_i``.

    Every combination with strictly positive coefficients is a valid metric
    for the Hamiltonian the family was solved from.
    """

    rays: tuple[ComplexMatrix, ...]
    eigenvalues: npt.NDArray[np.float64]

    @property
    def dimension(self) -> int:
        return self.rays[0].shape[0]

    def combine(self, coefficients) -> ComplexMatrix:
        c = np.asarray(coefficients, dtype=float)
        if c.shape != (len(self.rays),):
            raise DimensionMismatch(f"need {len(self.rays)} coefficients, got {c.shape}")
        return np.einsum("i,ijk->jk", c, np.array(self.rays))

    def fit_coefficients(self, theta) -> tuple[npt.NDArray[np.float64], float]:
        """Least-squares real coefficients reproducing ``theta``.

        Returns the coefficients and the relative Frobenius residual of the fit;
        a residual near zero means ``theta`` lies in the span of the rays.
        """
        theta = as_matrix(theta)
        basis = np.array([r.ravel() for r in self.rays]).T
        design = np.vstack([basis.real, basis.imag])
        target = np.concatenate([theta.ravel().real, theta.ravel().imag])
        c, *_ = np.linalg.lstsq(design, target, rcond=None)
        resid = fro(self.combine(c) - theta) / max(fro(theta), np.finfo(float).tiny)
        return c, resid


def solve_metric_family(h, tol: Tolerances = DEFAULT) -> MetricFamily:
    """All positive metrics of a diagonalizable ``h`` with real simple spectrum."""
    h = as_matrix(h)
    es = eigensystem(h, tol)
    if es.degenerate:
        raise DegenerateSpectrum("eigenvalues coalesce; no metric family (exceptional point)")
    scale = max(fro(h), np.finfo(float).tiny)
    if np.any(np.abs(es.values.imag) > tol.property * scale):
        raise ComplexSpectrum(f"nonreal eigenvalues {es.values}")
    rays = []
    for i in range(len(es.values)):
        row = es.left_vector(i)
        row = row / np.linalg.norm(row)
        rays.append(np.outer(row.conj(), row))
    return MetricFamily(rays=tuple(rays), eigenvalues=es.values.real.copy())


def metric_params_from_theta(theta) -> tuple[float, float]:
    """Read ``(a^2, u)`` off a 2x2 metric of the closed form."""
    theta = as_matrix(theta)
    a2 = float(theta[0, 0].real)
    return a2, float(theta[0, 1].real) / a2


def family_coefficients(p: ModelParams, m: MetricParams) -> npt.NDArray[np.float64]:
    """Ray coefficients (ordered like the family's eigenvalues) giving ``build_metric(p, m)``."""
    c = math.cos(p.alpha)
    ratio = m.u / c
    a2 = m.a * m.a
    lo_hi = (a2 * (1.0 - ratio), a2 * (1.0 + ratio))
    # eigenvalue order is ascending; with s < 0 the "+cos" ray belongs to the lower one
    if p.s * c < 0:
        lo_hi = lo_hi[::-1]
    return np.array(lo_hi)


def _require_cpt_domain(p: ModelParams, tol: Tolerances) -> float:
    c = math.cos(p.alpha)
    if c <= tol.degeneracy:
        raise ExceptionalPoint(f"CPT fixing needs cos(alpha) > 0, got {c!r}")
    return c


def cpt_metric(p: ModelParams, tol: Tolerances = DEFAULT) -> ComplexMatrix:
    """Metric fixed by the charge requirement: ``u = 0``, ``a^2 = 1/cos(alpha)``."""
    c = _require_cpt_domain(p, tol)
    return metric_matrix(p.alpha, 1.0 / math.sqrt(c), 0.0)


def charge_operator(p: ModelParams, tol: Tolerances = DEFAULT) -> ComplexMatrix:
    """``C = H / (s cos(alpha))``: an involution commuting with H, with ``sigma_x C`` the CPT metric."""
    c = _require_cpt_domain(p, tol)
    return build_hamiltonian(p) / (p.s * c)


@dataclass(frozen=True)
class EPDiagnostics:
    min_metric_eigenvalue: float
    metric_condition_number: float
    eigenvector_overlap: float
    degenerate_spectrum: bool


def ep_diagnostics(p: ModelParams, m: MetricParams, tol: Tolerances = DEFAULT) -> EPDiagnostics:
    """Distance-to-exceptional-point indicators; defined at the EP itself.

    The metric is evaluated from its closed form without validity checks, so
    the minimum eigenvalue may be zero or negative. The overlap uses the
    closed-form Dirac-normalized eigenvectors, equal to ``|sin(alpha)|``.
    """
    evs = np.linalg.eigvalsh(metric_matrix(p.alpha, m.a, m.u))
    lo, hi = float(evs[0]), float(evs[-1])
    cond = hi / lo if lo > 0 else math.inf
    v_minus, v_plus = hamiltonian_eigenvectors(p)
    overlap = float(abs(np.vdot(v_plus, v_minus)))
    degenerate = eigensystem(build_hamiltonian(p), tol).degenerate
    return EPDiagnostics(lo, cond, overlap, degenerate)
