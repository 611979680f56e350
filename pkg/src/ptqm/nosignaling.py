"""
Alice-Bob no-signaling experiment on a shared entangled pair.

Alice holds the PT-symmetric qubit with generator ``H``; Bob holds an
ordinary qubit. The composite generator is ``H (x) I`` and the composite
metric is ``Theta (x) I``. Bob's marginal is computed two ways:

* corrected: bras are pre-multiplied by the shared metric,
  ``rho_B = Tr_A[(Theta (x) I) |psi><psi|] / <psi|Theta (x) I|psi>``;
* naive: the same computation with the metric replaced by the identity.

Only the corrected marginal is invariant under Alice's local actions. The
naive path lives here and nowhere else.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import DimensionMismatch, InadmissibleProjector, ZeroState
from .linalg import ComplexMatrix, as_matrix, expm, fro, kron, partial_trace_A, trace_distance
from .model import MetricParams, ModelParams, build_hamiltonian, build_metric, cpt_metric
from .space import PhysicalSpace, StateVector, as_state
from .tolerances import DEFAULT, Tolerances

Mode = Literal["corrected", "naive"]
Ensemble = list[tuple[float, StateVector]]

_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class CompositeSystem:
    h: ComplexMatrix
    theta: ComplexMatrix
    h_tot: ComplexMatrix
    theta_tilde: ComplexMatrix
    alice_space: PhysicalSpace
    dims: tuple[int, int] = (2, 2)

    @classmethod
    def from_operators(cls, h, theta) -> CompositeSystem:
        h = as_matrix(h)
        space = PhysicalSpace(theta)
        if h.shape != space.theta.shape:
            raise DimensionMismatch("generator and metric dimensions differ")
        dim_b = 2
        eye_b = np.eye(dim_b, dtype=complex)
        return cls(
            h=h,
            theta=space.theta,
            h_tot=kron(h, eye_b),
            theta_tilde=kron(space.theta, eye_b),
            alice_space=space,
            dims=(h.shape[0], dim_b),
        )


def build_composite(p: ModelParams, m: MetricParams | None = None) -> CompositeSystem:
    """Composite system for ``H(p)`` with metric ``(a, u)``, or the CPT metric when ``m`` is None."""
    theta = cpt_metric(p) if m is None else build_metric(p, m)
    return CompositeSystem.from_operators(build_hamiltonian(p), theta)


def bell_state() -> StateVector:
    """``(|00> + |11>)/sqrt(2)`` with Alice's qubit leftmost."""
    return np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


def _density(psi: StateVector) -> ComplexMatrix:
    return np.outer(psi, psi.conj())


def bob_reduced_corrected(sys: CompositeSystem, psi) -> ComplexMatrix:
    psi = as_state(psi, sys.h_tot.shape[0])
    weighted = sys.theta_tilde @ _density(psi)
    norm = np.trace(weighted).real
    if norm <= 0:
        raise ZeroState("state has zero metric norm")
    return partial_trace_A(weighted, *sys.dims) / norm


def bob_reduced_naive(psi, dims: tuple[int, int] = (2, 2)) -> ComplexMatrix:
    """Dirac-trace marginal ``Tr_A |psi><psi| / <psi|psi>``, metric ignored."""
    psi = as_state(psi, dims[0] * dims[1])
    norm = np.vdot(psi, psi).real
    if norm <= 0:
        raise ZeroState("zero state has no marginal")
    return partial_trace_A(_density(psi), *dims) / norm


def bob_expectation(sys: CompositeSystem, psi, obs_b) -> float:
    """``<psi|Theta~ (I (x) O_B)|psi> / <psi|Theta~|psi>`` computed directly on the pair."""
    psi = as_state(psi, sys.h_tot.shape[0])
    full = kron(np.eye(sys.dims[0]), as_matrix(obs_b))
    num = np.vdot(psi, sys.theta_tilde @ full @ psi)
    return (num / np.vdot(psi, sys.theta_tilde @ psi)).real


def theta_projectors(theta, basis) -> tuple[ComplexMatrix, ...]:
    """Rank-1 projectors ``|v><v|Theta / <v|Theta|v>`` for each column of ``basis``.

    The columns must be mutually Theta-orthogonal for the set to be complete.
    """
    theta = as_matrix(theta)
    basis = np.asarray(basis, dtype=complex)
    out = []
    for v in basis.T:
        out.append(np.outer(v, v.conj() @ theta) / np.vdot(v, theta @ v).real)
    return tuple(out)


def random_theta_basis(theta, rng: np.random.Generator) -> ComplexMatrix:
    """Random Theta-orthonormal basis ``Theta^{-1/2} U`` with Haar-ish unitary ``U``."""
    theta = as_matrix(theta)
    n = theta.shape[0]
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    w, v = np.linalg.eigh(theta)
    inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
    return inv_sqrt @ q


@dataclass(frozen=True)
class AliceAction:
    """A local operation by Alice: nothing, evolution for time ``t``, or an unrevealed measurement."""

    kind: Literal["none", "evolve", "project"]
    t: float = 0.0
    projectors: tuple[ComplexMatrix, ...] = field(default=(), repr=False)

    @classmethod
    def none(cls) -> AliceAction:
        return cls("none")

    @classmethod
    def evolve(cls, t: float) -> AliceAction:
        return cls("evolve", t=float(t))

    @classmethod
    def project(cls, projectors) -> AliceAction:
        return cls("project", projectors=tuple(as_matrix(p) for p in projectors))

    def describe(self) -> str:
        if self.kind == "evolve":
            return f"evolve(t={self.t!r})"
        if self.kind == "project":
            return f"project(n={len(self.projectors)})"
        return "none"


def validate_projectors(theta, projectors, tol: Tolerances = DEFAULT) -> None:
    theta = as_matrix(theta)
    n = theta.shape[0]
    if not projectors:
        raise InadmissibleProjector("empty projector set")
    total = np.zeros((n, n), dtype=complex)
    for p in projectors:
        p = as_matrix(p)
        if p.shape != (n, n):
            raise InadmissibleProjector(f"projector shape {p.shape} does not match metric {n}x{n}")
        scale = max(fro(p), 1.0)
        if fro(p @ p - p) > tol.property * scale:
            raise InadmissibleProjector("projector is not idempotent")
        if fro(p.conj().T @ theta - theta @ p) > tol.property * scale * fro(theta):
            raise InadmissibleProjector("projector is not self-adjoint in the metric")
        total += p
    if fro(total - np.eye(n)) > tol.property * np.sqrt(n):
        raise InadmissibleProjector("projectors do not resolve the identity")


def apply_alice(sys: CompositeSystem, psi, action: AliceAction) -> StateVector | Ensemble:
    """Apply Alice's action to the pair.

    Evolution returns the new state. A measurement returns the unrevealed
    ensemble ``[(w_i, psi_i)]`` with metric (S-)probabilities ``w_i`` and
    S-normalized branches.
    """
    psi = as_state(psi, sys.h_tot.shape[0])
    if action.kind == "none":
        return psi
    if action.kind == "evolve":
        return expm(-1j * action.t * sys.h_tot) @ psi
    validate_projectors(sys.theta, action.projectors, sys.alice_space.tol)
    norm2 = np.vdot(psi, sys.theta_tilde @ psi).real
    if norm2 <= 0:
        raise ZeroState("state has zero metric norm")
    eye_b = np.eye(sys.dims[1])
    ensemble: Ensemble = []
    for p in action.projectors:
        branch = kron(p, eye_b) @ psi
        w = np.vdot(psi, sys.theta_tilde @ branch).real / norm2
        b2 = np.vdot(branch, sys.theta_tilde @ branch).real
        ensemble.append((w, branch / np.sqrt(b2) if b2 > 0 else branch))
    return ensemble


def _naive_ensemble(sys: CompositeSystem, psi, action: AliceAction) -> Ensemble:
    # Dirac Born rule: branch weights from Dirac norms, renormalized to sum 1
    eye_b = np.eye(sys.dims[1])
    branches = [kron(p, eye_b) @ psi for p in action.projectors]
    norms = np.array([np.vdot(b, b).real for b in branches])
    total = norms.sum()
    return [(n / total, b) for n, b in zip(norms, branches) if n > 0]


def bob_state(sys: CompositeSystem, psi, mode: Mode) -> ComplexMatrix:
    if mode == "corrected":
        return bob_reduced_corrected(sys, psi)
    if mode == "naive":
        return bob_reduced_naive(psi, sys.dims)
    raise ValueError(f"unknown mode {mode!r}")


def bob_after(sys: CompositeSystem, psi0, action: AliceAction, mode: Mode) -> ComplexMatrix:
    """Bob's unconditioned marginal after Alice acts."""
    psi0 = as_state(psi0, sys.h_tot.shape[0])
    if action.kind != "project":
        return bob_state(sys, apply_alice(sys, psi0, action), mode)
    if mode == "corrected":
        ensemble = apply_alice(sys, psi0, action)
    else:
        validate_projectors(sys.theta, action.projectors, sys.alice_space.tol)
        ensemble = _naive_ensemble(sys, psi0, action)
    return sum(w * bob_state(sys, branch, mode) for w, branch in ensemble if w != 0)


def signaling_magnitude(sys: CompositeSystem, psi0, action: AliceAction, mode: Mode = "corrected") -> float:
    """Trace distance between Bob's marginal before and after Alice's action."""
    before = bob_state(sys, psi0, mode)
    return trace_distance(before, bob_after(sys, psi0, action, mode))


@dataclass(frozen=True)
class ExperimentResult:
    rho_bob_corrected: ComplexMatrix
    rho_bob_naive: ComplexMatrix
    signaling_corrected: float
    signaling_naive: float
    params: dict


def run_experiment(
    p: ModelParams,
    m: MetricParams | None,
    action: AliceAction,
    psi0=None,
) -> ExperimentResult:
    """One scenario end to end; ``m=None`` selects the CPT metric."""
    sys = build_composite(p, m)
    psi0 = bell_state() if psi0 is None else as_state(psi0, 4)
    if m is None:
        a, u = float(1.0 / np.sqrt(np.cos(p.alpha))), 0.0
    else:
        a, u = m.a, m.u
    return ExperimentResult(
        rho_bob_corrected=bob_after(sys, psi0, action, "corrected"),
        rho_bob_naive=bob_after(sys, psi0, action, "naive"),
        signaling_corrected=signaling_magnitude(sys, psi0, action, "corrected"),
        signaling_naive=signaling_magnitude(sys, psi0, action, "naive"),
        params={"s": p.s, "alpha": p.alpha, "a": a, "u": u, "action": action.describe()},
    )
