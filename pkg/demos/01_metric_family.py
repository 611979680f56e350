"""
The family of physical metrics
==============================

The two-level Hamiltonian ``H = s [[i sin a, 1], [1, -i sin a]]`` is not
Hermitian, yet its spectrum is real. Every positive matrix ``Theta`` with
``H^dagger Theta = Theta H`` turns it into a self-adjoint operator of a
genuine Hilbert space. For this model those metrics form a two-parameter
family ``(a, u)``.
"""

# %%
import math

import numpy as np

from ptqm import MetricParams, ModelParams, build_hamiltonian, build_metric, quasi_hermiticity_residual
from ptqm.model import family_coefficients, metric_eigenvalues, solve_metric_family

alpha = math.pi / 6
p = ModelParams(s=1.0, alpha=alpha)
h = build_hamiltonian(p)
print("H =\n", np.round(h, 4))
print("spectrum:", np.round(np.linalg.eigvals(h), 6), " expected +-cos(alpha) =", round(math.cos(alpha), 6))

# %%
# Scan the asymmetry parameter u across its whole admissible range |u| < |cos alpha|.
for u in np.linspace(-0.99, 0.99, 5) * math.cos(alpha):
    theta = build_metric(p, MetricParams(a=1.0, u=u))
    lo, hi = metric_eigenvalues(alpha, 1.0, u)
    print(f"u={u:+.3f}  residual={quasi_hermiticity_residual(h, theta):.1e}  eigenvalues=({lo:.4f}, {hi:.4f})")

# %%
# The same family comes out of a general solver: positive combinations of the
# rank-1 rays built from left eigenvectors.
family = solve_metric_family(h)
m = MetricParams(a=1.3, u=0.4)
coeffs = family_coefficients(p, m)
print("ray coefficients for (a, u) = (1.3, 0.4):", np.round(coeffs, 6))
print("reconstruction error:", np.linalg.norm(family.combine(coeffs) - build_metric(p, m)))

# %%
# Outside the admissible range the metric stops being positive.
try:
    build_metric(p, MetricParams(a=1.0, u=0.9))
except ValueError as exc:
    print("refused:", exc)
