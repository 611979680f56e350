"""
Unitary evolution in the physical space
=======================================

With the charge-fixed (CPT) metric, the generator evolves states unitarily
in the metric norm. The ordinary Dirac norm drifts, which is what one sees
if the wrong Hilbert space is used.
"""

# %%
import math

import numpy as np

from ptqm import ModelParams, PhysicalSpace, build_hamiltonian, charge_operator, cpt_metric
from ptqm.linalg import SIGMA_Z
from ptqm.space import evolve, expectation, inner_product_f, inner_product_s, is_admissible_observable, s_norm2

p = ModelParams(1.0, math.pi / 6)
h = build_hamiltonian(p)
space = PhysicalSpace(cpt_metric(p))
print("CPT metric =\n", np.round(space.theta, 5))

# %%
psi0 = np.array([1.0, 0.0])
print(" t     S-norm^2   F-norm^2")
for t in (0.0, 0.5, 1.0, 5.0, 50.0):
    psi = evolve(space, h, psi0, t)
    print(f"{t:5.1f}  {s_norm2(space, psi):.12f}  {np.vdot(psi, psi).real:.6f}")

# %%
# Eigenvectors of H overlap in the Dirac product but are orthogonal in the metric.
w, v = np.linalg.eig(h)
v = v / np.linalg.norm(v, axis=0)
print("|<v+|v->_F| =", abs(inner_product_f(v[:, 0], v[:, 1])))
print("|<v+|v->_S| =", abs(inner_product_s(space, v[:, 0], v[:, 1])))

# %%
# Observables must satisfy Lambda^dagger Theta = Theta Lambda.
c = charge_operator(p)
print("charge admissible:", is_admissible_observable(space, c), " sigma_z admissible:",
      is_admissible_observable(space, SIGMA_Z))
print("<C> on the eigenvectors:", [round(expectation(space, c, v[:, i]), 12) for i in range(2)])
