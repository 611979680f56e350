"""
No signaling with the right metric
==================================

Alice and Bob share a Bell pair. Alice evolves her qubit with the
PT-symmetric generator, or measures it, and Bob looks at his marginal.
Computing the marginal with bras pre-multiplied by the shared metric
``Theta (x) I`` leaves Bob's state untouched. Dropping the metric (the
naive Dirac trace) produces an apparent signal.
"""

# %%
import math

import numpy as np

from ptqm import AliceAction, MetricParams, ModelParams, bell_state, build_composite, signaling_magnitude
from ptqm.linalg import eigensystem
from ptqm.nosignaling import bob_after, theta_projectors

print(" alpha     u       t    corrected    naive")
for alpha in (0.0, 0.3, 0.8, 1.2):
    for u in (0.0, 0.5 * math.cos(alpha)):
        sys = build_composite(ModelParams(1.0, alpha), MetricParams(1.0, u))
        for t in (0.1, 1.0, 10.0):
            action = AliceAction.evolve(t)
            corrected = signaling_magnitude(sys, bell_state(), action, "corrected")
            naive = signaling_magnitude(sys, bell_state(), action, "naive")
            print(f"{alpha:5.2f}  {u:+.3f}  {t:5.1f}  {corrected:.2e}  {naive:.4f}")

# %%
# An unrevealed measurement in the eigenbasis of H, with metric-orthogonal projectors.
sys = build_composite(ModelParams(1.0, math.pi / 4))
action = AliceAction.project(theta_projectors(sys.theta, eigensystem(sys.h).right))
print("Bob before:\n", np.round(bob_after(sys, bell_state(), AliceAction.none(), "corrected"), 6))
print("Bob after (corrected):\n", np.round(bob_after(sys, bell_state(), action, "corrected"), 6))
print("Bob after (naive):\n", np.round(bob_after(sys, bell_state(), action, "naive"), 6))
