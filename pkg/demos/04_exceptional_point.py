"""
Approaching the exceptional point
=================================

As alpha -> pi/2 the two eigenvectors of H merge and the metric degenerates:
its smallest eigenvalue goes to zero and no physical Hilbert space is left.
"""

# %%
import math

from ptqm import ExceptionalPoint, MetricParams, ModelParams, build_metric, ep_diagnostics

print("pi/2 - alpha   min eig(Theta)   cond(Theta)     overlap   degenerate")
for k in range(1, 8):
    p = ModelParams(1.0, math.pi / 2 - 10.0 ** -k)
    d = ep_diagnostics(p, MetricParams(1.0, 0.0))
    print(f"1e-{k:<10d}  {d.min_metric_eigenvalue:.3e}       {d.metric_condition_number:.3e}   "
          f"{d.eigenvector_overlap:.10f}  {d.degenerate_spectrum}")

d = ep_diagnostics(ModelParams(1.0, math.pi / 2), MetricParams(1.0, 0.0))
print("at the EP:", d)

# %%
try:
    build_metric(ModelParams(1.0, math.pi / 2), MetricParams(1.0, 0.0))
except ExceptionalPoint as exc:
    print("no metric:", exc)
