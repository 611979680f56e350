"""Central tolerance record.

Every numeric threshold used by the library reads from ``DEFAULT`` unless a
caller passes its own :class:`Tolerances`.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    equality: float = 1e-12
    property: float = 1e-10
    degeneracy: float = 1e-8
    hermiticity: float = 1e-8


DEFAULT = Tolerances()
