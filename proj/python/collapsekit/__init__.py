"""Dynamical wave-function-collapse models.

Closed-form calculators (localization rates, gravity-collapse scales,
interferometry feasibility, parameter bounds), seeded stochastic simulators
and the batch runner, backed by the C++ core.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__, constants  # noqa: F401
