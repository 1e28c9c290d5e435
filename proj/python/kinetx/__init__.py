"""Analytic, iterative and stochastic solvers for A + B <-> C + D kinetics."""

from ._kinetx import *  # noqa: F401,F403
from ._kinetx import __version__  # noqa: F401
