"""Quantum hyperbolic geometry at desk scale."""

from qhg._core import *  # noqa: F401,F403
from qhg._core import __doc__  # noqa: F401
