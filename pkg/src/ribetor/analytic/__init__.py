"""Analytic model: mixed periods over the Siegel space and the lattice Ribet section."""

from . import duality, periods, ribet
from .duality import *  # noqa: F401,F403
from .periods import *  # noqa: F401,F403
from .ribet import *  # noqa: F401,F403

__all__ = [*periods.__all__, *duality.__all__, *ribet.__all__]
