"""Impulsive tree-grass-fire dynamics: simulation, periodic orbits, stability
thresholds, regime classification, and basin maps.

The compiled extension carries the full API; this package re-exports it.
"""

from savanna._core import *  # noqa: F401,F403
from savanna._core import __version__  # noqa: F401
