"""Transmon-coupler-transmon ZZ/XY simulator."""

from ._zzlab import *  # noqa: F401,F403
from ._zzlab import __doc__  # noqa: F401
