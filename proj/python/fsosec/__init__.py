"""Secrecy metrics for satellite-to-ground FSO links under F-distributed turbulence."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
