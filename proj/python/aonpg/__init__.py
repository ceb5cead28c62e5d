"""All-or-nothing public goods game with EMA-learning agents on networks."""

from ._aonpg import *  # noqa: F401,F403
from ._aonpg import __doc__  # noqa: F401

__version__ = "0.1.0"
