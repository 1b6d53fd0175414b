"""Explicit vanishing-viscosity limits for two-impulse initial data."""

from ._zpgd import *  # noqa: F401,F403
from ._zpgd import __version__  # noqa: F401
