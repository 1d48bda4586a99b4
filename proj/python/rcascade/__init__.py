"""Reversible threshold cascades: graph generators, cascade engine, seeders and an exact oracle."""

from ._rcascade import *  # noqa: F401,F403
from ._rcascade import __doc__  # noqa: F401
