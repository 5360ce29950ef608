"""Database fingerprinting via sparse-priority fake tuples."""

from ._spsw import *  # noqa: F401,F403

__version__ = "0.1.0"
