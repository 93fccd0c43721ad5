"""Finite relational lattice engine."""

try:
    from ._rlat import *  # noqa: F401,F403
    from ._rlat import __version__  # noqa: F401
except ImportError:
    # Test harness layout: extension built next to the sources, not installed.
    from _rlat import *  # noqa: F401,F403
    from _rlat import __version__  # noqa: F401
