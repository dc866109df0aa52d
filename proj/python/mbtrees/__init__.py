"""Markov-Branching random-tree simulation toolkit (C++ core)."""

try:
    from ._mbtrees import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # in-tree builds put the module on PYTHONPATH directly
    from _mbtrees import *  # noqa: F401,F403
