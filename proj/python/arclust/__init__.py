"""Attraction-repulsion clustering for fairness.

Thin re-export of the compiled module; see the README for the pipeline
overview and the `arclust` CLI for file-based workflows.
"""

try:
    from ._arclust import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _arclust import *  # noqa: F401,F403  (in-tree build)

__version__ = "0.1.0"
