"""Archimedean copula generators from bivariate right-censored data."""

try:
    from ._core import *  # noqa: F401,F403  (installed wheel)
    from ._core import __doc__ as _doc
except ImportError:  # build-tree fallback: point GENCOP_CORE_DIR at the cmake output
    import os
    import sys

    _d = os.environ.get("GENCOP_CORE_DIR")
    if not _d:
        raise
    sys.path.insert(0, _d)
    from _core import *  # noqa: F401,F403

__version__ = "0.1.0"
