"""Economic, patent, and triple-helix complexity indices.

Thin wrapper around the compiled extension; every public name comes from
the C++ core.
"""

try:
    from ._triplex import *  # noqa: F401,F403
    from ._triplex import __version__  # noqa: F401
except ImportError:  # development layout: extension built next to the package
    from _triplex import *  # noqa: F401,F403
    from _triplex import __version__  # noqa: F401
