"""Multi-photon absorption fringes from a degenerate parametric oscillator."""

from ._ndpo import *  # noqa: F401,F403
from ._ndpo import __version__  # noqa: F401
