"""Protonic-device array simulator: compact device models, the coupled
reservoir array, dataset generators, and the linear/crossbar readout."""

from nnosim._core import *  # noqa: F401,F403
from nnosim._core import __version__  # noqa: F401
