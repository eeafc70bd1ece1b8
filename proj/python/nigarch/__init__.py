"""Near-integrated GARCH(1,1): simulation, limit-theorem checks and QMLE."""

from ._nigarch import *  # noqa: F401,F403
from ._nigarch import __doc__  # noqa: F401

__version__ = "0.1.0"
