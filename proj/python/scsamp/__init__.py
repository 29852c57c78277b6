from ._scsamp import *  # noqa: F401,F403
from ._scsamp import __doc__  # noqa: F401
