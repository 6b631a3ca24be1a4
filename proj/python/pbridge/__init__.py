from ._pbridge import *  # noqa: F401,F403
from ._pbridge import __doc__  # noqa: F401
