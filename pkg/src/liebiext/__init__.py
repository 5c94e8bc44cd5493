"""Exact construction, verification and classification of Lie bialgebra extensions over Q(i)."""

from .exactnum import *  # noqa: F401,F403
from .liecore import *  # noqa: F401,F403
from .extension import *  # noqa: F401,F403
from .special import *  # noqa: F401,F403
from .flag import *  # noqa: F401,F403
from .serialize import *  # noqa: F401,F403
from . import exactnum, extension, flag, liecore, serialize, special

__all__ = (exactnum.__all__ + liecore.__all__ + extension.__all__ + special.__all__
           + flag.__all__ + serialize.__all__)
