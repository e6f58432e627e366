"""The two concrete constructions: norm inflation and the Toeplitz kernel vector."""
from . import appendix, inflation
from .appendix import *  # noqa: F401,F403
from .inflation import *  # noqa: F401,F403

__all__ = [*appendix.__all__, *inflation.__all__]
