"""qweyl: Weyl group actions on completed rings of q-characters.

Exact integer arithmetic throughout; truncation order is explicit on every
series object.
"""

__version__ = "0.1.0"

from .rootsystem import build_cartan, simple_reflection, weyl_from_word

__all__ = ["build_cartan", "simple_reflection", "weyl_from_word", "__version__"]
