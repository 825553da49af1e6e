"""Subword complexity, de Bruijn words, Sturmian words and complexity-sequence censuses."""

from .errors import CapacityError, DomainError
from .words import Occurrence, PackedWord, Word

__version__ = "0.1.0"

__all__ = ["CapacityError", "DomainError", "Occurrence", "PackedWord", "Word", "__version__"]
