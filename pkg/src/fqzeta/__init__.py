"""Point counts, zeta functions and Hodge-theoretic divisibility checks over finite fields."""

__version__ = "0.1.0"
