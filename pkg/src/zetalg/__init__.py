"""Solomon zeta functions of integral table algebra orders."""

__version__ = "0.1.0"
