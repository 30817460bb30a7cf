"""Class groups of number fields by sieving small algebraic integers."""

__version__ = "0.1.0"
