"""Shared exception types."""


class CapExceeded(Exception):
    """A combinatorial size guard was hit (word length, partition size, order cap)."""


class KacValidationError(Exception):
    """A Kac algebra spec or irrep datum failed exact axiom validation."""


class UnsupportedShapeError(Exception):
    """A free-product operand pair matches none of the supported closed-form rules."""
