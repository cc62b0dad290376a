"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operand lengths or matrix shapes do not agree."""


class EnumerationLimitError(ValueError):
    """An exhaustive enumeration would exceed its configured size guard."""


class LinearDependenceError(ValueError):
    """Rows that must be linearly independent over F_2 are not."""


class InvalidCodeError(ValueError):
    """A code pair violates its construction requirements."""
