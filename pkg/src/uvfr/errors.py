"""Error types shared across the package.

The CLI maps these onto exit codes: validation failures (DimensionError,
PreconditionError, RangeError) exit 1, numeric failures exit 2.
"""


class DimensionError(ValueError):
    """Tensor shapes or sizes violate an operation's contract."""


class PreconditionError(ValueError):
    """An input value violates an operation's precondition."""


class RangeError(ValueError):
    """A scalar argument is outside its valid range."""


class NumericError(ArithmeticError):
    """A computation produced non-finite values."""
