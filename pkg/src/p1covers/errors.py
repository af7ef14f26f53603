"""Exception types shared across the package.

InputError covers everything a caller got wrong (bad field parameters,
mismatched fields, unparseable text, violated construction invariants);
the CLI maps it to exit code 2. Computational failures that a correct
call can still run into (splitting bound, enumeration budget) map to
exit code 1.
"""


class P1CoversError(Exception):
    pass


class InputError(P1CoversError, ValueError):
    """Invalid input: bad parameters, field mismatch, parse failure."""


class SplitBoundExceeded(P1CoversError, RuntimeError):
    """A polynomial did not split within the allowed extension degree.

    The unsplit part is attached as `residual` (a Poly over the base
    field) so callers can skip rather than abort.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class BudgetExceeded(P1CoversError, RuntimeError):
    """An enumeration would exceed the configured search budget."""
