"""Exception hierarchy.

Every error carries an ``exit_code`` so the command-line front end can map
failures to its documented status codes (2 = bad input, 3 = numerical failure).
"""


class SimplexSliceError(Exception):
    exit_code = 3


class InputError(SimplexSliceError, ValueError):
    exit_code = 2


class NumericalError(SimplexSliceError, ArithmeticError):
    exit_code = 3


class EmptyVector(InputError):
    pass


class AllZero(InputError):
    pass


class NotUnitNorm(InputError):
    pass


class NotCentered(InputError):
    pass


class FewerThanTwoEntries(InputError):
    pass


class NonpositiveX(InputError):
    pass


class YOutOfRange(InputError):
    pass


class XOutsideDomain(InputError):
    pass


class RepeatedEntries(InputError):
    pass


class BadParameters(InputError):
    pass


class PoleHit(NumericalError):
    pass


class BracketFailure(NumericalError):
    pass


class ImaginaryResidueTooLarge(NumericalError):
    pass


class ToleranceNotMet(NumericalError):
    pass


class IllConditioned(NumericalError):
    pass
