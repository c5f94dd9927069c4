"""Exception hierarchy.

Every error raised by the package derives from :class:`LeibnizError`, so
callers can catch the whole family at once. Violations that are *data*
(a failed identity check, a non-Cartan candidate) are reported, not raised.
"""


class LeibnizError(Exception):
    pass


# construction / input
class BadArity(LeibnizError, ValueError):
    pass


class IndexOutOfRange(LeibnizError, IndexError):
    pass


class ConflictingEntry(LeibnizError, ValueError):
    pass


class DimensionMismatch(LeibnizError, ValueError):
    pass


class ArityMismatch(LeibnizError, ValueError):
    pass


class BadParams(LeibnizError, ValueError):
    pass


class ParseError(LeibnizError, ValueError):
    pass


class BadSlot(LeibnizError, ValueError):
    pass


class BadK(LeibnizError, ValueError):
    pass


class CapExceeded(LeibnizError, ValueError):
    pass


# linear algebra
class SingularMatrix(LeibnizError, ValueError):
    pass


class NonSplitSpectrum(LeibnizError, ValueError):
    pass


# structural preconditions
class NotAnIdeal(LeibnizError, ValueError):
    pass


class NotAOneIdeal(LeibnizError, ValueError):
    pass


class NotASubalgebra(LeibnizError, ValueError):
    pass


class NotADerivation(LeibnizError, ValueError):
    pass


class NotNilpotent(LeibnizError, ValueError):
    pass


class NotACartan(LeibnizError, ValueError):
    pass


class PreconditionFailed(LeibnizError, ValueError):
    pass


class PropertyMissing(LeibnizError, ValueError):
    pass


# internal consistency: these signal a bug, never bad input
class InternalInvariantViolation(LeibnizError, RuntimeError):
    pass


class InternalClosureViolation(InternalInvariantViolation):
    pass


class NotAutomorphism(InternalInvariantViolation):
    pass
