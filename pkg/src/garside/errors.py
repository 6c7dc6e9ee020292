"""Exception types shared across the library."""


class GarsideError(Exception):
    """Base class for all errors raised by this library."""


class NonSphericalType(GarsideError):
    """The Coxeter matrix does not define a finite Coxeter group."""


class ContextMismatch(GarsideError):
    """Operands were built over different group contexts."""


class ParseError(GarsideError):
    """A word or group token could not be parsed."""


class NotSimple(GarsideError):
    """An element was expected to be simple for the given Garside structure."""


class EmptySet(GarsideError):
    """The requested summit set is empty (no positive conjugate exists)."""


class NotInUSS(GarsideError):
    """Transport requires both endpoints to lie in the ultra summit set."""


class NotConjugating(GarsideError):
    """The provided element does not conjugate the source to the target."""


class UnclassifiableLabel(GarsideError):
    """An arrow label escaped the three-way classification; internal bug."""


class NotIrreducible(GarsideError):
    """The parabolic subgroup is not irreducible."""


class NotProper(GarsideError):
    """The parabolic subgroup is not proper."""


class EqualSubgroups(GarsideError):
    """The two subgroups coincide where distinct ones were required."""


class InvalidPath(GarsideError):
    """A generator path violates the non-commuting / no-backtrack rules."""


class BudgetExceeded(GarsideError):
    """An enumeration outgrew its configured budget."""


class NoMinimumFound(GarsideError):
    """A bounded search found no unique minimal candidate."""
