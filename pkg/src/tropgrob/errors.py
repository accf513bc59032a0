"""Exception and warning types raised across the package."""


class TropgrobError(Exception):
    """Base class for user-facing errors."""


class ValueGroupError(TropgrobError, ValueError):
    """A weight or exponent lies outside the value group of the field."""


class NotInValuationRing(TropgrobError, ValueError):
    pass


class ZeroElement(TropgrobError, ValueError):
    pass


class ZeroPolynomial(TropgrobError, ValueError):
    pass


class NotPolynomial(TropgrobError, ValueError):
    """A Laurent polynomial with negative exponents where a polynomial is needed."""


class ArityError(TropgrobError, ValueError):
    pass


class ParseError(TropgrobError, ValueError):
    pass


class DirectionNotInLineality(TropgrobError, ValueError):
    pass


class NotRenderable(TropgrobError, ValueError):
    pass


class MonomialInput(TropgrobError, ValueError):
    """The tropical hypersurface of a single term is empty."""


class IdealIsUnit(TropgrobError):
    """Every initial ideal contains a monomial, so the tropical variety is empty."""


class NotInIdeal(TropgrobError):
    pass


class InternalInconsistency(TropgrobError):
    """An internal invariant failed; this signals a bug or an insufficient degree bound."""


class InconsistentInitial(InternalInconsistency):
    pass


class DegreeBoundTooSmall(InternalInconsistency):
    pass


class ResourceLimit(TropgrobError):
    """A computation hit one of the configured caps."""


class RetryExhausted(ResourceLimit):
    pass


class CombinatorialCapExceeded(ResourceLimit):
    def __init__(self, degree, count, cap):
        super().__init__(
            f"degree {degree}: {count} column subsets exceed the cap of {cap}; "
            "use traversal mode or raise TROPGROB_CAP"
        )
        self.degree = degree
        self.count = count
        self.cap = cap


class NonConvergence(ResourceLimit):
    pass


class SaturationWarning(UserWarning):
    """Degreewise saturation is bounded by a slack and not certified complete."""


class DegreeBoundWarning(UserWarning):
    """The degree bound was chosen heuristically."""


class GenerationWarning(UserWarning):
    """A degreewise generation check found the generators incomplete."""
