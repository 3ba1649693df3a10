"""Exception types shared across the package."""


class QuatramError(Exception):
    """Base class for all package errors."""


class DomainError(QuatramError):
    """Input outside the mathematical domain of the operation."""


class NotEisenstein(QuatramError):
    """Defining polynomial fails the Eisenstein criterion."""


class PrecisionTooSmall(QuatramError):
    """Requested working precision cannot support the computation."""


class PrecisionExhausted(QuatramError):
    """A valuation/decision would have to be resolved beyond the cap."""


class IsSquare(QuatramError):
    """Element is a square where a non-square was required."""


class UnramifiedSubextension(QuatramError):
    """Adjoining this square root gives an unramified extension."""


class HypothesisViolation(QuatramError):
    """Input violates the hypotheses of the decomposition lemma."""


class NotANorm(QuatramError):
    """Right-hand side is not a norm from the extension."""


class NoValidArrangement(QuatramError):
    """No rearrangement of (u, v, uv) satisfies the symbol conditions."""


class TargetUnreachable(QuatramError):
    """No candidate twist element realizes the requested top break."""


class NotInCatalog(QuatramError):
    """Requested triple is not in the catalog for this field."""


class RequiresI(QuatramError):
    """Operation requires sqrt(-1) in the base field."""


class NotFullyRamified(QuatramError):
    """Extension has an unramified piece where full ramification is required."""
