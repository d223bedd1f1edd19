"""Exception types shared across the engine."""


class SqiisError(Exception):
    """Base class for every error raised by this package."""


class MalformedConfigError(SqiisError):
    """A configuration file does not conform to its line format."""


class DuplicateIdentifierError(SqiisError):
    """A tag or domain id appears more than once in a registry."""


class UnknownIdentifierError(SqiisError):
    """An id references a tag or domain absent from the registry."""


class UnknownTagError(UnknownIdentifierError):
    """A tag id is not part of the tag registry."""


class EmptyQueryError(SqiisError):
    """The query is empty (or whitespace/punctuation only) after normalization."""


class NoTagsFoundError(SqiisError):
    """No token of the query carries any tag, so no candidate combination exists."""


class EmptyTagSetError(SqiisError):
    """An operation requiring at least one set tag received an empty combination."""


class DuplicateRuleError(SqiisError):
    """Two rules share the same tag combination."""


class InvalidConfidenceError(SqiisError):
    """A confidence component is negative or above 1."""


class ModeViolationError(SqiisError):
    """A rule violates the invariants of the rule-base's declared mode."""


class InvalidWeightError(SqiisError):
    """A weight entry is negative, or a tag row contributes to no domain."""


class DimensionError(SqiisError):
    """Vector or combination width does not match the registry it is used with."""


class RangeError(SqiisError):
    """A numeric argument is outside its supported range."""
