"""Exception types shared across the package."""


class ConvographError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(ConvographError):
    """Input data or configuration violates a documented contract."""


class EmptyInputError(ValidationError):
    """A source yielded zero usable records or documents."""


class UndefinedMetricError(ConvographError):
    """The requested quantity has no defined value for this graph."""


class StratificationError(ValidationError):
    """A labeled corpus cannot be split per class as requested."""


class TrainingError(ConvographError):
    """Model training cannot proceed on the given corpus."""
