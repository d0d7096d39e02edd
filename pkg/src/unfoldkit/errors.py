"""Exception types shared across the package."""


class UnfoldKitError(Exception):
    """Base class for all library errors."""


class ConfigurationError(UnfoldKitError):
    """A grid, operator, or run configuration is invalid."""


class DegenerateInputError(UnfoldKitError):
    """Input is all-zero or otherwise carries no usable information."""


class DomainError(UnfoldKitError):
    """A value lies outside the domain of the requested map."""


class BandEmptyError(UnfoldKitError):
    """The out-of-band region is empty (no oversampling)."""


class InsufficientBandwidthError(UnfoldKitError):
    """Fewer out-of-band samples than unknowns; recovery is unidentifiable."""


class ConditioningError(UnfoldKitError):
    """A linear system is too ill-conditioned to solve reliably."""


class AnchoringError(UnfoldKitError):
    """Integration constants for difference inversion cannot be fixed."""


class OracleTooLargeError(UnfoldKitError):
    """Brute-force search space exceeds the configured budget."""
