"""Exception types shared across the package."""


class NetworkFormatError(ValueError):
    """A network file could not be parsed."""


class NetworkInvalidError(ValueError):
    """An operation required a network that passes validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid network: " + "; ".join(self.violations))


class NumericalError(RuntimeError):
    """A linear solve or internal identity check missed its tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class UnsupportedVariantError(ValueError):
    """An information-structure variant does not apply to the given input."""


class NoWitnessError(RuntimeError):
    """The connectivity-reversal search found no witness on its grid."""
