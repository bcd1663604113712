"""Exception types shared across the package."""


class InvalidRegionError(ValueError):
    """Raised when polygon region data violates the region invariants."""


class FileFormatError(ValueError):
    """Parse failure in a region or network file; carries the 1-based line number."""

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        loc = ""
        if path is not None:
            loc += f"{path}:"
        if line is not None:
            loc += f"line {line}: "
        super().__init__(loc + message)


class SamplingError(RuntimeError):
    """Rejection sampling gave up (acceptance rate pathologically low)."""


class NumericalError(RuntimeError):
    """A numerical routine failed to reach the requested accuracy."""


class BinningMismatchError(ValueError):
    """Two histograms that must share a binning do not."""
