"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class EmptyDataError(ValueError):
    """No usable data points remain after filtering."""


class NoSolutionError(ValueError):
    """The estimating equation has no solution for the given data."""


class FormatError(ValueError):
    """A file does not conform to its declared format."""


class SweepError(RuntimeError):
    """Every point of a parameter sweep failed.

    ``causes`` holds one ``(grid_value, exception)`` pair per failed point.
    """

    def __init__(self, message, causes=()):
        super().__init__(message)
        self.causes = tuple(causes)

    def __str__(self):
        base = super().__str__()
        if not self.causes:
            return base
        detail = "; ".join(f"{value!r}: {exc}" for value, exc in self.causes[:5])
        if len(self.causes) > 5:
            detail += f"; ... ({len(self.causes)} failures total)"
        return f"{base} [{detail}]"
