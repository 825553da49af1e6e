class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class CapacityError(RuntimeError):
    """A request would exceed a configured resource bound."""
