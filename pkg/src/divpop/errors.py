"""Exception types shared across the package."""


class DivpopError(Exception):
    """Base class for all package-specific errors."""


class DomainError(DivpopError, ValueError):
    """An argument lies outside an operation's domain."""


class ValidationError(DivpopError, ValueError):
    """A game or outcome violates a structural invariant.

    Carries a short machine-readable ``code`` (e.g. ``divisibility``,
    ``duplicate-id``, ``room-size``) next to the human-readable message.
    """

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


class SchemaError(DivpopError, ValueError):
    """A JSON document does not match the expected file schema."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class CapExceeded(DivpopError, RuntimeError):
    """An enumeration exceeded its configured outcome cap."""


class BudgetExceeded(DivpopError, RuntimeError):
    """A computation exceeded its wall-clock budget."""


class SolverError(DivpopError, RuntimeError):
    """An internal solver reached a state that indicates a bug."""
