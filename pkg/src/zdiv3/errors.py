"""Error types shared across the package."""


class InputError(ValueError):
    """A precondition on an operation's input was violated."""


class CapacityError(RuntimeError):
    """The input is valid but exceeds a configured size/feasibility bound."""
