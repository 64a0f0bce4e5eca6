"""Exception types shared across the package."""


class DDElimError(Exception):
    pass


class ResourceBudgetExceeded(DDElimError):
    """A computation ran past its step or wall-clock budget."""

    def __init__(self, message, steps=None, seconds=None, last_level=None):
        super().__init__(message)
        self.steps = steps
        self.seconds = seconds
        self.last_level = last_level


class UnknownVariableError(DDElimError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class WindowTooSmall(DDElimError, ValueError):
    pass


class OverlapMismatch(DDElimError, ValueError):
    pass


class NonSolvableError(DDElimError, ValueError):
    """The system is not explicit in its highest shift, or a leading coefficient vanished."""


class ParseError(DDElimError, ValueError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(f"{where}{message}")
        self.bare_message = message
