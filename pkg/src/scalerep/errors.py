"""Exception hierarchy shared by every module in the package."""


class ScaleRepError(Exception):
    """Base class for all errors raised by scalerep."""


class DivisionByZero(ScaleRepError, ZeroDivisionError):
    def __init__(self, operation: str, subterm: object = None) -> None:
        self.operation = operation
        self.subterm = subterm
        msg = f"division by zero in {operation}"
        if subterm is not None:
            msg += f" (subterm: {subterm})"
        super().__init__(msg)


class FloatOverflow(ScaleRepError, OverflowError):
    """Magnitude does not fit in a binary64 float."""


class InvalidScale(ScaleRepError, ValueError):
    pass


class DomainError(ScaleRepError, ValueError):
    """A value lies outside the value domain of a structure."""


class NotInBaseSet(DomainError):
    pass


class StructureMismatch(ScaleRepError, TypeError):
    """Operands belong to different structures."""


class TypeMismatch(ScaleRepError, TypeError):
    """Structures of different number types were combined."""


class UnsupportedOperation(ScaleRepError):
    """The operation is not part of the structure's signature."""


class ParseError(ScaleRepError, ValueError):
    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()) -> None:
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class UnboundVariable(ScaleRepError, KeyError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(name)

    def __str__(self) -> str:
        return f"unbound variable {self.name!r}"


class BudgetExceeded(ScaleRepError):
    def __init__(self, message: str, views: tuple[str, ...] = ()) -> None:
        self.views = tuple(views)
        super().__init__(message)


class WitnessRequired(ScaleRepError, ValueError):
    pass


class DimensionMismatch(ScaleRepError, ValueError):
    pass
