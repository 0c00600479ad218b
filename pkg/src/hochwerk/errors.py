"""Exception hierarchy shared by every module of the package."""


class HochwerkError(ValueError):
    """Base class for all errors raised by hochwerk."""


class DimensionMismatch(HochwerkError):
    pass


class ContainmentViolation(HochwerkError):
    """Raised when a subspace expected inside another is not (broken complex)."""


class NotAssociative(HochwerkError):
    def __init__(self, i, j, k):
        self.triple = (i, j, k)
        super().__init__(f"(e{i} e{j}) e{k} != e{i} (e{j} e{k})")


class UnitLawFails(HochwerkError):
    def __init__(self, i, side="left"):
        self.index = i
        self.side = side
        super().__init__(f"unit fails the {side} unit law on basis element e{i}")


class LeftActionNotHom(HochwerkError):
    pass


class RightActionNotAntiHom(HochwerkError):
    pass


class ActionsDontCommute(HochwerkError):
    pass


class NotUnital(HochwerkError):
    pass


class NotIdempotent(HochwerkError):
    pass


class CornersDontSpan(HochwerkError):
    pass


class AlgebraMismatch(HochwerkError):
    pass


class ExactnessFailure(HochwerkError):
    pass


class NotInverse(HochwerkError):
    pass


class HypothesisViolated(HochwerkError):
    pass


class ParseError(HochwerkError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)


class ValidationError(HochwerkError):
    """Wraps an algebraic diagnostic raised while ingesting an instance."""

    def __init__(self, name, cause):
        self.name = name
        self.cause = cause
        super().__init__(f"{name}: {type(cause).__name__}: {cause}")


class BudgetExceeded(HochwerkError):
    pass
