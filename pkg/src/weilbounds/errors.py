"""Exception hierarchy shared by all weilbounds modules."""


class WeilBoundsError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(WeilBoundsError, ValueError):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class SizeCapExceeded(WeilBoundsError):
    pass


class FieldMismatch(WeilBoundsError, TypeError):
    pass


class DivisionByZero(WeilBoundsError, ZeroDivisionError):
    pass


class PolySyntaxError(WeilBoundsError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(WeilBoundsError, ValueError):
    pass


class DegreeCapExceeded(WeilBoundsError, ValueError):
    pass


class ArityMismatch(WeilBoundsError, ValueError):
    pass


class IndexOutOfRange(WeilBoundsError, IndexError):
    pass


class ZeroPolynomial(WeilBoundsError, ValueError):
    pass


class EmptyRange(WeilBoundsError, ValueError):
    pass


class InvalidParams(WeilBoundsError, ValueError):
    pass


class ShapeMismatch(WeilBoundsError, ValueError):
    pass


class NotApplicable(WeilBoundsError):
    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class InsufficientCounts(WeilBoundsError, ValueError):
    pass


class NonIntegralCoefficients(WeilBoundsError, ValueError):
    pass


class SchemaError(WeilBoundsError, ValueError):
    def __init__(self, path, field, message=""):
        text = f"{path}: invalid field {field!r}"
        if message:
            text += f" ({message})"
        super().__init__(text)
        self.path = path
        self.field = field


class NonHomogeneousForm(WeilBoundsError, ValueError):
    def __init__(self, index):
        super().__init__(f"form #{index} is not homogeneous")
        self.index = index


class InconsistentDeclaration(WeilBoundsError, ValueError):
    pass
