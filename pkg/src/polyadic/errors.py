"""Exception hierarchy.

Every validation failure carries the first violating cell, triple or tuple
so the caller can re-evaluate it.
"""


class PolyadicError(Exception):
    """Base class for all errors raised by this package."""


class IndexOutOfRange(PolyadicError, IndexError):
    pass


class ArityMismatch(PolyadicError, ValueError):
    pass


class OrderTooLarge(PolyadicError):
    """A brute-force enumeration was asked to exceed its configured cap."""


class BudgetExceeded(PolyadicError):
    pass


class TableTooLarge(BudgetExceeded):
    pass


class InternalInconsistency(PolyadicError):
    """A property that the theory guarantees failed to hold."""


# --- binary groups ---------------------------------------------------------

class GroupValidationError(PolyadicError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotLatinSquare(GroupValidationError):
    pass


class NotAssociative(GroupValidationError):
    pass


class NoIdentity(GroupValidationError):
    pass


class NotAutomorphism(GroupValidationError):
    pass


# --- n-ary groups ----------------------------------------------------------

class NotSolvable(GroupValidationError):
    def __init__(self, message, position=None, fixed_args=None):
        super().__init__(message, witness=(position, fixed_args))
        self.position = position
        self.fixed_args = fixed_args


class ThetaNotAutomorphism(GroupValidationError):
    pass


class ThetaDoesNotFixB(GroupValidationError):
    pass


class PowerConditionFails(GroupValidationError):
    pass


class RequiresDerivedForm(PolyadicError, ValueError):
    pass


class NotDerNForm(RequiresDerivedForm):
    """The operation is not der^n(G), i.e. theta is not the identity or b is not e."""


# --- morphisms -------------------------------------------------------------

class NotHomotopy(GroupValidationError):
    pass


class NotHomomorphism(NotHomotopy):
    pass


class NotAutotopy(NotHomotopy):
    pass


class NotIsotopy(NotHomotopy):
    pass


class Incompatible(PolyadicError, ValueError):
    pass


class NotCentralIdempotent(PolyadicError, ValueError):
    pass


class TargetNotAbelian(PolyadicError, ValueError):
    pass


class ConditionsFail(GroupValidationError):
    def __init__(self, message, condition=None, witness=None):
        super().__init__(message, witness=witness)
        self.condition = condition


# --- representations -------------------------------------------------------

class SingularImage(PolyadicError, ValueError):
    pass


class NotBinaryRepresentation(GroupValidationError):
    pass


class NotRepresentation(GroupValidationError):
    pass


class ModularCharacteristic(PolyadicError, ValueError):
    """The field characteristic divides the group order."""


# --- cli -------------------------------------------------------------------

class ParseError(PolyadicError, ValueError):
    def __init__(self, message, field=None, line=None):
        where = []
        if field is not None:
            where.append(f"field {field!r}")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.field = field
        self.line = line


class ValidationError(PolyadicError, ValueError):
    def __init__(self, message, cause=None):
        super().__init__(message)
        self.cause = cause


class UnknownCommand(PolyadicError, ValueError):
    pass
