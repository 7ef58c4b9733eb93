class AlgebraError(Exception):
    pass


class RingMismatch(AlgebraError, ValueError):
    pass


class ArityMismatch(AlgebraError, ValueError):
    pass


class UndefinedDegree(AlgebraError, ValueError):
    """Raised when asking for the degree of the zero element."""


class DegreeError(AlgebraError, ValueError):
    """A table image does not have the declared degree shift."""


class DegreeConditionError(AlgebraError):
    """The higher operation does not have degree m + n - 3."""


class InadmissibleParams(AlgebraError, ValueError):
    pass


class NotApplicable(AlgebraError, ValueError):
    pass


class HopfStructureError(AlgebraError):
    """Product/coproduct fail associativity, coassociativity or compatibility."""


class StructureParseError(AlgebraError, ValueError):
    pass
