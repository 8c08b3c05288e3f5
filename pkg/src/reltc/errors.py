"""Exception hierarchy shared by all reltc modules."""


class ReltcError(Exception):
    """Base class for every error raised by this package."""


# spaces

class DuplicatePoint(ReltcError):
    pass


class EmptyConfiguration(ReltcError):
    pass


class DimensionMismatch(ReltcError):
    pass


class PoleExcluded(ReltcError):
    pass


class InvalidConfiguration(ReltcError):
    pass


# planners

class EndpointMismatch(ReltcError):
    pass


class Uncovered(ReltcError):
    """No rule of a planner accepts the given input pair."""


class GradeOverflow(Uncovered):
    """A restricted product planner was asked for a grade it dropped."""

    def __init__(self, grade, max_grade):
        super().__init__(f"pair needs grade {grade} > {max_grade}; input is not a configuration pair")
        self.grade = grade
        self.max_grade = max_grade


class NotPartition(ReltcError):
    pass


class HomotopyEndpointMismatch(ReltcError):
    pass


class NotFixedPointFree(ReltcError):
    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class NotRetraction(ReltcError):
    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class AnchorInY(ReltcError):
    pass


# cohomology

class AlgebraMismatch(ReltcError):
    pass


class FieldMismatch(ReltcError):
    pass


class SourceMismatch(ReltcError):
    pass


class NotHomogeneous(ReltcError):
    pass


class DegreeAssumptionViolated(ReltcError):
    pass


class InvalidPresentation(ReltcError):
    """An algebra or map presentation failed to parse or validate."""


class AxiomViolation(InvalidPresentation):
    def __init__(self, axiom, items, detail=""):
        names = ", ".join(str(i) for i in items)
        msg = f"{axiom} violated at ({names})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.axiom = axiom
        self.items = tuple(items)


# bounds

class InconsistentBounds(ReltcError):
    pass


class UnsupportedFamily(ReltcError):
    pass


class ParamOutOfRange(ReltcError):
    pass
