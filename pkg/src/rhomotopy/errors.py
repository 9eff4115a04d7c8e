"""Exception hierarchy shared by all modules."""


class RHomotopyError(Exception):
    """Base class for every error raised by the package."""


class SpaceAxiomError(RHomotopyError, ValueError):
    pass


class NotSquare(SpaceAxiomError):
    pass


class NegativeEntry(SpaceAxiomError):
    def __init__(self, i, j, value):
        super().__init__(f"negative distance d({i},{j}) = {value}")
        self.i, self.j, self.value = i, j, value


class NonzeroDiagonal(SpaceAxiomError):
    def __init__(self, i, value):
        super().__init__(f"d({i},{i}) = {value}, expected 0")
        self.i, self.value = i, value


class ZeroOffDiagonal(SpaceAxiomError):
    def __init__(self, i, j):
        super().__init__(f"d({i},{j}) = 0 for distinct points")
        self.i, self.j = i, j


class TriangleViolation(SpaceAxiomError):
    def __init__(self, x, y, z):
        super().__init__(f"triangle inequality fails: d({x},{z}) > d({x},{y}) + d({y},{z})")
        self.x, self.y, self.z = x, y, z


class BackendMismatch(RHomotopyError, TypeError):
    pass


class MismatchedSpaces(RHomotopyError, ValueError):
    pass


class NotAShortMap(RHomotopyError, ValueError):
    pass


class SearchBudgetExceeded(RHomotopyError):
    def __init__(self, budget):
        super().__init__(f"search exceeded the node budget of {budget}")
        self.budget = budget


class NotARetraction(RHomotopyError, ValueError):
    pass


class NotShort(RHomotopyError, ValueError):
    pass


class NotASubdigraph(RHomotopyError, ValueError):
    pass


class EmptyInterval(RHomotopyError, ValueError):
    pass


class DegreeBoundRequired(RHomotopyError, ValueError):
    pass


class NotComparable(RHomotopyError, ValueError):
    pass


class DegreeNotMaterialized(RHomotopyError, ValueError):
    pass


class NotAChainMap(RHomotopyError, ValueError):
    pass


class NonIntegerQueryOnDigraph(RHomotopyError, ValueError):
    pass


class PreconditionViolated(RHomotopyError, ValueError):
    pass


class NotEuclidean(RHomotopyError, ValueError):
    pass


class UnsupportedCoefficients(RHomotopyError, ValueError):
    pass


class DualPathMismatch(RHomotopyError):
    """Two independent computations of the same invariant disagree."""


class ParseError(RHomotopyError, ValueError):
    def __init__(self, message, line=None, col=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + message)
        self.line, self.col = line, col
