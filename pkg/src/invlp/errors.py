"""Exception hierarchy shared across the package.

Three top-level families map onto CLI exit codes: ValidationError (2),
SolverError (3), FormatError (4).
"""


class InverseLpError(Exception):
    pass


class ValidationError(InverseLpError):
    pass


class FormatError(InverseLpError):
    pass


class SolverError(InverseLpError):
    pass


class NoFiniteSolution(SolverError):
    pass


class BIsZero(SolverError):
    pass


class DimensionTooLarge(SolverError):
    pass


class DegeneratePair(SolverError):
    pass


class ZeroVector(SolverError):
    pass


class EmptyFace(SolverError):
    pass


class NumericFailure(SolverError):
    pass


class InfeasibleForward(SolverError):
    pass


class AllBranchesInfeasible(SolverError):
    pass


class StructureNotNonneg(SolverError):
    pass


class StructuredDegenerate(SolverError):
    pass


class BaselineUndefined(SolverError):
    pass


class DegenerateBaseline(SolverError):
    pass
