"""Exception types shared across the package.

Domain errors derive from :class:`LeavittError` (CLI exit status 1);
input-syntax errors derive from :class:`UsageError` (CLI exit status 2).
Division by zero raises the builtin ``ZeroDivisionError``.
"""


class LeavittError(Exception):
    """Base class for domain errors."""


# scalar field errors

class FieldMismatchError(LeavittError):
    """Operands live over incompatible scalar fields.

    Rationals embed into any extension; two distinct extensions never mix.
    """


class ZeroConstantTermError(LeavittError):
    """Modulus has zero constant term, so x would not be invertible."""


class DegreeZeroError(LeavittError):
    """Modulus reduces to a nonzero constant; no extension to build."""


class ReduciblePolynomialError(LeavittError):
    """Modulus of degree <= 3 failed the rational-root irreducibility check."""


class NotInvertibleError(LeavittError):
    """Nonzero residue with no inverse (only possible for a trusted,
    actually-reducible modulus)."""


# graph errors

class GraphError(LeavittError):
    pass


class DuplicateNameError(GraphError):
    pass


class DanglingEndpointError(GraphError):
    pass


class BundleLoopError(GraphError):
    """Bundle self-loops are out of scope (infinitely many cycles)."""


class UnknownVertexError(GraphError):
    pass


class UnknownEdgeError(GraphError):
    pass


class NotHereditarySaturatedError(GraphError):
    pass


class NotAdmissibleError(GraphError):
    pass


class NotACycleError(GraphError):
    pass


class NotBreakingVertexError(GraphError):
    pass


class TooLargeError(GraphError):
    pass


# algebra errors

class AlgebraError(LeavittError):
    pass


class UnknownSymbolError(AlgebraError):
    pass


class MixedGraphsError(AlgebraError):
    pass


class NotSquareZeroError(AlgebraError):
    pass


class NotReducedError(AlgebraError):
    pass


# ideal errors

class TypeIIIMembershipUnsupportedError(LeavittError):
    """Membership testing is only implemented for graded ideals."""


# module-action errors

class NotAWitnessEdgeError(LeavittError):
    pass


class NotInvariantError(LeavittError):
    """The action leaves the two-dimensional span."""


# freeness errors

class NoWitnessFoundError(LeavittError):
    """Discovery pipeline produced no certificate; carries a transcript."""

    def __init__(self, message, transcript=None):
        super().__init__(message)
        self.transcript = transcript or []


# input-syntax errors (CLI exit status 2)

class UsageError(Exception):
    pass


class ParseError(UsageError):
    """Expression or polynomial text failed to parse."""


class SchemaError(UsageError):
    """Graph JSON violated the schema."""
