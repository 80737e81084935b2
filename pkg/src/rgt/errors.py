"""Exception hierarchy shared across the engine.

Every error carries a stable ``code`` string used by the CLI (greppable
prefix) and the HTTP API (structured error body).
"""

from __future__ import annotations


class RgtError(Exception):
    """Base class for all engine errors."""

    code = "Error"

    def __init__(self, message: str, *, detail: object = None):
        super().__init__(message)
        self.detail = detail


# -- algebra ---------------------------------------------------------------

class EmptyUniverse(RgtError):
    code = "EmptyUniverse"


class DuplicateAction(RgtError):
    code = "DuplicateAction"


class UnknownAction(RgtError):
    code = "UnknownAction"


class InvalidName(RgtError):
    code = "InvalidName"


class UniverseMismatch(RgtError):
    code = "UniverseMismatch"


class EmptyInterval(RgtError):
    code = "EmptyInterval"


# -- symbolic --------------------------------------------------------------

class GuardExceeded(RgtError):
    code = "GuardExceeded"


class UnboundVariable(RgtError):
    code = "UnboundVariable"


class ExprSyntaxError(RgtError):
    code = "ExprSyntaxError"


# -- group -----------------------------------------------------------------

class IncompleteGraph(RgtError):
    code = "IncompleteGraph"


class DuplicateRelation(RgtError):
    code = "DuplicateRelation"


class SelfRelation(RgtError):
    code = "SelfRelation"


class UnknownSubject(RgtError):
    code = "UnknownSubject"


class LastSubjectRemoval(RgtError):
    code = "LastSubjectRemoval"


class NotDecomposable(RgtError):
    code = "NotDecomposable"


class InvalidPolynomial(RgtError):
    code = "InvalidPolynomial"


# -- solver ----------------------------------------------------------------

class MatrixIncomplete(RgtError):
    code = "MatrixIncomplete"


class NotSolvable(RgtError):
    code = "NotSolvable"


# -- scenario --------------------------------------------------------------

class UnresolvedPointOfView(RgtError):
    code = "UnresolvedPointOfView"


class AmbiguousStageResult(RgtError):
    code = "AmbiguousStageResult"


class ChoiceOutsideInterval(RgtError):
    code = "ChoiceOutsideInterval"


class StageOrderViolation(RgtError):
    code = "StageOrderViolation"


class SchemaError(RgtError):
    code = "SchemaError"


# -- api server ------------------------------------------------------------

class UnknownScenario(RgtError):
    code = "UnknownScenario"


class VersionConflict(RgtError):
    code = "VersionConflict"
