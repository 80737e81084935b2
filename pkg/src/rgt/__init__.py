"""Decision engine for groups of interacting subjects.

Alliance and conflict structure compiles to a polynomial over a small
boolean algebra of action sets; each subject's equation solves to an
interval of admissible choices, and multi-stage scenarios thread those
intervals through structure changes down to a final session.
"""

from __future__ import annotations

from .algebra import (
    ActionUniverse,
    Alternative,
    enumerate_between,
    interval_size,
)
from .errors import (
    AmbiguousStageResult,
    ChoiceOutsideInterval,
    DuplicateRelation,
    EmptyInterval,
    EmptyUniverse,
    GuardExceeded,
    IncompleteGraph,
    InvalidName,
    InvalidPolynomial,
    LastSubjectRemoval,
    MatrixIncomplete,
    NotDecomposable,
    NotSolvable,
    RgtError,
    SchemaError,
    SelfRelation,
    StageOrderViolation,
    UnboundVariable,
    UniverseMismatch,
    UnknownAction,
    UnknownScenario,
    UnknownSubject,
    UnresolvedPointOfView,
    VersionConflict,
)
from .group import (
    Join,
    Meet,
    Polynomial,
    Relation,
    RelationshipGraph,
    Var,
    decompose,
    join_of,
    meet_of,
    polynomial_to_graph,
)
from .scenario import (
    DeciderIs,
    Direct,
    FinalSession,
    InfluenceFormation,
    RemoveSubject,
    Scenario,
    ScenarioReport,
    ScenarioState,
    SetRelation,
    StructureEdit,
    Unanimity,
    Vote,
    initial_state,
    run_scenario,
    step_scenario,
)
from .solver import (
    DEFAULT_ENUMERATION_BOUND,
    SYMBOLIC,
    Branch,
    Concrete,
    DecisionEquation,
    DecisionInterval,
    InfluenceMatrix,
    Interval,
    Kind,
    SessionResult,
    decision_equation,
    render_diagonal_form,
    resolve_intervals,
    solve_session,
    solve_subject,
)
from .symbolic import SymbolicExpr, Term, parse_expr

__all__ = [
    "ActionUniverse",
    "Alternative",
    "AmbiguousStageResult",
    "Branch",
    "ChoiceOutsideInterval",
    "Concrete",
    "DEFAULT_ENUMERATION_BOUND",
    "DeciderIs",
    "DecisionEquation",
    "DecisionInterval",
    "Direct",
    "DuplicateRelation",
    "EmptyInterval",
    "EmptyUniverse",
    "FinalSession",
    "GuardExceeded",
    "IncompleteGraph",
    "InfluenceFormation",
    "InfluenceMatrix",
    "Interval",
    "InvalidName",
    "InvalidPolynomial",
    "Join",
    "Kind",
    "LastSubjectRemoval",
    "MatrixIncomplete",
    "Meet",
    "NotDecomposable",
    "NotSolvable",
    "Polynomial",
    "Relation",
    "RelationshipGraph",
    "RemoveSubject",
    "RgtError",
    "SYMBOLIC",
    "Scenario",
    "ScenarioReport",
    "ScenarioState",
    "SchemaError",
    "SelfRelation",
    "SessionResult",
    "SetRelation",
    "StageOrderViolation",
    "StructureEdit",
    "SymbolicExpr",
    "Term",
    "Unanimity",
    "UnboundVariable",
    "UniverseMismatch",
    "UnknownAction",
    "UnknownScenario",
    "UnknownSubject",
    "UnresolvedPointOfView",
    "Var",
    "VersionConflict",
    "Vote",
    "decision_equation",
    "decompose",
    "enumerate_between",
    "initial_state",
    "interval_size",
    "join_of",
    "meet_of",
    "parse_expr",
    "polynomial_to_graph",
    "render_diagonal_form",
    "resolve_intervals",
    "run_scenario",
    "solve_session",
    "solve_subject",
    "step_scenario",
]

__version__ = "0.1.0"
