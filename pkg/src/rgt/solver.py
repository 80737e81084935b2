"""Per-subject decision equations and whole-session interval solving.

Each subject s of a polynomial P obeys the fixed-point equation
``s = pos·s + neg·s̄`` with ``pos = P[s:=1]`` and ``neg = P[s:=0]``; its
solution set is the lattice interval [neg, pos]. A session substitutes the
influence matrix into every subject's equation. Interval-valued influences
either branch the session (small intervals are enumerated) or stay in the
result as free variables (large ones).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping

from .algebra import (
    ActionUniverse,
    Alternative,
    check_name,
    enumerate_between,
    interval_size,
)
from .errors import (
    EmptyInterval,
    GuardExceeded,
    MatrixIncomplete,
    NotSolvable,
    SelfRelation,
    UnboundVariable,
    UniverseMismatch,
    UnknownSubject,
)
from .group import Join, Meet, Polynomial, Var
from .symbolic import SymbolicExpr

DEFAULT_ENUMERATION_BOUND = 4


# -- influence values ------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Concrete:
    """A fixed alternative exerted on the target."""

    value: Alternative


@dataclass(frozen=True, slots=True)
class Interval:
    """An influence known only up to lattice bounds inf ⊆ value ⊆ sup."""

    inf: Alternative
    sup: Alternative

    def __post_init__(self):
        if not self.inf.leq(self.sup):
            raise EmptyInterval(f"influence bounds {self.inf} ⊄ {self.sup}")

    def size(self) -> int:
        return interval_size(self.inf, self.sup)


class _Symbolic:
    """Marker: the influence stays a free variable in the result."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "SYMBOLIC"


SYMBOLIC = _Symbolic()

InfluenceValue = Concrete | Interval | _Symbolic


def _check_value(universe: ActionUniverse, value: InfluenceValue) -> None:
    if isinstance(value, Concrete):
        alts = (value.value,)
    elif isinstance(value, Interval):
        alts = (value.inf, value.sup)
    elif isinstance(value, _Symbolic):
        return
    else:
        raise TypeError(f"not an influence value: {value!r}")
    for alt in alts:
        if alt.universe != universe:
            raise UniverseMismatch("influence value uses a different universe")


class InfluenceMatrix:
    """Who exerts what on whom: entry (source, target) feeds the source's
    variable inside the target's decision equation.

    The diagonal is never stored; a subject's own variable is the unknown
    of their equation, not an influence.
    """

    __slots__ = ("_universe", "_subjects", "_entries")

    def __init__(
        self,
        universe: ActionUniverse,
        subjects: Iterable[str],
        entries: Mapping[tuple[str, str], InfluenceValue],
    ):
        names = tuple(subjects)
        for name in names:
            check_name(name, "subject")
        known = set(names)
        if len(known) != len(names):
            raise UnknownSubject("subject ids must be distinct")
        stored: dict[tuple[str, str], InfluenceValue] = {}
        for (source, target), value in entries.items():
            for name in (source, target):
                if name not in known:
                    raise UnknownSubject(f"unknown subject {name!r} in matrix")
            if source == target:
                raise SelfRelation(
                    f"diagonal entry for {source!r}: a subject's influence on "
                    "their own equation is the unknown itself"
                )
            _check_value(universe, value)
            stored[(source, target)] = value
        missing = [
            f"({s}, {t})"
            for s in names
            for t in names
            if s != t and (s, t) not in stored
        ]
        if missing:
            raise MatrixIncomplete(
                f"missing influence entries: {', '.join(missing)}", detail=missing
            )
        self._universe = universe
        self._subjects = names
        self._entries = stored

    @classmethod
    def from_rows(
        cls,
        universe: ActionUniverse,
        subjects: Iterable[str],
        rows: Mapping[str, InfluenceValue],
    ) -> "InfluenceMatrix":
        """Row-constant matrix: each source exerts one value on every target."""
        names = tuple(subjects)
        missing = [s for s in names if s not in rows]
        if missing:
            raise MatrixIncomplete(
                f"no row value for subject(s): {', '.join(missing)}", detail=missing
            )
        entries = {
            (source, target): rows[source]
            for source in names
            for target in names
            if source != target
        }
        return cls(universe, names, entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InfluenceMatrix):
            return NotImplemented
        return (
            self._universe == other._universe
            and self._subjects == other._subjects
            and self._entries == other._entries
        )

    __hash__ = None

    @property
    def universe(self) -> ActionUniverse:
        return self._universe

    @property
    def subjects(self) -> tuple[str, ...]:
        return self._subjects

    def entry(self, source: str, target: str) -> InfluenceValue:
        try:
            return self._entries[(source, target)]
        except KeyError:
            raise UnknownSubject(f"no matrix entry ({source}, {target})") from None

    def influences_on(self, target: str) -> dict[str, InfluenceValue]:
        """Column view: what each other subject exerts on ``target``."""
        if target not in self._subjects:
            raise UnknownSubject(f"unknown subject {target!r}")
        return {
            source: self._entries[(source, target)]
            for source in self._subjects
            if source != target
        }


# -- decision equations ----------------------------------------------------

def polynomial_to_expr(polynomial: Polynomial, universe: ActionUniverse) -> SymbolicExpr:
    if isinstance(polynomial, Var):
        return SymbolicExpr.variable(polynomial.subject, universe)
    parts = [polynomial_to_expr(child, universe) for child in polynomial.children]
    combined = parts[0]
    for part in parts[1:]:
        combined = combined.meet(part) if isinstance(polynomial, Meet) else combined.join(part)
    return combined


@dataclass(frozen=True, slots=True)
class DecisionEquation:
    subject: str
    pos: SymbolicExpr
    neg: SymbolicExpr

    def render(self) -> str:
        s = self.subject
        return f"{s} = ({self.pos})·{s} + ({self.neg})·¬{s}"


def decision_equation(
    polynomial: Polynomial, subject: str, universe: ActionUniverse
) -> DecisionEquation:
    """Two-point form: pos is the polynomial at subject=1, neg at subject=0."""
    if subject not in polynomial.subject_set():
        raise UnknownSubject(f"subject {subject!r} does not appear in the polynomial")
    expr = polynomial_to_expr(polynomial, universe)
    pos = expr.substitute({subject: SymbolicExpr.one(universe)})
    neg = expr.substitute({subject: SymbolicExpr.zero(universe)})
    return DecisionEquation(subject, pos, neg)


# -- decision intervals ----------------------------------------------------

class Kind(enum.Enum):
    POINT = "point"
    FREE = "free"
    RANGE = "range"


def _bracket(expr: SymbolicExpr) -> str:
    text = str(expr)
    return f"({text})" if len(expr.terms) > 1 else text


@dataclass(frozen=True, slots=True)
class DecisionInterval:
    subject: str
    sup: SymbolicExpr
    inf: SymbolicExpr
    kind: Kind

    @classmethod
    def classify(cls, subject: str, sup: SymbolicExpr, inf: SymbolicExpr) -> "DecisionInterval":
        # canonical monotone form makes the 0/1 checks structural, but
        # point-ness needs real containment both ways
        if not inf.leq(sup):
            raise NotSolvable(
                f"equation for {subject!r} has no solution: {inf} ⊄ {sup}"
            )
        if inf.equivalent(sup):
            kind = Kind.POINT
        elif inf.is_zero and sup.is_one:
            kind = Kind.FREE
        else:
            kind = Kind.RANGE
        return cls(subject, sup, inf, kind)

    def forced_value(self) -> Alternative | None:
        """The single ground alternative this interval pins down, if any."""
        if self.kind is not Kind.POINT:
            return None
        for bound in (self.inf, self.sup):
            if bound.is_ground:
                return bound.as_constant()
        return None

    def describe(self) -> str:
        if self.kind is Kind.POINT:
            return f"{self.subject} = {self.inf}"
        if self.kind is Kind.FREE:
            return f"free choice (1 ⊇ {self.subject} ⊇ 0)"
        return f"{_bracket(self.sup)} ⊇ {self.subject} ⊇ {_bracket(self.inf)}"


def solve_subject(
    eq: DecisionEquation, influences: Mapping[str, InfluenceValue]
) -> DecisionInterval:
    """Substitute concrete influences; Symbolic (and Interval) entries stay
    free variables. Returns the classified solution interval."""
    universe = eq.pos.universe
    needed = eq.pos.free_variables | eq.neg.free_variables
    missing = needed - set(influences)
    if missing:
        raise UnboundVariable(
            f"no influence given for variable(s): {', '.join(sorted(missing))}"
        )
    bindings: dict[str, SymbolicExpr] = {}
    for name, value in influences.items():
        if isinstance(value, Concrete):
            if value.value.universe != universe:
                raise UniverseMismatch(
                    f"influence for {name!r} uses a different universe"
                )
            bindings[name] = SymbolicExpr.constant(value.value)
    sup = eq.pos.substitute(bindings)
    inf = eq.neg.substitute(bindings)
    return DecisionInterval.classify(eq.subject, sup, inf)


# -- sessions --------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Branch:
    """One resolution of the enumerated interval influences.

    ``assignments`` lists every choice combination that produced these
    intervals; merged branches carry several.
    """

    assignments: tuple[dict[str, Alternative], ...]
    intervals: dict[str, DecisionInterval]


@dataclass(frozen=True, slots=True)
class SessionResult:
    universe: ActionUniverse
    polynomial: Polynomial
    subjects: tuple[str, ...]
    equations: dict[str, DecisionEquation]
    branches: tuple[Branch, ...]

    def single_branch(self) -> Branch:
        if len(self.branches) != 1:
            raise NotSolvable(
                f"session has {len(self.branches)} distinct outcomes, expected one"
            )
        return self.branches[0]


def _enumeration_plan(
    matrix: InfluenceMatrix, subjects: tuple[str, ...], bound: int
) -> dict[str, list[Alternative]]:
    """Sources whose interval influences get expanded into branches.

    A source is expanded only when it exerts one identical interval on
    every target (so a single choice is coherent) and the interval has at
    most ``bound`` elements. Any other interval influence is left symbolic.
    """
    plan: dict[str, list[Alternative]] = {}
    for source in subjects:
        outgoing = {
            matrix.entry(source, target)
            for target in subjects
            if target != source
        }
        intervals = {v for v in outgoing if isinstance(v, Interval)}
        if len(intervals) != 1:
            continue
        interval = intervals.pop()
        if interval.size() <= bound:
            plan[source] = enumerate_between(interval.inf, interval.sup)
    return plan


def solve_session(
    polynomial: Polynomial,
    matrix: InfluenceMatrix,
    enumeration_bound: int = DEFAULT_ENUMERATION_BOUND,
) -> SessionResult:
    subjects = tuple(sorted(polynomial.subject_set()))
    if set(matrix.subjects) != set(subjects):
        raise UnknownSubject(
            "matrix subjects do not match the polynomial: "
            f"{sorted(matrix.subjects)} vs {list(subjects)}"
        )
    universe = matrix.universe
    equations = {s: decision_equation(polynomial, s, universe) for s in subjects}

    plan = _enumeration_plan(matrix, subjects, enumeration_bound)
    enumerated_sources = [s for s in subjects if s in plan]

    merged: list[tuple[dict[str, DecisionInterval], list[dict[str, Alternative]]]] = []
    for choices in product(*(plan[s] for s in enumerated_sources)):
        assignment = dict(zip(enumerated_sources, choices))
        intervals: dict[str, DecisionInterval] = {}
        for subject in subjects:
            influences: dict[str, InfluenceValue] = {}
            for source, value in matrix.influences_on(subject).items():
                if isinstance(value, Interval) and source in assignment:
                    value = Concrete(assignment[source])
                influences[source] = value
            try:
                intervals[subject] = solve_subject(equations[subject], influences)
            except GuardExceeded as exc:
                raise NotSolvable(
                    f"session too large to classify: {exc}", detail=str(exc)
                ) from exc
        for known, assignments in merged:
            if known == intervals:
                assignments.append(assignment)
                break
        else:
            merged.append((intervals, [assignment]))

    return SessionResult(
        universe=universe,
        polynomial=polynomial,
        subjects=subjects,
        equations=equations,
        branches=tuple(
            Branch(tuple(assignments), intervals) for intervals, assignments in merged
        ),
    )


def resolve_intervals(
    intervals: Mapping[str, DecisionInterval]
) -> dict[str, DecisionInterval]:
    """Feed every pinned-down subject's value back into the other subjects'
    bounds until nothing moves. Settles intervals that are only symbolic
    because they mention subjects whose decisions are already forced."""
    current = dict(intervals)
    while True:
        bindings = {
            subject: interval.forced_value()
            for subject, interval in current.items()
        }
        bindings = {s: v for s, v in bindings.items() if v is not None}
        changed = False
        for subject, interval in current.items():
            applicable = {s: v for s, v in bindings.items() if s != subject}
            if not applicable or not (
                set(applicable) & (interval.sup.free_variables | interval.inf.free_variables)
            ):
                continue
            sup = interval.sup.substitute(applicable)
            inf = interval.inf.substitute(applicable)
            current[subject] = DecisionInterval.classify(subject, sup, inf)
            changed = True
        if not changed:
            return current


# -- diagonal form ---------------------------------------------------------

def render_diagonal_form(polynomial: Polynomial) -> str:
    """Stacked bracket rendering, deepest level first, ending with the fold.

    The last line folds the whole stack back together; the fold always
    equals the plain rendering of the polynomial.
    """
    single = all(len(s) == 1 for s in polynomial.subject_set())

    def depth_of(node: Polynomial) -> int:
        if isinstance(node, Var):
            return 0
        return 1 + max(depth_of(child) for child in node.children)

    def cut(node: Polynomial, depth: int) -> str | None:
        if depth == 0:
            return f"[{node._render(single)}]"
        if isinstance(node, Var):
            return None
        parts = [cut(child, depth - 1) for child in node.children]
        kept = [p for p in parts if p is not None]
        if not kept:
            return None
        sep = " + " if isinstance(node, Join) else ("" if single else "·")
        return sep.join(kept)

    def fold(node: Polynomial) -> str:
        if isinstance(node, Var):
            return node.subject
        parts = []
        for child in node.children:
            text = fold(child)
            if isinstance(node, Meet) and isinstance(child, Join):
                text = f"({text})"
            parts.append(text)
        sep = " + " if isinstance(node, Join) else ("" if single else "·")
        return sep.join(parts)

    lines = []
    for depth in range(depth_of(polynomial), -1, -1):
        line = cut(polynomial, depth)
        if line is not None:
            lines.append(line)
    lines[-1] += f" = {fold(polynomial)}"
    return "\n".join(lines)
