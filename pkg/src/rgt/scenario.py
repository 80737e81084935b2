"""Multi-stage decision pipelines.

A scenario runs an ordered list of stages over one group: influence
formation (a session whose intervals become the subjects' points of view),
structure edits (direct, or gated by a vote session over a separate
universe), and a single final session. Points of view carry across
structure edits untouched; the final session turns them into a
row-constant set-up matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping

from .algebra import ActionUniverse, Alternative
from .errors import (
    AmbiguousStageResult,
    ChoiceOutsideInterval,
    NotDecomposable,
    StageOrderViolation,
    UnknownSubject,
    UnresolvedPointOfView,
)
from .group import Relation, RelationshipGraph, decompose
from .solver import (
    DEFAULT_ENUMERATION_BOUND,
    SYMBOLIC,
    Concrete,
    DecisionInterval,
    InfluenceMatrix,
    InfluenceValue,
    Interval,
    Kind,
    SessionResult,
    resolve_intervals,
    solve_session,
)


# -- stage vocabulary ------------------------------------------------------

@dataclass(frozen=True, slots=True)
class RemoveSubject:
    subject: str


@dataclass(frozen=True, slots=True)
class SetRelation:
    first: str
    second: str
    relation: Relation


@dataclass(frozen=True, slots=True)
class Direct:
    pass


@dataclass(frozen=True, slots=True)
class Unanimity:
    pass


@dataclass(frozen=True, slots=True)
class DeciderIs:
    subject: str


@dataclass(frozen=True, slots=True)
class Vote:
    universe: ActionUniverse
    matrix: InfluenceMatrix
    rule: Unanimity | DeciderIs = Unanimity()


@dataclass(frozen=True, slots=True)
class InfluenceFormation:
    matrix: InfluenceMatrix


@dataclass(frozen=True, slots=True)
class StructureEdit:
    edit: RemoveSubject | SetRelation
    mode: Direct | Vote = Direct()


@dataclass(frozen=True, slots=True)
class FinalSession:
    enumeration_bound: int = DEFAULT_ENUMERATION_BOUND


Stage = InfluenceFormation | StructureEdit | FinalSession


@dataclass(frozen=True, slots=True)
class Scenario:
    universe: ActionUniverse
    graph: RelationshipGraph
    stages: tuple[Stage, ...]
    parallel_blocks: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        finals = [i for i, s in enumerate(self.stages) if isinstance(s, FinalSession)]
        if len(finals) != 1 or finals[0] != len(self.stages) - 1:
            raise StageOrderViolation(
                "a scenario needs exactly one final session, in last position"
            )
        last_end = -1
        for start, end in self.parallel_blocks:
            if not 0 <= start <= end < len(self.stages):
                raise StageOrderViolation(
                    f"parallel block [{start}, {end}] is out of range"
                )
            if start <= last_end:
                raise StageOrderViolation("parallel blocks overlap")
            block = self.stages[start : end + 1]
            influence = sum(isinstance(s, InfluenceFormation) for s in block)
            structure = sum(isinstance(s, StructureEdit) for s in block)
            if influence > 1 or structure > 1 or influence + structure < len(block):
                raise StageOrderViolation(
                    "a parallel block may hold at most one influence stage "
                    "and one structure edit"
                )
            last_end = end

    def block_around(self, index: int) -> tuple[int, int]:
        """The parallel block containing ``index``, or the singleton span."""
        for start, end in self.parallel_blocks:
            if start <= index <= end:
                return (start, end)
        return (index, index)


# -- state and records -----------------------------------------------------

@dataclass(frozen=True, slots=True)
class ChoiceRecord:
    choices: dict[str, Alternative]


@dataclass(frozen=True, slots=True)
class InfluenceRecord:
    session: SessionResult
    points_of_view: dict[str, InfluenceValue]


@dataclass(frozen=True, slots=True)
class EditRecord:
    edit: RemoveSubject | SetRelation
    voted: bool
    adopted: bool
    vote_session: SessionResult | None
    graph: RelationshipGraph


@dataclass(frozen=True, slots=True)
class FinalRecord:
    session: SessionResult


StageRecord = ChoiceRecord | InfluenceRecord | EditRecord | FinalRecord


@dataclass(frozen=True, slots=True)
class ScenarioState:
    scenario: Scenario
    stage_index: int
    graph: RelationshipGraph
    points_of_view: dict[str, InfluenceValue]
    stage_log: tuple[StageRecord, ...] = ()

    @property
    def done(self) -> bool:
        return self.stage_index >= len(self.scenario.stages)

    def final_session(self) -> SessionResult:
        for record in reversed(self.stage_log):
            if isinstance(record, FinalRecord):
                return record.session
        raise StageOrderViolation("the final session has not run yet")


def initial_state(scenario: Scenario) -> ScenarioState:
    return ScenarioState(scenario, 0, scenario.graph, {})


# -- single-stage execution ------------------------------------------------

def _interval_to_point_of_view(interval: DecisionInterval) -> InfluenceValue:
    if interval.kind is Kind.POINT:
        value = interval.forced_value()
        if value is None:
            raise UnresolvedPointOfView(
                f"point of view for {interval.subject!r} stays symbolic: "
                f"{interval.describe()}"
            )
        return Concrete(value)
    if interval.kind is Kind.FREE:
        universe = interval.sup.universe
        return Interval(universe.empty, universe.full)
    if not (interval.inf.is_ground and interval.sup.is_ground):
        raise UnresolvedPointOfView(
            f"point of view for {interval.subject!r} stays symbolic: "
            f"{interval.describe()}"
        )
    return Interval(interval.inf.as_constant(), interval.sup.as_constant())


def run_influence_stage(state: ScenarioState, matrix: InfluenceMatrix) -> ScenarioState:
    """Solve a session and adopt its intervals as the new points of view."""
    polynomial = decompose(state.graph)
    session = solve_session(polynomial, matrix)
    if len(session.branches) != 1:
        raise AmbiguousStageResult(
            f"influence stage split into {len(session.branches)} distinct "
            "outcomes; supply concrete influences instead"
        )
    intervals = resolve_intervals(session.branches[0].intervals)
    points_of_view = {
        subject: _interval_to_point_of_view(interval)
        for subject, interval in intervals.items()
    }
    record = InfluenceRecord(session, dict(points_of_view))
    return replace(
        state,
        points_of_view=points_of_view,
        stage_log=state.stage_log + (record,),
    )


def _vote_passes(stage_mode: Vote, graph: RelationshipGraph, session: SessionResult) -> bool:
    """The edit is adopted only when the rule holds in every branch."""
    full = stage_mode.universe.full
    if isinstance(stage_mode.rule, DeciderIs):
        decider = stage_mode.rule.subject
        if decider not in graph.subjects:
            raise UnknownSubject(f"vote decider {decider!r} is not in the group")
    for branch in session.branches:
        resolved = resolve_intervals(branch.intervals)
        if isinstance(stage_mode.rule, DeciderIs):
            voters = [stage_mode.rule.subject]
        else:
            voters = list(graph.subjects)
        if any(resolved[v].forced_value() != full for v in voters):
            return False
    return True


def _apply_edit(
    graph: RelationshipGraph, edit: RemoveSubject | SetRelation
) -> RelationshipGraph:
    if isinstance(edit, RemoveSubject):
        return graph.remove_subject(edit.subject)
    return graph.set_relation(edit.first, edit.second, edit.relation)


def run_structure_stage(state: ScenarioState, stage: StructureEdit) -> ScenarioState:
    vote_session = None
    if isinstance(stage.mode, Vote):
        polynomial = decompose(state.graph)
        vote_session = solve_session(polynomial, stage.mode.matrix)
        adopted = _vote_passes(stage.mode, state.graph, vote_session)
    else:
        adopted = True
    graph = _apply_edit(state.graph, stage.edit) if adopted else state.graph
    points_of_view = {
        subject: value
        for subject, value in state.points_of_view.items()
        if subject in graph.subjects
    }
    record = EditRecord(
        edit=stage.edit,
        voted=vote_session is not None,
        adopted=adopted,
        vote_session=vote_session,
        graph=graph,
    )
    return replace(
        state,
        graph=graph,
        points_of_view=points_of_view,
        stage_log=state.stage_log + (record,),
    )


def setup_matrix(state: ScenarioState) -> InfluenceMatrix:
    """Row-constant matrix built from the carried points of view."""
    subjects = state.graph.subjects
    missing = [s for s in subjects if s not in state.points_of_view]
    if missing:
        raise UnresolvedPointOfView(
            f"no point of view on record for: {', '.join(sorted(missing))}"
        )
    rows = {s: state.points_of_view[s] for s in subjects}
    return InfluenceMatrix.from_rows(state.scenario.universe, subjects, rows)


def run_final_session(state: ScenarioState, bound: int) -> ScenarioState:
    polynomial = decompose(state.graph)
    session = solve_session(polynomial, setup_matrix(state), bound)
    return replace(state, stage_log=state.stage_log + (FinalRecord(session),))


# -- choices and stepping --------------------------------------------------

def _choice_allowed(value: InfluenceValue, choice: Alternative) -> bool:
    if isinstance(value, Concrete):
        return value.value == choice
    if isinstance(value, Interval):
        return value.inf.leq(choice) and choice.leq(value.sup)
    return True  # symbolic: any alternative may be committed


def apply_choices(
    state: ScenarioState, choices: Mapping[str, Alternative]
) -> ScenarioState:
    """Commit concrete alternatives inside the current points of view."""
    points_of_view = dict(state.points_of_view)
    for subject in sorted(choices):
        choice = choices[subject]
        if subject not in state.graph.subjects:
            raise UnknownSubject(f"choice for unknown subject {subject!r}")
        if subject not in points_of_view:
            raise ChoiceOutsideInterval(
                f"{subject!r} has no interval on record to choose from"
            )
        current = points_of_view[subject]
        if not _choice_allowed(current, choice):
            raise ChoiceOutsideInterval(
                f"choice {choice} for {subject!r} falls outside the current interval"
            )
        points_of_view[subject] = Concrete(choice)
    record = ChoiceRecord(dict(choices))
    return replace(
        state,
        points_of_view=points_of_view,
        stage_log=state.stage_log + (record,),
    )


def _run_one(state: ScenarioState, stage: Stage) -> ScenarioState:
    if isinstance(stage, InfluenceFormation):
        return run_influence_stage(state, stage.matrix)
    if isinstance(stage, StructureEdit):
        return run_structure_stage(state, stage)
    return run_final_session(state, stage.enumeration_bound)


def step_scenario(
    state: ScenarioState,
    stage: Stage,
    human_choices: Mapping[str, Alternative] | None = None,
) -> ScenarioState:
    """Run the next pending stage (or its whole parallel block).

    ``stage`` must be the scenario's next stage; anything else is a
    StageOrderViolation. Human choices are committed before the stage runs.
    """
    scenario = state.scenario
    if state.done:
        raise StageOrderViolation("scenario already ran its final session")
    start, end = scenario.block_around(state.stage_index)
    if state.stage_index != start:
        raise StageOrderViolation(
            "stepping must resume at the start of the parallel block"
        )
    if stage != scenario.stages[start]:
        raise StageOrderViolation(
            f"stage out of order: expected declared stage {start + 1}"
        )
    if human_choices:
        state = apply_choices(state, human_choices)
    if start == end:
        state = _run_one(state, stage)
    else:
        # every stage in the block reads the pre-block state; their writes
        # are disjoint (graph vs points of view) by scenario validation
        base = state
        graph = base.graph
        points_of_view = base.points_of_view
        log = base.stage_log
        for block_stage in scenario.stages[start : end + 1]:
            out = _run_one(base, block_stage)
            if isinstance(block_stage, InfluenceFormation):
                points_of_view = out.points_of_view
            else:
                graph = out.graph
            log = log + out.stage_log[len(base.stage_log) :]
        points_of_view = {
            s: v for s, v in points_of_view.items() if s in graph.subjects
        }
        state = replace(
            state, graph=graph, points_of_view=points_of_view, stage_log=log
        )
    return replace(state, stage_index=end + 1)


# -- whole-scenario runs and reporting -------------------------------------

def alt_text(value: Alternative) -> str:
    if value.is_empty:
        return "0"
    if value.is_full:
        return "1"
    return str(value)


def _influence_text(value: InfluenceValue) -> str:
    if isinstance(value, Concrete):
        return alt_text(value.value)
    if isinstance(value, Interval):
        return f"[{alt_text(value.inf)}, {alt_text(value.sup)}]"
    return "symbolic"


def _edit_text(edit: RemoveSubject | SetRelation) -> str:
    if isinstance(edit, RemoveSubject):
        return f"remove {edit.subject}"
    return f"set ({edit.first}, {edit.second}) = {edit.relation}"


@dataclass(frozen=True, slots=True)
class ScenarioReport:
    scenario: Scenario
    state: ScenarioState

    @property
    def final(self) -> SessionResult:
        return self.state.final_session()

    def render_text(self) -> str:
        lines = [
            f"group of {len(self.scenario.graph.subjects)} over actions "
            f"{{{','.join(self.scenario.universe.actions)}}}"
        ]
        step = 0
        for record in self.state.stage_log:
            if isinstance(record, ChoiceRecord):
                committed = "; ".join(
                    f"{s} = {alt_text(v)}" for s, v in sorted(record.choices.items())
                )
                lines.append(f"committed choices: {committed}")
                continue
            step += 1
            if isinstance(record, InfluenceRecord):
                lines.append(f"step {step}: influence formation")
                lines.append(f"  polynomial: {record.session.polynomial.render()}")
                branch = record.session.branches[0]
                for subject in record.session.subjects:
                    lines.append(f"  {branch.intervals[subject].describe()}")
                povs = "; ".join(
                    f"{s} = {_influence_text(v)}"
                    for s, v in sorted(record.points_of_view.items())
                )
                lines.append(f"  points of view: {povs}")
            elif isinstance(record, EditRecord):
                mode = "vote" if record.voted else "direct"
                outcome = "adopted" if record.adopted else "skipped"
                lines.append(
                    f"step {step}: structure edit ({mode}): "
                    f"{_edit_text(record.edit)} -> {outcome}"
                )
                try:
                    poly_text = decompose(record.graph).render()
                except NotDecomposable:
                    poly_text = "(not decomposable)"
                lines.append(f"  polynomial: {poly_text}")
            elif isinstance(record, FinalRecord):
                lines.append(f"step {step}: final session")
                lines.append(f"  polynomial: {record.session.polynomial.render()}")
                for subject in record.session.subjects:
                    lines.append(f"  {record.session.equations[subject].render()}")
                for number, branch in enumerate(record.session.branches, start=1):
                    chosen = ", ".join(
                        "{" + "; ".join(
                            f"{s} = {alt_text(v)}" for s, v in sorted(a.items())
                        ) + "}"
                        for a in branch.assignments
                    )
                    suffix = f" under {chosen}" if chosen != "{}" else ""
                    lines.append(f"  branch {number}{suffix}:")
                    for subject in record.session.subjects:
                        lines.append(f"    {branch.intervals[subject].describe()}")
        return "\n".join(lines) + "\n"


def run_scenario(scenario: Scenario) -> ScenarioReport:
    state = initial_state(scenario)
    while not state.done:
        state = step_scenario(state, scenario.stages[state.stage_index])
    return ScenarioReport(scenario, state)
