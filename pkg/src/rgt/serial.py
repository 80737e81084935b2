"""JSON schemas for scenario files, session inputs and result payloads.

One vocabulary everywhere: alternatives as sorted action lists (strings
``"0"``, ``"1"`` and ``"{α,β}"`` are accepted on input), influence entries
as a list (concrete), ``"symbolic"``, or ``{"inf": ..., "sup": ...}``.
Documents carry ``format_version`` "1".
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .algebra import ActionUniverse, Alternative
from .errors import RgtError, SchemaError, StageOrderViolation
from .group import Relation, RelationshipGraph
from .scenario import (
    ChoiceRecord,
    DeciderIs,
    Direct,
    EditRecord,
    FinalRecord,
    FinalSession,
    InfluenceFormation,
    InfluenceRecord,
    RemoveSubject,
    Scenario,
    ScenarioReport,
    ScenarioState,
    SetRelation,
    Stage,
    StructureEdit,
    Unanimity,
    Vote,
)
from .solver import (
    DEFAULT_ENUMERATION_BOUND,
    SYMBOLIC,
    Concrete,
    DecisionInterval,
    InfluenceMatrix,
    InfluenceValue,
    Interval,
    SessionResult,
)

FORMAT_VERSION = "1"


def load_document(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top level must be an object")
    return doc


def dump_text(doc: Any) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def _require(doc: Mapping, key: str, kind: type | tuple[type, ...]) -> Any:
    if key not in doc:
        raise SchemaError(f"missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        names = kind if isinstance(kind, tuple) else (kind,)
        wanted = " or ".join(k.__name__ for k in names)
        raise SchemaError(f"field {key!r} must be {wanted}")
    return value


def check_version(doc: Mapping) -> None:
    version = _require(doc, "format_version", str)
    if version != FORMAT_VERSION:
        raise SchemaError(
            f"unsupported format_version {version!r}, expected {FORMAT_VERSION!r}"
        )


# -- primitives ------------------------------------------------------------

def parse_universe(doc: Any) -> ActionUniverse:
    if not isinstance(doc, list) or not all(isinstance(a, str) for a in doc):
        raise SchemaError("'universe' must be a list of action names")
    return ActionUniverse(doc)


def parse_alt(universe: ActionUniverse, doc: Any) -> Alternative:
    if isinstance(doc, str):
        return universe.parse_alternative(doc)
    if isinstance(doc, list) and all(isinstance(a, str) for a in doc):
        return universe.alternative(doc)
    raise SchemaError(f"cannot read an alternative from {doc!r}")


def encode_alt(value: Alternative) -> list[str]:
    return list(value.members)


def parse_graph(subjects: Any, relations: Any) -> RelationshipGraph:
    if not isinstance(subjects, list) or not all(isinstance(s, str) for s in subjects):
        raise SchemaError("'subjects' must be a list of subject ids")
    if not isinstance(relations, list):
        raise SchemaError("'relations' must be a list")
    triples = []
    for item in relations:
        if not isinstance(item, dict):
            raise SchemaError("each relation must be an object")
        pair = _require(item, "pair", list)
        if len(pair) != 2 or not all(isinstance(s, str) for s in pair):
            raise SchemaError(f"relation pair {pair!r} must name two subjects")
        relation = Relation.parse(_require(item, "relation", str))
        triples.append((pair[0], pair[1], relation))
    return RelationshipGraph(subjects, triples)


def encode_graph(graph: RelationshipGraph) -> dict:
    return {
        "subjects": list(graph.subjects),
        "relations": [
            {"pair": [s1, s2], "relation": str(rel)} for s1, s2, rel in graph.pairs()
        ],
    }


def parse_influence_value(universe: ActionUniverse, doc: Any) -> InfluenceValue:
    if doc == "symbolic":
        return SYMBOLIC
    if isinstance(doc, dict):
        return Interval(
            parse_alt(universe, _require(doc, "inf", (str, list))),
            parse_alt(universe, _require(doc, "sup", (str, list))),
        )
    return Concrete(parse_alt(universe, doc))


def encode_influence_value(value: InfluenceValue) -> Any:
    if isinstance(value, Concrete):
        return encode_alt(value.value)
    if isinstance(value, Interval):
        return {"inf": encode_alt(value.inf), "sup": encode_alt(value.sup)}
    return "symbolic"


def parse_matrix(
    universe: ActionUniverse, doc: Any, subjects: list[str] | None = None
) -> InfluenceMatrix:
    """Row-major: ``{source: {target: entry}}``. When ``subjects`` is not
    given the row keys define the subject set."""
    if not isinstance(doc, dict):
        raise SchemaError("'matrix' must be an object of per-source rows")
    names = list(subjects) if subjects is not None else sorted(doc)
    entries: dict[tuple[str, str], InfluenceValue] = {}
    for source, row in doc.items():
        if not isinstance(row, dict):
            raise SchemaError(f"matrix row {source!r} must be an object")
        for target, entry in row.items():
            entries[(source, target)] = parse_influence_value(universe, entry)
    return InfluenceMatrix(universe, names, entries)


def encode_matrix(matrix: InfluenceMatrix) -> dict:
    doc: dict[str, dict[str, Any]] = {s: {} for s in matrix.subjects}
    for source in matrix.subjects:
        for target in matrix.subjects:
            if source != target:
                doc[source][target] = encode_influence_value(
                    matrix.entry(source, target)
                )
    return doc


# -- stages and scenarios --------------------------------------------------

def _parse_edit(doc: Any) -> RemoveSubject | SetRelation:
    if not isinstance(doc, dict):
        raise SchemaError("'edit' must be an object")
    action = _require(doc, "action", str)
    if action == "remove_subject":
        return RemoveSubject(_require(doc, "subject", str))
    if action == "set_relation":
        pair = _require(doc, "pair", list)
        if len(pair) != 2:
            raise SchemaError("edit pair must name two subjects")
        return SetRelation(pair[0], pair[1], Relation.parse(_require(doc, "relation", str)))
    raise SchemaError(f"unknown edit action {action!r}")


def _encode_edit(edit: RemoveSubject | SetRelation) -> dict:
    if isinstance(edit, RemoveSubject):
        return {"action": "remove_subject", "subject": edit.subject}
    return {
        "action": "set_relation",
        "pair": [edit.first, edit.second],
        "relation": str(edit.relation),
    }


def _parse_mode(doc: Any) -> Direct | Vote:
    if doc is None:
        return Direct()
    if not isinstance(doc, dict):
        raise SchemaError("'mode' must be an object")
    kind = _require(doc, "type", str)
    if kind == "direct":
        return Direct()
    if kind != "vote":
        raise SchemaError(f"unknown edit mode {kind!r}")
    universe = parse_universe(_require(doc, "universe", list))
    matrix = parse_matrix(universe, _require(doc, "matrix", dict))
    rule_doc = doc.get("rule", "unanimity")
    if rule_doc == "unanimity":
        rule: Unanimity | DeciderIs = Unanimity()
    elif isinstance(rule_doc, dict) and "decider" in rule_doc:
        rule = DeciderIs(_require(rule_doc, "decider", str))
    else:
        raise SchemaError(f"unknown vote rule {rule_doc!r}")
    return Vote(universe, matrix, rule)


def _encode_mode(mode: Direct | Vote) -> dict:
    if isinstance(mode, Direct):
        return {"type": "direct"}
    rule: Any = "unanimity"
    if isinstance(mode.rule, DeciderIs):
        rule = {"decider": mode.rule.subject}
    return {
        "type": "vote",
        "universe": list(mode.universe.actions),
        "matrix": encode_matrix(mode.matrix),
        "rule": rule,
    }


def parse_stage(universe: ActionUniverse, doc: Any, default_bound: int) -> Stage:
    if not isinstance(doc, dict):
        raise SchemaError("each stage must be an object")
    kind = _require(doc, "type", str)
    if kind == "influence":
        return InfluenceFormation(parse_matrix(universe, _require(doc, "matrix", dict)))
    if kind == "structure":
        return StructureEdit(_parse_edit(_require(doc, "edit", dict)), _parse_mode(doc.get("mode")))
    if kind == "final":
        bound = doc.get("enumeration_bound", default_bound)
        if not isinstance(bound, int) or bound < 1:
            raise SchemaError("'enumeration_bound' must be a positive integer")
        return FinalSession(bound)
    raise SchemaError(f"unknown stage type {kind!r}")


def encode_stage(stage: Stage) -> dict:
    if isinstance(stage, InfluenceFormation):
        return {"type": "influence", "matrix": encode_matrix(stage.matrix)}
    if isinstance(stage, StructureEdit):
        return {
            "type": "structure",
            "edit": _encode_edit(stage.edit),
            "mode": _encode_mode(stage.mode),
        }
    return {"type": "final", "enumeration_bound": stage.enumeration_bound}


def parse_scenario(doc: Mapping) -> Scenario:
    check_version(doc)
    universe = parse_universe(_require(doc, "universe", list))
    graph = parse_graph(_require(doc, "subjects", list), _require(doc, "relations", list))
    default_bound = doc.get("enumeration_bound", DEFAULT_ENUMERATION_BOUND)
    if not isinstance(default_bound, int) or default_bound < 1:
        raise SchemaError("'enumeration_bound' must be a positive integer")
    stage_docs = _require(doc, "stages", list)
    stages = tuple(parse_stage(universe, s, default_bound) for s in stage_docs)
    blocks = []
    for block in doc.get("parallel_blocks", []):
        if (
            not isinstance(block, list)
            or len(block) != 2
            or not all(isinstance(i, int) for i in block)
        ):
            raise SchemaError("each parallel block must be [start, end]")
        blocks.append((block[0], block[1]))
    return Scenario(universe, graph, stages, tuple(blocks))


def scenario_to_doc(scenario: Scenario) -> dict:
    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "universe": list(scenario.universe.actions),
        **encode_graph(scenario.graph),
        "stages": [encode_stage(stage) for stage in scenario.stages],
    }
    if scenario.parallel_blocks:
        doc["parallel_blocks"] = [list(b) for b in scenario.parallel_blocks]
    return doc


# -- session inputs and results --------------------------------------------

def parse_session_doc(
    doc: Mapping, *, versioned: bool = True
) -> tuple[ActionUniverse, RelationshipGraph, InfluenceMatrix, int]:
    if versioned:
        check_version(doc)
    universe = parse_universe(_require(doc, "universe", list))
    graph_doc = _require(doc, "graph", dict)
    graph = parse_graph(
        _require(graph_doc, "subjects", list), _require(graph_doc, "relations", list)
    )
    matrix = parse_matrix(
        universe, _require(doc, "matrix", dict), subjects=list(graph.subjects)
    )
    bound = doc.get("enumeration_bound", DEFAULT_ENUMERATION_BOUND)
    if not isinstance(bound, int) or bound < 1:
        raise SchemaError("'enumeration_bound' must be a positive integer")
    return universe, graph, matrix, bound


def _encode_interval(interval: DecisionInterval) -> dict:
    doc: dict[str, Any] = {
        "kind": interval.kind.value,
        "sup": str(interval.sup),
        "inf": str(interval.inf),
    }
    value = interval.forced_value()
    if value is not None:
        doc["value"] = encode_alt(value)
    return doc


def session_result_to_doc(result: SessionResult) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "universe": list(result.universe.actions),
        "polynomial": result.polynomial.render(),
        "subjects": list(result.subjects),
        "equations": {
            s: {"pos": str(eq.pos), "neg": str(eq.neg)}
            for s, eq in result.equations.items()
        },
        "branches": [
            {
                "assignments": [
                    {s: encode_alt(v) for s, v in sorted(a.items())}
                    for a in branch.assignments
                ],
                "intervals": {
                    s: _encode_interval(branch.intervals[s]) for s in result.subjects
                },
            }
            for branch in result.branches
        ],
    }


def _encode_record(record) -> dict:
    if isinstance(record, ChoiceRecord):
        return {
            "type": "choices",
            "choices": {s: encode_alt(v) for s, v in sorted(record.choices.items())},
        }
    if isinstance(record, InfluenceRecord):
        return {
            "type": "influence",
            "session": session_result_to_doc(record.session),
            "points_of_view": {
                s: encode_influence_value(v)
                for s, v in sorted(record.points_of_view.items())
            },
        }
    if isinstance(record, EditRecord):
        return {
            "type": "structure",
            "edit": _encode_edit(record.edit),
            "voted": record.voted,
            "adopted": record.adopted,
            "vote_session": (
                session_result_to_doc(record.vote_session)
                if record.vote_session is not None
                else None
            ),
            "graph": encode_graph(record.graph),
        }
    if isinstance(record, FinalRecord):
        return {"type": "final", "session": session_result_to_doc(record.session)}
    raise TypeError(f"unknown stage record {record!r}")


def state_to_doc(state: ScenarioState) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "stage_index": state.stage_index,
        "done": state.done,
        **encode_graph(state.graph),
        "points_of_view": {
            s: encode_influence_value(v)
            for s, v in sorted(state.points_of_view.items())
        },
        "stage_log": [_encode_record(r) for r in state.stage_log],
    }


def report_to_doc(report: ScenarioReport) -> dict:
    try:
        final = session_result_to_doc(report.final)
    except StageOrderViolation:
        final = None
    return {
        "format_version": FORMAT_VERSION,
        "universe": list(report.scenario.universe.actions),
        "stages": [_encode_record(r) for r in report.state.stage_log],
        "final": final,
        "text": report.render_text(),
    }


def error_to_doc(error: RgtError) -> dict:
    doc: dict[str, Any] = {"code": error.code, "message": str(error)}
    if error.detail is not None:
        doc["detail"] = error.detail
    return doc
