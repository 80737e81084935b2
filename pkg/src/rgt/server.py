"""HTTP/JSON service over the engine: one-shot session solving plus
stateful, versioned scenario stepping.

Scenario handles live in memory. Every accepted mutation bumps the
handle's version and, when a snapshot directory is configured, rewrites
a replay file (scenario document plus the accepted step log) from which
`create_app` restores state on the next start.
"""

from __future__ import annotations

import sys
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .errors import RgtError, SchemaError, StageOrderViolation, UnknownScenario, VersionConflict
from .group import decompose
from .scenario import Scenario, ScenarioReport, ScenarioState, initial_state, step_scenario
from .serial import (
    dump_text,
    encode_alt,
    error_to_doc,
    parse_alt,
    parse_scenario,
    parse_session_doc,
    report_to_doc,
    scenario_to_doc,
    session_result_to_doc,
    state_to_doc,
)
from .solver import solve_session

_ERROR_STATUS = {
    "UnknownScenario": 404,
    "VersionConflict": 409,
    "ChoiceOutsideInterval": 409,
    "StageOrderViolation": 409,
    "NotDecomposable": 409,
}


@dataclass
class ScenarioHandle:
    id: str
    scenario: Scenario
    state: ScenarioState
    version: int = 0
    steps: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


class ScenarioStore:
    """In-memory handle registry with optional per-mutation snapshots."""

    def __init__(self, snapshot_dir: str | None = None) -> None:
        self._handles: dict[str, ScenarioHandle] = {}
        self._lock = threading.Lock()
        self._snapshot_dir = Path(snapshot_dir) if snapshot_dir else None

    def create(self, scenario: Scenario) -> ScenarioHandle:
        handle = ScenarioHandle(
            id=uuid.uuid4().hex[:12], scenario=scenario, state=initial_state(scenario)
        )
        with self._lock:
            self._handles[handle.id] = handle
        self.snapshot(handle)
        return handle

    def get(self, scenario_id: str) -> ScenarioHandle:
        with self._lock:
            handle = self._handles.get(scenario_id)
        if handle is None:
            raise UnknownScenario(f"no scenario with id {scenario_id!r}")
        return handle

    def snapshot(self, handle: ScenarioHandle) -> None:
        if self._snapshot_dir is None:
            return
        self._snapshot_dir.mkdir(parents=True, exist_ok=True)
        doc = {
            "id": handle.id,
            "version": handle.version,
            "scenario": scenario_to_doc(handle.scenario),
            "steps": list(handle.steps),
        }
        (self._snapshot_dir / f"{handle.id}.json").write_text(
            dump_text(doc), encoding="utf-8"
        )

    def restore(self) -> None:
        if self._snapshot_dir is None or not self._snapshot_dir.is_dir():
            return
        for path in sorted(self._snapshot_dir.glob("*.json")):
            try:
                handle = self._replay(path)
            except (RgtError, KeyError, TypeError, ValueError) as exc:
                print(f"skipping snapshot {path}: {exc}", file=sys.stderr)
                continue
            with self._lock:
                self._handles[handle.id] = handle

    def _replay(self, path: Path) -> ScenarioHandle:
        import json

        doc = json.loads(path.read_text(encoding="utf-8"))
        scenario = parse_scenario(doc["scenario"])
        state = initial_state(scenario)
        steps = list(doc["steps"])
        for step in steps:
            choices = {
                s: parse_alt(scenario.universe, v)
                for s, v in step.get("human_choices", {}).items()
            }
            stage = scenario.stages[state.stage_index]
            state = step_scenario(state, stage, choices or None)
        return ScenarioHandle(
            id=doc["id"],
            scenario=scenario,
            state=state,
            version=len(steps),
            steps=steps,
        )


def _envelope(handle: ScenarioHandle) -> dict:
    return {
        "id": handle.id,
        "version": handle.version,
        "state": state_to_doc(handle.state),
    }


def create_app(
    snapshot_dir: str | None = None,
    static_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="rgt", docs_url=None, redoc_url=None)
    store = ScenarioStore(snapshot_dir)
    store.restore()
    app.state.store = store

    @app.exception_handler(RgtError)
    async def on_engine_error(request: Request, exc: RgtError) -> JSONResponse:
        status = _ERROR_STATUS.get(exc.code, 422)
        return JSONResponse(status_code=status, content=error_to_doc(exc))

    @app.exception_handler(RequestValidationError)
    async def on_body_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"code": "SchemaError", "message": "request body is not valid JSON"},
        )

    @app.post("/api/session/solve")
    def solve(body: dict = Body(...)) -> dict:
        _, graph, matrix, bound = parse_session_doc(body, versioned=False)
        result = solve_session(decompose(graph), matrix, bound)
        return session_result_to_doc(result)

    @app.post("/api/scenarios")
    def create(body: dict = Body(...)):
        try:
            scenario = parse_scenario(body)
        except RgtError as exc:
            # at create time every engine complaint is a body problem
            return JSONResponse(status_code=422, content=error_to_doc(exc))
        return _envelope(store.create(scenario))

    @app.get("/api/scenarios/{scenario_id}")
    def show(scenario_id: str) -> dict:
        return _envelope(store.get(scenario_id))

    @app.post("/api/scenarios/{scenario_id}/step")
    def step(scenario_id: str, body: dict = Body(...)) -> dict:
        handle = store.get(scenario_id)
        expected = body.get("expected_version")
        if not isinstance(expected, int):
            raise SchemaError("'expected_version' must be an integer")
        choices_doc = body.get("human_choices") or {}
        if not isinstance(choices_doc, dict):
            raise SchemaError("'human_choices' must be an object")
        with handle.lock:
            if expected != handle.version:
                raise VersionConflict(
                    f"expected version {expected}, current version is {handle.version}"
                )
            if handle.state.done:
                raise StageOrderViolation("scenario has already completed")
            choices = {
                s: parse_alt(handle.scenario.universe, v)
                for s, v in choices_doc.items()
            }
            stage_index = handle.state.stage_index
            stage = handle.scenario.stages[stage_index]
            handle.state = step_scenario(handle.state, stage, choices or None)
            handle.version += 1
            record: dict[str, Any] = {"stage_index": stage_index}
            if choices:
                record["human_choices"] = {
                    s: encode_alt(v) for s, v in sorted(choices.items())
                }
            handle.steps.append(record)
            store.snapshot(handle)
        return _envelope(handle)

    @app.get("/api/scenarios/{scenario_id}/report")
    def report(scenario_id: str) -> dict:
        handle = store.get(scenario_id)
        return report_to_doc(ScenarioReport(handle.scenario, handle.state))

    if static_dir is not None:
        # mounted last so /api/* keeps precedence
        app.mount("/", StaticFiles(directory=static_dir, html=True))

    return app
