"""Regenerate fixtures/golden/ from the engine's HTTP surface.

Run from the repo root:

    python3 scripts/gen_golden.py

The files are frozen API payloads: the web client's tests replay them as
mock responses, and tests/test_golden.py fails when the engine drifts so
the freeze stays honest. Scenario ids are normalized to a fixed token.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from rgt.serial import dump_text
from rgt.server import create_app

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = FIXTURES / "golden"

SCENARIO_ID = "scenario-golden"


def _load(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text(encoding="utf-8"))


def _normalize(doc: dict) -> dict:
    if "id" in doc:
        doc = dict(doc)
        doc["id"] = SCENARIO_ID
    return doc


def generate() -> dict[str, dict]:
    client = TestClient(create_app())
    docs: dict[str, dict] = {}

    for name in ("example1_session", "example2_vote"):
        resp = client.post("/api/session/solve", json=_load(f"{name}.json"))
        assert resp.status_code == 200, resp.text
        docs[f"solve_{name}"] = resp.json()

    def run_flow(prefix: str, scenario: str, step_bodies: list[dict]) -> str:
        resp = client.post("/api/scenarios", json=_load(scenario))
        assert resp.status_code == 200, resp.text
        env = resp.json()
        docs[f"{prefix}_create"] = _normalize(env)
        sid, version = env["id"], env["version"]
        for index, extra in enumerate(step_bodies, start=1):
            body = {"expected_version": version, **extra}
            resp = client.post(f"/api/scenarios/{sid}/step", json=body)
            assert resp.status_code == 200, resp.text
            docs[f"{prefix}_step{index}"] = _normalize(resp.json())
            version = resp.json()["version"]
        resp = client.get(f"/api/scenarios/{sid}/report")
        assert resp.status_code == 200, resp.text
        docs[f"{prefix}_report"] = resp.json()
        return sid

    run_flow("two_stage", "example1_two_stage.json", [{}, {}])
    run_flow(
        "two_stage_choice",
        "example1_two_stage.json",
        [{}, {"human_choices": {"c": ["β"]}}],
    )
    run_flow("multistage", "example3_multistage.json", [{}, {}, {}])

    return docs


def main() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    docs = generate()
    for name, doc in sorted(docs.items()):
        (GOLDEN / f"{name}.json").write_text(dump_text(doc), encoding="utf-8")
    print(f"wrote {len(docs)} golden files to {GOLDEN}")


if __name__ == "__main__":
    main()
