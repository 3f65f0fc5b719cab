"""HTTP service: registry, session lifecycle, concurrency, error bodies."""

from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from secmodel import (
    CombinedModel,
    DependencyModel,
    ImpactLink,
    Paragon,
    Relationship,
    number_index,
    parse_sand,
    sand_to_cim,
)
from secmodel.service import create_app, load_registry


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def make_session(client, model_id="ot-playbook", mode=None):
    body = {"modelId": model_id}
    if mode:
        body["mode"] = mode
    response = client.post("/sessions", json=body)
    assert response.status_code == 201
    return response.json()


def step_ids(client, model_id):
    detail = client.get(f"/models/{model_id}").json()
    index = {}

    def walk(node):
        index[node["number"]] = node["id"]
        for child in node["children"]:
            walk(child)

    walk(detail["cim"]["root"])
    return index


# ---------------------------------------------------------------------------
# registry


def test_models_listing(client):
    listing = client.get("/models").json()
    assert [m["id"] for m in listing] == [
        "blackenergy-scada",
        "ot-playbook",
        "ukraine-scada",
    ]
    by_id = {m["id"]: m for m in listing}
    assert by_id["ot-playbook"]["steps"] == 8
    assert by_id["ot-playbook"]["paragons"] == 11
    assert by_id["blackenergy-scada"]["steps"] == 37
    assert by_id["ukraine-scada"]["steps"] == 22
    assert all(m["name"] for m in listing)


def test_model_detail_shape(client):
    detail = client.get("/models/ot-playbook").json()
    assert detail["id"] == "ot-playbook"
    root = detail["cim"]["root"]
    assert root["number"] is None
    assert root["label"] == "Unauthorised Traffic Detected on OT Network"
    assert {link["paragonId"] for link in detail["links"]} == {"p-sec-hmi", "p-pri-hmi"}
    assert all({"stepId", "paragonId", "targetState"} <= set(l) for l in detail["links"])
    paragon = detail["dm"]["root"]
    assert {"id", "name", "relationship", "baseState", "definition", "children"} <= set(
        paragon
    )


def test_model_detail_unknown(client):
    response = client.get("/models/nope")
    assert response.status_code == 404
    assert response.json()["detail"]["error"] == "unknown-model"


def test_registry_loader_matches_service(client):
    assert set(load_registry()) == {m["id"] for m in client.get("/models").json()}


def test_cross_origin_requests_allowed(client):
    response = client.get("/models", headers={"Origin": "http://localhost:5173"})
    assert response.headers["access-control-allow-origin"] == "*"


# ---------------------------------------------------------------------------
# sessions


def test_session_lifecycle(client):
    view = make_session(client)
    sid = view["sessionId"]
    assert view["modelId"] == "ot-playbook"
    assert view["mode"] == "minmax"
    assert view["revision"] == 0
    assert view["activeSteps"] == []
    assert view["warnings"] == []
    assert view["states"]["ot-root"] == 1.0
    assert len(view["states"]) == 11
    assert view["rootImpact"]["state"] == 1.0

    fetched = client.get(f"/sessions/{sid}").json()
    assert fetched == view

    assert client.delete(f"/sessions/{sid}").status_code == 204
    assert client.get(f"/sessions/{sid}").status_code == 404
    assert client.delete(f"/sessions/{sid}").status_code == 404


def test_create_session_unknown_model(client):
    response = client.post("/sessions", json={"modelId": "ghost"})
    assert response.status_code == 404
    assert response.json()["detail"]["error"] == "unknown-model"


def test_create_session_rejects_bad_mode(client):
    response = client.post("/sessions", json={"modelId": "ot-playbook", "mode": "vibes"})
    assert response.status_code == 422


def test_toggle_walkthrough(client):
    steps = step_ids(client, "ot-playbook")
    sid = make_session(client)["sessionId"]

    first = client.post(
        f"/sessions/{sid}/toggle",
        json={"stepId": steps[4], "active": True, "revision": 0},
    ).json()
    assert first["revision"] == 1
    assert first["delta"] == []
    assert first["rootImpact"]["state"] == 1.0

    second = client.post(
        f"/sessions/{sid}/toggle",
        json={"stepId": steps[5], "active": True, "revision": 1},
    ).json()
    assert second["revision"] == 2
    changed = {d["paragonId"]: (d["old"], d["new"]) for d in second["delta"]}
    assert changed["p-pri-hmi"] == (1.0, 0.0)
    assert second["rootImpact"]["state"] == 0.0

    third = client.post(
        f"/sessions/{sid}/toggle",
        json={"stepId": steps[8], "active": True, "revision": 2},
    ).json()
    changed = {d["paragonId"]: (d["old"], d["new"]) for d in third["delta"]}
    assert changed["p-pri-hmi"] == (0.0, 1.0)
    assert third["rootImpact"]["state"] == 1.0

    view = client.get(f"/sessions/{sid}").json()
    assert view["activeSteps"] == [steps[4], steps[5], steps[8]]
    assert view["revision"] == 3


def test_stale_revision_conflict(client):
    steps = step_ids(client, "ot-playbook")
    sid = make_session(client)["sessionId"]
    ok = client.post(
        f"/sessions/{sid}/toggle",
        json={"stepId": steps[4], "active": True, "revision": 0},
    )
    assert ok.status_code == 200
    stale = client.post(
        f"/sessions/{sid}/toggle",
        json={"stepId": steps[5], "active": True, "revision": 0},
    )
    assert stale.status_code == 409
    detail = stale.json()["detail"]
    assert detail["error"] == "revision-conflict"
    assert detail["revision"] == 1
    # the losing write left no trace
    assert client.get(f"/sessions/{sid}").json()["activeSteps"] == [steps[4]]


def test_toggle_unknown_step(client):
    sid = make_session(client)["sessionId"]
    response = client.post(
        f"/sessions/{sid}/toggle",
        json={"stepId": "bogus", "active": True, "revision": 0},
    )
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "unknown-step"
    # failed toggles do not advance the revision
    assert client.get(f"/sessions/{sid}").json()["revision"] == 0


def test_noop_toggle_still_counts(client):
    steps = step_ids(client, "ot-playbook")
    sid = make_session(client)["sessionId"]
    response = client.post(
        f"/sessions/{sid}/toggle",
        json={"stepId": steps[1], "active": False, "revision": 0},
    ).json()
    assert response["delta"] == []
    assert response["revision"] == 1


def test_reset(client):
    steps = step_ids(client, "ot-playbook")
    sid = make_session(client)["sessionId"]
    client.post(
        f"/sessions/{sid}/toggle",
        json={"stepId": steps[5], "active": True, "revision": 0},
    )
    guarded = client.post(f"/sessions/{sid}/reset", json={"revision": 0})
    assert guarded.status_code == 409
    assert guarded.json()["detail"]["revision"] == 1

    view = client.post(f"/sessions/{sid}/reset", json={}).json()
    assert view["activeSteps"] == []
    assert view["revision"] == 2
    assert view["states"]["p-pri-hmi"] == 1.0


def test_prob_mode_session(client):
    sid = make_session(client, model_id="ukraine-scada", mode="prob")["sessionId"]
    view = client.get(f"/sessions/{sid}").json()
    assert view["mode"] == "prob"
    assert view["rootImpact"]["state"] == 1.0


def test_sequence_warnings_surface():
    tree = parse_sand(
        b"Plant outage ;OR\n"
        b"\tStorm path ;SAND\n"
        b"\t\tRecon grid\n"
        b"\t\tTrip breakers\n"
        b"\tInsider path\n"
    )
    cim = sand_to_cim(tree, name="Plant outage")
    numbers = {n: s.id for n, s in number_index(cim).items()}
    combined = CombinedModel(
        cim=cim,
        dm=DependencyModel(
            name="Grid",
            root=Paragon(
                id="grid",
                name="Grid",
                relationship=Relationship.AND,
                children=(Paragon(id="ops", name="Operations"),),
            ),
        ),
        links=(ImpactLink(step_id=numbers[3], paragon_id="ops", target_state=0.0),),
    )
    with TestClient(create_app(models={"tiny": combined})) as client:
        sid = make_session(client, model_id="tiny")["sessionId"]
        response = client.post(
            f"/sessions/{sid}/toggle",
            json={"stepId": numbers[3], "active": True, "revision": 0},
        ).json()
        assert response["warnings"] == [
            {"stepId": numbers[3], "predecessorId": numbers[2]}
        ]
        follow = client.post(
            f"/sessions/{sid}/toggle",
            json={"stepId": numbers[2], "active": True, "revision": 1},
        ).json()
        assert follow["warnings"] == []
        assert client.get("/models").json()[0]["id"] == "tiny"
