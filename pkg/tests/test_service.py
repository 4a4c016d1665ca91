from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from ranklens.contrast import TopZ
from ranklens.service import DecisionRecord, Session, create_app, validate_decision


@pytest.fixture
def session(t1_model, t1_pool, tmp_path):
    return Session(
        t1_model, t1_pool, k=5, default_policy=TopZ(2),
        log_path=tmp_path / "decisions.ndjson",
    )


@pytest.fixture
def client(session):
    return TestClient(create_app(session))


def test_ranking_endpoint_flags_top_k(client):
    res = client.get("/ranking", params={"k": 5})
    assert res.status_code == 200
    body = res.json()
    assert len(body["entries"]) == 10
    assert [e["rank"] for e in body["entries"]] == list(range(1, 11))
    flagged = [e["item_id"] for e in body["entries"] if e["in_top_k"]]
    assert flagged == ["00034", "00029", "00139", "00097", "00079"]
    assert body["overridden"] is False


def test_ranking_k_out_of_range(client):
    res = client.get("/ranking", params={"k": 11})
    assert res.status_code == 422
    assert res.json()["code"] == "INVALID_K"


def test_no_model_gives_409():
    client = TestClient(create_app(None))
    for path in ("/ranking", "/contrast/a/b", "/decisions/summary"):
        res = client.get(path)
        assert res.status_code == 409
        assert res.json()["code"] == "NO_MODEL"


def test_contrast_bundle_matches_template(client):
    res = client.get("/contrast/00079/00188", params={"policy": "topz:2"})
    assert res.status_code == 200
    bundle = res.json()
    assert set(bundle) == {"report", "text", "chart_data"}
    joined = "\n".join(bundle["text"]["paragraphs"])
    assert (
        "Characteristics in favour of Candidate 00079 include a higher score in "
        "HSC_P and a higher score in SSC_P." in joined
    )
    assert bundle["report"]["item_a"] == "00079"
    bars = {b["feature"]: b for b in bundle["chart_data"]["bars"]}
    assert bars["WORKEX_YES"]["direction"] == "left"


def test_contrast_same_item_degenerate(client):
    res = client.get("/contrast/00034/00034")
    assert res.status_code == 200
    bundle = res.json()
    assert bundle["report"]["indistinguishable"] is True
    assert all(b["signed_share"] == 0.0 for b in bundle["chart_data"]["bars"])


def test_contrast_bad_policy(client):
    res = client.get("/contrast/00079/00188", params={"policy": "top:banana"})
    assert res.status_code == 422
    assert res.json()["code"] == "BAD_POLICY"


def test_contrast_unknown_item(client):
    res = client.get("/contrast/00079/zzz")
    assert res.status_code == 404
    assert res.json()["code"] == "ITEM_NOT_FOUND"


def test_cumulative_policy_postcondition(client):
    res = client.get("/contrast/00079/00188", params={"policy": "cum:0.8"})
    report = res.json()["report"]
    importances = {c["feature"]: c["importance"] for c in report["contributions"]}
    total = sum(importances.values())
    selected_sum = sum(importances[f] for f in report["selected"])
    assert selected_sum >= 0.8 * total - 1e-12


def decision(client, item_a, item_b, justification, position, action, note=None):
    return client.post(
        "/decision",
        json={
            "item_a": item_a, "item_b": item_b, "justification": justification,
            "position": position, "action": action, "note": note,
        },
    )


def test_scenario_two_swap_updates_ranking(client):
    res = decision(client, "00079", "00188", "agree", "unsatisfied", "swap")
    assert res.status_code == 200
    assert res.json()["scenario"] == 2
    body = client.get("/ranking").json()
    assert body["overridden"] is True
    ids = [e["item_id"] for e in body["entries"]]
    assert ids[4] == "00188" and ids[5] == "00079"


def test_scenario_one_confirm_keeps_order(client):
    before = client.get("/ranking").json()
    res = decision(client, "00079", "00188", "agree", "satisfied", "confirm")
    assert res.status_code == 200
    assert res.json()["scenario"] == 1
    assert client.get("/ranking").json() == before


def test_swap_while_satisfied_rejected(client):
    res = decision(client, "00079", "00188", "agree", "satisfied", "swap")
    assert res.status_code == 422
    assert res.json()["code"] == "INVALID_DECISION"
    assert client.get("/ranking").json()["overridden"] is False


def test_decision_unknown_item_rejected(client):
    res = decision(client, "00079", "zzz", "agree", "unsatisfied", "swap")
    assert res.status_code == 404


def test_decision_body_validation(client):
    res = client.post("/decision", json={"item_a": "00079"})
    assert res.status_code == 422  # fastapi schema validation


def test_scenario_indices_cover_the_grid():
    for (just, pos), scenario in {
        ("agree", "satisfied"): 1,
        ("agree", "unsatisfied"): 2,
        ("disagree", "satisfied"): 3,
        ("disagree", "unsatisfied"): 4,
    }.items():
        record = DecisionRecord("t", "a", "b", just, pos, "confirm")
        validate_decision(record)
        assert record.scenario == scenario


def test_summary_counts_and_disagreement_features(client):
    assert client.get("/decisions/summary").json()["counts"] == {
        "1": 0, "2": 0, "3": 0, "4": 0,
    }
    for _ in range(3):
        decision(client, "00079", "00188", "agree", "unsatisfied", "confirm")
    decision(client, "00079", "00188", "disagree", "satisfied", "confirm")
    summary = client.get("/decisions/summary").json()
    assert summary["counts"] == {"1": 0, "2": 3, "3": 1, "4": 0}
    flagged = {f["feature"] for f in summary["disagreement_features"]}
    assert flagged == {"HSC_P", "SSC_P", "DEGREE_P", "WORKEX_YES"}


def test_log_survives_restart(t1_model, t1_pool, tmp_path):
    log = tmp_path / "decisions.ndjson"
    s1 = Session(t1_model, t1_pool, k=5, log_path=log)
    s1.record_decision("00079", "00188", "agree", "unsatisfied", "swap")
    s1.record_decision("00034", "00029", "disagree", "unsatisfied", "swap")
    live = s1.current.to_dict()

    s2 = Session(t1_model, t1_pool, k=5, log_path=log)
    assert s2.current.to_dict() == live
    assert [r.item_a for r in s2.log] == ["00079", "00034"]
    # the log file is plain ndjson, one record per line
    lines = log.read_text().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[0])["action"] == "swap"


def test_replay_equals_live_after_each_write(session):
    session.record_decision("00079", "00188", "agree", "unsatisfied", "swap")
    session.record_decision("00079", "00188", "disagree", "unsatisfied", "swap")
    assert session.replay().to_dict() == session.current.to_dict()
    assert session.current.overridden is False  # double swap restored order


def test_reads_do_not_mutate(client):
    before = client.get("/ranking").json()
    client.get("/contrast/00079/00188")
    client.get("/decisions/summary")
    assert client.get("/ranking").json() == before
