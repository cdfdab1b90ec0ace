import json

import pytest
from fastapi.testclient import TestClient

from arth.frequency import FrequencyStore
from arth.session import (
    ConflictError,
    NotFoundError,
    Resources,
    Session,
    SessionConfig,
    SessionStore,
    TextTooLargeError,
    ValidationError,
    create_session,
    get_annotated,
    get_session_summary,
    session_from_dict,
    session_to_dict,
    submit_answers,
)
from arth.service import create_app

TEXT = (
    "The happy cat saw the dog near the bank. "
    "A zygote divides into many cells. "
    "The unhappy puppy ran quickly to the river bank for a picnic. "
    "A good animal cannot sit still and divides its time."
)


@pytest.fixture(scope="module")
def resources(kb, stoplist):
    freq = FrequencyStore(
        counts={
            "the": 1000, "cat": 500, "dog": 480, "bank": 300, "happy": 260,
            "good": 250, "run": 240, "sit": 150, "animal": 120, "puppy": 80,
            "quickly": 60, "picnic": 40, "divide": 30, "unhappy": 20,
            "zygote": 2,
        }
    )
    return Resources(kb, freq, stoplist)


@pytest.fixture()
def store(tmp_path):
    return SessionStore(tmp_path / "sessions")


def _answer_key(store, session_id):
    """Ground truth from the persisted session (tests only: the wire never
    carries correct indices before completion)."""
    session = store.load(session_id)
    return {q.id: q.correct_index for q in session.quizzes[-1].questions}


# -- state machine ----------------------------------------------------------

def test_transition_edges_enforced():
    session = Session(id="x", state="Created", document="", seed=0)
    with pytest.raises(ConflictError):
        session.transition("QuizIssued")  # must pass through Clustered
    session.transition("Clustered")
    session.transition("QuizIssued")
    session.transition("RetestIssued")
    session.transition("RetestIssued")  # repeated retests allowed
    session.transition("Completed")
    with pytest.raises(ConflictError):
        session.transition("Clustered")  # Completed is terminal


# -- create_session ---------------------------------------------------------

def test_create_issues_redacted_initial_quiz(resources, store):
    session, payload = create_session(TEXT, resources, store, seed=0)
    assert session.state == "QuizIssued"
    assert payload["quiz_id"] == "initial-0"
    assert payload["kind"] == "initial"
    assert payload["questions"]
    for question in payload["questions"]:
        assert "correct_index" not in question
        assert len(question["options"]) == 4


def test_create_empty_text_completes_immediately(resources, store):
    session, payload = create_session("", resources, store, seed=0)
    assert session.state == "Completed"
    assert payload is None
    assert get_annotated(session) == {"text": "", "insertions": [], "skipped": []}


def test_create_stopwords_only_completes_with_original_text(resources, store):
    session, payload = create_session("to the and a", resources, store, seed=0)
    assert session.state == "Completed"
    assert payload is None
    assert session.annotated.text == "to the and a"


def test_create_rejects_oversized_text(kb, stoplist, store):
    tiny = Resources(kb, FrequencyStore(counts={"a": 1}), stoplist,
                     SessionConfig(max_text_bytes=10))
    with pytest.raises(TextTooLargeError):
        create_session("x" * 11, tiny, store)


def test_create_deterministic_for_same_seed(resources, store):
    _, a = create_session(TEXT, resources, store, seed=4)
    _, b = create_session(TEXT, resources, store, seed=4)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


# -- persistence ------------------------------------------------------------

def test_session_survives_store_restart(resources, store, tmp_path):
    session, _ = create_session(TEXT, resources, store, seed=0)
    fresh = SessionStore(store.directory)  # simulate process restart
    reloaded = fresh.load(session.id)
    assert session_to_dict(reloaded) == session_to_dict(session)


def test_round_trip_through_dict(resources, store):
    session, _ = create_session(TEXT, resources, store, seed=0)
    clone = session_from_dict(json.loads(json.dumps(session_to_dict(session))))
    assert session_to_dict(clone) == session_to_dict(session)


def test_load_unknown_session(store):
    with pytest.raises(NotFoundError):
        store.load("missing")


# -- submit_answers ---------------------------------------------------------

def test_all_correct_yields_unannotated_text(resources, store):
    session, _ = create_session(TEXT, resources, store, seed=0)
    response = submit_answers(session, _answer_key(store, session.id),
                              resources, store)
    assert response["annotated_ready"] is True
    assert all(v["verdict"] == "Easy" for v in response["verdicts"])
    assert session.state == "Completed"
    assert session.annotated.text == TEXT
    assert session.hard_lemmas == set()


def test_all_wrong_annotates_every_probed_cluster(resources, store):
    session, _ = create_session(TEXT, resources, store, seed=0)
    key = _answer_key(store, session.id)
    wrong = {qid: (idx + 1) % 4 for qid, idx in key.items()}
    response = submit_answers(session, wrong, resources, store)
    assert response["annotated_ready"] is True
    assert all(v["verdict"] == "Hard" for v in response["verdicts"])
    probed = {q.word for q in session.quizzes[0].questions}
    assert probed <= session.hard_lemmas
    assert len(session.annotated.insertions) > 0


def _half_right_submission(store, session):
    """Answers making one multi-question cluster land between the Easy and
    Hard thresholds while every other cluster is fully correct."""
    stored = store.load(session.id)
    quiz = stored.quizzes[0]
    per_cluster = {}
    for q in quiz.questions:
        per_cluster.setdefault(q.cluster_id, []).append(q)
    target = next(c for c, qs in per_cluster.items() if len(qs) >= 2)
    answers = {}
    for cluster_id, questions in per_cluster.items():
        if cluster_id == target:
            n_right = len(questions) // 2
            for i, q in enumerate(questions):
                answers[q.id] = q.correct_index if i < n_right else (q.correct_index + 1) % 4
        else:
            for q in questions:
                answers[q.id] = q.correct_index
    return target, answers


def test_middling_cluster_triggers_retest(resources, store):
    session, _ = create_session(TEXT, resources, store, seed=0)
    target, answers = _half_right_submission(store, session)
    response = submit_answers(session, answers, resources, store)
    verdicts = {v["cluster_id"]: v["verdict"] for v in response["verdicts"]}
    assert verdicts[target] == "Retest"
    assert "annotated_ready" not in response
    retest = response["quiz"]
    assert retest["kind"] == "retest"
    assert session.state == "RetestIssued"
    for question in retest["questions"]:
        assert question["cluster_id"] == target
        assert question["group_id"].startswith(f"{target}.")
        assert "correct_index" not in question
    # at most three questions per sub-group
    counts = {}
    for question in retest["questions"]:
        counts[question["group_id"]] = counts.get(question["group_id"], 0) + 1
    assert all(n <= 3 for n in counts.values())


def test_failed_retest_groups_become_hard(resources, store):
    session, _ = create_session(TEXT, resources, store, seed=0)
    _, answers = _half_right_submission(store, session)
    submit_answers(session, answers, resources, store)
    key = _answer_key(store, session.id)
    wrong = {qid: (idx + 1) % 4 for qid, idx in key.items()}
    response = submit_answers(session, wrong, resources, store)
    assert response["annotated_ready"] is True
    assert session.state == "Completed"
    probed_groups = {q.group_id for q in session.quizzes[-1].questions}
    for group_id in probed_groups:
        assert set(session.groups[group_id]) <= session.hard_lemmas


def test_passed_retest_groups_stay_unannotated(resources, store):
    session, _ = create_session(TEXT, resources, store, seed=0)
    _, answers = _half_right_submission(store, session)
    submit_answers(session, answers, resources, store)
    response = submit_answers(session, _answer_key(store, session.id),
                              resources, store)
    assert all(v["verdict"] == "Easy" for v in response["verdicts"])
    assert session.state == "Completed"
    assert session.hard_lemmas == set()


def test_submit_rejects_bad_option_index(resources, store):
    session, payload = create_session(TEXT, resources, store, seed=0)
    qid = payload["questions"][0]["id"]
    with pytest.raises(ValidationError):
        submit_answers(session, {qid: 7}, resources, store)


def test_submit_rejects_unknown_question(resources, store):
    session, _ = create_session(TEXT, resources, store, seed=0)
    with pytest.raises(ValidationError):
        submit_answers(session, {"nope": 0}, resources, store)


def test_submit_after_completion_conflicts(resources, store):
    session, _ = create_session(TEXT, resources, store, seed=0)
    submit_answers(session, _answer_key(store, session.id), resources, store)
    with pytest.raises(ConflictError):
        submit_answers(session, {}, resources, store)


def test_annotated_unavailable_before_completion(resources, store):
    session, _ = create_session(TEXT, resources, store, seed=0)
    with pytest.raises(ConflictError):
        get_annotated(session)


def test_summary_hides_hard_words_until_completed(resources, store):
    session, _ = create_session(TEXT, resources, store, seed=0)
    assert get_session_summary(session)["hard_words"] == []
    key = _answer_key(store, session.id)
    submit_answers(session, {qid: (idx + 1) % 4 for qid, idx in key.items()},
                   resources, store)
    summary = get_session_summary(session)
    assert summary["state"] == "Completed"
    assert summary["hard_words"] == sorted(session.hard_lemmas)


# -- HTTP API ---------------------------------------------------------------

@pytest.fixture()
def client(resources, store):
    return TestClient(create_app(resources, store))


def test_http_full_flow_all_wrong(client, store):
    created = client.post("/sessions", json={"text": TEXT, "seed": 0})
    assert created.status_code == 200
    body = created.json()
    session_id = body["session_id"]
    assert body["state"] == "QuizIssued"
    assert "correct_index" not in created.text

    key = _answer_key(store, session_id)
    wrong = {qid: (idx + 1) % 4 for qid, idx in key.items()}
    answered = client.post(f"/sessions/{session_id}/answers",
                           json={"answers": wrong})
    assert answered.status_code == 200
    assert answered.json()["annotated_ready"] is True
    assert answered.json()["state"] == "Completed"

    annotated = client.get(f"/sessions/{session_id}/annotated")
    assert annotated.status_code == 200
    assert annotated.json()["insertions"]

    summary = client.get(f"/sessions/{session_id}")
    assert summary.json()["state"] == "Completed"
    assert summary.json()["hard_words"]


def test_http_retest_round_trip(client, store):
    session_id = client.post("/sessions", json={"text": TEXT, "seed": 0}).json()["session_id"]
    session = store.load(session_id)
    _, answers = _half_right_submission(store, session)
    first = client.post(f"/sessions/{session_id}/answers", json={"answers": answers})
    assert first.json()["state"] == "RetestIssued"
    assert "correct_index" not in first.text
    key = _answer_key(store, session_id)
    second = client.post(f"/sessions/{session_id}/answers", json={"answers": key})
    assert second.json()["state"] == "Completed"
    annotated = client.get(f"/sessions/{session_id}/annotated").json()
    assert annotated["text"] == TEXT  # retest passed: nothing glossed


def test_http_error_shapes(client):
    missing = client.get("/sessions/missing")
    assert missing.status_code == 404
    assert missing.json() == {"error": "unknown session: missing", "code": "not_found"}

    created = client.post("/sessions", json={"text": TEXT, "seed": 0}).json()
    early = client.get(f"/sessions/{created['session_id']}/annotated")
    assert early.status_code == 409
    assert early.json()["code"] == "conflict"

    bad = client.post(f"/sessions/{created['session_id']}/answers",
                      json={"answers": {"q0": 9}})
    assert bad.status_code == 422
    assert bad.json()["code"] == "validation"


def test_http_rejects_malformed_body(client):
    assert client.post("/sessions", json={}).status_code == 422
    created = client.post("/sessions", json={"text": TEXT}).json()
    malformed = client.post(f"/sessions/{created['session_id']}/answers",
                            json={"answers": {"q0": "first"}})
    assert malformed.status_code == 422
