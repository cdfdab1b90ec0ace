"""Reading-session orchestration: runs the pipeline per document, tracks the
quiz / retest / annotate state machine, and persists each session as one
JSON file written atomically.

State transitions: Created -> Clustered -> QuizIssued -> (RetestIssued)* ->
Completed. The annotated text exists exactly when the session is Completed.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .annotate import AnnotatedText, annotate
from .clustering import (
    ClusterModel,
    NormalizationParams,
    WordProfile,
    build_profiles,
    choose_k,
    fit_cluster_model,
)
from .frequency import FrequencyStore, bundled_frequency_list, load_frequency_list
from .preprocess import PreprocessedDoc, default_stoplist, load_stoplist, preprocess
from .quiz import (
    ClusterVerdict,
    Quiz,
    QuizQuestion,
    NotRefinableError,
    evaluate_quiz,
    generate_quiz,
    refine_cluster,
)
from .wordnet import WordNetKB, load_wordnet

TOY_WORDNET = Path(__file__).parent / "data" / "wordnet_toy"


class SessionError(Exception):
    def __init__(self, message: str, code: str = "error", status: int = 400):
        super().__init__(message)
        self.code = code
        self.status = status


class NotFoundError(SessionError):
    def __init__(self, session_id: str):
        super().__init__(f"unknown session: {session_id}", "not_found", 404)


class ConflictError(SessionError):
    def __init__(self, message: str):
        super().__init__(message, "conflict", 409)


class ValidationError(SessionError):
    def __init__(self, message: str):
        super().__init__(message, "validation", 422)


class TextTooLargeError(SessionError):
    def __init__(self, size: int, limit: int):
        super().__init__(f"text is {size} bytes, limit {limit}", "too_large", 413)


@dataclass
class SessionConfig:
    seed: int = 0
    k_override: int | None = None
    max_text_bytes: int = 1_000_000
    normalization: str = "zscore"


class Resources:
    """Shared read-only resources loaded once at startup."""

    def __init__(self, kb: WordNetKB, freq_store: FrequencyStore,
                 stoplist: set[str], config: SessionConfig | None = None):
        self.kb = kb
        self.freq_store = freq_store
        self.stoplist = stoplist
        self.config = config or SessionConfig()

    @classmethod
    def load(
        cls,
        wordnet_dir: str | Path | None = None,
        frequency_path: str | Path | None = None,
        stopword_path: str | Path | None = None,
        config: SessionConfig | None = None,
    ) -> "Resources":
        kb = load_wordnet(wordnet_dir or TOY_WORDNET)
        freq = load_frequency_list(frequency_path) if frequency_path else bundled_frequency_list()
        stoplist = load_stoplist(stopword_path) if stopword_path else default_stoplist()
        return cls(kb, freq, stoplist, config)


STATES = ("Created", "Clustered", "QuizIssued", "RetestIssued", "Completed")
_EDGES = {
    "Created": {"Clustered"},
    "Clustered": {"QuizIssued", "Completed"},
    "QuizIssued": {"RetestIssued", "Completed"},
    "RetestIssued": {"RetestIssued", "Completed"},
    "Completed": set(),
}


@dataclass
class Session:
    id: str
    state: str
    document: str
    seed: int
    profiles: list[WordProfile] = field(default_factory=list)
    model: ClusterModel | None = None
    norm_params: NormalizationParams | None = None
    quizzes: list[Quiz] = field(default_factory=list)
    answers: list[dict[str, int]] = field(default_factory=list)
    verdicts: list[ClusterVerdict] = field(default_factory=list)
    hard_lemmas: set[str] = field(default_factory=set)
    groups: dict[str, list[str]] = field(default_factory=dict)
    annotated: AnnotatedText | None = None
    created_at: float = 0.0
    updated_at: float = 0.0

    def transition(self, new_state: str) -> None:
        if new_state not in _EDGES[self.state]:
            raise ConflictError(f"cannot move from {self.state} to {new_state}")
        self.state = new_state
        self.updated_at = time.time()


# ---------------------------------------------------------------------------
# serialization

def _quiz_to_dict(quiz: Quiz, redact: bool) -> dict:
    questions = []
    for q in quiz.questions:
        item = {
            "id": q.id,
            "cluster_id": q.cluster_id,
            "word": q.word,
            "sentence": q.sentence,
            "prompt": q.prompt,
            "options": q.options,
        }
        if q.group_id is not None:
            item["group_id"] = q.group_id
        if not redact:
            item["correct_index"] = q.correct_index
        questions.append(item)
    return {
        "kind": quiz.kind,
        "rng_seed": quiz.rng_seed,
        "retest_cluster_ids": quiz.retest_cluster_ids,
        "defaulted_hard": quiz.defaulted_hard,
        "questions": questions,
    }


def _quiz_from_dict(data: dict) -> Quiz:
    return Quiz(
        questions=[
            QuizQuestion(
                id=q["id"],
                cluster_id=q["cluster_id"],
                word=q["word"],
                sentence=q["sentence"],
                prompt=q["prompt"],
                options=q["options"],
                correct_index=q["correct_index"],
                group_id=q.get("group_id"),
            )
            for q in data["questions"]
        ],
        rng_seed=data["rng_seed"],
        kind=data["kind"],
        retest_cluster_ids=data["retest_cluster_ids"],
        defaulted_hard=data["defaulted_hard"],
    )


def session_to_dict(session: Session) -> dict:
    model = None
    if session.model is not None:
        model = {
            "k": session.model.k,
            "centroids": session.model.centroids.tolist(),
            "labels": session.model.labels.tolist(),
            "sse": session.model.sse,
            "n_iter": session.model.n_iter,
            "assignments": session.model.assignments,
            "difficulty_rank": session.model.difficulty_rank,
        }
    params = None
    if session.norm_params is not None:
        params = {
            "mu": list(session.norm_params.mu),
            "sigma": list(session.norm_params.sigma),
            "min": list(session.norm_params.min),
            "max": list(session.norm_params.max),
        }
    return {
        "id": session.id,
        "state": session.state,
        "document": session.document,
        "seed": session.seed,
        "profiles": [
            {
                "lemma": p.lemma,
                "syllables": p.syllables,
                "frequency": p.frequency,
                "features_raw": list(p.features_raw),
                "features_z": list(p.features_z) if p.features_z else None,
                "cluster": p.cluster,
            }
            for p in session.profiles
        ],
        "model": model,
        "norm_params": params,
        "quizzes": [_quiz_to_dict(q, redact=False) for q in session.quizzes],
        "answers": session.answers,
        "verdicts": [
            {
                "cluster_id": v.cluster_id,
                "asked": v.asked,
                "correct": v.correct,
                "verdict": v.verdict,
                "group_id": v.group_id,
            }
            for v in session.verdicts
        ],
        "hard_lemmas": sorted(session.hard_lemmas),
        "groups": session.groups,
        "annotated": session.annotated.to_json() if session.annotated else None,
        "created_at": session.created_at,
        "updated_at": session.updated_at,
    }


def session_from_dict(data: dict) -> Session:
    model = None
    if data["model"] is not None:
        m = data["model"]
        model = ClusterModel(
            k=m["k"],
            centroids=np.array(m["centroids"]),
            labels=np.array(m["labels"], dtype=int),
            sse=m["sse"],
            n_iter=m["n_iter"],
            assignments=m["assignments"],
            difficulty_rank=m["difficulty_rank"],
        )
    params = None
    if data["norm_params"] is not None:
        p = data["norm_params"]
        params = NormalizationParams(
            mu=tuple(p["mu"]), sigma=tuple(p["sigma"]),
            min=tuple(p["min"]), max=tuple(p["max"]),
        )
    annotated = None
    if data["annotated"] is not None:
        a = data["annotated"]
        annotated = AnnotatedText(
            text=a["text"],
            insertions=[(i["offset"], i["inserted"], i["lemma"]) for i in a["insertions"]],
            skipped=a["skipped"],
        )
    return Session(
        id=data["id"],
        state=data["state"],
        document=data["document"],
        seed=data["seed"],
        profiles=[
            WordProfile(
                lemma=p["lemma"],
                syllables=p["syllables"],
                frequency=p["frequency"],
                features_raw=tuple(p["features_raw"]),
                features_z=tuple(p["features_z"]) if p["features_z"] else None,
                cluster=p["cluster"],
            )
            for p in data["profiles"]
        ],
        model=model,
        norm_params=params,
        quizzes=[_quiz_from_dict(q) for q in data["quizzes"]],
        answers=[{k: v for k, v in a.items()} for a in data["answers"]],
        verdicts=[
            ClusterVerdict(v["cluster_id"], v["asked"], v["correct"], v["verdict"],
                           group_id=v.get("group_id"))
            for v in data["verdicts"]
        ],
        hard_lemmas=set(data["hard_lemmas"]),
        groups=data["groups"],
        annotated=annotated,
        created_at=data["created_at"],
        updated_at=data["updated_at"],
    )


class SessionStore:
    """One JSON document per session, written atomically (temp + rename)."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def lock(self, session_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def _path(self, session_id: str) -> Path:
        return self.directory / f"{session_id}.json"

    def save(self, session: Session) -> None:
        payload = json.dumps(session_to_dict(session), indent=2)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as f:
                f.write(payload)
            os.replace(tmp, self._path(session.id))
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)

    def load(self, session_id: str) -> Session:
        path = self._path(session_id)
        if not path.exists():
            raise NotFoundError(session_id)
        return session_from_dict(json.loads(path.read_text()))


# ---------------------------------------------------------------------------
# operations

def _quiz_payload(session: Session, quiz_index: int) -> dict:
    quiz = session.quizzes[quiz_index]
    payload = _quiz_to_dict(quiz, redact=True)
    return {
        "quiz_id": f"{quiz.kind}-{quiz_index}",
        "kind": payload["kind"],
        "questions": [
            {k: v for k, v in q.items() if k in
             ("id", "cluster_id", "group_id", "prompt", "options")}
            for q in payload["questions"]
        ],
    }


def _cluster_lemmas(session: Session, cluster_id: int) -> set[str]:
    return {p.lemma for p in session.profiles if p.cluster == cluster_id}


def _complete(session: Session, resources: Resources) -> None:
    doc = preprocess(session.document, resources.stoplist, resources.kb)
    session.annotated = annotate(doc, session.hard_lemmas, resources.kb,
                                 resources.stoplist)
    session.transition("Completed")


def create_session(
    text: str,
    resources: Resources,
    store: SessionStore,
    seed: int | None = None,
    k_override: int | None = None,
) -> tuple[Session, dict | None]:
    """Run the pre-quiz pipeline and issue the initial quiz. Returns the
    session plus the redacted quiz payload (None when the document yields
    nothing to probe)."""
    config = resources.config
    size = len(text.encode("utf-8"))
    if size > config.max_text_bytes:
        raise TextTooLargeError(size, config.max_text_bytes)
    if seed is None:
        seed = config.seed
    session = Session(
        id=uuid.uuid4().hex,
        state="Created",
        document=text,
        seed=seed,
        created_at=time.time(),
        updated_at=time.time(),
    )
    doc = preprocess(text, resources.stoplist, resources.kb)
    session.profiles = build_profiles(doc, resources.freq_store)
    if not session.profiles:
        session.transition("Clustered")
        session.annotated = AnnotatedText(text=text)
        session.transition("Completed")
        store.save(session)
        return session, None
    k = k_override or config.k_override or choose_k(len(session.profiles))
    session.model, session.norm_params = fit_cluster_model(
        session.profiles, k, seed, mode=config.normalization
    )
    session.transition("Clustered")
    quiz = generate_quiz(session.model, doc, resources.kb, seed, resources.stoplist)
    for cluster_id in quiz.defaulted_hard:
        session.hard_lemmas |= _cluster_lemmas(session, cluster_id)
    session.quizzes.append(quiz)
    if not quiz.questions:
        _complete(session, resources)
        store.save(session)
        return session, None
    session.transition("QuizIssued")
    store.save(session)
    return session, _quiz_payload(session, 0)


def submit_answers(
    session: Session,
    answers: dict[str, int],
    resources: Resources,
    store: SessionStore,
) -> dict:
    """Evaluate the open quiz; either issue a retest quiz or annotate and
    complete the session."""
    if session.state not in ("QuizIssued", "RetestIssued"):
        raise ConflictError(f"no open quiz in state {session.state}")
    quiz = session.quizzes[-1]
    for qid, idx in answers.items():
        if not isinstance(idx, int) or not 0 <= idx <= 3:
            raise ValidationError(f"answer for {qid} must be an option index 0..3")
    try:
        verdicts = evaluate_quiz(quiz, answers)
    except Exception as exc:
        raise ValidationError(str(exc)) from exc
    session.answers.append(answers)
    session.verdicts.extend(verdicts)

    doc = preprocess(session.document, resources.stoplist, resources.kb)
    response: dict = {
        "verdicts": [
            {
                "cluster_id": v.cluster_id,
                "asked": v.asked,
                "correct": v.correct,
                "verdict": v.verdict,
                **({"group_id": v.group_id} if v.group_id else {}),
            }
            for v in verdicts
        ]
    }

    if quiz.kind == "initial":
        retest_questions = []
        retest_clusters = []
        for verdict in verdicts:
            if verdict.verdict == "Hard":
                session.hard_lemmas |= _cluster_lemmas(session, verdict.cluster_id)
            elif verdict.verdict == "Retest":
                try:
                    _, retest_quiz, groups = refine_cluster(
                        verdict.cluster_id, session.model, session.profiles,
                        doc, resources.kb, session.seed, resources.stoplist,
                    )
                except NotRefinableError:
                    session.hard_lemmas |= _cluster_lemmas(session, verdict.cluster_id)
                    continue
                probed_groups = {q.group_id for q in retest_quiz.questions}
                for group_id, lemmas in groups.items():
                    session.groups[group_id] = lemmas
                    if group_id not in probed_groups:
                        # unprobeable group: conservatively hard
                        session.hard_lemmas |= set(lemmas)
                retest_questions.extend(retest_quiz.questions)
                retest_clusters.append(verdict.cluster_id)
        if retest_questions:
            session.quizzes.append(
                Quiz(questions=retest_questions, rng_seed=session.seed,
                     kind="retest", retest_cluster_ids=retest_clusters)
            )
            session.transition("RetestIssued")
            store.save(session)
            response["quiz"] = _quiz_payload(session, len(session.quizzes) - 1)
            return response
    else:
        for verdict in verdicts:
            if verdict.verdict == "Hard" and verdict.group_id:
                session.hard_lemmas |= set(session.groups.get(verdict.group_id, []))

    _complete(session, resources)
    store.save(session)
    response["annotated_ready"] = True
    return response


def get_annotated(session: Session) -> dict:
    if session.state != "Completed":
        raise ConflictError(f"session is {session.state}, not Completed")
    return session.annotated.to_json()


def get_session_summary(session: Session) -> dict:
    """Read-only snapshot; never exposes correct answers of open quizzes."""
    return {
        "id": session.id,
        "state": session.state,
        "seed": session.seed,
        "n_profiles": len(session.profiles),
        "k": session.model.k if session.model else 0,
        "verdicts": [
            {
                "cluster_id": v.cluster_id,
                "asked": v.asked,
                "correct": v.correct,
                "verdict": v.verdict,
                **({"group_id": v.group_id} if v.group_id else {}),
            }
            for v in session.verdicts
        ],
        "quizzes_issued": len(session.quizzes),
        "hard_words": sorted(session.hard_lemmas) if session.state == "Completed" else [],
        "created_at": session.created_at,
        "updated_at": session.updated_at,
    }
