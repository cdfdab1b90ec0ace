"""HTTP JSON API over the session pipeline.

Endpoints:
  POST /sessions                   {text, seed?}         -> {session_id, quiz}
  POST /sessions/{id}/answers      {answers: {qid: idx}} -> {verdicts, quiz? | annotated_ready}
  GET  /sessions/{id}                                    -> summary
  GET  /sessions/{id}/annotated                          -> {text, insertions}

Errors are JSON {error, code}. Correct answers never appear on the wire
before a session completes.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .session import (
    Resources,
    SessionError,
    SessionStore,
    create_session,
    get_annotated,
    get_session_summary,
    submit_answers,
)


class CreateSessionBody(BaseModel):
    text: str
    seed: int | None = None
    k_override: int | None = Field(default=None, ge=1)


class AnswersBody(BaseModel):
    answers: dict[str, int]


def create_app(resources: Resources, store: SessionStore) -> FastAPI:
    app = FastAPI(title="arth", docs_url=None, redoc_url=None)

    @app.exception_handler(SessionError)
    async def session_error_handler(_request: Request, exc: SessionError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": str(exc), "code": exc.code},
        )

    @app.post("/sessions")
    def post_session(body: CreateSessionBody):
        session, quiz = create_session(
            body.text, resources, store, seed=body.seed, k_override=body.k_override
        )
        return {"session_id": session.id, "state": session.state, "quiz": quiz}

    @app.post("/sessions/{session_id}/answers")
    def post_answers(session_id: str, body: AnswersBody):
        with store.lock(session_id):
            session = store.load(session_id)
            response = submit_answers(session, body.answers, resources, store)
        response["state"] = session.state
        return response

    @app.get("/sessions/{session_id}")
    def get_summary(session_id: str):
        return get_session_summary(store.load(session_id))

    @app.get("/sessions/{session_id}/annotated")
    def get_annotated_text(session_id: str):
        return get_annotated(store.load(session_id))

    return app
