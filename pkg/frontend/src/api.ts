/**
 * Typed client for the session HTTP API.
 *
 * Every response passes through a schema guard that rejects any payload
 * carrying an answer key: the browser must never receive or store correct
 * answers before a session completes.
 */

export interface QuizQuestion {
  id: string;
  cluster_id: number;
  group_id?: string;
  prompt: string;
  options: string[];
}

export interface QuizPayload {
  quiz_id: string;
  kind: "initial" | "retest";
  questions: QuizQuestion[];
}

export interface Verdict {
  cluster_id: number;
  asked: number;
  correct: number;
  verdict: "Easy" | "Hard" | "Retest";
  group_id?: string;
}

export interface CreateSessionResponse {
  session_id: string;
  state: string;
  quiz: QuizPayload | null;
}

export interface AnswersResponse {
  verdicts: Verdict[];
  quiz?: QuizPayload;
  annotated_ready?: boolean;
  state: string;
}

export interface Insertion {
  offset: number;
  inserted: string;
  lemma: string;
}

export interface AnnotatedText {
  text: string;
  insertions: Insertion[];
  skipped: string[];
}

export interface SessionSummary {
  id: string;
  state: string;
  verdicts: Verdict[];
  hard_words: string[];
}

export class ApiError extends Error {
  constructor(
    message: string,
    readonly code: string,
    readonly status: number,
  ) {
    super(message);
  }
}

const FORBIDDEN_KEYS = new Set(["correct_index", "correct_option", "answer_key"]);

/** Reject any payload that leaks an answer key, however deeply nested. */
export function assertNoAnswerKey(value: unknown, path = "$"): void {
  if (Array.isArray(value)) {
    value.forEach((item, i) => assertNoAnswerKey(item, `${path}[${i}]`));
    return;
  }
  if (value !== null && typeof value === "object") {
    for (const [key, inner] of Object.entries(value as Record<string, unknown>)) {
      if (FORBIDDEN_KEYS.has(key)) {
        throw new Error(`answer key leaked at ${path}.${key}`);
      }
      assertNoAnswerKey(inner, `${path}.${key}`);
    }
  }
}

async function parseResponse<T>(response: Response, guard: boolean): Promise<T> {
  const body: unknown = await response.json();
  if (!response.ok) {
    const err = body as { error?: string; code?: string };
    throw new ApiError(err.error ?? response.statusText, err.code ?? "error",
      response.status);
  }
  if (guard) assertNoAnswerKey(body);
  return body as T;
}

export class ArthClient {
  constructor(readonly baseUrl: string) {}

  private async post<T>(path: string, payload: unknown, guard = true): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
    return parseResponse<T>(response, guard);
  }

  private async get<T>(path: string, guard = true): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`);
    return parseResponse<T>(response, guard);
  }

  createSession(text: string, seed?: number, kOverride?: number) {
    return this.post<CreateSessionResponse>("/sessions", {
      text,
      ...(seed !== undefined ? { seed } : {}),
      ...(kOverride !== undefined ? { k_override: kOverride } : {}),
    });
  }

  submitAnswers(sessionId: string, answers: Record<string, number>) {
    return this.post<AnswersResponse>(`/sessions/${sessionId}/answers`, { answers });
  }

  getAnnotated(sessionId: string) {
    return this.get<AnnotatedText>(`/sessions/${sessionId}/annotated`);
  }

  getSummary(sessionId: string) {
    return this.get<SessionSummary>(`/sessions/${sessionId}`);
  }
}
