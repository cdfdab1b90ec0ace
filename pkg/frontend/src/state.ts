/**
 * Single-page app state machine.
 *
 *   start --> quiz --> (quiz: retest)* --> reading
 *
 * The quiz view tracks one selected option per question and only allows
 * submission once every question is answered. The reading view owns the
 * gloss-visibility toggle. API failures surface as a banner on the current
 * view without losing entered state.
 */

import {
  AnnotatedText,
  ApiError,
  ArthClient,
  QuizPayload,
  Verdict,
} from "./api.js";

export interface StartView {
  kind: "start";
  error?: string;
}

export interface QuizView {
  kind: "quiz";
  quiz: QuizPayload;
  selections: Map<string, number>;
  error?: string;
}

export interface ReadingView {
  kind: "reading";
  annotated: AnnotatedText;
  verdicts: Verdict[];
  hardWords: string[];
  glossesVisible: boolean;
  error?: string;
}

export type View = StartView | QuizView | ReadingView;

export class App {
  view: View = { kind: "start" };
  sessionId: string | null = null;
  verdicts: Verdict[] = [];

  constructor(
    private readonly client: ArthClient,
    private readonly seed?: number,
    private readonly kOverride?: number,
  ) {}

  canStart(text: string): boolean {
    return text.trim().length > 0;
  }

  async start(text: string): Promise<View> {
    if (!this.canStart(text)) {
      throw new Error("cannot start with an empty document");
    }
    try {
      const created = await this.client.createSession(text, this.seed, this.kOverride);
      this.sessionId = created.session_id;
      if (created.quiz === null) {
        // nothing to probe: the session is already complete
        return this.enterReadingView();
      }
      this.view = {
        kind: "quiz",
        quiz: created.quiz,
        selections: new Map(),
      };
    } catch (error) {
      this.view = { kind: "start", error: describe(error) };
    }
    return this.view;
  }

  select(questionId: string, optionIndex: number): void {
    if (this.view.kind !== "quiz") throw new Error("no quiz in progress");
    const known = this.view.quiz.questions.some((q) => q.id === questionId);
    if (!known) throw new Error(`unknown question: ${questionId}`);
    if (optionIndex < 0 || optionIndex > 3) {
      throw new Error("option index out of range");
    }
    this.view.selections.set(questionId, optionIndex);
  }

  canSubmit(): boolean {
    return (
      this.view.kind === "quiz" &&
      this.view.quiz.questions.every((q) => this.view.kind === "quiz" &&
        this.view.selections.has(q.id))
    );
  }

  async submit(): Promise<View> {
    if (this.view.kind !== "quiz") throw new Error("no quiz in progress");
    if (!this.canSubmit()) throw new Error("answer every question first");
    if (!this.sessionId) throw new Error("no session");
    const answers = Object.fromEntries(this.view.selections);
    try {
      const response = await this.client.submitAnswers(this.sessionId, answers);
      this.verdicts.push(...response.verdicts);
      if (response.quiz) {
        this.view = { kind: "quiz", quiz: response.quiz, selections: new Map() };
        return this.view;
      }
      return this.enterReadingView();
    } catch (error) {
      this.view = { ...this.view, error: describe(error) };
      return this.view;
    }
  }

  private async enterReadingView(): Promise<View> {
    if (!this.sessionId) throw new Error("no session");
    const annotated = await this.client.getAnnotated(this.sessionId);
    const summary = await this.client.getSummary(this.sessionId);
    this.view = {
      kind: "reading",
      annotated,
      verdicts: this.verdicts,
      hardWords: summary.hard_words,
      glossesVisible: true,
    };
    return this.view;
  }

  toggleGlosses(): void {
    if (this.view.kind !== "reading") throw new Error("not in reading view");
    this.view.glossesVisible = !this.view.glossesVisible;
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `${error.message} (${error.code})`;
  if (error instanceof Error) return error.message;
  return String(error);
}
