/**
 * DOM rendering for the three views. Pure functions of (container, state):
 * each call clears the container and rebuilds it, so toggling gloss
 * visibility re-renders the reading view without hidden-but-present text
 * nodes — with glosses off, the reading container's textContent is exactly
 * the original document.
 */

import type { QuizView, ReadingView, StartView } from "./state.js";
import { toSegments } from "./annotated.js";

export interface StartHandlers {
  onStart: (text: string) => void;
}

export interface QuizHandlers {
  onSelect: (questionId: string, optionIndex: number) => void;
  onSubmit: () => void;
}

export interface ReadingHandlers {
  onToggleGlosses: () => void;
}

function clear(container: HTMLElement): void {
  container.replaceChildren();
}

function banner(container: HTMLElement, message: string): void {
  const div = container.ownerDocument.createElement("div");
  div.className = "error-banner";
  div.textContent = `Something went wrong: ${message}. Please retry.`;
  container.append(div);
}

export function renderStart(
  container: HTMLElement,
  view: StartView,
  handlers: StartHandlers,
): void {
  clear(container);
  if (view.error) banner(container, view.error);
  const doc = container.ownerDocument;

  const textarea = doc.createElement("textarea");
  textarea.className = "paste-area";
  textarea.placeholder = "Paste the text you want to read…";

  const button = doc.createElement("button");
  button.className = "start-button";
  button.textContent = "Start";
  button.disabled = true;

  textarea.addEventListener("input", () => {
    button.disabled = textarea.value.trim().length === 0;
  });
  button.addEventListener("click", () => handlers.onStart(textarea.value));

  container.append(textarea, button);
}

export function renderQuiz(
  container: HTMLElement,
  view: QuizView,
  handlers: QuizHandlers,
): void {
  clear(container);
  if (view.error) banner(container, view.error);
  const doc = container.ownerDocument;

  const heading = doc.createElement("h2");
  heading.textContent = view.quiz.kind === "retest"
    ? "A few more questions"
    : "Quick vocabulary check";
  container.append(heading);

  for (const question of view.quiz.questions) {
    const card = doc.createElement("section");
    card.className = "question-card";
    card.dataset.questionId = question.id;

    const prompt = doc.createElement("p");
    prompt.className = "prompt";
    prompt.textContent = question.prompt;
    card.append(prompt);

    question.options.forEach((option, index) => {
      const label = doc.createElement("label");
      label.className = "option";
      const radio = doc.createElement("input");
      radio.type = "radio";
      radio.name = question.id;
      radio.value = String(index);
      radio.checked = view.selections.get(question.id) === index;
      radio.addEventListener("change", () =>
        handlers.onSelect(question.id, index));
      const text = doc.createElement("span");
      text.textContent = option;
      label.append(radio, text);
      card.append(label);
    });
    container.append(card);
  }

  const submit = doc.createElement("button");
  submit.className = "submit-button";
  submit.textContent = "Submit answers";
  submit.disabled =
    view.quiz.questions.some((q) => !view.selections.has(q.id));
  submit.addEventListener("click", () => handlers.onSubmit());
  container.append(submit);
}

export function renderReading(
  container: HTMLElement,
  view: ReadingView,
  handlers: ReadingHandlers,
): void {
  clear(container);
  if (view.error) banner(container, view.error);
  const doc = container.ownerDocument;

  const badges = doc.createElement("div");
  badges.className = "verdict-badges";
  for (const verdict of view.verdicts) {
    const badge = doc.createElement("span");
    badge.className = `badge badge-${verdict.verdict.toLowerCase()}`;
    const scope = verdict.group_id
      ? `group ${verdict.group_id}`
      : `cluster ${verdict.cluster_id}`;
    badge.textContent = `${scope}: ${verdict.verdict}`;
    badges.append(badge);
  }
  container.append(badges);

  const toggle = doc.createElement("button");
  toggle.className = "gloss-toggle";
  toggle.textContent = view.glossesVisible ? "Hide meanings" : "Show meanings";
  toggle.addEventListener("click", () => handlers.onToggleGlosses());
  container.append(toggle);

  const article = doc.createElement("article");
  article.className = "reading-text";
  for (const segment of toSegments(view.annotated)) {
    if (segment.kind === "plain") {
      article.append(doc.createTextNode(segment.text));
    } else if (view.glossesVisible) {
      const span = doc.createElement("span");
      span.className = "gloss";
      span.dataset.lemma = segment.lemma;
      span.textContent = segment.text;
      article.append(span);
    }
  }
  container.append(article);
}
