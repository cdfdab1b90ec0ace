/** Browser bootstrap: wires the state machine to the DOM. */

import { ArthClient } from "./api.js";
import { App } from "./state.js";
import { renderQuiz, renderReading, renderStart } from "./render.js";

export function mount(root: HTMLElement, baseUrl: string): App {
  const app = new App(new ArthClient(baseUrl));

  const render = (): void => {
    const view = app.view;
    if (view.kind === "start") {
      renderStart(root, view, {
        onStart: (text) => void app.start(text).then(render),
      });
    } else if (view.kind === "quiz") {
      renderQuiz(root, view, {
        onSelect: (questionId, optionIndex) => {
          app.select(questionId, optionIndex);
          render();
        },
        onSubmit: () => void app.submit().then(render),
      });
    } else {
      renderReading(root, view, {
        onToggleGlosses: () => {
          app.toggleGlosses();
          render();
        },
      });
    }
  };

  render();
  return app;
}

declare global {
  interface Window {
    __arthApp?: App;
  }
}

if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root) {
    window.__arthApp = mount(root, "");
  }
}
