// Keyboard-first triage: 1/0 judge the current word, arrows (or j/k) move,
// t/a toggle the filters.

import type { Filters } from "./session.js";

export type KeyAction =
  | { kind: "label"; label: 0 | 1 }
  | { kind: "move"; delta: 1 | -1 }
  | { kind: "toggle"; filter: keyof Filters }
  | null;

export function actionForKey(key: string): KeyAction {
  switch (key) {
    case "1":
      return { kind: "label", label: 1 };
    case "0":
      return { kind: "label", label: 0 };
    case "ArrowDown":
    case "j":
      return { kind: "move", delta: 1 };
    case "ArrowUp":
    case "k":
      return { kind: "move", delta: -1 };
    case "t":
      return { kind: "toggle", filter: "hideToponyms" };
    case "a":
      return { kind: "toggle", filter: "hideAnnotated" };
    default:
      return null;
  }
}
