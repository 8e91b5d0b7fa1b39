// Right panel: the tutor presence, the Check button and the stack of
// color-coded feedback cards. Every card text comes verbatim from a
// service response; this panel never invents feedback.

import type { CardView } from "./api.js";
import { newestCards } from "./state.js";

export class FeedbackPanel {
  readonly root: HTMLElement;
  private stack: HTMLElement;
  private status: HTMLElement;
  readonly checkButton: HTMLButtonElement;
  private cards: CardView[] = [];

  constructor(onCheck: () => void) {
    this.root = element("section", "panel panel-feedback");
    const head = element("div", "tutor-head");
    const avatar = element("div", "avatar", "✍");
    this.status = element("div", "tutor-status", "Tutor online and ready");
    head.append(avatar, this.status);

    this.checkButton = document.createElement("button");
    this.checkButton.className = "check-btn";
    this.checkButton.textContent = "Check my drawing";
    this.checkButton.addEventListener("click", onCheck);

    this.stack = element("div", "card-stack");
    this.root.append(head, this.checkButton, this.stack);
  }

  setBusy(busy: boolean): void {
    this.checkButton.disabled = busy;
    this.status.textContent = busy ? "Tutor is looking..." : "Tutor online and ready";
  }

  // Replace the stack with the session's card log (newest on top).
  showLog(cards: CardView[]): void {
    this.cards = newestCards(cards);
    this.renderStack();
  }

  private renderStack(): void {
    this.stack.replaceChildren();
    for (const card of this.cards) {
      const node = element("div", `card card-${card.dimension}`);
      node.style.borderLeftColor = card.color_code;
      node.dataset.seq = String(card.seq);
      node.append(
        element("div", "card-dimension", card.dimension.replace("_", "-")),
        element("p", "card-text", card.text),
      );
      this.stack.append(node);
    }
  }
}

function element(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}
