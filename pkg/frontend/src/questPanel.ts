// Left panel: the quest ladder with progress bar, gem counter and helper
// request buttons. The Complete affordance appears only when a task is
// ready, so pacing stays in the learner's hands.

import type { SessionView, TaskView } from "./api.js";
import { completedCount, progressFraction, tagPresets } from "./state.js";

const STATUS_LABELS: Record<string, string> = {
  locked: "locked",
  active: "in progress",
  ready_to_complete: "ready!",
  completed: "done",
};

export class QuestPanel {
  readonly root: HTMLElement;
  private list: HTMLElement;
  private bar: HTMLElement;
  private barLabel: HTMLElement;
  private gems: HTMLElement;
  private helperWrap: HTMLElement;

  constructor(
    private onComplete: (task: TaskView) => void,
    private onHelperRequest: (hint: string) => void,
  ) {
    this.root = element("section", "panel panel-quest");
    const heading = element("h2", "panel-title", "Quest");
    this.gems = element("div", "gems", "0 gems");

    const barWrap = element("div", "progress");
    this.bar = element("div", "progress-fill");
    barWrap.append(this.bar);
    this.barLabel = element("div", "progress-label", "0 of 0 tasks");

    this.list = element("ol", "task-list");
    this.helperWrap = element("div", "helper-buttons");
    this.root.append(heading, this.gems, barWrap, this.barLabel, this.list, this.helperWrap);
  }

  render(view: SessionView): void {
    this.gems.textContent = `${view.gems} gem${view.gems === 1 ? "" : "s"}`;
    const fraction = progressFraction(view);
    this.bar.style.width = `${Math.round(fraction * 100)}%`;
    const total = view.quest?.tasks.length ?? 0;
    this.barLabel.textContent = `${completedCount(view)} of ${total} tasks`;

    this.list.replaceChildren();
    if (!view.quest) return;
    for (const task of view.quest.tasks) {
      const item = element("li", `task task-${task.status}`);
      item.dataset.taskId = task.task_id;
      const head = element("div", "task-head");
      head.append(
        element("span", "task-bloom", task.bloom_name),
        element("span", "task-title", task.title),
        element("span", "task-status", STATUS_LABELS[task.status] ?? task.status),
      );
      item.append(head);
      if (task.status !== "locked") {
        item.append(element("p", "task-prompt", task.prompt));
      }
      if (task.status === "active" || task.status === "ready_to_complete") {
        const criteria = element("ul", "criteria");
        for (const criterion of task.criteria) {
          criteria.append(
            element(
              "li",
              criterion.satisfied ? "criterion met" : "criterion",
              `${criterion.label} x${criterion.min_count}`,
            ),
          );
        }
        item.append(criteria);
      }
      if (task.status === "ready_to_complete") {
        const button = element("button", "complete-btn", "Complete task");
        button.addEventListener("click", () => this.onComplete(task));
        item.append(button);
      }
      this.list.append(item);
    }

    this.helperWrap.replaceChildren();
    const labels = tagPresets(view);
    if (labels.length && view.phase === "quest_active") {
      this.helperWrap.append(element("div", "helper-title", "Helper objects"));
      for (const label of labels) {
        const button = element("button", "helper-btn", label);
        button.addEventListener("click", () => this.onHelperRequest(label));
        this.helperWrap.append(button);
      }
    }
  }
}

function element(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}
