// Application shell: goal entry, the three panels, session polling, and
// the end-of-quest style chooser.

import { ApiClient, ApiError, type HelperView, type SessionView, type StrokePayload } from "./api.js";
import { CanvasPanel } from "./canvasPanel.js";
import { FeedbackPanel } from "./feedbackPanel.js";
import { QuestPanel } from "./questPanel.js";
import { STYLE_CHOICES, tagPresets } from "./state.js";

const POLL_INTERVAL_MS = 30_000;

export class App {
  readonly root: HTMLElement;
  readonly api: ApiClient;
  view: SessionView | null = null;

  readonly goalForm: HTMLFormElement;
  readonly goalInput: HTMLInputElement;
  readonly quest: QuestPanel;
  readonly canvas: CanvasPanel;
  readonly feedback: FeedbackPanel;
  readonly styleBar: HTMLElement;
  readonly resultPane: HTMLElement;
  readonly notice: HTMLElement;
  private pollTimer: ReturnType<typeof setInterval> | null = null;
  private inflight = new Set<Promise<unknown>>();

  constructor(root: HTMLElement, api: ApiClient) {
    this.root = root;
    this.api = api;

    this.goalForm = document.createElement("form");
    this.goalForm.className = "goal-form";
    this.goalInput = document.createElement("input");
    this.goalInput.placeholder = "What would you like to learn by drawing?";
    this.goalInput.name = "goal";
    const submit = document.createElement("button");
    submit.textContent = "Start quest";
    this.goalForm.append(this.goalInput, submit);
    this.goalForm.addEventListener("submit", (e) => {
      e.preventDefault();
      this.track(this.startSession(this.goalInput.value));
    });

    this.quest = new QuestPanel(
      (task) => this.track(this.completeTask(task.task_id)),
      (hint) => this.track(this.requestHelper(hint)),
    );
    this.canvas = new CanvasPanel(
      api,
      (stroke) => this.track(this.sendStroke(stroke)),
      (helper, x, y) => this.track(this.placeHelper(helper, x, y)),
    );
    this.feedback = new FeedbackPanel(() => this.track(this.check()));

    this.styleBar = document.createElement("div");
    this.styleBar.className = "style-bar hidden";
    for (const style of STYLE_CHOICES) {
      const button = document.createElement("button");
      button.className = "style-btn";
      button.textContent = style.replace("_", " ");
      button.dataset.style = style;
      button.addEventListener("click", () => this.track(this.applyStyle(style)));
      this.styleBar.append(button);
    }

    this.resultPane = document.createElement("div");
    this.resultPane.className = "result-pane hidden";

    this.notice = document.createElement("div");
    this.notice.className = "notice hidden";

    const panels = document.createElement("main");
    panels.className = "panels";
    panels.append(this.quest.root, this.canvas.root, this.feedback.root);
    const header = document.createElement("header");
    header.className = "topbar";
    const title = document.createElement("h1");
    title.textContent = "SketchQuest";
    header.append(title, this.goalForm);
    this.root.append(header, this.notice, panels, this.styleBar, this.resultPane);
  }

  async startSession(goal: string): Promise<void> {
    if (!goal.trim()) {
      this.showNotice("A goal helps us build your quest. Any topic works!");
      return;
    }
    try {
      const view = await this.api.createSession(goal);
      this.applyView(view);
      this.startPolling();
    } catch (err) {
      this.showApiNotice(err);
    }
  }

  async sendStroke(stroke: StrokePayload): Promise<void> {
    if (!this.view) return;
    try {
      const view = await this.api.addStroke(this.view.session_id, stroke);
      this.applyView(view);
    } catch (err) {
      this.showApiNotice(err);
    }
  }

  async check(): Promise<void> {
    if (!this.view) return;
    this.feedback.setBusy(true);
    try {
      const result = await this.api.check(this.view.session_id);
      this.applyView(result.session);
    } catch (err) {
      this.showApiNotice(err);
    } finally {
      this.feedback.setBusy(false);
    }
  }

  async completeTask(taskId: string): Promise<void> {
    if (!this.view) return;
    try {
      const result = await this.api.completeTask(this.view.session_id, taskId);
      this.applyView(result.session);
    } catch (err) {
      this.showApiNotice(err);
    }
  }

  async requestHelper(hint: string): Promise<void> {
    if (!this.view) return;
    try {
      const helper = await this.api.requestHelper(this.view.session_id, hint);
      this.canvas.offerHelper(helper);
      this.showNotice(`A ${helper.label} helper is ready. Drag it where you want it.`);
    } catch (err) {
      this.showApiNotice(err);
    }
  }

  async placeHelper(helper: HelperView, x: number, y: number): Promise<void> {
    if (!this.view) return;
    try {
      const view = await this.api.placeHelper(this.view.session_id, helper.helper_id, x, y);
      this.applyView(view);
    } catch (err) {
      this.showApiNotice(err);
    }
  }

  async applyStyle(style: string): Promise<void> {
    if (!this.view) return;
    try {
      const result = await this.api.applyStyle(this.view.session_id, style, Date.now() % 100_000);
      this.applyView(result.session);
    } catch (err) {
      this.showApiNotice(err);
    }
  }

  async refresh(): Promise<void> {
    if (!this.view) return;
    try {
      this.applyView(await this.api.getSession(this.view.session_id));
    } catch {
      // transient poll failures are fine; the next tick retries
    }
  }

  applyView(view: SessionView): void {
    this.view = view;
    this.goalForm.classList.toggle("hidden", view.quest !== null);
    this.quest.render(view);
    this.feedback.showLog(view.feedback);
    this.canvas.syncView(view);
    this.canvas.setTagPresets(tagPresets(view));
    this.canvas.setEnabled(view.phase === "quest_active");
    this.feedback.checkButton.disabled = view.phase !== "quest_active";

    const styleUnlocked = view.phase === "all_complete" || view.phase === "style_applied";
    this.styleBar.classList.toggle("hidden", !styleUnlocked);
    this.renderResult(view);
  }

  private renderResult(view: SessionView): void {
    this.resultPane.replaceChildren();
    const done = view.phase === "style_applied" && view.style_artifact;
    this.resultPane.classList.toggle("hidden", !done);
    if (!done) return;
    const caption = document.createElement("p");
    caption.textContent = `Your drawing in ${view.style?.replace("_", " ")} style:`;
    const img = document.createElement("img");
    img.className = "styled-image";
    img.src = this.api.styledImageUrl(view.session_id, view.style_artifact!);
    const download = document.createElement("a");
    download.href = img.src;
    download.download = `sketchquest-${view.session_id}.png`;
    download.textContent = "Download";
    this.resultPane.append(caption, img, download);
  }

  private startPolling(): void {
    if (this.pollTimer) clearInterval(this.pollTimer);
    this.pollTimer = setInterval(() => this.track(this.refresh()), POLL_INTERVAL_MS);
  }

  stopPolling(): void {
    if (this.pollTimer) clearInterval(this.pollTimer);
    this.pollTimer = null;
  }

  private track(p: Promise<unknown>): void {
    this.inflight.add(p);
    p.finally(() => this.inflight.delete(p)).catch(() => undefined);
  }

  // Waits until every in-flight request settles; used by tests.
  async idle(): Promise<void> {
    while (this.inflight.size > 0) {
      await Promise.allSettled([...this.inflight]);
    }
  }

  // 409s and friends arrive as gentle explanations, never fault language.
  private showApiNotice(err: unknown): void {
    if (err instanceof ApiError) {
      if (err.status === 409) {
        this.showNotice("Not just yet: " + truncateDetail(err.detail));
      } else if (err.status === 404) {
        this.showNotice("Hmm, we could not find that one. A fresh check might help.");
      } else {
        this.showNotice("Something hiccuped on our side. Let's try that again in a moment.");
      }
    } else {
      this.showNotice("The connection wobbled. Let's try that again.");
    }
  }

  showNotice(text: string): void {
    this.notice.textContent = text;
    this.notice.classList.remove("hidden");
    setTimeout(() => this.notice.classList.add("hidden"), 6000);
  }
}

function truncateDetail(detail: string): string {
  return detail.length > 120 ? detail.slice(0, 117) + "..." : detail;
}

const mount = typeof document !== "undefined" ? document.getElementById("app") : null;
if (mount) {
  new App(mount, new ApiClient(""));
}
