// Center panel: freehand canvas with tool palette, color selectors and the
// helper overlay layer. Helper objects hover as draggable ghosts and only
// commit to the canvas when dropped.

import type { ApiClient, HelperView, SessionView, StrokePayload } from "./api.js";
import { StrokeBatcher } from "./state.js";

const COLORS = ["#222222", "#3a6ea5", "#46963c", "#d9534f", "#e09b2d", "#7e5aa8"];
const WIDTHS: [string, number][] = [
  ["fine", 0.003],
  ["pen", 0.006],
  ["brush", 0.012],
];

interface LocalStroke {
  points: [number, number][];
  color: string;
  width: number;
}

export class CanvasPanel {
  readonly root: HTMLElement;
  readonly canvas: HTMLCanvasElement;
  private overlay: HTMLElement;
  private batcher = new StrokeBatcher();
  private localStrokes: LocalStroke[] = [];
  private color = COLORS[0];
  private width = WIDTHS[1][1];
  private tag: string | null = null;
  private enabled = true;
  private pendingHelper: HelperView | null = null;
  private placedHelpers: HelperView[] = [];

  constructor(
    private api: ApiClient,
    private onStroke: (stroke: StrokePayload) => void,
    private onHelperDrop: (helper: HelperView, x: number, y: number) => void,
  ) {
    this.root = el("section", "panel panel-canvas");
    const tools = el("div", "toolbar");

    const colorWrap = el("div", "tool-group");
    for (const color of COLORS) {
      const swatch = el("button", "swatch");
      swatch.style.background = color;
      swatch.title = color;
      swatch.addEventListener("click", () => {
        this.color = color;
        highlight(colorWrap, swatch);
      });
      colorWrap.append(swatch);
    }
    highlight(colorWrap, colorWrap.children[0] as HTMLElement);

    const widthWrap = el("div", "tool-group");
    for (const [label, value] of WIDTHS) {
      const btn = el("button", "tool", label);
      btn.addEventListener("click", () => {
        this.width = value;
        highlight(widthWrap, btn);
      });
      widthWrap.append(btn);
    }
    highlight(widthWrap, widthWrap.children[1] as HTMLElement);

    this.tagWrap = el("div", "tool-group tag-presets");
    tools.append(colorWrap, widthWrap, this.tagWrap);

    const stage = el("div", "stage");
    this.canvas = document.createElement("canvas");
    this.canvas.width = 720;
    this.canvas.height = 720;
    this.overlay = el("div", "overlay");
    stage.append(this.canvas, this.overlay);
    this.root.append(tools, stage);

    this.canvas.addEventListener("pointerdown", (e) => {
      const [x, y] = this.toUnit(e);
      this.penDown(x, y);
    });
    this.canvas.addEventListener("pointermove", (e) => {
      const [x, y] = this.toUnit(e);
      this.penMove(x, y);
    });
    window.addEventListener("pointerup", () => this.penUp());
  }

  private tagWrap: HTMLElement;

  private toUnit(e: PointerEvent): [number, number] {
    const rect = this.canvas.getBoundingClientRect();
    const w = rect.width || this.canvas.width;
    const h = rect.height || this.canvas.height;
    return [(e.clientX - rect.left) / w, (e.clientY - rect.top) / h];
  }

  // pen handlers are public so tests can drive gestures without PointerEvent
  penDown(x: number, y: number): void {
    if (!this.enabled) return;
    this.batcher.start(x, y);
  }

  penMove(x: number, y: number): void {
    this.batcher.extend(x, y);
    this.redraw();
  }

  penUp(): void {
    const stroke = this.batcher.finish(this.color, this.width, this.tag);
    if (!stroke) return;
    this.localStrokes.push({ points: stroke.points, color: stroke.color, width: stroke.width });
    this.redraw();
    this.onStroke(stroke);
  }

  setEnabled(enabled: boolean): void {
    this.enabled = enabled;
    this.root.classList.toggle("disabled", !enabled);
  }

  setTagPresets(labels: string[]): void {
    this.tagWrap.replaceChildren();
    const none = el("button", "tool", "untagged");
    none.addEventListener("click", () => {
      this.tag = null;
      highlight(this.tagWrap, none);
    });
    this.tagWrap.append(none);
    for (const label of labels) {
      const btn = el("button", "tool", label);
      btn.addEventListener("click", () => {
        this.tag = label;
        highlight(this.tagWrap, btn);
      });
      this.tagWrap.append(btn);
    }
    const current = labels.includes(this.tag ?? "") ? this.tag : null;
    this.tag = current;
    highlight(
      this.tagWrap,
      (current
        ? [...this.tagWrap.children].find((c) => c.textContent === current)
        : none) as HTMLElement,
    );
  }

  get currentTag(): string | null {
    return this.tag;
  }

  // A freshly requested helper floats as a ghost until dropped.
  offerHelper(helper: HelperView): void {
    this.pendingHelper = helper;
    this.renderOverlay();
  }

  get hasPendingHelper(): boolean {
    return this.pendingHelper !== null;
  }

  dropPendingHelper(x: number, y: number): void {
    if (!this.pendingHelper) return;
    const helper = this.pendingHelper;
    this.pendingHelper = null;
    this.onHelperDrop(helper, x, y);
  }

  syncView(view: SessionView): void {
    this.placedHelpers = view.helpers;
    this.renderOverlay();
  }

  private renderOverlay(): void {
    this.overlay.replaceChildren();
    for (const helper of this.placedHelpers) {
      this.overlay.append(this.helperNode(helper, false));
    }
    if (this.pendingHelper) {
      this.overlay.append(this.helperNode(this.pendingHelper, true));
    }
  }

  private helperNode(helper: HelperView, pending: boolean): HTMLElement {
    const node = el("div", pending ? "helper pending" : "helper");
    node.dataset.helperId = helper.helper_id;
    node.dataset.label = helper.label;
    node.innerHTML = helper.svg_body;
    const side = helper.scale * 100;
    node.style.width = `${side}%`;
    node.style.height = `${side}%`;
    node.style.left = `${(pending ? 0.5 : helper.x) * 100}%`;
    node.style.top = `${(pending ? 0.5 : helper.y) * 100}%`;

    let dragging = false;
    node.addEventListener("pointerdown", (e) => {
      dragging = true;
      e.stopPropagation();
    });
    window.addEventListener("pointermove", (e) => {
      if (!dragging) return;
      const rect = this.overlay.getBoundingClientRect();
      const x = (e.clientX - rect.left) / (rect.width || 1);
      const y = (e.clientY - rect.top) / (rect.height || 1);
      node.style.left = `${x * 100}%`;
      node.style.top = `${y * 100}%`;
    });
    window.addEventListener("pointerup", (e) => {
      if (!dragging) return;
      dragging = false;
      const rect = this.overlay.getBoundingClientRect();
      const x = (e.clientX - rect.left) / (rect.width || 1);
      const y = (e.clientY - rect.top) / (rect.height || 1);
      if (pending) {
        this.dropPendingHelper(x, y);
      } else {
        this.onHelperDrop(helper, x, y);
      }
    });
    return node;
  }

  private redraw(): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return; // headless test environment has no 2D context
    const { width: w, height: h } = this.canvas;
    ctx.fillStyle = "#ffffff";
    ctx.fillRect(0, 0, w, h);
    const strokes = this.batcher.active
      ? [...this.localStrokes, { points: this.batcher.current, color: this.color, width: this.width }]
      : this.localStrokes;
    for (const stroke of strokes) {
      if (stroke.points.length === 0) continue;
      ctx.strokeStyle = stroke.color;
      ctx.lineWidth = Math.max(1, stroke.width * Math.min(w, h));
      ctx.lineCap = "round";
      ctx.lineJoin = "round";
      ctx.beginPath();
      ctx.moveTo(stroke.points[0][0] * w, stroke.points[0][1] * h);
      for (const [x, y] of stroke.points.slice(1)) {
        ctx.lineTo(x * w, y * h);
      }
      ctx.stroke();
    }
  }
}

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function highlight(group: HTMLElement, chosen: HTMLElement): void {
  for (const child of group.children) child.classList.remove("selected");
  chosen.classList.add("selected");
}
