// Pure view-model helpers shared by the panels.

import type { CardView, SessionView, StrokePayload, TaskView } from "./api.js";

export function completedCount(view: SessionView): number {
  if (!view.quest) return 0;
  return view.quest.tasks.filter((t) => t.status === "completed").length;
}

export function progressFraction(view: SessionView): number {
  if (!view.quest || view.quest.tasks.length === 0) return 0;
  return completedCount(view) / view.quest.tasks.length;
}

export function activeTask(view: SessionView): TaskView | null {
  if (!view.quest) return null;
  return (
    view.quest.tasks.find(
      (t) => t.status === "active" || t.status === "ready_to_complete",
    ) ?? null
  );
}

// Labels the active task suggests for tagging strokes; offered, never forced.
export function tagPresets(view: SessionView): string[] {
  const task = activeTask(view);
  if (!task) return [];
  return task.criteria.map((c) => c.label);
}

export function newestCards(cards: CardView[], limit = 12): CardView[] {
  return [...cards].sort((a, b) => b.seq - a.seq).slice(0, limit);
}

export const STYLE_CHOICES = ["oil_painting", "watercolor", "anime"] as const;

// Accumulates pointer samples between pen-down and pen-up; the whole
// gesture flushes as exactly one stroke request.
export class StrokeBatcher {
  private points: [number, number][] = [];
  private drawing = false;

  start(x: number, y: number): void {
    this.drawing = true;
    this.points = [[clamp01(x), clamp01(y)]];
  }

  extend(x: number, y: number): void {
    if (!this.drawing) return;
    this.points.push([clamp01(x), clamp01(y)]);
  }

  get active(): boolean {
    return this.drawing;
  }

  get current(): [number, number][] {
    return this.points;
  }

  finish(color: string, width: number, elementTag: string | null): StrokePayload | null {
    if (!this.drawing) return null;
    this.drawing = false;
    const points = this.points;
    this.points = [];
    if (points.length === 0) return null;
    return { points, color, width, element_tag: elementTag };
  }
}

function clamp01(v: number): number {
  return Math.min(1, Math.max(0, v));
}
