// Typed client for the session service. The fetch implementation is
// injectable so component tests can run against a scripted transport.

export interface CriterionView {
  label: string;
  min_count: number;
  satisfied: boolean;
}

export interface TaskView {
  task_id: string;
  index: number;
  title: string;
  prompt: string;
  bloom: number;
  bloom_name: string;
  status: string;
  criteria: CriterionView[];
}

export interface QuestView {
  quest_id: string;
  goal_text: string;
  tasks: TaskView[];
}

export interface CardView {
  dimension: string;
  text: string;
  seq: number;
  color_code: string;
}

export interface HelperView {
  helper_id: string;
  label: string;
  svg_body: string;
  x: number;
  y: number;
  scale: number;
}

export interface AnalysisView {
  elements: Record<string, number>;
  stroke_count: number;
  changed: boolean;
  source: string;
  at_revision: number;
}

export interface SessionView {
  session_id: string;
  phase: string;
  goal: string | null;
  quest: QuestView | null;
  gems: number;
  canvas_revision: number;
  stroke_count: number;
  helpers: HelperView[];
  feedback: CardView[];
  style: string | null;
  style_artifact: string | null;
  event_seq: number;
}

export interface CheckResponse {
  cards: CardView[];
  analysis: AnalysisView | null;
  session: SessionView;
}

export interface CompleteResponse {
  cards: CardView[];
  session: SessionView;
}

export interface StyleResponse {
  artifact: string;
  url: string;
  session: SessionView;
}

export interface StrokePayload {
  points: [number, number][];
  color: string;
  width: number;
  element_tag: string | null;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const data = await response.json();
        detail = data.detail ?? data.error ?? detail;
      } catch {
        // body was not JSON; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  createSession(goal: string): Promise<SessionView> {
    return this.request("POST", "/sessions", { goal });
  }

  getSession(id: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${id}`);
  }

  addStroke(id: string, stroke: StrokePayload): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/strokes`, stroke);
  }

  requestHelper(id: string, hint: string): Promise<HelperView> {
    return this.request("POST", `/sessions/${id}/helpers`, { hint });
  }

  placeHelper(id: string, helperId: string, x: number, y: number): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/helpers/${helperId}/place`, { x, y });
  }

  check(id: string): Promise<CheckResponse> {
    return this.request("POST", `/sessions/${id}/check`);
  }

  completeTask(id: string, taskId: string): Promise<CompleteResponse> {
    return this.request("POST", `/sessions/${id}/tasks/${taskId}/complete`);
  }

  applyStyle(id: string, style: string, seed: number): Promise<StyleResponse> {
    return this.request("POST", `/sessions/${id}/style`, { style, seed });
  }

  styledImageUrl(id: string, artifact: string): string {
    return `${this.baseUrl}/sessions/${id}/style/${artifact}`;
  }

  canvasPngUrl(id: string): string {
    return `${this.baseUrl}/sessions/${id}/canvas.png`;
  }
}
