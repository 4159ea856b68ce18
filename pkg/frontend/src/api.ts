// Typed client for the game service. Every call goes over HTTP; this file
// is the only place the UI talks to the outside world.

export type Mark = "X" | "O";
export type EngineType = "human" | "random" | "minimax" | "agent";

export interface EngineSpec {
  type: EngineType;
  depth?: number | null;
  pruning?: "none" | "ab" | "alpha_beta";
  checkpoint?: string | null;
}

export interface EngineReply {
  cell: number;
  elapsed_ms: number;
  utility: number | null;
}

export interface MoveLogEntry {
  cell: number;
  mark: string;
  elapsed_ms: number | null;
}

export interface SessionView {
  id: string;
  size: number;
  win_length: number;
  board: string;
  to_move: Mark | null;
  status: string;
  x_engine: EngineSpec;
  o_engine: EngineSpec;
  engine_reply: EngineReply | null;
  move_log: MoveLogEntry[];
}

export interface AnalysisEntry {
  cell: number;
  utility: number;
}

export interface CheckpointInfo {
  id: string;
  board_size: number;
  win_length: number;
  feature_dim: number;
  eta: number;
  games_trained: number;
  seed: number;
}

export interface EnginesView {
  engines: EngineType[];
  checkpoints: CheckpointInfo[];
}

export interface CreateGameRequest {
  size: number;
  win_length?: number | null;
  x_engine: EngineSpec;
  o_engine: EngineSpec;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function errorText(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { error?: unknown };
    if (typeof body.error === "string") return body.error;
    return JSON.stringify(body);
  } catch {
    return `${response.status} ${response.statusText}`;
  }
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.base + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      throw new ApiError(response.status, await errorText(response));
    }
    if (response.status === 204) {
      return undefined as T;
    }
    return (await response.json()) as T;
  }

  engines(): Promise<EnginesView> {
    return this.request<EnginesView>("GET", "/api/engines");
  }

  createGame(request: CreateGameRequest): Promise<SessionView> {
    return this.request<SessionView>("POST", "/api/games", request);
  }

  getGame(id: string): Promise<SessionView> {
    return this.request<SessionView>("GET", `/api/games/${id}`);
  }

  move(id: string, cell: number): Promise<SessionView> {
    return this.request<SessionView>("POST", `/api/games/${id}/move`, { cell });
  }

  analysis(id: string): Promise<AnalysisEntry[]> {
    return this.request<AnalysisEntry[]>("GET", `/api/games/${id}/analysis`);
  }

  deleteGame(id: string): Promise<void> {
    return this.request<void>("DELETE", `/api/games/${id}`);
  }
}
