// New-game form rules. Pure functions so the submit-enable logic is
// testable without a DOM; they mirror the service's 400/409/404 guards so
// the user hears about a bad combination before the request is sent.

import type { CheckpointInfo, CreateGameRequest, EngineSpec, EngineType } from "./api.js";

export const MIN_SIZE = 3;
export const MAX_SIZE = 6;

export interface SideChoice {
  type: EngineType;
  depth: number | null;
  checkpoint: string | null;
}

export interface FormChoice {
  size: number;
  winLength: number | null; // null = same as size
  x: SideChoice;
  o: SideChoice;
}

export interface SideVerdict {
  ok: boolean;
  reason: string | null;
  // true when the depth selector must be shown and filled before submit
  needsDepth: boolean;
}

export interface FormVerdict {
  ok: boolean;
  reasons: string[];
  x: SideVerdict;
  o: SideVerdict;
}

export function effectiveWinLength(choice: FormChoice): number {
  return choice.winLength ?? choice.size;
}

function checkSide(
  side: SideChoice,
  size: number,
  winLength: number,
  checkpoints: CheckpointInfo[],
): SideVerdict {
  if (side.type === "minimax") {
    // exhaustive search above 3x3 is infeasible without a depth limit
    const needsDepth = size > 3;
    if (needsDepth && side.depth === null) {
      return { ok: false, reason: `minimax on ${size}×${size} needs a depth limit`, needsDepth };
    }
    return { ok: true, reason: null, needsDepth };
  }
  if (side.type === "agent") {
    if (side.checkpoint === null) {
      return { ok: false, reason: "pick a checkpoint for the agent", needsDepth: false };
    }
    const info = checkpoints.find((c) => c.id === side.checkpoint);
    if (info === undefined) {
      return { ok: false, reason: `unknown checkpoint ${side.checkpoint}`, needsDepth: false };
    }
    if (info.board_size !== size || info.win_length !== winLength) {
      return {
        ok: false,
        reason:
          `checkpoint ${info.id} is for ${info.board_size}×${info.board_size} ` +
          `k=${info.win_length}, not ${size}×${size} k=${winLength}`,
        needsDepth: false,
      };
    }
  }
  return { ok: true, reason: null, needsDepth: false };
}

export function validateForm(choice: FormChoice, checkpoints: CheckpointInfo[]): FormVerdict {
  const reasons: string[] = [];
  if (!Number.isInteger(choice.size) || choice.size < MIN_SIZE || choice.size > MAX_SIZE) {
    reasons.push(`board size must be ${MIN_SIZE}–${MAX_SIZE}`);
  }
  const winLength = effectiveWinLength(choice);
  if (!Number.isInteger(winLength) || winLength < 1 || winLength > choice.size) {
    reasons.push(`win length must be between 1 and ${choice.size}`);
  }
  const x = checkSide(choice.x, choice.size, winLength, checkpoints);
  const o = checkSide(choice.o, choice.size, winLength, checkpoints);
  if (x.reason !== null) reasons.push(`X: ${x.reason}`);
  if (o.reason !== null) reasons.push(`O: ${o.reason}`);
  return { ok: reasons.length === 0, reasons, x, o };
}

function toEngineSpec(side: SideChoice): EngineSpec {
  const spec: EngineSpec = { type: side.type };
  if (side.type === "minimax" && side.depth !== null) spec.depth = side.depth;
  if (side.type === "agent") spec.checkpoint = side.checkpoint;
  return spec;
}

export function toCreateRequest(choice: FormChoice): CreateGameRequest {
  return {
    size: choice.size,
    win_length: choice.winLength,
    x_engine: toEngineSpec(choice.x),
    o_engine: toEngineSpec(choice.o),
  };
}

/** Starting point: human as X against the most-trained 3x3 checkpoint. */
export function defaultChoice(checkpoints: CheckpointInfo[]): FormChoice {
  const candidates = checkpoints
    .filter((c) => c.board_size === 3 && c.win_length === 3)
    .sort((a, b) => b.games_trained - a.games_trained);
  const latest = candidates[0];
  return {
    size: 3,
    winLength: null,
    x: { type: "human", depth: null, checkpoint: null },
    o:
      latest === undefined
        ? { type: "random", depth: null, checkpoint: null }
        : { type: "agent", depth: null, checkpoint: latest.id },
  };
}
