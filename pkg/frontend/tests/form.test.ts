import { describe, expect, it } from "vitest";

import type { CheckpointInfo } from "../src/api.js";
import { defaultChoice, toCreateRequest, validateForm } from "../src/form.js";
import type { FormChoice, SideChoice } from "../src/form.js";

const ckpt = (id: string, size: number, games = 100): CheckpointInfo => ({
  id,
  board_size: size,
  win_length: size,
  feature_dim: 2 * size + 1,
  eta: 0.4,
  games_trained: games,
  seed: 1,
});

const CHECKPOINTS = [ckpt("early", 3, 1000), ckpt("late", 3, 100000), ckpt("big", 4)];

const human: SideChoice = { type: "human", depth: null, checkpoint: null };
const choice = (overrides: Partial<FormChoice> = {}): FormChoice => ({
  size: 3,
  winLength: null,
  x: human,
  o: { type: "agent", depth: null, checkpoint: "late" },
  ...overrides,
});

describe("validateForm", () => {
  it("accepts the defaults", () => {
    expect(validateForm(choice(), CHECKPOINTS).ok).toBe(true);
  });

  it("disables submit when an agent checkpoint has the wrong geometry", () => {
    const verdict = validateForm(choice({ size: 4 }), CHECKPOINTS);
    expect(verdict.ok).toBe(false);
    expect(verdict.reasons.join(" ")).toMatch(/late.*3×3.*not 4×4/);
  });

  it("forces a depth limit for minimax above 3x3", () => {
    const minimax: SideChoice = { type: "minimax", depth: null, checkpoint: null };
    const small = validateForm(choice({ o: minimax }), CHECKPOINTS);
    expect(small.ok).toBe(true);
    expect(small.o.needsDepth).toBe(false);

    const big = validateForm(choice({ size: 6, o: minimax }), CHECKPOINTS);
    expect(big.ok).toBe(false);
    expect(big.o.needsDepth).toBe(true);

    const limited = validateForm(
      choice({ size: 6, o: { ...minimax, depth: 4 } }),
      CHECKPOINTS,
    );
    expect(limited.ok).toBe(true);
  });

  it("requires an agent to name a checkpoint that exists", () => {
    const missing = validateForm(
      choice({ o: { type: "agent", depth: null, checkpoint: null } }),
      CHECKPOINTS,
    );
    expect(missing.ok).toBe(false);
    const unknown = validateForm(
      choice({ o: { type: "agent", depth: null, checkpoint: "nope" } }),
      CHECKPOINTS,
    );
    expect(unknown.ok).toBe(false);
  });

  it("bounds size and win length", () => {
    expect(validateForm(choice({ size: 2 }), CHECKPOINTS).ok).toBe(false);
    expect(validateForm(choice({ size: 7 }), CHECKPOINTS).ok).toBe(false);
    expect(validateForm(choice({ winLength: 4 }), CHECKPOINTS).ok).toBe(false);
    // k=2 is a legal geometry, but then the k=3 checkpoint no longer fits
    expect(validateForm(choice({ winLength: 2 }), CHECKPOINTS).ok).toBe(false);
    expect(validateForm(choice({ winLength: 2, o: human }), CHECKPOINTS).ok).toBe(true);
  });
});

describe("defaultChoice", () => {
  it("is human X against the most-trained matching checkpoint", () => {
    const start = defaultChoice(CHECKPOINTS);
    expect(start.size).toBe(3);
    expect(start.x.type).toBe("human");
    expect(start.o).toEqual({ type: "agent", depth: null, checkpoint: "late" });
  });

  it("falls back to a random opponent when no checkpoint fits", () => {
    const start = defaultChoice([ckpt("big", 4)]);
    expect(start.o.type).toBe("random");
  });
});

describe("toCreateRequest", () => {
  it("omits fields that do not apply to the engine type", () => {
    const request = toCreateRequest(
      choice({ x: { type: "minimax", depth: 5, checkpoint: null } }),
    );
    expect(request.x_engine).toEqual({ type: "minimax", depth: 5 });
    expect(request.o_engine).toEqual({ type: "agent", checkpoint: "late" });
    expect(request.win_length).toBeNull();
  });
});
