import { describe, expect, it } from "vitest";

import type { SessionView } from "../src/api.js";
import {
  latencyBadgeText,
  maximalCells,
  renderBanner,
  renderBoard,
  renderReply,
} from "../src/view.js";

const view = (overrides: Partial<SessionView> = {}): SessionView => ({
  id: "s1",
  size: 3,
  win_length: 3,
  board: ".........",
  to_move: "X",
  status: "Ongoing",
  x_engine: { type: "human" },
  o_engine: { type: "random" },
  engine_reply: null,
  move_log: [],
  ...overrides,
});

describe("latency badge", () => {
  it("shows the service value verbatim, no rounding", () => {
    expect(latencyBadgeText(0.07843)).toBe("0.07843 ms");
    expect(latencyBadgeText(123)).toBe("123 ms");
  });

  it("is rendered for every engine reply", () => {
    const root = document.createElement("div");
    renderReply(root, view({ engine_reply: { cell: 4, elapsed_ms: 1.25, utility: 0.5 } }));
    const badge = root.querySelector(".latency-badge");
    expect(badge?.textContent).toBe("1.25 ms");
    expect(root.querySelector(".reply-utility")?.textContent).toBe("V=0.50");
  });

  it("is absent when there was no engine reply", () => {
    const root = document.createElement("div");
    renderReply(root, view());
    expect(root.querySelector(".latency-badge")).toBeNull();
  });
});

describe("board rendering", () => {
  it("draws one button per cell with marks disabled", () => {
    const root = document.createElement("div");
    renderBoard(root, view({ board: "XO......." }), false, null, { onCell: () => {} });
    const cells = root.querySelectorAll<HTMLButtonElement>(".cell");
    expect(cells).toHaveLength(9);
    expect(cells[0]!.textContent).toBe("X");
    expect(cells[0]!.disabled).toBe(true);
    expect(cells[2]!.disabled).toBe(false);
  });

  it("wires clicks on empty cells only", () => {
    const root = document.createElement("div");
    const clicks: number[] = [];
    renderBoard(root, view({ board: "X........" }), false, null, {
      onCell: (cell) => clicks.push(cell),
    });
    const cells = root.querySelectorAll<HTMLButtonElement>(".cell");
    cells[0]!.click();
    cells[5]!.click();
    expect(clicks).toEqual([5]);
  });

  it("locks everything when the game is over or input is held", () => {
    const root = document.createElement("div");
    renderBoard(root, view({ status: "WonByX", to_move: null }), false, null, {
      onCell: () => {},
    });
    for (const cell of root.querySelectorAll<HTMLButtonElement>(".cell")) {
      expect(cell.disabled).toBe(true);
    }
    renderBoard(root, view(), true, null, { onCell: () => {} });
    for (const cell of root.querySelectorAll<HTMLButtonElement>(".cell")) {
      expect(cell.disabled).toBe(true);
    }
  });

  it("overlays utilities and highlights the maximal set", () => {
    const root = document.createElement("div");
    const analysis = [
      { cell: 1, utility: 0.25 },
      { cell: 2, utility: 4 },
      { cell: 5, utility: 4 },
    ];
    renderBoard(root, view({ board: "X..O....." }), false, analysis, { onCell: () => {} });
    const two = root.querySelector<HTMLButtonElement>('[data-cell="2"]')!;
    const one = root.querySelector<HTMLButtonElement>('[data-cell="1"]')!;
    const five = root.querySelector<HTMLButtonElement>('[data-cell="5"]')!;
    expect(two.querySelector(".utility")?.textContent).toBe("4.0");
    expect(one.querySelector(".utility")?.textContent).toBe("0.3");
    expect(two.classList.contains("max-utility")).toBe(true);
    expect(five.classList.contains("max-utility")).toBe(true);
    expect(one.classList.contains("max-utility")).toBe(false);
    // cells without an analysis entry show no overlay
    const six = root.querySelector<HTMLButtonElement>('[data-cell="6"]')!;
    expect(six.querySelector(".utility")).toBeNull();
  });
});

describe("maximalCells", () => {
  it("returns every argmax cell", () => {
    expect(maximalCells([])).toEqual(new Set());
    expect(
      maximalCells([
        { cell: 0, utility: -1 },
        { cell: 3, utility: 2 },
        { cell: 7, utility: 2 },
      ]),
    ).toEqual(new Set([3, 7]));
  });
});

describe("banner", () => {
  it("is hidden while the game runs and labels the result after", () => {
    const root = document.createElement("div");
    renderBanner(root, view());
    expect(root.hidden).toBe(true);
    renderBanner(root, view({ status: "WonByO", to_move: null }));
    expect(root.hidden).toBe(false);
    expect(root.textContent).toBe("O wins");
  });
});
