// DOM rendering. Everything here draws exactly what the service said and
// nothing more — no move legality, no win detection, no scoring. The few
// conditionals below branch on server-sent fields only.

import type { AnalysisEntry, SessionView } from "./api.js";

export interface BoardHandlers {
  onCell: (cell: number) => void;
}

/** The badge shows the service-reported latency verbatim. */
export function latencyBadgeText(elapsedMs: number): string {
  return `${elapsedMs} ms`;
}

export function statusLine(view: SessionView): string {
  if (view.status === "Ongoing") {
    return `${view.to_move} to move`;
  }
  if (view.status === "Draw") return "Draw";
  if (view.status === "WonByX") return "X wins";
  if (view.status === "WonByO") return "O wins";
  return view.status;
}

/** Cells holding the maximal utility (analysis highlight set). */
export function maximalCells(entries: AnalysisEntry[]): Set<number> {
  if (entries.length === 0) return new Set();
  const top = Math.max(...entries.map((entry) => entry.utility));
  return new Set(entries.filter((entry) => entry.utility === top).map((entry) => entry.cell));
}

export function renderBoard(
  root: HTMLElement,
  view: SessionView,
  locked: boolean,
  analysis: AnalysisEntry[] | null,
  handlers: BoardHandlers,
): void {
  root.replaceChildren();
  root.classList.toggle("terminal", view.status !== "Ongoing");
  root.style.setProperty("--size", String(view.size));
  const overlay = new Map<number, number>();
  if (analysis !== null) {
    for (const entry of analysis) overlay.set(entry.cell, entry.utility);
  }
  const maxSet = analysis === null ? new Set<number>() : maximalCells(analysis);

  const total = view.size * view.size;
  for (let cell = 0; cell < total; cell++) {
    const mark = view.board[cell] ?? ".";
    const button = document.createElement("button");
    button.className = "cell";
    button.dataset.cell = String(cell);
    button.setAttribute("aria-label", `cell ${cell}`);
    if (mark !== ".") {
      button.textContent = mark;
      button.classList.add(mark === "X" ? "mark-x" : "mark-o");
      button.disabled = true;
    } else {
      button.disabled = locked || view.status !== "Ongoing";
      const utility = overlay.get(cell);
      if (utility !== undefined) {
        const value = document.createElement("span");
        value.className = "utility";
        value.textContent = utility.toFixed(1);
        button.appendChild(value);
        if (maxSet.has(cell)) button.classList.add("max-utility");
      }
      button.addEventListener("click", () => handlers.onCell(cell));
    }
    root.appendChild(button);
  }
}

export function renderReply(root: HTMLElement, view: SessionView): void {
  root.replaceChildren();
  const reply = view.engine_reply;
  if (reply === null) return;
  const text = document.createElement("span");
  text.textContent = `engine played ${reply.cell}`;
  root.appendChild(text);
  const badge = document.createElement("span");
  badge.className = "latency-badge";
  badge.textContent = latencyBadgeText(reply.elapsed_ms);
  root.appendChild(badge);
  if (reply.utility !== null) {
    const utility = document.createElement("span");
    utility.className = "reply-utility";
    utility.textContent = `V=${reply.utility.toFixed(2)}`;
    root.appendChild(utility);
  }
}

export function renderBanner(root: HTMLElement, view: SessionView): void {
  if (view.status === "Ongoing") {
    root.hidden = true;
    root.textContent = "";
    return;
  }
  root.hidden = false;
  root.textContent = statusLine(view);
  root.className = `banner ${view.status.toLowerCase()}`;
}

export function renderError(root: HTMLElement, message: string | null): void {
  root.hidden = message === null;
  root.textContent = message ?? "";
}

export function renderMoveLog(root: HTMLElement, view: SessionView): void {
  root.replaceChildren();
  for (const entry of view.move_log) {
    const item = document.createElement("li");
    item.textContent =
      entry.elapsed_ms === null
        ? `${entry.mark} → ${entry.cell}`
        : `${entry.mark} → ${entry.cell} (${entry.elapsed_ms.toFixed(1)} ms)`;
    root.appendChild(item);
  }
}
