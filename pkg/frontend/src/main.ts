// App wiring: the new-game form, the live board, and the analysis overlay.
// One request in flight at a time; the board stays locked until the
// service confirms the move (and the engine's reply) — the client renders
// server state and never advances a game on its own.

import { ApiClient, ApiError } from "./api.js";
import type { AnalysisEntry, CheckpointInfo, EnginesView, SessionView } from "./api.js";
import {
  MAX_SIZE,
  MIN_SIZE,
  defaultChoice,
  toCreateRequest,
  validateForm,
} from "./form.js";
import type { FormChoice, SideChoice } from "./form.js";
import {
  renderBanner,
  renderBoard,
  renderError,
  renderMoveLog,
  renderReply,
} from "./view.js";

export interface AppOptions {
  root: HTMLElement;
  base?: string;
}

export interface AppState {
  session: SessionView | null;
  busy: boolean;
  analysisOn: boolean;
  analysis: AnalysisEntry[] | null;
  analysisAvailable: boolean;
  error: string | null;
}

export interface App {
  /** Resolves when the current request chain has drained. */
  settle(): Promise<void>;
  getState(): Readonly<AppState>;
  elements: Record<string, HTMLElement>;
}

const PAGE = `
<section class="setup">
  <h1>n-in-a-row</h1>
  <form id="new-game" autocomplete="off">
    <label>board <select id="size"></select></label>
    <label>win length <select id="win-length"></select></label>
    <fieldset id="side-x"><legend>X</legend></fieldset>
    <fieldset id="side-o"><legend>O</legend></fieldset>
    <button id="start" type="submit">start game</button>
    <ul id="form-reasons" class="reasons"></ul>
  </form>
</section>
<section class="game" id="game" hidden>
  <div id="status" class="status"></div>
  <div id="banner" class="banner" hidden></div>
  <div id="board" class="board"></div>
  <div id="reply" class="reply"></div>
  <div id="error" class="error" hidden></div>
  <div class="controls">
    <button id="toggle-analysis" type="button" hidden>show utilities</button>
    <label class="fallback">cell
      <input id="cell-entry" type="number" min="0" inputmode="numeric" />
    </label>
    <button id="play-cell" type="button">play</button>
  </div>
  <ol id="move-log" class="move-log"></ol>
</section>
`;

function option(value: string, label?: string): HTMLOptionElement {
  const element = document.createElement("option");
  element.value = value;
  element.textContent = label ?? value;
  return element;
}

interface SideControls {
  type: HTMLSelectElement;
  depth: HTMLInputElement;
  depthWrap: HTMLLabelElement;
  checkpoint: HTMLSelectElement;
  checkpointWrap: HTMLLabelElement;
}

function buildSideControls(fieldset: HTMLElement, engines: EnginesView): SideControls {
  const typeSelect = document.createElement("select");
  for (const engine of engines.engines) typeSelect.appendChild(option(engine));
  const typeWrap = document.createElement("label");
  typeWrap.append("engine ", typeSelect);

  const depth = document.createElement("input");
  depth.type = "number";
  depth.min = "1";
  const depthWrap = document.createElement("label");
  depthWrap.append("depth ", depth);
  depthWrap.hidden = true;

  const checkpoint = document.createElement("select");
  for (const info of engines.checkpoints) {
    checkpoint.appendChild(
      option(info.id, `${info.id} (${info.board_size}×${info.board_size}, ${info.games_trained} games)`),
    );
  }
  const checkpointWrap = document.createElement("label");
  checkpointWrap.append("checkpoint ", checkpoint);
  checkpointWrap.hidden = true;

  fieldset.append(typeWrap, depthWrap, checkpointWrap);
  return { type: typeSelect, depth, depthWrap, checkpoint, checkpointWrap };
}

function readSide(controls: SideControls): SideChoice {
  const type = controls.type.value as SideChoice["type"];
  return {
    type,
    depth: controls.depth.value === "" ? null : Number(controls.depth.value),
    checkpoint: type === "agent" ? controls.checkpoint.value || null : null,
  };
}

function writeSide(controls: SideControls, side: SideChoice): void {
  controls.type.value = side.type;
  controls.depth.value = side.depth === null ? "" : String(side.depth);
  if (side.checkpoint !== null) controls.checkpoint.value = side.checkpoint;
}

export function createApp(options: AppOptions): App {
  const root = options.root;
  const client = new ApiClient(options.base ?? "");
  root.innerHTML = PAGE;

  const byId = <T extends HTMLElement>(id: string): T => {
    const element = root.querySelector<T>(`#${id}`);
    if (element === null) throw new Error(`missing element #${id}`);
    return element;
  };

  const elements = {
    form: byId<HTMLFormElement>("new-game"),
    size: byId<HTMLSelectElement>("size"),
    winLength: byId<HTMLSelectElement>("win-length"),
    sideX: byId<HTMLElement>("side-x"),
    sideO: byId<HTMLElement>("side-o"),
    start: byId<HTMLButtonElement>("start"),
    reasons: byId<HTMLUListElement>("form-reasons"),
    game: byId<HTMLElement>("game"),
    status: byId<HTMLElement>("status"),
    banner: byId<HTMLElement>("banner"),
    board: byId<HTMLElement>("board"),
    reply: byId<HTMLElement>("reply"),
    error: byId<HTMLElement>("error"),
    toggleAnalysis: byId<HTMLButtonElement>("toggle-analysis"),
    cellEntry: byId<HTMLInputElement>("cell-entry"),
    playCell: byId<HTMLButtonElement>("play-cell"),
  };

  const state: AppState = {
    session: null,
    busy: false,
    analysisOn: false,
    analysis: null,
    analysisAvailable: false,
    error: null,
  };

  let checkpoints: CheckpointInfo[] = [];
  let sideControls: { x: SideControls; o: SideControls } | null = null;
  let pending: Promise<void> = Promise.resolve();

  function hasAgent(view: SessionView): boolean {
    return view.x_engine.type === "agent" || view.o_engine.type === "agent";
  }

  function humanToMove(view: SessionView): boolean {
    if (view.to_move === null) return false;
    const spec = view.to_move === "X" ? view.x_engine : view.o_engine;
    return spec.type === "human";
  }

  function render(): void {
    const view = state.session;
    renderError(elements.error, state.error);
    if (view === null) {
      elements.game.hidden = true;
      return;
    }
    elements.game.hidden = false;
    elements.status.textContent =
      view.status === "Ongoing" ? `${view.to_move} to move` : "game over";
    renderBanner(elements.banner, view);
    const locked = state.busy || !humanToMove(view);
    renderBoard(elements.board, view, locked, state.analysisOn ? state.analysis : null, {
      onCell: (cell) => void playCell(cell),
    });
    renderReply(elements.reply, view);
    renderMoveLog(byId<HTMLOListElement>("move-log"), view);
    elements.toggleAnalysis.hidden = !state.analysisAvailable;
    elements.toggleAnalysis.textContent = state.analysisOn ? "hide utilities" : "show utilities";
    elements.cellEntry.max = String(view.size * view.size - 1);
    elements.cellEntry.disabled = locked;
    elements.playCell.disabled = locked;
  }

  function track(work: () => Promise<void>): Promise<void> {
    const chained = pending.then(work, work);
    pending = chained.catch(() => undefined);
    return chained;
  }

  async function refreshAnalysis(): Promise<void> {
    const view = state.session;
    if (view === null || view.status !== "Ongoing" || !hasAgent(view)) {
      state.analysis = null;
      state.analysisAvailable = false;
      state.analysisOn = false;
      return;
    }
    if (!state.analysisOn) {
      state.analysisAvailable = true;
      state.analysis = null;
      return;
    }
    try {
      state.analysis = await client.analysis(view.id);
      state.analysisAvailable = true;
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        // service says no: hide the toggle entirely
        state.analysis = null;
        state.analysisAvailable = false;
        state.analysisOn = false;
      } else {
        throw error;
      }
    }
  }

  async function adopt(view: SessionView): Promise<void> {
    state.session = view;
    state.error = null;
    await refreshAnalysis();
  }

  function startGame(): Promise<void> {
    return track(async () => {
      if (sideControls === null) return;
      const choice = currentChoice();
      const verdict = validateForm(choice, checkpoints);
      if (!verdict.ok) return;
      state.busy = true;
      render();
      try {
        await adopt(await client.createGame(toCreateRequest(choice)));
      } catch (error) {
        state.error = error instanceof ApiError ? error.message : String(error);
      } finally {
        state.busy = false;
        render();
      }
    });
  }

  function playCell(cell: number): Promise<void> {
    return track(async () => {
      const view = state.session;
      if (view === null || state.busy || !humanToMove(view)) return;
      state.busy = true;
      state.error = null;
      render();
      try {
        await adopt(await client.move(view.id, cell));
      } catch (error) {
        if (error instanceof ApiError) {
          state.error = error.message;
          // re-sync: the board we showed may be stale
          try {
            await adopt(await client.getGame(view.id));
            state.error = error.message;
          } catch {
            state.session = null;
          }
        } else {
          state.error = String(error);
        }
      } finally {
        state.busy = false;
        render();
      }
    });
  }

  function toggleAnalysis(): Promise<void> {
    return track(async () => {
      state.analysisOn = !state.analysisOn;
      try {
        await refreshAnalysis();
      } catch (error) {
        state.error = error instanceof ApiError ? error.message : String(error);
      }
      render();
    });
  }

  function currentChoice(): FormChoice {
    if (sideControls === null) throw new Error("form not ready");
    return {
      size: Number(elements.size.value),
      winLength: elements.winLength.value === "" ? null : Number(elements.winLength.value),
      x: readSide(sideControls.x),
      o: readSide(sideControls.o),
    };
  }

  function syncForm(): void {
    if (sideControls === null) return;
    const choice = currentChoice();
    const verdict = validateForm(choice, checkpoints);
    elements.start.disabled = !verdict.ok;
    elements.reasons.replaceChildren(
      ...verdict.reasons.map((reason) => {
        const item = document.createElement("li");
        item.textContent = reason;
        return item;
      }),
    );
    for (const [controls, sideVerdict, side] of [
      [sideControls.x, verdict.x, choice.x],
      [sideControls.o, verdict.o, choice.o],
    ] as const) {
      controls.depthWrap.hidden = !(side.type === "minimax" && (sideVerdict.needsDepth || side.depth !== null));
      controls.checkpointWrap.hidden = side.type !== "agent";
    }
    // win-length options follow the size
    const winLength = elements.winLength.value;
    elements.winLength.replaceChildren(option("", "= size"));
    for (let k = 1; k <= choice.size; k++) elements.winLength.appendChild(option(String(k)));
    elements.winLength.value = Number(winLength) <= choice.size ? winLength : "";
  }

  function boot(): Promise<void> {
    return track(async () => {
      let engines: EnginesView;
      try {
        engines = await client.engines();
      } catch (error) {
        state.error = `service unreachable: ${error instanceof Error ? error.message : error}`;
        render();
        return;
      }
      checkpoints = engines.checkpoints;
      for (let size = MIN_SIZE; size <= MAX_SIZE; size++) {
        elements.size.appendChild(option(String(size)));
      }
      sideControls = {
        x: buildSideControls(elements.sideX, engines),
        o: buildSideControls(elements.sideO, engines),
      };
      const start = defaultChoice(checkpoints);
      elements.size.value = String(start.size);
      writeSide(sideControls.x, start.x);
      writeSide(sideControls.o, start.o);
      syncForm();
      render();
    });
  }

  elements.form.addEventListener("change", syncForm);
  elements.form.addEventListener("input", syncForm);
  elements.form.addEventListener("submit", (event) => {
    event.preventDefault();
    void startGame();
  });
  elements.toggleAnalysis.addEventListener("click", () => void toggleAnalysis());
  elements.playCell.addEventListener("click", () => {
    const raw = elements.cellEntry.value;
    if (raw === "") return;
    void playCell(Number(raw));
  });
  elements.cellEntry.addEventListener("keydown", (event) => {
    if (event.key === "Enter") {
      event.preventDefault();
      elements.playCell.click();
    }
  });

  void boot();

  return {
    settle: () => pending,
    getState: () => state,
    elements,
  };
}

// Browser entry point: attach to the page's #app container if one exists.
const container = typeof document !== "undefined" ? document.getElementById("app") : null;
if (container !== null) {
  createApp({ root: container });
}
