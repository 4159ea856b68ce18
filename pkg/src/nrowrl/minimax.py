"""Exact adversarial search: minimax with optional alpha-beta pruning.

Values are always from X's point of view on a +10/0/-10 scale; X picks
moves maximizing the value, O picks moves minimizing it.  Ties are broken
toward the lowest cell index so results are deterministic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from statistics import mean, stdev

from .board import (
    EMPTY,
    O,
    X,
    BoardState,
    ConfigurationError,
    GameStatus,
    Move,
    lines_through_cell,
    new_board,
    status,
)
from .features import extract_features
from .values import evaluate

PRUNE_NONE = "none"
PRUNE_ALPHA_BETA = "alpha_beta"

WIN_SCORE = 10.0
LOSS_SCORE = -10.0
DRAW_SCORE = 0.0

DEFAULT_NODE_BUDGET = 100_000_000

_INF = float("inf")


class NodeBudgetExceededError(RuntimeError):
    """Raised when a search visits more nodes than its budget allows."""


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for `search`.

    max_depth of None searches to the end of the game; otherwise frontier
    positions at that depth are scored by the cutoff heuristic: 0.0 by
    default, or a scaled linear evaluation when `heuristic_weights` (a
    checkpoint's weight vector) is supplied.  `prefer_faster_win` breaks
    ties between winning lines of play toward the quicker win; it is off
    by default so values stay on the pure +10/0/-10 scale.
    """

    max_depth: int | None = None
    pruning: str = PRUNE_ALPHA_BETA
    heuristic_weights: tuple[float, ...] | None = None
    node_budget: int = DEFAULT_NODE_BUDGET
    prefer_faster_win: bool = False


@dataclass(frozen=True)
class SearchResult:
    value: float
    best_move: Move | None
    nodes_visited: int
    elapsed_ms: float


def _validate_config(config: SearchConfig) -> None:
    if config.pruning not in (PRUNE_NONE, PRUNE_ALPHA_BETA):
        raise ConfigurationError(f"unknown pruning mode {config.pruning!r}")
    if config.max_depth is not None and config.max_depth < 1:
        raise ConfigurationError(f"max_depth must be >= 1, got {config.max_depth}")
    if config.node_budget < 1:
        raise ConfigurationError(f"node_budget must be >= 1, got {config.node_budget}")


class _Searcher:
    """One search run over a mutable copy of the board."""

    def __init__(self, board: BoardState, config: SearchConfig):
        self.config = config
        self.size = board.size
        self.win_length = board.win_length
        self.cells = list(board.cells)
        self.through = lines_through_cell(board.size, board.win_length)
        self.empties = self.cells.count(EMPTY)
        self.nodes = 0
        self.prune = config.pruning == PRUNE_ALPHA_BETA

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.config.node_budget:
            raise NodeBudgetExceededError(
                f"node budget of {self.config.node_budget} exceeded"
            )

    def _won_by_last(self, cell: int) -> bool:
        mark = self.cells[cell]
        for line in self.through[cell]:
            if all(self.cells[c] == mark for c in line):
                return True
        return False

    def _win_score(self, mark: str) -> float:
        base = WIN_SCORE if mark == X else LOSS_SCORE
        if not self.config.prefer_faster_win:
            return base
        # Nudge winning scores by remaining space so quicker wins dominate,
        # keeping |score| > 10 > any heuristic value.
        bonus = self.empties / (self.size * self.size + 1.0)
        return base + bonus if mark == X else base - bonus

    def _heuristic(self) -> float:
        weights = self.config.heuristic_weights
        if weights is None:
            return 0.0
        snapshot = BoardState(
            size=self.size,
            win_length=self.win_length,
            cells="".join(self.cells),
            to_move=X,  # irrelevant to feature extraction
        )
        raw = evaluate(weights, extract_features(snapshot, X))
        # Map the +-100-scale evaluation strictly inside the win scores.
        scaled = raw / 10.0
        return max(LOSS_SCORE + 0.1, min(WIN_SCORE - 0.1, scaled))

    def _value(self, to_move: str, depth: int, alpha: float, beta: float) -> float:
        self._tick()
        if self.empties == 0:
            return DRAW_SCORE
        if depth == self.config.max_depth:
            return self._heuristic()
        cells = self.cells
        maximizing = to_move == X
        best = -_INF if maximizing else _INF
        nxt = O if maximizing else X
        for cell in range(len(cells)):
            if cells[cell] != EMPTY:
                continue
            cells[cell] = to_move
            self.empties -= 1
            if self._won_by_last(cell):
                value = self._win_score(to_move)
            else:
                value = self._value(nxt, depth + 1, alpha, beta)
            cells[cell] = EMPTY
            self.empties += 1
            if maximizing:
                if value > best:
                    best = value
                if self.prune:
                    if best >= beta:
                        break
                    alpha = max(alpha, best)
            else:
                if value < best:
                    best = value
                if self.prune:
                    if best <= alpha:
                        break
                    beta = min(beta, best)
        return best

    def run(self, to_move: str) -> tuple[float, int | None]:
        self._tick()
        cells = self.cells
        maximizing = to_move == X
        nxt = O if maximizing else X
        best_value = -_INF if maximizing else _INF
        best_cell: int | None = None
        alpha, beta = -_INF, _INF
        for cell in range(len(cells)):
            if cells[cell] != EMPTY:
                continue
            cells[cell] = to_move
            self.empties -= 1
            if self._won_by_last(cell):
                value = self._win_score(to_move)
            else:
                value = self._value(nxt, 1, alpha, beta)
            cells[cell] = EMPTY
            self.empties += 1
            if maximizing:
                if value > best_value:
                    best_value, best_cell = value, cell
                if self.prune:
                    alpha = max(alpha, best_value)
            else:
                if value < best_value:
                    best_value, best_cell = value, cell
                if self.prune:
                    beta = min(beta, best_value)
        return best_value, best_cell


def search(board: BoardState, config: SearchConfig = SearchConfig()) -> SearchResult:
    """Exact (or depth-limited) game value and a best move for `board`.

    Terminal boards get their exact score and best_move None.  The root
    keeps the first (lowest-index) move achieving the optimal value, which
    alpha-beta preserves: a later child can only be skipped early when it
    provably cannot strictly beat the incumbent.
    """
    _validate_config(config)
    start = time.perf_counter()
    current = status(board)
    if current is not GameStatus.ONGOING:
        if current is GameStatus.WON_BY_X:
            value = WIN_SCORE
        elif current is GameStatus.WON_BY_O:
            value = LOSS_SCORE
        else:
            value = DRAW_SCORE
        elapsed = (time.perf_counter() - start) * 1000.0
        return SearchResult(value=value, best_move=None, nodes_visited=1, elapsed_ms=elapsed)
    searcher = _Searcher(board, config)
    value, best_cell = searcher.run(board.to_move)
    elapsed = (time.perf_counter() - start) * 1000.0
    assert best_cell is not None
    return SearchResult(
        value=value,
        best_move=Move(cell=best_cell, mark=board.to_move),
        nodes_visited=searcher.nodes,
        elapsed_ms=elapsed,
    )


BENCH_CSV_HEADER = "size,depth_limit,pruning,mean_ms,stddev_ms,nodes"


def benchmark_latency(
    sizes: list[int],
    config: SearchConfig = SearchConfig(),
    trials: int = 5,
    win_length: int | None = None,
) -> list[dict[str, object]]:
    """Time `search` from the empty board for each size.

    Returns one row per size with mean/stddev over `trials` runs.  A run
    that blows the node budget yields a labeled row instead of an error so
    reports can show *why* a configuration is unusable.
    """
    if trials < 1:
        raise ConfigurationError(f"trials must be >= 1, got {trials}")
    rows: list[dict[str, object]] = []
    for size in sizes:
        board_k = size if win_length is None else win_length
        board = new_board(size, board_k)
        times: list[float] = []
        nodes = 0
        exceeded = False
        for _ in range(trials):
            try:
                result = search(board, config)
            except NodeBudgetExceededError:
                exceeded = True
                break
            times.append(result.elapsed_ms)
            nodes = result.nodes_visited
        depth_label = "" if config.max_depth is None else config.max_depth
        if exceeded:
            rows.append(
                {
                    "size": size,
                    "depth_limit": depth_label,
                    "pruning": config.pruning,
                    "mean_ms": "",
                    "stddev_ms": "",
                    "nodes": f"budget_exceeded({config.node_budget})",
                }
            )
            continue
        rows.append(
            {
                "size": size,
                "depth_limit": depth_label,
                "pruning": config.pruning,
                "mean_ms": round(mean(times), 3),
                "stddev_ms": round(stdev(times), 3) if len(times) > 1 else 0.0,
                "nodes": nodes,
            }
        )
    return rows


def benchmark_csv(rows: list[dict[str, object]]) -> str:
    """Render benchmark rows in the canonical CSV column order."""
    lines = [BENCH_CSV_HEADER]
    for row in rows:
        lines.append(
            f"{row['size']},{row['depth_limit']},{row['pruning']},"
            f"{row['mean_ms']},{row['stddev_ms']},{row['nodes']}"
        )
    return "\n".join(lines) + "\n"
