"""Exhaustive game enumeration for small boards.

Counts every distinct complete game (ordered move sequence) from the empty
board, plus the set of distinct final boards.  Capped at 3x3: the game
count explodes combinatorially above that, which is the whole reason the
learning approach exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .board import ConfigurationError, win_lines

MAX_ENUMERATION_SIZE = 3


@dataclass(frozen=True)
class EnumerationReport:
    board_size: int
    win_length: int
    total_games: int
    x_wins: int
    o_wins: int
    draws: int
    distinct_terminal_boards: int
    terminal_x_wins: int
    terminal_o_wins: int
    terminal_draws: int


def _check_size(size: int) -> None:
    if size < 1:
        raise ConfigurationError(f"board size must be >= 1, got {size}")
    if size > MAX_ENUMERATION_SIZE:
        raise ConfigurationError(
            f"exhaustive enumeration is capped at {MAX_ENUMERATION_SIZE}x"
            f"{MAX_ENUMERATION_SIZE} boards, got size {size}"
        )


def count_state_space(size: int) -> int:
    """(N*N)! — the naive count of all move orderings of a full board."""
    _check_size(size)
    return math.factorial(size * size)


def enumerate_games(size: int, win_length: int | None = None) -> EnumerationReport:
    """Walk every game depth-first and tally outcomes exactly.

    Transposed positions are memoized — the per-position game counts do
    not depend on the path that reached them — so the walk touches each
    reachable position once while still counting ordered games.
    """
    _check_size(size)
    k = size if win_length is None else win_length
    lines = win_lines(size, k)  # validates win_length
    n2 = size * size
    line_masks = [0] * len(lines)
    for i, line in enumerate(lines):
        for cell in line:
            line_masks[i] |= 1 << cell
    masks_through: list[list[int]] = [[] for _ in range(n2)]
    for mask in line_masks:
        for cell in range(n2):
            if mask >> cell & 1:
                masks_through[cell].append(mask)

    full = (1 << n2) - 1
    terminals: dict[tuple[int, int], str] = {}
    memo: dict[tuple[int, int], tuple[int, int, int, int]] = {}

    def walk(x_mask: int, o_mask: int) -> tuple[int, int, int, int]:
        key = (x_mask, o_mask)
        cached = memo.get(key)
        if cached is not None:
            return cached
        occupied = x_mask | o_mask
        x_to_move = x_mask.bit_count() == o_mask.bit_count()
        games = x_games = o_games = draw_games = 0
        for cell in range(n2):
            bit = 1 << cell
            if occupied & bit:
                continue
            if x_to_move:
                child = (x_mask | bit, o_mask)
                mover_mask = child[0]
            else:
                child = (x_mask, o_mask | bit)
                mover_mask = child[1]
            if any((mover_mask & m) == m for m in masks_through[cell]):
                games += 1
                if x_to_move:
                    x_games += 1
                    terminals[child] = "X"
                else:
                    o_games += 1
                    terminals[child] = "O"
            elif (child[0] | child[1]) == full:
                games += 1
                draw_games += 1
                terminals[child] = "draw"
            else:
                sub = walk(*child)
                games += sub[0]
                x_games += sub[1]
                o_games += sub[2]
                draw_games += sub[3]
        result = (games, x_games, o_games, draw_games)
        memo[key] = result
        return result

    total, x_wins, o_wins, draws = walk(0, 0)
    outcome_counts = {"X": 0, "O": 0, "draw": 0}
    for outcome in terminals.values():
        outcome_counts[outcome] += 1
    return EnumerationReport(
        board_size=size,
        win_length=k,
        total_games=total,
        x_wins=x_wins,
        o_wins=o_wins,
        draws=draws,
        distinct_terminal_boards=len(terminals),
        terminal_x_wins=outcome_counts["X"],
        terminal_o_wins=outcome_counts["O"],
        terminal_draws=outcome_counts["draw"],
    )


_REPORT_FIELDS = (
    ("board_size", "board size"),
    ("win_length", "win length"),
    ("total_games", "total games"),
    ("x_wins", "x wins"),
    ("o_wins", "o wins"),
    ("draws", "draws"),
    ("distinct_terminal_boards", "distinct terminal boards"),
    ("terminal_x_wins", "terminal boards won by x"),
    ("terminal_o_wins", "terminal boards won by o"),
    ("terminal_draws", "terminal boards drawn"),
)


def report_text(report: EnumerationReport) -> str:
    """Human-readable aligned key/value rendering of a report."""
    width = max(len(label) for _, label in _REPORT_FIELDS)
    lines = [
        f"{label.ljust(width)}  {getattr(report, attr):>12,}"
        for attr, label in _REPORT_FIELDS
    ]
    return "\n".join(lines)


def report_csv(report: EnumerationReport) -> str:
    """The same report as metric,value CSV rows."""
    lines = ["metric,value"]
    lines.extend(f"{attr},{getattr(report, attr)}" for attr, _ in _REPORT_FIELDS)
    return "\n".join(lines) + "\n"
