"""Board representation and rules for generalized N-in-a-row games.

A board is an NxN grid where players X and O alternate placing marks, X
first, and the first player to own K contiguous cells in a row, column or
diagonal wins.  K = N gives the classic tic-tac-toe family.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

X = "X"
O = "O"  # noqa: E741 - the mark really is the letter O
EMPTY = "."

_MARKS = (X, O)


class ConfigurationError(ValueError):
    """Raised for invalid board/game configuration parameters."""


class IllegalMoveError(ValueError):
    """Raised when a move cannot be applied to a board."""


class BoardParseError(ValueError):
    """Raised when a board text cannot be parsed into a valid state."""


class GameStatus(str, Enum):
    ONGOING = "Ongoing"
    WON_BY_X = "WonByX"
    WON_BY_O = "WonByO"
    DRAW = "Draw"


@dataclass(frozen=True)
class Move:
    """A single placement: `cell` is a row-major index, `mark` is X or O."""

    cell: int
    mark: str


@dataclass(frozen=True)
class BoardState:
    """Immutable snapshot of a game.

    `cells` is a length N*N string over "XO." in row-major order and
    `to_move` is the mark that plays next.  States are cheap values: all
    rule queries are free functions over them.
    """

    size: int
    win_length: int
    cells: str
    to_move: str


def _check_config(size: int, win_length: int) -> None:
    if size < 1:
        raise ConfigurationError(f"board size must be >= 1, got {size}")
    if not 1 <= win_length <= size:
        raise ConfigurationError(
            f"win length must be in 1..{size}, got {win_length}"
        )


@lru_cache(maxsize=None)
def win_lines(size: int, win_length: int) -> tuple[tuple[int, ...], ...]:
    """All distinct maximal-overlap-free winning segments, as cell tuples.

    Every horizontal, vertical and (anti)diagonal run of exactly
    `win_length` cells that fits on the board, each listed once.  For
    win_length == size this is the familiar N rows + N columns + 2
    diagonals.
    """
    _check_config(size, win_length)
    k = win_length
    # right, down, down-right, down-left
    directions = ((0, 1), (1, 0), (1, 1), (1, -1))
    seen: dict[tuple[int, ...], None] = {}
    for dr, dc in directions:
        for r in range(size):
            for c in range(size):
                er, ec = r + (k - 1) * dr, c + (k - 1) * dc
                if not (0 <= er < size and 0 <= ec < size):
                    continue
                line = tuple((r + i * dr) * size + (c + i * dc) for i in range(k))
                # K=1 segments coincide across directions; keep the first.
                key = tuple(sorted(line))
                if key not in seen:
                    seen[key] = None
    return tuple(seen)


@lru_cache(maxsize=None)
def lines_through_cell(size: int, win_length: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """For each cell index, the subset of win_lines that contain it."""
    through: list[list[tuple[int, ...]]] = [[] for _ in range(size * size)]
    for line in win_lines(size, win_length):
        for cell in line:
            through[cell].append(line)
    return tuple(tuple(ls) for ls in through)


def new_board(size: int, win_length: int | None = None) -> BoardState:
    """An empty board with X to move; win_length defaults to size."""
    k = size if win_length is None else win_length
    _check_config(size, k)
    return BoardState(size=size, win_length=k, cells=EMPTY * size * size, to_move=X)


def _winners(cells: str, size: int, win_length: int) -> tuple[bool, bool]:
    x_won = o_won = False
    for line in win_lines(size, win_length):
        first = cells[line[0]]
        if first == EMPTY:
            continue
        if all(cells[c] == first for c in line):
            if first == X:
                x_won = True
            else:
                o_won = True
    return x_won, o_won


def status(board: BoardState) -> GameStatus:
    """Ongoing, WonByX, WonByO or Draw (full board, no winner)."""
    x_won, o_won = _winners(board.cells, board.size, board.win_length)
    if x_won and o_won:
        raise ValueError("invalid board: both players hold completed lines")
    if x_won:
        return GameStatus.WON_BY_X
    if o_won:
        return GameStatus.WON_BY_O
    if EMPTY not in board.cells:
        return GameStatus.DRAW
    return GameStatus.ONGOING


def legal_moves(board: BoardState) -> list[Move]:
    """Moves available to `board.to_move`, in ascending cell order.

    Terminal boards have no legal moves.
    """
    if status(board) is not GameStatus.ONGOING:
        return []
    mark = board.to_move
    return [Move(cell=i, mark=mark) for i, c in enumerate(board.cells) if c == EMPTY]


def apply_move(board: BoardState, move: Move) -> BoardState:
    """The successor of `board` after `move`; the input is not modified."""
    if move.mark != board.to_move:
        raise IllegalMoveError(
            f"expected a move by {board.to_move}, got one by {move.mark!r}"
        )
    if not 0 <= move.cell < board.size * board.size:
        raise IllegalMoveError(f"cell {move.cell} is off the board")
    if board.cells[move.cell] != EMPTY:
        raise IllegalMoveError(f"cell {move.cell} is already occupied")
    if status(board) is not GameStatus.ONGOING:
        raise IllegalMoveError("game is already over")
    cells = board.cells[: move.cell] + move.mark + board.cells[move.cell + 1 :]
    return BoardState(
        size=board.size,
        win_length=board.win_length,
        cells=cells,
        to_move=O if move.mark == X else X,
    )


def render_text(board: BoardState) -> str:
    """The board as N lines of N characters over X, O and '.'."""
    n = board.size
    return "\n".join(board.cells[r * n : (r + 1) * n] for r in range(n))


def parse_board(text: str, win_length: int | None = None) -> BoardState:
    """Parse the render_text format back into a state.

    The board must be square, use only X/O/. characters, and describe a
    position reachable under alternation (X moves first): the mark counts
    may differ by at most one and at most one player may hold a completed
    line.  The side to move is inferred from the counts.
    """
    rows = text.strip("\n").split("\n")
    size = len(rows)
    if size == 0 or rows == [""]:
        raise BoardParseError("empty board text")
    for row in rows:
        if len(row) != size:
            raise BoardParseError(
                f"expected {size} rows of {size} characters, got row {row!r}"
            )
        for ch in row:
            if ch not in (X, O, EMPTY):
                raise BoardParseError(f"invalid character {ch!r} in board text")
    k = size if win_length is None else win_length
    try:
        _check_config(size, k)
    except ConfigurationError as exc:
        raise BoardParseError(str(exc)) from exc
    cells = "".join(rows)
    n_x = cells.count(X)
    n_o = cells.count(O)
    if n_x - n_o not in (0, 1):
        raise BoardParseError(
            f"mark counts {n_x} X vs {n_o} O are unreachable under alternation"
        )
    x_won, o_won = _winners(cells, size, k)
    if x_won and o_won:
        raise BoardParseError("both players hold completed lines")
    to_move = X if n_x == n_o else O
    return BoardState(size=size, win_length=k, cells=cells, to_move=to_move)
