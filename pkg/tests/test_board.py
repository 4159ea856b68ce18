import pytest

from nrowrl.board import (
    EMPTY,
    O,
    X,
    BoardParseError,
    ConfigurationError,
    GameStatus,
    IllegalMoveError,
    Move,
    apply_move,
    legal_moves,
    lines_through_cell,
    new_board,
    parse_board,
    render_text,
    status,
    win_lines,
)

# Win-line totals computed by an independent direction-walk enumerator
# (tests/oracles.py) before the engine was written, then frozen here.
LINE_COUNTS = {
    (1, 1): 1,
    (2, 2): 6,
    (3, 2): 20,
    (3, 3): 8,
    (4, 3): 24,
    (4, 4): 10,
    (5, 3): 48,
    (5, 4): 28,
    (5, 5): 12,
    (6, 4): 54,
}


def grid(cells: str) -> str:
    """Reflow a flat row-major cell string into render_text form."""
    size = int(len(cells) ** 0.5)
    return "\n".join(cells[r * size : (r + 1) * size] for r in range(size))


@pytest.mark.parametrize("size,win_length", sorted(LINE_COUNTS))
def test_win_line_counts_match_independent_oracle(size, win_length):
    assert len(win_lines(size, win_length)) == LINE_COUNTS[(size, win_length)]


def test_win_lines_3x3_are_the_classic_eight():
    lines = set(win_lines(3, 3))
    assert lines == {
        (0, 1, 2), (3, 4, 5), (6, 7, 8),        # rows
        (0, 3, 6), (1, 4, 7), (2, 5, 8),        # columns
        (0, 4, 8), (2, 4, 6),                   # diagonals
    }


def test_win_lines_cells_are_sorted_and_unique():
    for size, win_length in LINE_COUNTS:
        for line in win_lines(size, win_length):
            assert list(line) == sorted(set(line))
            assert len(line) == win_length


def test_win_length_one_collapses_to_single_cells():
    # Every cell alone is a "line"; directions must not produce duplicates.
    assert len(win_lines(3, 1)) == 9


def test_lines_through_cell_partition():
    table = lines_through_cell(3, 3)
    for cell in range(9):
        assert all(cell in line for line in table[cell])
    # The center is on 4 lines, corners on 3, edges on 2.
    assert len(table[4]) == 4
    assert len(table[0]) == 3
    assert len(table[1]) == 2
    # Every (line, cell) incidence appears exactly once overall.
    assert sum(len(entry) for entry in table) == 8 * 3


def test_new_board_defaults():
    board = new_board(3)
    assert board.size == 3
    assert board.win_length == 3
    assert board.cells == EMPTY * 9
    assert board.to_move == X
    assert status(board) is GameStatus.ONGOING


@pytest.mark.parametrize("size,win_length", [(0, 1), (-1, 3), (3, 4), (3, 0)])
def test_new_board_rejects_bad_geometry(size, win_length):
    with pytest.raises(ConfigurationError):
        new_board(size, win_length)


def test_apply_move_alternates_and_is_pure():
    board = new_board(3)
    after = apply_move(board, Move(cell=4, mark=X))
    assert board.cells == EMPTY * 9          # input untouched
    assert after.cells == "....X...."
    assert after.to_move == O


def test_apply_move_rejects_wrong_mark_occupied_and_terminal():
    board = new_board(3)
    with pytest.raises(IllegalMoveError):
        apply_move(board, Move(cell=4, mark=O))      # not O's turn
    board = apply_move(board, Move(cell=4, mark=X))
    with pytest.raises(IllegalMoveError):
        apply_move(board, Move(cell=4, mark=O))      # occupied
    with pytest.raises(IllegalMoveError):
        apply_move(board, Move(cell=99, mark=O))     # out of range
    won = parse_board(grid("XXX" "OO." "..."))
    with pytest.raises(IllegalMoveError):
        apply_move(won, Move(cell=8, mark=O))        # game over


def test_status_detects_each_outcome():
    assert status(parse_board(grid("XXX" "OO." "..."))) is GameStatus.WON_BY_X
    assert status(parse_board(grid("XX." "OOO" "X.."))) is GameStatus.WON_BY_O
    assert status(parse_board(grid("XOX" "XXO" "OXO"))) is GameStatus.DRAW
    assert status(parse_board(grid("X.O" "..." "..."))) is GameStatus.ONGOING


def test_status_detects_column_and_diagonal_wins():
    assert status(parse_board(grid("XO." "XO." "X.."))) is GameStatus.WON_BY_X
    assert status(parse_board(grid("XOO" ".X." "..X"))) is GameStatus.WON_BY_X
    assert status(parse_board(grid("X.O" "XOX" "O.."))) is GameStatus.WON_BY_O


def test_legal_moves_ascending_and_empty_when_done():
    board = parse_board(grid("X.O" "..." "..."))
    cells = [m.cell for m in legal_moves(board)]
    assert cells == [1, 3, 4, 5, 6, 7, 8]
    assert all(m.mark == X for m in legal_moves(board))
    assert legal_moves(parse_board(grid("XXX" "OO." "..."))) == []


def test_render_and_parse_round_trip():
    board = parse_board(grid("XO." ".X." "..O"))
    text = render_text(board)
    assert text == "XO.\n.X.\n..O"
    assert parse_board(text) == board


def test_parse_board_infers_side_to_move():
    assert parse_board(grid("." * 9)).to_move == X
    assert parse_board(grid("X" + "." * 8)).to_move == O
    assert parse_board(grid("XO" + "." * 7)).to_move == X


@pytest.mark.parametrize(
    "cells",
    [
        "X" * 9,                 # mark counts impossible
        "O" + "." * 8,           # O ahead of X
        "XXXOOO..x",             # bad charset
        "XXXXO" + "." * 4,       # X two ahead
        "XXX" "OOO" "X..",       # top row X *and* middle row O completed
    ],
)
def test_parse_board_rejects_invalid_cell_strings(cells):
    with pytest.raises(BoardParseError):
        parse_board(grid(cells))


def test_parse_board_rejects_wrong_length():
    with pytest.raises(BoardParseError):
        parse_board("X" * 8)       # one ragged row is not a square board


def test_parse_board_rejects_double_winner():
    # X completed the top row *and* O the bottom row - unreachable in play.
    with pytest.raises(BoardParseError):
        parse_board(grid("XXX" "..." "OOO"))


def test_game_status_values_are_wire_strings():
    assert GameStatus.ONGOING.value == "Ongoing"
    assert GameStatus.WON_BY_X.value == "WonByX"
    assert GameStatus.WON_BY_O.value == "WonByO"
    assert GameStatus.DRAW.value == "Draw"
