"""Line-count features for linear position evaluation.

A position is summarized, from one player's perspective, by how many
winning segments contain exactly m of that player's marks and no opponent
marks (and vice versa), for m = 1..K.  Together with a constant bias term
this yields a 2K+1 dimensional integer feature vector.
"""

from __future__ import annotations

from .board import EMPTY, O, X, BoardState, win_lines

FeatureVector = tuple[int, ...]


def feature_dimension(win_length: int) -> int:
    """Number of features for a given win length K: 1 bias + 2K counts."""
    if win_length < 1:
        raise ValueError(f"win length must be >= 1, got {win_length}")
    return 2 * win_length + 1


def extract_features(board: BoardState, perspective: str) -> FeatureVector:
    """Feature vector of `board` as seen by `perspective` (X or O).

    Index 0 is the constant 1.  For m in 1..K, index 2m-1 counts winning
    segments holding exactly m `perspective` marks and K-m empties, and
    index 2m counts segments holding exactly m opposing marks and K-m
    empties.  Mixed segments (both players present) count for neither
    side.
    """
    if perspective == X:
        own, opp = X, O
    elif perspective == O:
        own, opp = O, X
    else:
        raise ValueError(f"perspective must be X or O, got {perspective!r}")
    values = [0] * feature_dimension(board.win_length)
    values[0] = 1
    cells = board.cells
    for line in win_lines(board.size, board.win_length):
        n_own = n_opp = 0
        for cell in line:
            mark = cells[cell]
            if mark == own:
                n_own += 1
            elif mark != EMPTY:
                n_opp += 1
        if n_opp == 0 and n_own > 0:
            values[2 * n_own - 1] += 1
        elif n_own == 0 and n_opp > 0:
            values[2 * n_opp] += 1
    return tuple(values)


def role_swap_permutation(win_length: int) -> tuple[int, ...]:
    """Index permutation mapping X-perspective features to O-perspective.

    Applying it as `tuple(x[p] for p in perm)` swaps each own/opponent
    pair while leaving the bias in place; it is its own inverse.
    """
    perm = [0]
    for m in range(1, win_length + 1):
        perm.append(2 * m)
        perm.append(2 * m - 1)
    return tuple(perm)
