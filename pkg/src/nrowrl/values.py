"""Linear value function, LMS weight updates and checkpoint files."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .board import O, X, GameStatus

WIN_VALUE = 100.0
LOSS_VALUE = -100.0
DRAW_VALUE = 0.0

CHECKPOINT_MAGIC = "nrowrl-weights v1"

WeightVector = tuple[float, ...]


class TrainingDivergedError(RuntimeError):
    """Raised when a weight update produces a non-finite weight."""


class CheckpointError(ValueError):
    """Raised when a checkpoint file cannot be read or written."""


@dataclass(frozen=True)
class TrainingExample:
    """A feature vector paired with the value the model should output."""

    features: tuple[float, ...]
    target: float


@dataclass(frozen=True)
class CheckpointMeta:
    board_size: int
    win_length: int
    feature_dim: int
    eta: float
    games_trained: int
    seed: int


def initial_weights(win_length: int) -> WeightVector:
    """The all-0.5 starting weight vector for a given win length."""
    return (0.5,) * (2 * win_length + 1)


def evaluate(weights: Sequence[float], features: Sequence[float]) -> float:
    """Dot product of weights and features.

    This is the single evaluation routine used everywhere (training,
    move selection, analysis); terms are accumulated left to right so
    repeated calls on equal inputs are bit-identical.
    """
    if len(weights) != len(features):
        raise ValueError(
            f"dimension mismatch: {len(weights)} weights vs {len(features)} features"
        )
    total = 0.0
    for w, x in zip(weights, features):
        total += w * x
    return total


def terminal_value(final_status: GameStatus, perspective: str) -> float:
    """+100 for a win, -100 for a loss, 0 for a draw, from `perspective`."""
    if perspective not in (X, O):
        raise ValueError(f"perspective must be X or O, got {perspective!r}")
    if final_status is GameStatus.DRAW:
        return DRAW_VALUE
    if final_status is GameStatus.WON_BY_X:
        return WIN_VALUE if perspective == X else LOSS_VALUE
    if final_status is GameStatus.WON_BY_O:
        return WIN_VALUE if perspective == O else LOSS_VALUE
    raise ValueError("terminal_value is undefined for an ongoing game")


def lms_update(
    weights: WeightVector, example: TrainingExample, eta: float
) -> WeightVector:
    """One least-mean-squares step toward `example.target`.

    The prediction error is computed once against the incoming weights,
    then every weight moves by eta * error * its feature value:

        w_i <- w_i + eta * (target - w . x) * x_i
    """
    error = example.target - evaluate(weights, example.features)
    updated = tuple(w + eta * error * x for w, x in zip(weights, example.features))
    if not all(math.isfinite(w) for w in updated):
        raise TrainingDivergedError(
            f"weights became non-finite after an update (eta={eta})"
        )
    return updated


def squared_error(
    weights: Sequence[float], examples: Iterable[TrainingExample]
) -> float:
    """Sum of squared prediction errors over a batch of examples."""
    total = 0.0
    for example in examples:
        residual = example.target - evaluate(weights, example.features)
        total += residual * residual
    return total


def save_checkpoint(weights: WeightVector, meta: CheckpointMeta, path: str | os.PathLike) -> None:
    """Write weights + metadata in the versioned plain-text format."""
    if meta.feature_dim != 2 * meta.win_length + 1:
        raise CheckpointError(
            f"feature_dim {meta.feature_dim} does not match win_length {meta.win_length}"
        )
    if len(weights) != meta.feature_dim:
        raise CheckpointError(
            f"expected {meta.feature_dim} weights, got {len(weights)}"
        )
    lines = [
        CHECKPOINT_MAGIC,
        f"board_size={meta.board_size}",
        f"win_length={meta.win_length}",
        f"feature_dim={meta.feature_dim}",
        f"eta={float(meta.eta)!r}",
        f"games_trained={meta.games_trained}",
        f"seed={meta.seed}",
        "weights=" + ",".join(repr(float(w)) for w in weights),
    ]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_field(line: str, key: str) -> str:
    prefix = key + "="
    if not line.startswith(prefix):
        raise CheckpointError(f"expected `{key}=...`, got {line!r}")
    return line[len(prefix) :]


def load_checkpoint(path: str | os.PathLike) -> tuple[WeightVector, CheckpointMeta]:
    """Read a checkpoint file, validating format and consistency strictly."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    lines = text.splitlines()
    if len(lines) != 8:
        raise CheckpointError(f"expected 8 lines in checkpoint, got {len(lines)}")
    if lines[0] != CHECKPOINT_MAGIC:
        raise CheckpointError(f"unrecognized checkpoint header {lines[0]!r}")
    try:
        board_size = int(_parse_field(lines[1], "board_size"))
        win_length = int(_parse_field(lines[2], "win_length"))
        feature_dim = int(_parse_field(lines[3], "feature_dim"))
        eta = float(_parse_field(lines[4], "eta"))
        games_trained = int(_parse_field(lines[5], "games_trained"))
        seed = int(_parse_field(lines[6], "seed"))
        raw_weights = _parse_field(lines[7], "weights")
        weights = tuple(float(part) for part in raw_weights.split(","))
    except CheckpointError:
        raise
    except ValueError as exc:
        raise CheckpointError(f"malformed checkpoint field: {exc}") from exc
    if board_size < 1 or not 1 <= win_length <= board_size:
        raise CheckpointError(
            f"inconsistent geometry: size={board_size} win_length={win_length}"
        )
    if feature_dim != 2 * win_length + 1:
        raise CheckpointError(
            f"feature_dim {feature_dim} does not match win_length {win_length}"
        )
    if len(weights) != feature_dim:
        raise CheckpointError(
            f"expected {feature_dim} weights, found {len(weights)}"
        )
    if not all(math.isfinite(w) for w in weights):
        raise CheckpointError("checkpoint contains non-finite weights")
    if games_trained < 0:
        raise CheckpointError(f"games_trained must be >= 0, got {games_trained}")
    meta = CheckpointMeta(
        board_size=board_size,
        win_length=win_length,
        feature_dim=feature_dim,
        eta=eta,
        games_trained=games_trained,
        seed=seed,
    )
    return weights, meta
