"""Self-play learning workbench for generalized N-in-a-row tic tac toe."""

__version__ = "0.1.0"

from .board import (
    BoardState,
    BoardParseError,
    ConfigurationError,
    GameStatus,
    IllegalMoveError,
    Move,
    apply_move,
    legal_moves,
    new_board,
    parse_board,
    render_text,
    status,
    win_lines,
)
from .features import extract_features, feature_dimension
from .values import (
    CheckpointError,
    CheckpointMeta,
    TrainingDivergedError,
    TrainingExample,
    evaluate,
    initial_weights,
    lms_update,
    load_checkpoint,
    save_checkpoint,
    squared_error,
    terminal_value,
)

__all__ = [
    "BoardState",
    "BoardParseError",
    "CheckpointError",
    "CheckpointMeta",
    "ConfigurationError",
    "GameStatus",
    "IllegalMoveError",
    "Move",
    "TrainingDivergedError",
    "TrainingExample",
    "apply_move",
    "evaluate",
    "extract_features",
    "feature_dimension",
    "initial_weights",
    "legal_moves",
    "lms_update",
    "load_checkpoint",
    "new_board",
    "parse_board",
    "render_text",
    "save_checkpoint",
    "squared_error",
    "status",
    "terminal_value",
    "win_lines",
]
