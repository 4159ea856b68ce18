"""Self-play training: problem supply, greedy play, example derivation, LMS fitting.

One seeded random generator drives every stochastic choice (random start
states and tie-breaks between equal-utility moves), so a (config, seed)
pair fully determines the run.  The public functions here are small and
composable; `train` wires them into the standard loop:

    repeat n times:
        start   <- generate_problem(...)           # problem supply
        trace   <- play both sides greedily by V-hat  # performance
        examples<- derive_training_examples(...)    # criticism
        weights <- lms_update per example           # generalization

Internally `train` runs games on an incremental board representation that
produces bit-identical results to the public functions (tested), because
a naive loop re-extracting features per candidate move is ~20x slower.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from .board import (
    O,
    X,
    BoardState,
    ConfigurationError,
    GameStatus,
    IllegalMoveError,
    Move,
    apply_move,
    legal_moves,
    new_board,
    render_text,
    status,
    win_lines,
)
from .features import extract_features, feature_dimension, role_swap_permutation
from .minimax import SearchConfig, search
from .values import (
    TrainingDivergedError,
    TrainingExample,
    WeightVector,
    evaluate,
    initial_weights,
    lms_update,
    terminal_value,
)

START_EMPTY = "empty"
START_RANDOM = "random"

PERSPECTIVES_BOTH = "both"
PERSPECTIVE_X_ONLY = "x_only"

OPPONENT_RANDOM = "random"
OPPONENT_MINIMAX = "minimax"
OPPONENT_SELF = "self"


@dataclass(frozen=True)
class TrainConfig:
    board_size: int = 3
    win_length: int | None = None  # None -> board_size
    num_games: int = 1000
    eta: float = 0.4
    seed: int = 0
    perspectives: str = PERSPECTIVES_BOTH
    checkpoint_every: int = 100_000
    start_state: str = START_EMPTY

    def effective_win_length(self) -> int:
        return self.board_size if self.win_length is None else self.win_length

    def validate(self) -> None:
        new_board(self.board_size, self.effective_win_length())  # geometry check
        if self.num_games < 0:
            raise ConfigurationError(f"num_games must be >= 0, got {self.num_games}")
        if self.eta < 0:
            raise ConfigurationError(f"eta must be >= 0, got {self.eta}")
        if self.checkpoint_every < 1:
            raise ConfigurationError(
                f"checkpoint_every must be >= 1, got {self.checkpoint_every}"
            )
        if self.perspectives not in (PERSPECTIVES_BOTH, PERSPECTIVE_X_ONLY):
            raise ConfigurationError(
                f"perspectives must be {PERSPECTIVES_BOTH!r} or {PERSPECTIVE_X_ONLY!r},"
                f" got {self.perspectives!r}"
            )
        if self.start_state not in (START_EMPTY, START_RANDOM):
            raise ConfigurationError(
                f"start_state must be {START_EMPTY!r} or {START_RANDOM!r},"
                f" got {self.start_state!r}"
            )


@dataclass(frozen=True)
class GameTrace:
    """Ordered record of one game: states[0] is the start, states[-1] terminal."""

    states: tuple[BoardState, ...]
    moves: tuple[Move, ...]


@dataclass(frozen=True)
class TrainStats:
    """Outcome counts from X's point of view."""

    games_played: int
    wins: int
    losses: int
    draws: int

    @property
    def win_ratio(self) -> float:
        return self.wins / self.games_played if self.games_played else 0.0

    @property
    def win_draw_ratio(self) -> float | None:
        """wins/draws, the headline performance metric; None when draws = 0."""
        return self.wins / self.draws if self.draws else None


@dataclass(frozen=True)
class CheckpointRow:
    stats: TrainStats
    weights: WeightVector


class TrainResult(NamedTuple):
    weights: WeightVector
    stats: TrainStats
    checkpoints: tuple[CheckpointRow, ...]


def _pick_best_cell(scored: Sequence[tuple[int, float]], rng: random.Random) -> int:
    """Highest-utility cell; exact-value ties resolved uniformly at random.

    Both the public move chooser and the internal fast path route through
    this single function so they consume the random stream identically.
    """
    best_value: float | None = None
    ties: list[int] = []
    for cell, value in scored:
        if best_value is None or value > best_value:
            best_value = value
            ties = [cell]
        elif value == best_value:
            ties.append(cell)
    if len(ties) == 1:
        return ties[0]
    return ties[rng.randrange(len(ties))]


def score_moves(board: BoardState, weights: WeightVector) -> list[tuple[int, float]]:
    """(cell, successor V-hat) for each legal move, mover's perspective."""
    mover = board.to_move
    return [
        (move.cell, evaluate(weights, extract_features(apply_move(board, move), mover)))
        for move in legal_moves(board)
    ]


def best_move(board: BoardState, weights: WeightVector, rng: random.Random) -> Move:
    """Greedy move choice: maximize the successor's value for the mover."""
    scored = score_moves(board, weights)
    if not scored:
        raise IllegalMoveError("no legal moves: the game is over")
    return Move(cell=_pick_best_cell(scored, rng), mark=board.to_move)


def play_game(start: BoardState, weights: WeightVector, rng: random.Random) -> GameTrace:
    """Greedy self-play from `start` until terminal, both sides sharing weights."""
    if status(start) is not GameStatus.ONGOING:
        raise ValueError("cannot play from a terminal state")
    states = [start]
    moves: list[Move] = []
    board = start
    while status(board) is GameStatus.ONGOING:
        move = best_move(board, weights, rng)
        board = apply_move(board, move)
        states.append(board)
        moves.append(move)
    return GameTrace(states=tuple(states), moves=tuple(moves))


def derive_training_examples(
    trace: GameTrace, weights: WeightVector, perspective: str
) -> list[TrainingExample]:
    """Turn one finished game into (features, target) pairs for one side.

    The scored states q1..qr are those produced by `perspective`'s own
    moves, with the terminal state appended when the opponent ended the
    game (so the final example always exists and carries the terminal
    value).  Intermediate targets bootstrap: target(q_j) is the *current*
    model's value of q_{j+1}, all computed against the incoming `weights`
    snapshot, never against partially updated ones.
    """
    if perspective not in (X, O):
        raise ValueError(f"perspective must be X or O, got {perspective!r}")
    final_status = status(trace.states[-1])
    if final_status is GameStatus.ONGOING:
        raise ValueError("trace does not end in a terminal state")
    scored_states = [
        trace.states[i + 1]
        for i, move in enumerate(trace.moves)
        if move.mark == perspective
    ]
    if not trace.moves or trace.moves[-1].mark != perspective:
        scored_states.append(trace.states[-1])
    feats = [extract_features(state, perspective) for state in scored_states]
    examples = [
        TrainingExample(features=feats[j], target=evaluate(weights, feats[j + 1]))
        for j in range(len(feats) - 1)
    ]
    examples.append(
        TrainingExample(
            features=feats[-1], target=terminal_value(final_status, perspective)
        )
    )
    return examples


def generate_problem(config: TrainConfig, rng: random.Random) -> BoardState:
    """Supply a start state: empty, or a random Ongoing even-ply prefix.

    Random starts draw an even ply count (so X is to move), play uniform
    random legal moves, and resample if the game ends early.
    """
    size = config.board_size
    k = config.effective_win_length()
    if config.start_state == START_EMPTY:
        return new_board(size, k)
    n2 = size * size
    while True:
        board = new_board(size, k)
        plies = 2 * rng.randrange((n2 + 1) // 2)
        for _ in range(plies):
            moves = legal_moves(board)
            if not moves:
                break
            board = apply_move(board, moves[rng.randrange(len(moves))])
        if status(board) is GameStatus.ONGOING:
            return board


@dataclass
class _PlayoutOutcome:
    status: GameStatus
    marks: list[str]
    snapshots: list[tuple[int, ...]]  # X-perspective features after each ply
    moves: list[Move]
    states: list[BoardState] | None


class _Playout:
    """Incremental self-play engine for one (size, win_length) geometry.

    Keeps per-line mark counts and a running X-perspective feature vector
    so each candidate move costs O(lines through the cell) instead of a
    full board scan.  Utilities are accumulated in the same term order as
    `values.evaluate` over integer features, so scores — and therefore tie
    sets, random draws, and whole training runs — are bit-identical to the
    public play_game/best_move path.
    """

    def __init__(self, size: int, win_length: int):
        self.size = size
        self.win_length = win_length
        self.n2 = size * size
        self.lines = win_lines(size, win_length)
        cell_lines: list[list[int]] = [[] for _ in range(self.n2)]
        for index, line in enumerate(self.lines):
            for cell in line:
                cell_lines[cell].append(index)
        self.cell_lines = [tuple(ls) for ls in cell_lines]
        self.dim = feature_dimension(win_length)
        self.perm_o = role_swap_permutation(win_length)

    def play(
        self,
        start: BoardState,
        weights: WeightVector,
        rng: random.Random,
        record_states: bool = False,
    ) -> _PlayoutOutcome:
        k = self.win_length
        n2 = self.n2
        cell_lines = self.cell_lines
        perm_o = self.perm_o
        cells = [0] * n2  # 0 empty, 1 X, 2 O
        for cell, mark in enumerate(start.cells):
            if mark == X:
                cells[cell] = 1
            elif mark == O:
                cells[cell] = 2
        line_x = [0] * len(self.lines)
        line_o = [0] * len(self.lines)
        feats = [0] * self.dim
        feats[0] = 1
        for index, line in enumerate(self.lines):
            n_x = n_o = 0
            for cell in line:
                value = cells[cell]
                if value == 1:
                    n_x += 1
                elif value == 2:
                    n_o += 1
            line_x[index] = n_x
            line_o[index] = n_o
            if n_o == 0 and n_x:
                feats[2 * n_x - 1] += 1
            elif n_x == 0 and n_o:
                feats[2 * n_o] += 1
        empties = cells.count(0)
        mover = 1 if start.to_move == X else 2
        marks: list[str] = []
        snapshots: list[tuple[int, ...]] = []
        moves: list[Move] = []
        states: list[BoardState] | None = [start] if record_states else None

        while True:
            scored: list[tuple[int, float]] = []
            if mover == 1:
                for cell in range(n2):
                    if cells[cell]:
                        continue
                    candidate = feats[:]
                    for li in cell_lines[cell]:
                        n_x = line_x[li]
                        n_o = line_o[li]
                        if n_o == 0:
                            if n_x:
                                candidate[2 * n_x - 1] -= 1
                            candidate[2 * n_x + 1] += 1
                        elif n_x == 0:
                            candidate[2 * n_o] -= 1
                    utility = 0.0
                    for w_i, x_i in zip(weights, candidate):
                        utility += w_i * x_i
                    scored.append((cell, utility))
            else:
                for cell in range(n2):
                    if cells[cell]:
                        continue
                    candidate = feats[:]
                    for li in cell_lines[cell]:
                        n_x = line_x[li]
                        n_o = line_o[li]
                        if n_x == 0:
                            if n_o:
                                candidate[2 * n_o] -= 1
                            candidate[2 * n_o + 2] += 1
                        elif n_o == 0:
                            candidate[2 * n_x - 1] -= 1
                    utility = 0.0
                    for w_i, p_i in zip(weights, perm_o):
                        utility += w_i * candidate[p_i]
                    scored.append((cell, utility))

            chosen = _pick_best_cell(scored, rng)
            won = False
            if mover == 1:
                for li in cell_lines[chosen]:
                    n_x = line_x[li]
                    n_o = line_o[li]
                    if n_o == 0:
                        if n_x:
                            feats[2 * n_x - 1] -= 1
                        feats[2 * n_x + 1] += 1
                        if n_x + 1 == k:
                            won = True
                    elif n_x == 0:
                        feats[2 * n_o] -= 1
                    line_x[li] = n_x + 1
            else:
                for li in cell_lines[chosen]:
                    n_x = line_x[li]
                    n_o = line_o[li]
                    if n_x == 0:
                        if n_o:
                            feats[2 * n_o] -= 1
                        feats[2 * n_o + 2] += 1
                        if n_o + 1 == k:
                            won = True
                    elif n_o == 0:
                        feats[2 * n_x - 1] -= 1
                    line_o[li] = n_o + 1
            cells[chosen] = mover
            empties -= 1
            mark = X if mover == 1 else O
            marks.append(mark)
            snapshots.append(tuple(feats))
            moves.append(Move(cell=chosen, mark=mark))
            if states is not None:
                states.append(apply_move(states[-1], moves[-1]))
            if won:
                final = GameStatus.WON_BY_X if mover == 1 else GameStatus.WON_BY_O
                break
            if empties == 0:
                final = GameStatus.DRAW
                break
            mover = 3 - mover
        return _PlayoutOutcome(
            status=final, marks=marks, snapshots=snapshots, moves=moves, states=states
        )


def _swap(features: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(features[p] for p in perm)


def _examples_from_playout(
    outcome: _PlayoutOutcome,
    snapshot_weights: WeightVector,
    perspective: str,
    perm_o: tuple[int, ...],
) -> list[TrainingExample]:
    """Fast-path twin of derive_training_examples over feature snapshots."""
    if perspective == X:
        feats = [f for m, f in zip(outcome.marks, outcome.snapshots) if m == X]
        if outcome.marks[-1] != X:
            feats.append(outcome.snapshots[-1])
    else:
        feats = [
            _swap(f, perm_o) for m, f in zip(outcome.marks, outcome.snapshots) if m == O
        ]
        if outcome.marks[-1] != O:
            feats.append(_swap(outcome.snapshots[-1], perm_o))
    examples = [
        TrainingExample(features=feats[j], target=evaluate(snapshot_weights, feats[j + 1]))
        for j in range(len(feats) - 1)
    ]
    examples.append(
        TrainingExample(
            features=feats[-1], target=terminal_value(outcome.status, perspective)
        )
    )
    return examples


TraceSink = Callable[[int, GameTrace], None]


def train(config: TrainConfig, trace_sink: TraceSink | None = None) -> TrainResult:
    """Run the full training loop and return weights, totals and checkpoints.

    Weights start at all 0.5.  Per game: derive examples for X (and for O
    when configured) from the pre-game weight snapshot, then apply LMS
    updates sequentially in trace order, X's stream first.  A checkpoint
    row is emitted every checkpoint_every games, plus a final partial row
    when the run length is not a multiple of the cadence.  `trace_sink`,
    when given, receives (game index, GameTrace) for every game played.

    Each example's step size is ``eta`` divided by the example's squared
    feature norm (normalized LMS).  A raw constant step multiplies each
    residual by ``1 - eta * ||x||**2``; with count-valued features the
    squared norm routinely exceeds ``1 / eta``, so every pass would expand
    the residual and the weights overflow within a few hundred games.
    Normalizing makes the per-example contraction a uniform ``1 - eta``,
    stable for any ``eta`` in (0, 2) at every board size.  The bias entry
    keeps the norm at least 1, so the step is always finite.
    """
    config.validate()
    k = config.effective_win_length()
    weights: WeightVector = initial_weights(k)
    rng = random.Random(config.seed)
    playout = _Playout(config.board_size, k)
    perspectives = (
        (X, O) if config.perspectives == PERSPECTIVES_BOTH else (X,)
    )
    wins = losses = draws = 0
    checkpoints: list[CheckpointRow] = []
    record = trace_sink is not None
    for index in range(config.num_games):
        start = generate_problem(config, rng)
        outcome = playout.play(start, weights, rng, record_states=record)
        if trace_sink is not None:
            assert outcome.states is not None
            trace_sink(
                index,
                GameTrace(states=tuple(outcome.states), moves=tuple(outcome.moves)),
            )
        snapshot = weights
        try:
            for perspective in perspectives:
                for example in _examples_from_playout(
                    outcome, snapshot, perspective, playout.perm_o
                ):
                    norm_sq = 0
                    for component in example.features:
                        norm_sq += component * component
                    weights = lms_update(weights, example, config.eta / norm_sq)
        except TrainingDivergedError as exc:
            raise TrainingDivergedError(f"{exc} at game index {index}") from exc
        if outcome.status is GameStatus.WON_BY_X:
            wins += 1
        elif outcome.status is GameStatus.WON_BY_O:
            losses += 1
        else:
            draws += 1
        played = index + 1
        if played % config.checkpoint_every == 0:
            checkpoints.append(
                CheckpointRow(
                    stats=TrainStats(played, wins, losses, draws), weights=weights
                )
            )
    stats = TrainStats(
        games_played=config.num_games, wins=wins, losses=losses, draws=draws
    )
    if config.num_games > 0 and config.num_games % config.checkpoint_every != 0:
        checkpoints.append(CheckpointRow(stats=stats, weights=weights))
    return TrainResult(weights=weights, stats=stats, checkpoints=tuple(checkpoints))


def evaluate_agent(
    weights: WeightVector,
    opponent: str = OPPONENT_RANDOM,
    games: int = 1000,
    seed: int = 0,
    *,
    board_size: int = 3,
    win_length: int | None = None,
    opponent_depth: int | None = None,
    opponent_pruning: str = "alpha_beta",
) -> TrainStats:
    """Play the agent as X against a fixed opponent policy; count outcomes.

    Deterministic per seed.  A full-depth minimax opponent is refused
    above 3x3 (it would effectively never return); give it a depth limit.
    """
    if games < 1:
        raise ConfigurationError(f"games must be >= 1, got {games}")
    if opponent not in (OPPONENT_RANDOM, OPPONENT_MINIMAX, OPPONENT_SELF):
        raise ConfigurationError(f"unknown opponent policy {opponent!r}")
    k = board_size if win_length is None else win_length
    if len(weights) != feature_dimension(k):
        raise ValueError(
            f"weights have dimension {len(weights)}, expected {feature_dimension(k)}"
        )
    if opponent == OPPONENT_MINIMAX and board_size > 3 and opponent_depth is None:
        raise ConfigurationError(
            f"full-depth minimax opponent is infeasible on {board_size}x{board_size};"
            " set a depth limit"
        )
    search_config = SearchConfig(max_depth=opponent_depth, pruning=opponent_pruning)
    rng = random.Random(seed)
    wins = losses = draws = 0
    for _ in range(games):
        board = new_board(board_size, k)
        while True:
            outcome = status(board)
            if outcome is not GameStatus.ONGOING:
                break
            if board.to_move == X or opponent == OPPONENT_SELF:
                move = best_move(board, weights, rng)
            elif opponent == OPPONENT_RANDOM:
                options = legal_moves(board)
                move = options[rng.randrange(len(options))]
            else:
                result = search(board, search_config)
                assert result.best_move is not None
                move = result.best_move
            board = apply_move(board, move)
        if outcome is GameStatus.WON_BY_X:
            wins += 1
        elif outcome is GameStatus.WON_BY_O:
            losses += 1
        else:
            draws += 1
    return TrainStats(games_played=games, wins=wins, losses=losses, draws=draws)


def metrics_header(win_length: int) -> str:
    names = ",".join(f"w{i}" for i in range(feature_dimension(win_length)))
    return f"games_played,wins,losses,draws,win_ratio,win_draw_ratio,{names}"


def metrics_csv(checkpoints: Sequence[CheckpointRow], win_length: int) -> str:
    """Checkpoint rows as CSV: ratios to 2 decimals, weights full precision.

    win_draw_ratio is left empty when no game has been drawn yet.
    """
    lines = [metrics_header(win_length)]
    for row in checkpoints:
        s = row.stats
        ratio = f"{s.win_ratio:.2f}"
        wd = s.win_draw_ratio
        wd_text = "" if wd is None else f"{wd:.2f}"
        weight_text = ",".join(repr(float(w)) for w in row.weights)
        lines.append(
            f"{s.games_played},{s.wins},{s.losses},{s.draws},{ratio},{wd_text},{weight_text}"
        )
    return "\n".join(lines) + "\n"


def format_trace(index: int, trace: GameTrace) -> str:
    """One trace block: `game <i> result <status>` then each board, blank-line separated."""
    final = status(trace.states[-1])
    header = f"game {index} result {final.value}"
    body = "\n\n".join(render_text(state) for state in trace.states)
    return f"{header}\n{body}\n"
