"""Command-line entry point: train, eval, bench, enumerate, play, serve.

Exit codes: 0 success, 1 runtime failure, 2 usage error.  All randomized
paths honor --seed, and re-running a command with identical flags produces
byte-identical file outputs.  The NROWRL_LOG environment variable
(error|info|debug) controls diagnostics on standard error; data outputs go
to files or standard output only.
"""

from __future__ import annotations

import argparse
import logging
import os
import statistics
import sys
import time
from pathlib import Path

from .board import (
    ConfigurationError,
    GameStatus,
    IllegalMoveError,
    Move,
    apply_move,
    legal_moves,
    new_board,
    render_text,
    status,
)
from .enumeration import enumerate_games, report_csv, report_text
from .minimax import (
    PRUNE_ALPHA_BETA,
    PRUNE_NONE,
    SearchConfig,
    benchmark_csv,
    benchmark_latency,
    search,
)
from .training import (
    OPPONENT_MINIMAX,
    OPPONENT_RANDOM,
    OPPONENT_SELF,
    PERSPECTIVE_X_ONLY,
    PERSPECTIVES_BOTH,
    START_EMPTY,
    START_RANDOM,
    TrainConfig,
    best_move,
    evaluate_agent,
    format_trace,
    metrics_csv,
    score_moves,
    train,
)
from .values import (
    CheckpointError,
    CheckpointMeta,
    TrainingDivergedError,
    load_checkpoint,
    save_checkpoint,
)

log = logging.getLogger("nrowrl")

_LOG_LEVELS = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}

_PRUNING_FLAGS = {"none": PRUNE_NONE, "ab": PRUNE_ALPHA_BETA}


def _configure_logging() -> None:
    wanted = os.environ.get("NROWRL_LOG", "error").lower()
    level = _LOG_LEVELS.get(wanted, logging.ERROR)
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nrowrl",
        description="n-in-a-row learning agent: training, search, enumeration and play.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_geometry(p: argparse.ArgumentParser) -> None:
        p.add_argument("--size", type=int, default=3, help="board side length N")
        p.add_argument("--win-length", type=int, default=None, help="marks in a row to win (default: N)")

    p_train = sub.add_parser("train", help="run self-play training and write metrics + checkpoints")
    add_geometry(p_train)
    p_train.add_argument("--games", type=int, default=1000)
    p_train.add_argument("--eta", type=float, default=0.4, help="learning-rate numerator")
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--checkpoint-every", type=int, default=100_000)
    p_train.add_argument("--perspectives", choices=("x", "both"), default="both")
    p_train.add_argument("--start", choices=(START_EMPTY, START_RANDOM), default=START_EMPTY)
    p_train.add_argument("--out", type=Path, default=None, help="output directory (default: runs/<derived name>)")
    p_train.add_argument("--dump-traces", type=Path, default=None, metavar="FILE", help="write every game's trace")

    p_eval = sub.add_parser("eval", help="evaluate a checkpoint against an opponent policy")
    p_eval.add_argument("--checkpoint", type=Path, required=True)
    p_eval.add_argument("--opponent", choices=(OPPONENT_RANDOM, OPPONENT_MINIMAX, OPPONENT_SELF), default=OPPONENT_RANDOM)
    p_eval.add_argument("--games", type=int, default=1000)
    p_eval.add_argument("--seed", type=int, default=0)
    p_eval.add_argument("--depth", type=int, default=None, help="depth limit for the minimax opponent")
    p_eval.add_argument("--pruning", choices=tuple(_PRUNING_FLAGS), default="ab")

    p_bench = sub.add_parser("bench", help="time move selection per board size")
    p_bench.add_argument("--size", type=int, action="append", default=None, help="board size; repeatable")
    p_bench.add_argument("--depth", type=int, default=None)
    p_bench.add_argument("--pruning", choices=tuple(_PRUNING_FLAGS), default="ab")
    p_bench.add_argument("--checkpoint", type=Path, default=None, help="also time agent move selection with these weights")
    p_bench.add_argument("--node-budget", type=int, default=None, help="abort threshold for search nodes")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out", type=Path, default=None, help="write the CSV here instead of stdout")

    p_enum = sub.add_parser("enumerate", help="exhaustively count games and terminal boards")
    add_geometry(p_enum)
    p_enum.add_argument("--out", type=Path, default=None, help="also write the metric,value CSV here")

    p_play = sub.add_parser("play", help="interactive terminal game against an engine")
    add_geometry(p_play)
    p_play.add_argument("--checkpoint", type=Path, default=None, help="agent engine weights (default opponent: random)")
    p_play.add_argument("--opponent", choices=(OPPONENT_RANDOM, OPPONENT_MINIMAX), default=None)
    p_play.add_argument("--depth", type=int, default=None)
    p_play.add_argument("--pruning", choices=tuple(_PRUNING_FLAGS), default="ab")
    p_play.add_argument("--seed", type=int, default=0)

    p_serve = sub.add_parser("serve", help="start the HTTP game service")
    p_serve.add_argument("--checkpoint", type=Path, default=None, metavar="DIR", help="directory of checkpoint files to expose")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--seed", type=int, default=0)

    return parser


def _pruning(flag: str) -> str:
    return _PRUNING_FLAGS[flag]


def _load_weights(path: Path):
    weights, meta = load_checkpoint(path)
    return weights, meta


def _cmd_train(args: argparse.Namespace) -> int:
    config = TrainConfig(
        board_size=args.size,
        win_length=args.win_length,
        num_games=args.games,
        eta=args.eta,
        seed=args.seed,
        perspectives=PERSPECTIVE_X_ONLY if args.perspectives == "x" else PERSPECTIVES_BOTH,
        checkpoint_every=args.checkpoint_every,
        start_state=args.start,
    )
    k = config.effective_win_length()
    out_dir = args.out
    if out_dir is None:
        out_dir = Path("runs") / (
            f"train_{args.size}x{args.size}_k{k}_g{args.games}_eta{args.eta}_seed{args.seed}"
        )
    out_dir.mkdir(parents=True, exist_ok=True)

    trace_file = None
    trace_sink = None
    if args.dump_traces is not None:
        trace_file = args.dump_traces.open("w", encoding="utf-8")

        def trace_sink(index, trace):
            trace_file.write(format_trace(index, trace))

    log.info("training %dx%d k=%d games=%d eta=%g seed=%d", args.size, args.size, k, args.games, args.eta, args.seed)
    try:
        result = train(config, trace_sink=trace_sink)
    finally:
        if trace_file is not None:
            trace_file.close()

    (out_dir / "metrics.csv").write_text(metrics_csv(result.checkpoints, k), encoding="utf-8")

    def meta(games_trained: int) -> CheckpointMeta:
        return CheckpointMeta(
            board_size=args.size,
            win_length=k,
            feature_dim=2 * k + 1,
            eta=args.eta,
            games_trained=games_trained,
            seed=args.seed,
        )

    for row in result.checkpoints:
        name = f"checkpoint_{row.stats.games_played:08d}.txt"
        save_checkpoint(row.weights, meta(row.stats.games_played), out_dir / name)
    save_checkpoint(result.weights, meta(result.stats.games_played), out_dir / "final.txt")

    s = result.stats
    print(
        f"trained {s.games_played} games: wins={s.wins} losses={s.losses} draws={s.draws} -> {out_dir}"
    )
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    weights, meta = _load_weights(args.checkpoint)
    stats = evaluate_agent(
        weights,
        opponent=args.opponent,
        games=args.games,
        seed=args.seed,
        board_size=meta.board_size,
        win_length=meta.win_length,
        opponent_depth=args.depth,
        opponent_pruning=_pruning(args.pruning),
    )
    ratio = "" if stats.draws == 0 else f"{stats.win_draw_ratio:.2f}"
    row = [
        str(stats.games_played),
        str(stats.wins),
        str(stats.losses),
        str(stats.draws),
        f"{stats.win_ratio:.2f}",
        ratio,
    ] + [repr(w) for w in weights]
    print(",".join(row))
    return 0


def _bench_agent_rows(sizes, weights, meta, trials: int, seed: int):
    """Time greedy move selection from the empty board (the widest branching)."""
    rows = []
    import random as _random

    for size in sizes:
        board = new_board(size, meta.win_length)
        rng = _random.Random(seed)
        samples = []
        for _ in range(trials):
            t0 = time.perf_counter()
            best_move(board, weights, rng)
            samples.append((time.perf_counter() - t0) * 1000.0)
        mean = statistics.fmean(samples)
        spread = statistics.pstdev(samples) if len(samples) > 1 else 0.0
        rows.append((size, "", "agent", f"{mean:.3f}", f"{spread:.3f}", str(len(legal_moves(board)))))
    return rows


def _cmd_bench(args: argparse.Namespace) -> int:
    sizes = args.size if args.size else [3]
    agent = None
    if args.checkpoint is not None:
        # Validate before spending minutes on search timings.
        weights, meta = _load_weights(args.checkpoint)
        for size in sizes:
            if size != meta.board_size:
                raise RuntimeError(
                    f"checkpoint is for {meta.board_size}x{meta.board_size}, "
                    f"cannot time agent on {size}x{size}"
                )
        agent = (weights, meta)
    kwargs = {}
    if args.node_budget is not None:
        kwargs["node_budget"] = args.node_budget
    config = SearchConfig(max_depth=args.depth, pruning=_pruning(args.pruning), **kwargs)
    text = benchmark_csv(benchmark_latency(sizes, config, trials=5))
    if agent is not None:
        for row in _bench_agent_rows(sizes, *agent, trials=5, seed=args.seed):
            text += ",".join(str(col) for col in row) + "\n"
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    report = enumerate_games(args.size, args.win_length)
    print(report_text(report))
    if args.out is not None:
        args.out.write_text(report_csv(report), encoding="utf-8")
    return 0


def _read_cell(board, prompt: str) -> int | None:
    """Prompt until a legal cell index is entered; None on EOF/quit."""
    legal = {move.cell for move in legal_moves(board)}
    while True:
        try:
            raw = input(prompt)
        except EOFError:
            return None
        raw = raw.strip().lower()
        if raw in ("q", "quit", "exit"):
            return None
        try:
            cell = int(raw)
        except ValueError:
            print(f"enter a cell index 0..{board.size * board.size - 1} or q to quit")
            continue
        if cell not in legal:
            print("that cell is not available")
            continue
        return cell


def _cmd_play(args: argparse.Namespace) -> int:
    import random as _random

    board = new_board(args.size, args.win_length)
    rng = _random.Random(args.seed)
    weights = None
    if args.checkpoint is not None:
        weights, meta = _load_weights(args.checkpoint)
        if (meta.board_size, meta.win_length) != (board.size, board.win_length):
            raise RuntimeError(
                f"checkpoint geometry {meta.board_size}x{meta.board_size} k={meta.win_length} "
                f"does not match the requested board"
            )
        engine = "agent"
    elif args.opponent == OPPONENT_MINIMAX:
        if args.size > 3 and args.depth is None:
            raise RuntimeError("minimax without --depth is infeasible above 3x3")
        engine = OPPONENT_MINIMAX
    else:
        engine = OPPONENT_RANDOM

    print(f"you are X; engine ({engine}) is O; cells are 0..{args.size * args.size - 1} row-major")
    while status(board) is GameStatus.ONGOING:
        print(render_text(board))
        cell = _read_cell(board, "your move> ")
        if cell is None:
            print("bye")
            return 0
        board = apply_move(board, Move(cell=cell, mark="X"))
        if status(board) is not GameStatus.ONGOING:
            break
        t0 = time.perf_counter()
        if engine == "agent":
            reply = best_move(board, weights, rng).cell
        elif engine == OPPONENT_MINIMAX:
            cfg = SearchConfig(max_depth=args.depth, pruning=_pruning(args.pruning))
            reply = search(board, cfg).best_move.cell
        else:
            reply = rng.choice(legal_moves(board)).cell
        elapsed_ms = (time.perf_counter() - t0) * 1000.0
        board = apply_move(board, Move(cell=reply, mark="O"))
        print(f"engine plays {reply} ({elapsed_ms:.1f} ms)")
    print(render_text(board))
    print(f"result: {status(board).value}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    static_dir = os.environ.get("NROWRL_STATIC")
    if static_dir is None and Path("frontend/dist").is_dir():
        static_dir = "frontend/dist"
    app = create_app(
        checkpoints_dir=str(args.checkpoint) if args.checkpoint else None,
        static_dir=static_dir,
        seed=args.seed,
    )
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
    return 0


_COMMANDS = {
    "train": _cmd_train,
    "eval": _cmd_eval,
    "bench": _cmd_bench,
    "enumerate": _cmd_enumerate,
    "play": _cmd_play,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (CheckpointError, RuntimeError, IllegalMoveError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConfigurationError, ValueError) as exc:
        # Invalid flag combinations (bad geometry, malformed config) are
        # usage errors, same as unparseable flags.
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
