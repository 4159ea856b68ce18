"""HTTP game service: sessions against selectable engines over JSON.

Sessions live in memory behind an LRU bound (default 1,024); checkpoints
are loaded read-only at startup from a directory and referenced by file
stem.  Engine replies report wall-clock latency from a monotonic clock,
and agent replies include the chosen successor's value.  Errors carry
``{"error": text}`` bodies.  All game rules live in the core package; the
service only orchestrates sessions.
"""

from __future__ import annotations

import logging
import random
import threading
import time
import uuid
from collections import OrderedDict
from pathlib import Path
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, Field, model_validator

from .board import (
    EMPTY,
    BoardState,
    GameStatus,
    Move,
    apply_move,
    legal_moves,
    new_board,
    status,
)
from .minimax import PRUNE_ALPHA_BETA, PRUNE_NONE, SearchConfig, search
from .training import best_move, score_moves
from .values import CheckpointError, CheckpointMeta, WeightVector, load_checkpoint

log = logging.getLogger("nrowrl.service")

SESSION_CAPACITY = 1024

EngineType = Literal["human", "random", "minimax", "agent"]


class EngineSpec(BaseModel):
    """One side's move policy."""

    type: EngineType
    depth: Optional[int] = Field(default=None, ge=1)
    pruning: Literal["none", "ab", "alpha_beta"] = "alpha_beta"
    checkpoint: Optional[str] = None

    @model_validator(mode="after")
    def _check_fields(self) -> "EngineSpec":
        if self.type == "agent" and not self.checkpoint:
            raise ValueError("agent engine requires a checkpoint id")
        if self.type != "agent" and self.checkpoint:
            raise ValueError("checkpoint only applies to agent engines")
        if self.type != "minimax" and self.depth is not None:
            raise ValueError("depth only applies to minimax engines")
        return self


class CreateGameRequest(BaseModel):
    size: int = Field(default=3, ge=1, le=8)
    win_length: Optional[int] = Field(default=None, ge=1)
    x_engine: EngineSpec
    o_engine: EngineSpec


class MoveRequest(BaseModel):
    cell: int


class EngineReply(BaseModel):
    cell: int
    elapsed_ms: float
    utility: Optional[float] = None


class MoveLogEntry(BaseModel):
    cell: int
    mark: str
    elapsed_ms: Optional[float] = None


class SessionView(BaseModel):
    id: str
    size: int
    win_length: int
    board: str
    to_move: Optional[str]
    status: str
    x_engine: EngineSpec
    o_engine: EngineSpec
    engine_reply: Optional[EngineReply] = None
    move_log: list[MoveLogEntry]


class AnalysisEntry(BaseModel):
    cell: int
    utility: float


class CheckpointInfo(BaseModel):
    id: str
    board_size: int
    win_length: int
    feature_dim: int
    eta: float
    games_trained: int
    seed: int


class EnginesView(BaseModel):
    engines: list[str]
    checkpoints: list[CheckpointInfo]


class _Session:
    """Mutable per-game state; callers hold `lock` around all mutation."""

    def __init__(self, session_id: str, board: BoardState, x_engine: EngineSpec, o_engine: EngineSpec, rng: random.Random):
        self.id = session_id
        self.board = board
        self.engines = {"X": x_engine, "O": o_engine}
        self.rng = rng
        self.move_log: list[MoveLogEntry] = []
        self.last_reply: EngineReply | None = None
        self.lock = threading.Lock()


def _load_checkpoint_dir(checkpoints_dir: str | None) -> dict[str, tuple[WeightVector, CheckpointMeta]]:
    table: dict[str, tuple[WeightVector, CheckpointMeta]] = {}
    if checkpoints_dir is None:
        return table
    root = Path(checkpoints_dir)
    if not root.is_dir():
        raise CheckpointError(f"checkpoint directory {root} does not exist")
    for path in sorted(root.glob("*.txt")):
        try:
            weights, meta = load_checkpoint(path)
        except CheckpointError as exc:
            log.warning("skipping %s: %s", path.name, exc)
            continue
        table[path.stem] = (weights, meta)
    return table


def create_app(
    checkpoints_dir: str | None = None,
    static_dir: str | None = None,
    seed: int = 0,
    session_capacity: int = SESSION_CAPACITY,
) -> FastAPI:
    """Build the service; separate apps are fully independent."""
    app = FastAPI(title="nrowrl game service")
    checkpoints = _load_checkpoint_dir(checkpoints_dir)
    sessions: OrderedDict[str, _Session] = OrderedDict()
    store_lock = threading.Lock()
    counter = {"n": 0}

    @app.exception_handler(HTTPException)
    async def _http_error(_request: Request, exc: HTTPException) -> JSONResponse:
        return JSONResponse(status_code=exc.status_code, content={"error": str(exc.detail)})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"error": str(exc.errors()[:1])})

    def grab_session(session_id: str) -> _Session:
        with store_lock:
            session = sessions.get(session_id)
            if session is None:
                raise HTTPException(404, f"unknown session {session_id}")
            sessions.move_to_end(session_id)
            return session

    def engine_weights(spec: EngineSpec) -> WeightVector:
        return checkpoints[spec.checkpoint][0]

    def compute_engine_move(session: _Session, spec: EngineSpec) -> EngineReply:
        board = session.board
        started = time.perf_counter()
        utility: float | None = None
        if spec.type == "random":
            cell = session.rng.choice(legal_moves(board)).cell
        elif spec.type == "minimax":
            pruning = PRUNE_NONE if spec.pruning == "none" else PRUNE_ALPHA_BETA
            result = search(board, SearchConfig(max_depth=spec.depth, pruning=pruning))
            cell = result.best_move.cell
        else:
            weights = engine_weights(spec)
            scored = score_moves(board, weights)
            cell = best_move(board, weights, session.rng).cell
            utility = dict(scored)[cell]
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        return EngineReply(cell=cell, elapsed_ms=elapsed_ms, utility=utility)

    def play_engine_reply(session: _Session) -> EngineReply | None:
        """If the side to move is an engine and the game is live, move once."""
        board = session.board
        if status(board) is not GameStatus.ONGOING:
            return None
        spec = session.engines[board.to_move]
        if spec.type == "human":
            return None
        reply = compute_engine_move(session, spec)
        session.board = apply_move(session.board, Move(cell=reply.cell, mark=board.to_move))
        session.move_log.append(MoveLogEntry(cell=reply.cell, mark=board.to_move, elapsed_ms=reply.elapsed_ms))
        session.last_reply = reply
        return reply

    def view(session: _Session, reply: EngineReply | None = None) -> SessionView:
        board = session.board
        state = status(board)
        return SessionView(
            id=session.id,
            size=board.size,
            win_length=board.win_length,
            board=board.cells,
            to_move=board.to_move if state is GameStatus.ONGOING else None,
            status=state.value,
            x_engine=session.engines["X"],
            o_engine=session.engines["O"],
            engine_reply=reply if reply is not None else session.last_reply,
            move_log=list(session.move_log),
        )

    def validate_engine(spec: EngineSpec, size: int, win_length: int) -> None:
        if spec.type == "minimax" and size > 3 and spec.depth is None:
            raise HTTPException(400, f"minimax without a depth limit is infeasible on {size}x{size}")
        if spec.type == "agent":
            entry = checkpoints.get(spec.checkpoint)
            if entry is None:
                raise HTTPException(404, f"unknown checkpoint {spec.checkpoint!r}")
            meta = entry[1]
            if (meta.board_size, meta.win_length) != (size, win_length):
                raise HTTPException(
                    409,
                    f"checkpoint {spec.checkpoint!r} is for {meta.board_size}x{meta.board_size} "
                    f"k={meta.win_length}, not {size}x{size} k={win_length}",
                )

    @app.post("/api/games", response_model=SessionView, status_code=201)
    def create_game(request: CreateGameRequest) -> SessionView:
        win_length = request.win_length if request.win_length is not None else request.size
        try:
            board = new_board(request.size, win_length)
        except ValueError as exc:
            raise HTTPException(400, str(exc)) from exc
        validate_engine(request.x_engine, request.size, win_length)
        validate_engine(request.o_engine, request.size, win_length)
        with store_lock:
            counter["n"] += 1
            session_rng = random.Random(f"{seed}:{counter['n']}")
            session = _Session(uuid.uuid4().hex, board, request.x_engine, request.o_engine, session_rng)
            sessions[session.id] = session
            while len(sessions) > session_capacity:
                sessions.popitem(last=False)
        with session.lock:
            reply = play_engine_reply(session)
            return view(session, reply)

    @app.get("/api/games/{session_id}", response_model=SessionView)
    def get_game(session_id: str) -> SessionView:
        session = grab_session(session_id)
        with session.lock:
            return view(session)

    @app.delete("/api/games/{session_id}", status_code=204)
    def delete_game(session_id: str) -> Response:
        with store_lock:
            if session_id not in sessions:
                raise HTTPException(404, f"unknown session {session_id}")
            del sessions[session_id]
        return Response(status_code=204)

    @app.post("/api/games/{session_id}/move", response_model=SessionView)
    def post_move(session_id: str, request: MoveRequest) -> SessionView:
        session = grab_session(session_id)
        with session.lock:
            board = session.board
            if status(board) is not GameStatus.ONGOING:
                raise HTTPException(409, "the game is over")
            if session.engines[board.to_move].type != "human":
                raise HTTPException(409, f"it is not a human's turn ({board.to_move} is an engine)")
            if not 0 <= request.cell < board.size * board.size:
                raise HTTPException(422, f"cell {request.cell} is outside the board")
            if board.cells[request.cell] != EMPTY:
                raise HTTPException(422, f"cell {request.cell} is occupied")
            session.board = apply_move(board, Move(cell=request.cell, mark=board.to_move))
            session.move_log.append(MoveLogEntry(cell=request.cell, mark=board.to_move))
            session.last_reply = None
            reply = play_engine_reply(session)
            return view(session, reply)

    @app.get("/api/games/{session_id}/analysis", response_model=list[AnalysisEntry])
    def analyze(session_id: str) -> list[AnalysisEntry]:
        session = grab_session(session_id)
        with session.lock:
            board = session.board
            if status(board) is not GameStatus.ONGOING:
                raise HTTPException(409, "the game is over")
            mover_spec = session.engines[board.to_move]
            if mover_spec.type == "agent":
                weights = engine_weights(mover_spec)
            else:
                other = "O" if board.to_move == "X" else "X"
                other_spec = session.engines[other]
                if other_spec.type != "agent":
                    raise HTTPException(409, "no agent engine in this session")
                weights = engine_weights(other_spec)
            return [AnalysisEntry(cell=cell, utility=value) for cell, value in score_moves(board, weights)]

    @app.get("/api/engines", response_model=EnginesView)
    def engines() -> EnginesView:
        infos = [
            CheckpointInfo(
                id=stem,
                board_size=meta.board_size,
                win_length=meta.win_length,
                feature_dim=meta.feature_dim,
                eta=meta.eta,
                games_trained=meta.games_trained,
                seed=meta.seed,
            )
            for stem, (_w, meta) in sorted(checkpoints.items())
        ]
        return EnginesView(engines=["human", "random", "minimax", "agent"], checkpoints=infos)

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
