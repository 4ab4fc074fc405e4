"""HTTP surface for sessions, regime tools, and tree building.

RPC-style JSON endpoints, all rationals as "p/q" strings, every response
carrying schema_version. This is the only boundary the browser UI consumes.
"""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .arith import parse_rational
from .cantor import BRANCHER_AUTO, build_tree, level_table, tree_to_jsonable, verify_tree
from .engine import BANACH_MAZUR, MCMULLEN, SCHMIDT, GameVariant, Interval, Player
from .errors import (
    BadParametersError,
    DepthExceededError,
    InapplicableStrategyError,
    IntervalGameError,
    NotYourTurnError,
    TranscriptFormatError,
    UnknownSessionError,
    UnknownStrategyError,
)
from .regime import classify, verify_chain
from .session import SessionManager, TranscriptStore, UI_DENOMINATOR_CAP
from .strategies import STRATEGY_IDS, TargetDescriptor, strategy_from_id
from .transcript import SCHEMA_VERSION

SERVICE_DEPTH_CAP = 8

_STATUS_BY_ERROR = {
    UnknownSessionError: 404,
    NotYourTurnError: 409,
    BadParametersError: 422,
    InapplicableStrategyError: 422,
    UnknownStrategyError: 422,
    DepthExceededError: 422,
    TranscriptFormatError: 422,
}


class VariantSpec(BaseModel):
    kind: str
    alpha: str | None = None
    beta: str | None = None
    shrink: str | None = None
    enforce_shrink: bool = True

    def build(self) -> GameVariant:
        if self.kind == SCHMIDT:
            if self.alpha is None or self.beta is None:
                raise BadParametersError("schmidt requires alpha and beta")
            return GameVariant.schmidt(parse_rational(self.alpha), parse_rational(self.beta))
        if self.kind == MCMULLEN:
            if self.beta is None:
                raise BadParametersError("mcmullen requires beta")
            return GameVariant.mcmullen(parse_rational(self.beta))
        if self.kind == BANACH_MAZUR:
            if not self.enforce_shrink:
                return GameVariant.banach_mazur(shrink=None)
            if self.shrink is not None:
                return GameVariant.banach_mazur(shrink=parse_rational(self.shrink))
            return GameVariant.banach_mazur()
        raise BadParametersError(f"unknown variant kind {self.kind!r}")


class TargetSpec(BaseModel):
    kind: str
    point: str | None = None
    enumeration: str | None = None

    def build(self) -> TargetDescriptor:
        data: dict = {"kind": self.kind}
        if self.point is not None:
            data["point"] = self.point
        if self.enumeration is not None:
            data["enumeration"] = self.enumeration
        try:
            return TargetDescriptor.from_jsonable(data)
        except ValueError as exc:
            raise BadParametersError(str(exc)) from exc


class CreateSessionRequest(BaseModel):
    variant: VariantSpec
    human_side: str = Field(description="bob, alice, or none")
    horizon: int = 10
    bob_strategy: str | None = None
    alice_strategy: str | None = None
    engine_strategy: str | None = None  # convenience: the non-human side
    target: TargetSpec | None = None
    b0_lo: str | None = None
    b0_hi: str | None = None


class SessionRef(BaseModel):
    session_id: str


class SubmitMoveRequest(BaseModel):
    session_id: str
    lo: str
    hi: str


class TranscriptRef(BaseModel):
    transcript_id: str


class PairRequest(BaseModel):
    alpha: str
    beta: str


class BuildTreeRequest(BaseModel):
    variant: VariantSpec
    pinned: str
    pinned_player: str = "alice"
    depth: int = 3
    brancher: str = BRANCHER_AUTO
    b0_lo: str | None = None
    b0_hi: str | None = None
    include_fragments: bool = False


def _parse_side(name: str) -> Player | None:
    if name == "none":
        return None
    try:
        return Player(name)
    except ValueError:
        raise BadParametersError(f"unknown side {name!r}") from None


def _parse_b0(lo: str | None, hi: str | None) -> Interval | None:
    if lo is None and hi is None:
        return None
    if lo is None or hi is None:
        raise BadParametersError("b0 needs both endpoints")
    return Interval(parse_rational(lo), parse_rational(hi))


def create_app(store_dir: str | Path | None = None) -> FastAPI:
    store_dir = store_dir or os.environ.get("INTERVALGAMES_STORE", "./transcripts")
    manager = SessionManager(TranscriptStore(store_dir))
    app = FastAPI(title="intervalgames", version="0.1.0")
    app.state.manager = manager
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(IntervalGameError)
    async def _game_error(request: Request, exc: IntervalGameError):
        status = 400
        for klass, code in _STATUS_BY_ERROR.items():
            if isinstance(exc, klass):
                status = code
                break
        return JSONResponse(
            status_code=status,
            content={
                "schema_version": SCHEMA_VERSION,
                "error": {"code": exc.code, "detail": str(exc)},
            },
        )

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(
            status_code=400,
            content={
                "schema_version": SCHEMA_VERSION,
                "error": {"code": "bad-request", "detail": str(exc)},
            },
        )

    @app.get("/")
    async def health() -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "service": "intervalgames",
            "strategies": list(STRATEGY_IDS),
            "ui_denominator_cap": UI_DENOMINATOR_CAP,
        }

    @app.post("/create-session")
    async def create_session(req: CreateSessionRequest) -> dict:
        variant = req.variant.build()
        human = _parse_side(req.human_side)
        bob_id, alice_id = req.bob_strategy, req.alice_strategy
        if req.engine_strategy is not None:
            if human is Player.ALICE and bob_id is None:
                bob_id = req.engine_strategy
            elif human is Player.BOB and alice_id is None:
                alice_id = req.engine_strategy
            elif human is None:
                raise BadParametersError(
                    "human_side none needs explicit bob_strategy and alice_strategy"
                )
        session = manager.create_session(
            variant=variant,
            human_side=human,
            horizon=req.horizon,
            bob_strategy=bob_id,
            alice_strategy=alice_id,
            target=None if req.target is None else req.target.build(),
            b0=_parse_b0(req.b0_lo, req.b0_hi),
        )
        return manager.view(session)

    @app.post("/get-session")
    async def get_session(req: SessionRef) -> dict:
        return manager.view(manager.get(req.session_id))

    @app.post("/submit-move")
    async def submit_move(req: SubmitMoveRequest) -> dict:
        interval = Interval(parse_rational(req.lo), parse_rational(req.hi))
        return manager.submit_move(req.session_id, interval)

    @app.post("/hint")
    async def hint(req: SessionRef) -> dict:
        return manager.hint(req.session_id)

    @app.post("/list-transcripts")
    async def list_transcripts() -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "transcript_ids": manager.store.list_ids(),
        }

    @app.post("/get-transcript")
    async def get_transcript(req: TranscriptRef) -> dict:
        transcript = manager.store.get(req.transcript_id)
        return {
            "schema_version": SCHEMA_VERSION,
            "transcript_id": req.transcript_id,
            "record": transcript.to_jsonable(),
        }

    @app.post("/classify")
    async def classify_pair(req: PairRequest) -> dict:
        verdict = classify(parse_rational(req.alpha), parse_rational(req.beta))
        return {
            "schema_version": SCHEMA_VERSION,
            "alpha": req.alpha,
            "beta": req.beta,
            "regime": verdict.regime,
            "margins": verdict.margins_as_strings(),
        }

    @app.post("/verify-chain")
    async def verify_chain_pair(req: PairRequest) -> dict:
        report = verify_chain(parse_rational(req.alpha), parse_rational(req.beta))
        return {
            "schema_version": SCHEMA_VERSION,
            "alpha": req.alpha,
            "beta": req.beta,
            "steps": report.as_rows(),
            "conclusion_margin": report.as_rows()[-1]["margin"],
        }

    @app.post("/build-tree")
    async def build_tree_endpoint(req: BuildTreeRequest) -> dict:
        if req.depth > SERVICE_DEPTH_CAP:
            raise DepthExceededError(
                f"depth {req.depth} exceeds the service cap {SERVICE_DEPTH_CAP}"
            )
        variant = req.variant.build()
        side = _parse_side(req.pinned_player)
        if side is None:
            raise BadParametersError("pinned_player must be bob or alice")
        pinned = strategy_from_id(req.pinned, side)
        tree = build_tree(
            variant,
            pinned,
            depth=req.depth,
            b0=_parse_b0(req.b0_lo, req.b0_hi),
            brancher=req.brancher,
        )
        reports = verify_tree(tree)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "tree": tree_to_jsonable(tree),
            "levels": level_table(reports),
        }
        if req.include_fragments:
            from .arith import format_rational

            payload["fragments"] = {
                word: [
                    {
                        "player": m.player.value,
                        "lo": format_rational(m.interval.lo),
                        "hi": format_rational(m.interval.hi),
                    }
                    for m in node.moves
                ]
                for word, node in sorted(tree.nodes.items())
            }
        return payload

    ui_dir = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if ui_dir.is_dir():
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
