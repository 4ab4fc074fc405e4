"""Interactive play sessions, transcript persistence, and legal-move hints.

A session wraps one game: a human side (or none), engine strategies for the
remaining side(s), a target descriptor, and a horizon counted in full
rounds (one Alice move plus one Bob reply after Bob's opening). Engine
replies are computed synchronously inside submit_move; strategies are cheap
exact arithmetic. Operations on one session are serialized by a per-session
lock while distinct sessions proceed concurrently; the transcript store
appends whole lines under its own lock, so records are atomic.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .arith import Interval, format_rational
from .engine import (
    GameState,
    GameVariant,
    Move,
    Player,
    Violation,
    apply_move,
    bracket,
    check_legal,
    initial_state,
    move_requirements,
)
from .errors import (
    BadParametersError,
    NotYourTurnError,
    TranscriptFormatError,
    UnknownSessionError,
)
from .strategies import (
    Strategy,
    TargetDescriptor,
    decide_verdict,
    pick_certificate,
    strategy_from_id,
)
from .transcript import SCHEMA_VERSION, Certificate, Transcript, replay

STATUS_AWAITING_HUMAN = "awaiting-human"
STATUS_AWAITING_ENGINE = "awaiting-engine"
STATUS_FINISHED = "finished"

# Declared conversion cap for UI gesture input; the service itself accepts
# any exact "p/q", this is advertised so clients quantize consistently.
UI_DENOMINATOR_CAP = 2**20


class TranscriptStore:
    """Append-only transcript persistence: one ndjson file per day plus a
    JSON index mapping transcript ids to their file."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._index_path = self.root / "index.json"
        if not self._index_path.exists():
            self._index_path.write_text("{}", encoding="utf-8")

    def _read_index(self) -> dict[str, str]:
        return json.loads(self._index_path.read_text(encoding="utf-8"))

    def append(self, transcript_id: str, transcript: Transcript) -> None:
        line = json.dumps(
            {"id": transcript_id, "record": transcript.to_jsonable()},
            sort_keys=True,
            separators=(",", ":"),
        )
        day_file = f"transcripts-{time.strftime('%Y%m%d')}.ndjson"
        with self._lock:
            index = self._read_index()
            if transcript_id in index:
                raise TranscriptFormatError(f"duplicate transcript id {transcript_id}")
            with (self.root / day_file).open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")
            index[transcript_id] = day_file
            self._index_path.write_text(
                json.dumps(index, sort_keys=True, indent=0), encoding="utf-8"
            )

    def list_ids(self) -> list[str]:
        with self._lock:
            return sorted(self._read_index())

    def get(self, transcript_id: str) -> Transcript:
        with self._lock:
            index = self._read_index()
            day_file = index.get(transcript_id)
        if day_file is None:
            raise UnknownSessionError(f"no transcript {transcript_id!r}")
        with (self.root / day_file).open(encoding="utf-8") as fh:
            for line in fh:
                entry = json.loads(line)
                if entry["id"] == transcript_id:
                    return Transcript.from_jsonable(entry["record"])
        raise TranscriptFormatError(f"index points at a missing record {transcript_id!r}")


@dataclass
class Session:
    id: str
    state: GameState
    human_side: Player | None
    engines: dict[Player, Strategy]
    target: TargetDescriptor | None
    horizon: int
    verdict: str | None = None
    certificate: Certificate | None = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def moves_at_horizon(self) -> int:
        return 1 + 2 * self.horizon

    @property
    def finished(self) -> bool:
        return len(self.state.history) >= self.moves_at_horizon

    @property
    def status(self) -> str:
        if self.finished:
            return STATUS_FINISHED
        if self.human_side is not None and self.state.to_move is self.human_side:
            return STATUS_AWAITING_HUMAN
        return STATUS_AWAITING_ENGINE


def hint_legal(state: GameState) -> dict:
    """Describe the legal move set well enough to render a draggable region.

    Gives the host interval, the exact required length where one exists
    (max length for Banach-Mazur), and per placeable region the feasible
    range of left endpoints.
    """
    req = move_requirements(state)
    if req.host is None:
        return {
            "to_move": state.to_move.value,
            "opening": True,
            "host": None,
            "required_length": None,
            "max_length": None,
            "regions": [],
        }
    length = req.required_length
    regions = []
    for g in req.regions:
        span = g.length - (length if length is not None else 0)
        regions.append(
            {
                "lo": format_rational(g.lo),
                "hi": format_rational(g.hi),
                "min_left_endpoint": format_rational(g.lo),
                "max_left_endpoint": format_rational(g.lo + span),
            }
        )
    return {
        "to_move": state.to_move.value,
        "opening": False,
        "host": {"lo": format_rational(req.host.lo), "hi": format_rational(req.host.hi)},
        "required_length": None if length is None else format_rational(length),
        "max_length": None if req.max_length is None else format_rational(req.max_length),
        "regions": regions,
    }


class SessionManager:
    """Create and drive sessions; persist finished plays to the store."""

    def __init__(self, store: TranscriptStore):
        self.store = store
        self._sessions: dict[str, Session] = {}
        self._registry_lock = threading.Lock()

    # -- lifecycle ----------------------------------------------------------

    def create_session(
        self,
        variant: GameVariant,
        human_side: Player | None,
        horizon: int,
        bob_strategy: str | None = None,
        alice_strategy: str | None = None,
        target: TargetDescriptor | None = None,
        b0: Interval | None = None,
    ) -> Session:
        if horizon < 1:
            raise BadParametersError("horizon must be >= 1")
        variant.validate()
        engines: dict[Player, Strategy] = {}
        for side, identifier in (
            (Player.BOB, bob_strategy),
            (Player.ALICE, alice_strategy),
        ):
            if side is human_side:
                continue
            if identifier is None:
                raise BadParametersError(f"{side.value} needs an engine strategy")
            strategy = strategy_from_id(identifier, side)
            if not strategy.applicable(variant):
                from .errors import InapplicableStrategyError

                raise InapplicableStrategyError(
                    f"{strategy.name} is not applicable to these parameters"
                )
            engines[side] = strategy

        session = Session(
            id=uuid.uuid4().hex,
            state=initial_state(variant),
            human_side=human_side,
            engines=engines,
            target=target,
            horizon=horizon,
        )
        with session.lock:
            if human_side is not Player.BOB:
                opening = b0 if b0 is not None else engines[Player.BOB].opening(variant)
                if opening is None:
                    raise BadParametersError(
                        "b0 required: the engine bob strategy has no opening preference"
                    )
                self._engine_apply(session, Move(Player.BOB, opening))
            self._run_engine(session)
        with self._registry_lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSessionError(f"no session {session_id!r}")
        return session

    # -- moves --------------------------------------------------------------

    def submit_move(self, session_id: str, interval: Interval) -> dict:
        """Validate and apply a human move, then let the engine reply.

        An illegal move leaves the session unchanged and is reported in the
        returned view rather than raised; turn and lifecycle misuse raise.
        """
        session = self.get(session_id)
        with session.lock:
            if session.finished:
                raise NotYourTurnError("session is finished")
            if session.human_side is None or session.state.to_move is not session.human_side:
                raise NotYourTurnError("it is not the human side's turn")
            move = Move(session.human_side, interval)
            violation = check_legal(session.state, move)
            if violation is not None:
                return self.view(session, violation=violation)
            session.state = apply_move(session.state, move)
            self._run_engine(session)
            return self.view(session)

    def hint(self, session_id: str) -> dict:
        session = self.get(session_id)
        with session.lock:
            payload = hint_legal(session.state)
        payload["schema_version"] = SCHEMA_VERSION
        payload["session_id"] = session_id
        return payload

    def _engine_apply(self, session: Session, move: Move) -> None:
        from .errors import StrategyFaultError

        violation = check_legal(session.state, move)
        if violation is not None:
            raise StrategyFaultError(
                session.engines[move.player].name, violation, session.state
            )
        session.state = apply_move(session.state, move)

    def _run_engine(self, session: Session) -> None:
        while not session.finished and session.state.to_move in session.engines:
            strategy = session.engines[session.state.to_move]
            self._engine_apply(session, strategy.propose(session.state))
        if session.finished and session.verdict is None:
            self._finish(session)

    def _finish(self, session: Session) -> None:
        session.state = session.state.finish()
        bob = session.engines.get(Player.BOB)
        alice = session.engines.get(Player.ALICE)
        cert = None
        if bob is not None and alice is not None:
            cert = pick_certificate(bob, alice, session.state)
        elif bob is not None:
            cert = bob.certificate(session.state)
        elif alice is not None:
            cert = alice.certificate(session.state)
        session.certificate = cert
        session.verdict = decide_verdict(cert, session.target)
        transcript = Transcript(
            variant=session.state.variant,
            moves=session.state.history,
            horizon=session.horizon,
            verdict=session.verdict,
            certificate=cert,
            target=None if session.target is None else session.target.to_jsonable(),
        )
        self.store.append(session.id, transcript)

    # -- views ----------------------------------------------------------------

    def view(self, session: Session, violation: Violation | None = None) -> dict:
        state = session.state
        out: dict = {
            "schema_version": SCHEMA_VERSION,
            "session_id": session.id,
            "variant": state.variant.kind,
            "parameters": {
                k: format_rational(v) for k, v in state.variant.parameters().items()
            },
            "human_side": None if session.human_side is None else session.human_side.value,
            "engine_strategies": {
                side.value: strat.name for side, strat in session.engines.items()
            },
            "horizon": session.horizon,
            "status": session.status,
            "to_move": state.to_move.value,
            "moves": [
                {
                    "player": m.player.value,
                    "lo": format_rational(m.interval.lo),
                    "hi": format_rational(m.interval.hi),
                }
                for m in state.history
            ],
            "bracket": None,
            "verdict": session.verdict,
            "certificate": None
            if session.certificate is None
            else session.certificate.to_jsonable(),
            "violation": None
            if violation is None
            else {"code": violation.code.value, "detail": violation.detail},
            "target": None if session.target is None else session.target.to_jsonable(),
        }
        if state.history:
            b = bracket(state)
            out["bracket"] = {"lo": format_rational(b.lo), "hi": format_rational(b.hi)}
        return out

    def replay_check(self, session_id: str) -> bool:
        """A finished session must replay bit-identically from its transcript."""
        session = self.get(session_id)
        stored = self.store.get(session_id)
        replayed = replay(stored)
        return (
            replayed.history == session.state.history
            and replayed.variant == session.state.variant
        )
