"""Persisted play records and their canonical JSON form.

A transcript is one finished (finite-horizon) play: variant, parameters,
the full alternating move list, the horizon, the verdict, and the
certificate that justified the verdict. Serialization must round-trip
bit-exactly: parse(serialize(t)) == t and serialize(parse(s)) == s for
canonical s.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .arith import Interval, format_rational, parse_rational
from .engine import (
    GameVariant,
    GameState,
    Move,
    Player,
    apply_move,
    initial_state,
)
from .errors import BadParametersError, TranscriptFormatError

SCHEMA_VERSION = 1

VERDICT_BOB_WINS = "bob-wins"
VERDICT_ALICE_WINS = "alice-wins"
VERDICT_UNDECIDED = "undecided-at-horizon"

CERT_PINNED_POINT = "pinned-point"
CERT_ESCAPE_BOUND = "escape-bound"


@dataclass(frozen=True)
class Certificate:
    """What a strategy guarantees about the infinite continuation.

    pinned-point: the point sits inside the bracket at every horizon, so
    the infinite intersection is exactly that singleton.
    escape-bound: carries the realized displacement sum (in units of the
    owner's first move length) and the threshold beta - 1/2 it must exceed.
    """

    kind: str
    point: Fraction | None = None
    partial_sum: Fraction | None = None
    threshold: Fraction | None = None

    def to_jsonable(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.point is not None:
            out["point"] = format_rational(self.point)
        if self.partial_sum is not None:
            out["partial_sum"] = format_rational(self.partial_sum)
        if self.threshold is not None:
            out["threshold"] = format_rational(self.threshold)
        return out

    @classmethod
    def from_jsonable(cls, data: dict) -> "Certificate":
        return cls(
            kind=data["kind"],
            point=_opt_rational(data.get("point")),
            partial_sum=_opt_rational(data.get("partial_sum")),
            threshold=_opt_rational(data.get("threshold")),
        )


def _opt_rational(text: str | None) -> Fraction | None:
    return None if text is None else parse_rational(text)


@dataclass(frozen=True)
class Transcript:
    variant: GameVariant
    moves: tuple[Move, ...]
    horizon: int
    verdict: str
    certificate: Certificate | None = None
    target: dict | None = None  # serialized target descriptor, if any

    def to_jsonable(self) -> dict:
        record: dict = {
            "schema_version": SCHEMA_VERSION,
            "variant": self.variant.kind,
            "parameters": {
                k: format_rational(v) for k, v in self.variant.parameters().items()
            },
            "moves": [
                {
                    "player": m.player.value,
                    "lo": format_rational(m.interval.lo),
                    "hi": format_rational(m.interval.hi),
                }
                for m in self.moves
            ],
            "horizon": self.horizon,
            "verdict": self.verdict,
        }
        if self.certificate is not None:
            record["certificate"] = self.certificate.to_jsonable()
        if self.target is not None:
            record["target"] = self.target
        return record

    def serialize(self) -> str:
        """Canonical single-line JSON; stable byte-for-byte."""
        return json.dumps(self.to_jsonable(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_jsonable(cls, record: dict) -> "Transcript":
        try:
            params = {
                k: parse_rational(v) for k, v in record.get("parameters", {}).items()
            }
            variant = GameVariant(
                kind=record["variant"],
                alpha=params.get("alpha"),
                beta=params.get("beta"),
                shrink=params.get("shrink"),
            )
            variant.validate()
            moves = tuple(
                Move(
                    Player(m["player"]),
                    Interval(parse_rational(m["lo"]), parse_rational(m["hi"])),
                )
                for m in record["moves"]
            )
            cert = record.get("certificate")
            return cls(
                variant=variant,
                moves=moves,
                horizon=int(record["horizon"]),
                verdict=record["verdict"],
                certificate=None if cert is None else Certificate.from_jsonable(cert),
                target=record.get("target"),
            )
        except (KeyError, ValueError, TypeError, BadParametersError) as exc:
            raise TranscriptFormatError(f"malformed transcript record: {exc}") from exc

    @classmethod
    def parse(cls, text: str) -> "Transcript":
        try:
            record = json.loads(text)
        except json.JSONDecodeError as exc:
            raise TranscriptFormatError(f"not JSON: {exc}") from exc
        return cls.from_jsonable(record)


def replay(transcript: Transcript) -> GameState:
    """Re-apply every recorded move through the engine's legality checks.

    The returned state is marked finished; any illegal recorded move raises,
    which is the point: a stored transcript is evidence, not trust.
    """
    state = initial_state(transcript.variant)
    for move in transcript.moves:
        state = apply_move(state, move)
    return state.finish()
