"""Rule state machines for the three nested-interval games.

Bob always moves first. In every variant his opening move is an arbitrary
nondegenerate closed interval; from then on the variants differ:

* Banach-Mazur: each move is a closed subinterval of the previous move.
  Optionally Bob's moves must shrink by a configured factor per round so
  finite-horizon brackets converge (disable with shrink=None for pure
  rule checking).
* Schmidt(alpha, beta): Alice's reply has length exactly alpha times the
  interval she plays into; Bob's reply has length exactly beta times
  Alice's move. Both nest.
* McMullen(beta), 0 < beta < 1/3: Alice marks an obstacle of length
  beta times Bob's interval inside it; Bob's reply has length beta times
  his own previous interval and must avoid the obstacle, i.e. sit inside
  one closed component of the complement.

States are immutable values; apply_move returns a new state.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction

from .arith import Interval, as_rational, format_rational, gap_components
from .errors import (
    BadParametersError,
    EmptyHistoryError,
    FinishedGameError,
    IllegalMoveError,
    NoLegalReplyError,
)

BANACH_MAZUR = "banach-mazur"
SCHMIDT = "schmidt"
MCMULLEN = "mcmullen"


class Player(str, Enum):
    BOB = "bob"
    ALICE = "alice"

    @property
    def opponent(self) -> "Player":
        return Player.ALICE if self is Player.BOB else Player.BOB


@dataclass(frozen=True)
class GameVariant:
    """Which game is being played, with its exact rational parameters."""

    kind: str
    alpha: Fraction | None = None
    beta: Fraction | None = None
    shrink: Fraction | None = None

    @classmethod
    def banach_mazur(cls, shrink: Fraction | None = Fraction(1, 2)) -> "GameVariant":
        v = cls(BANACH_MAZUR, shrink=None if shrink is None else as_rational(shrink))
        v.validate()
        return v

    @classmethod
    def schmidt(cls, alpha: Fraction, beta: Fraction) -> "GameVariant":
        v = cls(SCHMIDT, alpha=as_rational(alpha), beta=as_rational(beta))
        v.validate()
        return v

    @classmethod
    def mcmullen(cls, beta: Fraction) -> "GameVariant":
        v = cls(MCMULLEN, beta=as_rational(beta))
        v.validate()
        return v

    def validate(self) -> None:
        if self.kind == SCHMIDT:
            if self.alpha is None or self.beta is None:
                raise BadParametersError("schmidt requires alpha and beta")
            if not (0 < self.alpha < 1) or not (0 < self.beta < 1):
                raise BadParametersError(
                    "schmidt requires 0 < alpha < 1 and 0 < beta < 1, got "
                    f"alpha={self.alpha}, beta={self.beta}"
                )
        elif self.kind == MCMULLEN:
            if self.beta is None:
                raise BadParametersError("mcmullen requires beta")
            if not (0 < self.beta < Fraction(1, 3)):
                raise BadParametersError(
                    f"mcmullen requires 0 < beta < 1/3, got beta={self.beta}"
                )
        elif self.kind == BANACH_MAZUR:
            if self.shrink is not None and not (0 < self.shrink < 1):
                raise BadParametersError(
                    f"banach-mazur shrink must be in (0,1) or None, got {self.shrink}"
                )
        else:
            raise BadParametersError(f"unknown game kind {self.kind!r}")

    def parameters(self) -> dict[str, Fraction]:
        out: dict[str, Fraction] = {}
        if self.alpha is not None:
            out["alpha"] = self.alpha
        if self.beta is not None:
            out["beta"] = self.beta
        if self.shrink is not None:
            out["shrink"] = self.shrink
        return out


@dataclass(frozen=True)
class Move:
    player: Player
    interval: Interval


class ViolationCode(str, Enum):
    WRONG_PLAYER = "wrong-player"
    NOT_NESTED = "not-nested"
    WRONG_LENGTH = "wrong-length"
    NOT_IN_COMPLEMENT = "not-in-complement"
    NOT_SHRINKING = "not-shrinking"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class Violation:
    code: ViolationCode
    detail: str

    def __str__(self) -> str:
        return f"{self.code.value}: {self.detail}"


@dataclass(frozen=True)
class GameState:
    variant: GameVariant
    history: tuple[Move, ...] = ()
    to_move: Player = Player.BOB
    finished: bool = False

    @property
    def last_interval(self) -> Interval:
        if not self.history:
            raise EmptyHistoryError("no moves played yet")
        return self.history[-1].interval

    def finish(self) -> "GameState":
        return replace(self, finished=True)


def initial_state(variant: GameVariant) -> GameState:
    """Fresh game: empty history, Bob to move. Rejects bad parameters."""
    variant.validate()
    return GameState(variant=variant)


@dataclass(frozen=True)
class MoveRequirements:
    """What the next move must look like; drives hints and strategies.

    host is None for Bob's opening (any nondegenerate interval is legal).
    required_length is None for Banach-Mazur, where only max_length caps the
    move. regions lists the subintervals the move may be placed in (the gap
    components for a McMullen Bob reply, otherwise just the host).
    """

    host: Interval | None
    required_length: Fraction | None
    max_length: Fraction | None
    regions: tuple[Interval, ...] = ()


def move_requirements(state: GameState) -> MoveRequirements:
    v = state.variant
    if not state.history:
        return MoveRequirements(host=None, required_length=None, max_length=None)
    host = state.last_interval
    if v.kind == BANACH_MAZUR:
        cap = host.length
        if state.to_move is Player.BOB and v.shrink is not None:
            cap = min(cap, v.shrink * state.history[-2].interval.length)
        return MoveRequirements(host, None, cap, (host,))
    if v.kind == SCHMIDT:
        ratio = v.alpha if state.to_move is Player.ALICE else v.beta
        need = ratio * host.length
        return MoveRequirements(host, need, need, (host,))
    # McMullen
    if state.to_move is Player.ALICE:
        need = v.beta * host.length
        return MoveRequirements(host, need, need, (host,))
    own_prev = state.history[-2].interval
    need = v.beta * own_prev.length
    gaps = tuple(
        g for g in gap_components(own_prev, host) if g.length >= need
    )
    return MoveRequirements(own_prev, need, need, gaps)


def check_legal(state: GameState, move: Move) -> Violation | None:
    """Pure legality check; returns the first applicable Violation or None."""
    if state.finished:
        raise FinishedGameError("game has reached its horizon")
    if move.player is not state.to_move:
        return Violation(
            ViolationCode.WRONG_PLAYER,
            f"{move.player.value} moved but it is {state.to_move.value}'s turn",
        )
    iv = move.interval
    if iv.is_degenerate:
        return Violation(ViolationCode.DEGENERATE, f"{iv} has zero length")
    if not state.history:
        return None  # Bob's opening: any nondegenerate closed interval
    v = state.variant
    prev = state.last_interval

    if v.kind == BANACH_MAZUR:
        if not prev.contains(iv):
            return Violation(ViolationCode.NOT_NESTED, f"{iv} is not inside {prev}")
        if move.player is Player.BOB and v.shrink is not None:
            cap = v.shrink * state.history[-2].interval.length
            if iv.length > cap:
                return Violation(
                    ViolationCode.NOT_SHRINKING,
                    f"length {format_rational(iv.length)} exceeds the shrink cap "
                    f"{format_rational(cap)}",
                )
        return None

    if v.kind == SCHMIDT:
        ratio = v.alpha if move.player is Player.ALICE else v.beta
        if not prev.contains(iv):
            return Violation(ViolationCode.NOT_NESTED, f"{iv} is not inside {prev}")
        need = ratio * prev.length
        if iv.length != need:
            return Violation(
                ViolationCode.WRONG_LENGTH,
                f"length must be exactly {format_rational(need)}, "
                f"got {format_rational(iv.length)}",
            )
        return None

    # McMullen
    if move.player is Player.ALICE:
        if not prev.contains(iv):
            return Violation(ViolationCode.NOT_NESTED, f"{iv} is not inside {prev}")
        need = v.beta * prev.length
        if iv.length != need:
            return Violation(
                ViolationCode.WRONG_LENGTH,
                f"obstacle length must be exactly {format_rational(need)}, "
                f"got {format_rational(iv.length)}",
            )
        return None
    own_prev = state.history[-2].interval
    need = v.beta * own_prev.length
    if iv.length != need:
        return Violation(
            ViolationCode.WRONG_LENGTH,
            f"reply length must be exactly {format_rational(need)}, "
            f"got {format_rational(iv.length)}",
        )
    gaps = gap_components(own_prev, prev)
    if not any(g.contains(iv) for g in gaps):
        return Violation(
            ViolationCode.NOT_IN_COMPLEMENT,
            f"{iv} does not avoid the obstacle {prev} within {own_prev}",
        )
    return None


def apply_move(state: GameState, move: Move) -> GameState:
    """Append a legal move and flip the turn; raises IllegalMoveError otherwise."""
    violation = check_legal(state, move)
    if violation is not None:
        raise IllegalMoveError(violation)
    return GameState(
        variant=state.variant,
        history=state.history + (move,),
        to_move=move.player.opponent,
        finished=state.finished,
    )


def bracket(state: GameState) -> Interval:
    """Finite-horizon intersection witness.

    Banach-Mazur and Schmidt moves nest, so the last interval equals the
    intersection so far. McMullen obstacles do not nest; the bracket is the
    last Bob interval.
    """
    if not state.history:
        raise EmptyHistoryError("bracket of an empty history")
    if state.variant.kind == MCMULLEN:
        for move in reversed(state.history):
            if move.player is Player.BOB:
                return move.interval
        raise EmptyHistoryError("no bob move in history")  # unreachable
    return state.last_interval


def mcmullen_reply_witness(state: GameState) -> Interval:
    """A concrete legal Bob reply: left-aligned in the largest gap component.

    Ties between equal gaps go left so replays are deterministic. For
    beta < 1/3 a gap of length at least beta times Bob's previous interval
    always exists (the worst case is the centered obstacle, whose larger
    side has length (1-beta)/2 of it).
    """
    if state.variant.kind != MCMULLEN:
        raise BadParametersError("witness is defined for the mcmullen variant")
    if state.to_move is not Player.BOB or not state.history:
        raise EmptyHistoryError("witness needs Bob to move after an obstacle")
    obstacle = state.last_interval
    own_prev = state.history[-2].interval
    need = state.variant.beta * own_prev.length
    gaps = gap_components(own_prev, obstacle)
    best: Interval | None = None
    for g in gaps:
        if best is None or g.length > best.length:
            best = g
    if best is None or best.length < need:
        raise NoLegalReplyError(
            f"no gap of length {format_rational(need)} in {own_prev} minus {obstacle}"
        )
    return Interval(best.lo, best.lo + need)
