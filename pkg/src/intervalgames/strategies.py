"""Concrete strategies, certificates, and the finite-horizon play driver.

A strategy is a deterministic rule from game states to moves for one player.
The pinning strategies recenter every move on a fixed point and certify that
the point survives in every bracket; the endpoint strategies share one end
of the opponent's move and certify a running displacement bound. Nothing
here ever adjudicates an infinite intersection: verdicts come only from
certificates checked against a target descriptor.

Margin arithmetic used throughout (all exact):

* Bob recentering at x is legal iff beta <= 2 - 1/alpha. Inside Bob's
  length-L interval centered at x, Alice's move of length alpha*L keeps x
  at distance >= (alpha - 1/2)*L from its nearest edge, and Bob's reply
  needs half-length alpha*beta*L/2; (alpha - 1/2) >= alpha*beta/2 is
  exactly that inequality. At equality the fit has zero slack.
* Alice recentering at y is the mirror image: legal iff alpha <= 2 - 1/beta.
* The right-endpoint strategy displaces left endpoints by at least
  (alpha - alpha*beta) * (alpha*beta)^k per round pair, summing to
  (1 - beta) * alpha / (1 - alpha*beta).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .arith import Anchor, Interval, as_rational, format_rational, place_subinterval
from .engine import (
    BANACH_MAZUR,
    MCMULLEN,
    SCHMIDT,
    GameState,
    GameVariant,
    Move,
    Player,
    apply_move,
    bracket,
    check_legal,
    initial_state,
    move_requirements,
)
from .errors import (
    CannotSplitError,
    InapplicableStrategyError,
    StrategyFaultError,
    UnknownStrategyError,
)
from .transcript import (
    CERT_ESCAPE_BOUND,
    CERT_PINNED_POINT,
    VERDICT_ALICE_WINS,
    VERDICT_BOB_WINS,
    VERDICT_UNDECIDED,
    Certificate,
    Transcript,
)

_HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# Dense enumerations and target descriptors


def stern_brocot_rationals() -> Iterator[Fraction]:
    """Enumerate all of Q exactly once: 0, then q, -q in breadth-first
    Stern-Brocot order via the constant-space Calkin-Wilf step."""
    yield Fraction(0)
    q = Fraction(1)
    while True:
        yield q
        yield -q
        q = 1 / (2 * (q.numerator // q.denominator) + 1 - q)


@dataclass(frozen=True)
class RationalEnumeration:
    """A named, fixed enumeration of a countable dense set of rationals."""

    name: str
    generate: Callable[[], Iterator[Fraction]] = field(compare=False)
    member: Callable[[Fraction], bool] = field(compare=False)

    def first_in(self, band: Interval, limit: int = 200_000) -> Fraction:
        for i, q in enumerate(self.generate()):
            if band.contains_point(q):
                return q
            if i >= limit:
                raise RuntimeError(
                    f"enumeration {self.name} found no point in {band} "
                    f"within {limit} terms"
                )
        raise RuntimeError("enumeration exhausted")  # unreachable: infinite


STERN_BROCOT = RationalEnumeration(
    name="stern-brocot",
    generate=stern_brocot_rationals,
    member=lambda q: True,  # every rational appears
)

ENUMERATIONS = {STERN_BROCOT.name: STERN_BROCOT}

TARGET_CO_SINGLETON = "co-singleton"
TARGET_DENSE = "dense-enumeration"
TARGET_ORACLE = "predicate-oracle"


@dataclass(frozen=True)
class TargetDescriptor:
    """Alice's target set, in a form whose membership is decidable at
    rational points (or explicitly undecidable for opaque oracles)."""

    kind: str
    point: Fraction | None = None
    enumeration: RationalEnumeration | None = None
    predicate: Callable[[Fraction], bool | None] | None = field(
        default=None, compare=False
    )
    label: str = ""

    @classmethod
    def co_singleton(cls, point: Fraction) -> "TargetDescriptor":
        """The real line minus one point."""
        return cls(TARGET_CO_SINGLETON, point=as_rational(point))

    @classmethod
    def dense(cls, enumeration: RationalEnumeration = STERN_BROCOT) -> "TargetDescriptor":
        return cls(TARGET_DENSE, enumeration=enumeration)

    @classmethod
    def oracle(
        cls, predicate: Callable[[Fraction], bool | None], label: str = "oracle"
    ) -> "TargetDescriptor":
        return cls(TARGET_ORACLE, predicate=predicate, label=label)

    def decide(self, point: Fraction) -> bool | None:
        """Membership of `point` in the target set; None when undecidable."""
        if self.kind == TARGET_CO_SINGLETON:
            return point != self.point
        if self.kind == TARGET_DENSE:
            return self.enumeration.member(point)
        if self.predicate is None:
            return None
        return self.predicate(point)

    def to_jsonable(self) -> dict:
        if self.kind == TARGET_CO_SINGLETON:
            return {"kind": self.kind, "point": format_rational(self.point)}
        if self.kind == TARGET_DENSE:
            return {"kind": self.kind, "enumeration": self.enumeration.name}
        return {"kind": self.kind, "label": self.label}

    @classmethod
    def from_jsonable(cls, data: dict) -> "TargetDescriptor":
        kind = data["kind"]
        if kind == TARGET_CO_SINGLETON:
            from .arith import parse_rational

            return cls.co_singleton(parse_rational(data["point"]))
        if kind == TARGET_DENSE:
            name = data.get("enumeration", STERN_BROCOT.name)
            if name not in ENUMERATIONS:
                raise ValueError(f"unknown enumeration {name!r}")
            return cls.dense(ENUMERATIONS[name])
        if kind == TARGET_ORACLE:
            # The callable does not survive serialization; decisions become None.
            return cls(TARGET_ORACLE, label=data.get("label", ""))
        raise ValueError(f"unknown target kind {kind!r}")


# ---------------------------------------------------------------------------
# Displacement arithmetic for the endpoint strategies


def displacement_closed_form(alpha: Fraction, beta: Fraction) -> Fraction:
    """Total guaranteed endpoint displacement: (1 - beta) * alpha / (1 - alpha*beta)."""
    alpha, beta = as_rational(alpha), as_rational(beta)
    return (1 - beta) * alpha / (1 - alpha * beta)


def displacement_partial_sum(alpha: Fraction, beta: Fraction, rounds: int) -> Fraction:
    """(alpha - alpha*beta) * sum_{k=0}^{rounds} (alpha*beta)^k, exactly."""
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    alpha, beta = as_rational(alpha), as_rational(beta)
    ab = alpha * beta
    if ab == 0:
        return alpha * (1 - beta)
    return (alpha - ab) * (1 - ab ** (rounds + 1)) / (1 - ab)


def escape_round_count(alpha: Fraction, beta: Fraction, cap: int = 4096) -> int:
    """Smallest K with displacement_partial_sum(alpha, beta, K) > beta - 1/2.

    Found by direct iteration; raises if the closed-form limit never clears
    the threshold (possible only outside the escape regime).
    """
    threshold = as_rational(beta) - _HALF
    if displacement_closed_form(alpha, beta) <= threshold:
        raise InapplicableStrategyError(
            f"displacement limit {format_rational(displacement_closed_form(alpha, beta))} "
            f"never exceeds {format_rational(threshold)}"
        )
    for k in range(cap):
        if displacement_partial_sum(alpha, beta, k) > threshold:
            return k
    raise RuntimeError(f"no escape within {cap} rounds")  # unreachable given the limit check


# ---------------------------------------------------------------------------
# Strategy interface and the concrete strategies


class Strategy:
    """Deterministic move rule for one player.

    Subclasses override propose(); applicable() gates parameters and
    certificate() reports what the strategy guarantees for the play so far.
    Strategies are pure functions of the state plus their frozen
    configuration, so they are safe to share across concurrent plays.
    """

    name: str = "strategy"
    player: Player

    def applicable(self, variant: GameVariant) -> bool:
        return True

    def opening(self, variant: GameVariant) -> Interval | None:
        """Bob-owned strategies may dictate their own first move."""
        return None

    def propose(self, state: GameState) -> Move:
        raise NotImplementedError

    def certificate(self, state: GameState) -> Certificate | None:
        return None

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} ({self.player.value})>"


class BobCenterPin(Strategy):
    """Bob recenters every move on a fixed point x, forcing the intersection
    to be {x}. Legal whenever beta <= 2 - 1/alpha (which forces alpha > 1/2)."""

    def __init__(self, point: Fraction = Fraction(0)):
        self.point = as_rational(point)
        self.player = Player.BOB
        self.name = f"bob-center-pin:{format_rational(self.point)}"

    def applicable(self, variant: GameVariant) -> bool:
        if variant.kind != SCHMIDT:
            return False
        # beta <= 2 - 1/alpha, cleared of denominators
        return variant.alpha * variant.beta <= 2 * variant.alpha - 1

    def opening(self, variant: GameVariant) -> Interval:
        return Interval(self.point - _HALF, self.point + _HALF)

    def propose(self, state: GameState) -> Move:
        if not state.history:
            return Move(Player.BOB, self.opening(state.variant))
        req = move_requirements(state)
        iv = place_subinterval(req.host, req.required_length, Anchor.centered(self.point))
        return Move(Player.BOB, iv)

    def certificate(self, state: GameState) -> Certificate:
        return Certificate(CERT_PINNED_POINT, point=self.point)


class AliceDensePin(Strategy):
    """Alice pins the first enumerated point that fits in the feasible center
    band of Bob's opening move, then recenters on it forever. Legal whenever
    alpha <= 2 - 1/beta (which forces beta > 1/2)."""

    def __init__(self, enumeration: RationalEnumeration = STERN_BROCOT):
        self.enumeration = enumeration
        self.player = Player.ALICE
        self.name = "alice-dense-pin"

    def applicable(self, variant: GameVariant) -> bool:
        if variant.kind != SCHMIDT:
            return False
        return variant.alpha * variant.beta <= 2 * variant.beta - 1

    def pinned_point(self, state: GameState) -> Fraction:
        """Recomputed from the opening move, so the rule stays stateless."""
        b0 = state.history[0].interval
        half_len = state.variant.alpha * b0.length / 2
        band = Interval(b0.lo + half_len, b0.hi - half_len)
        return self.enumeration.first_in(band)

    def propose(self, state: GameState) -> Move:
        req = move_requirements(state)
        y = self.pinned_point(state)
        iv = place_subinterval(req.host, req.required_length, Anchor.centered(y))
        return Move(Player.ALICE, iv)

    def certificate(self, state: GameState) -> Certificate | None:
        if not state.history:
            return None
        return Certificate(CERT_PINNED_POINT, point=self.pinned_point(state))


class EndpointPin(Strategy):
    """Share one endpoint of the opponent's move every round.

    side="right" shares the right endpoint, driving left endpoints rightward;
    side="left" is the mirror image. The certificate carries the realized
    displacement of the tracked endpoints, in units of the owner's first
    move length, against the threshold beta - 1/2.
    """

    def __init__(self, player: Player, side: str):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.player = player
        self.side = side
        self.name = f"{player.value}-endpoint-pin-{side}"

    def applicable(self, variant: GameVariant) -> bool:
        return variant.kind == SCHMIDT

    def propose(self, state: GameState) -> Move:
        req = move_requirements(state)
        anchor = Anchor.right() if self.side == "right" else Anchor.left()
        return Move(self.player, place_subinterval(req.host, req.required_length, anchor))

    def certificate(self, state: GameState) -> Certificate | None:
        own = [m.interval for m in state.history if m.player is self.player]
        if not own:
            return None
        scale = own[0].length
        if self.side == "right":
            moved = own[-1].lo - own[0].lo
        else:
            moved = own[0].hi - own[-1].hi
        threshold = state.variant.beta - _HALF
        return Certificate(
            CERT_ESCAPE_BOUND, partial_sum=moved / scale, threshold=threshold
        )


class AlignEdge(Strategy):
    """Always play flush against one edge of the host (an aligned-extreme
    adversary). For Banach-Mazur the move takes half the allowed length; for
    a McMullen Bob reply the leftmost (or rightmost) feasible gap is used."""

    def __init__(self, player: Player, side: str):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.player = player
        self.side = side
        self.name = f"align-{side}"

    def propose(self, state: GameState) -> Move:
        req = move_requirements(state)
        length = req.required_length
        if length is None:
            length = req.max_length / 2
        region = req.regions[0] if self.side == "left" else req.regions[-1]
        anchor = Anchor.left() if self.side == "left" else Anchor.right()
        return Move(self.player, place_subinterval(region, length, anchor))


class MidPlacement(Strategy):
    """Centered placements: the middle third for Banach-Mazur movers, the
    centered interval of the required exact length otherwise (centered in
    the widest gap for a McMullen Bob reply)."""

    def __init__(self, player: Player):
        self.player = player
        self.name = "split-thirds"

    def propose(self, state: GameState) -> Move:
        req = move_requirements(state)
        if req.required_length is None:
            length = min(req.host.length / 3, req.max_length)
            region = req.host
        else:
            length = req.required_length
            region = max(req.regions, key=lambda g: (g.length, -g.lo))
        return Move(
            self.player, place_subinterval(region, length, Anchor.centered(region.center))
        )


class RandomLegal(Strategy):
    """Seeded random legal placements. The draw is a pure function of the
    seed and the state (hash of the history length and host endpoints), so
    identical inputs replay identically across processes."""

    QUANTUM = 1024

    def __init__(self, player: Player, seed: int):
        self.player = player
        self.seed = int(seed)
        self.name = f"random-legal:{self.seed}"

    def _draw(self, state: GameState, tag: str, buckets: int) -> int:
        host = state.last_interval
        key = f"{self.seed}:{tag}:{len(state.history)}:{host.lo}:{host.hi}"
        digest = hashlib.sha256(key.encode()).digest()
        return int.from_bytes(digest[:8], "big") % buckets

    def propose(self, state: GameState) -> Move:
        req = move_requirements(state)
        length = req.required_length
        if length is None:
            steps = self._draw(state, "len", self.QUANTUM) + 1
            length = req.max_length * steps / (2 * self.QUANTUM)
        regions = [g for g in req.regions if g.length >= length]
        region = regions[self._draw(state, "region", len(regions))]
        span = region.length - length
        offset = span * self._draw(state, "offset", self.QUANTUM + 1) / self.QUANTUM
        return Move(self.player, place_subinterval(region, length, Anchor.offset(offset)))


def bob_center_pin(point: Fraction = Fraction(0)) -> BobCenterPin:
    return BobCenterPin(point)


def alice_dense_pin(enumeration: RationalEnumeration = STERN_BROCOT) -> AliceDensePin:
    return AliceDensePin(enumeration)


def bob_endpoint_pin(side: str) -> EndpointPin:
    return EndpointPin(Player.BOB, side)


def strategy_from_id(identifier: str, player: Player) -> Strategy:
    """Resolve a stable strategy identifier, e.g. "bob-center-pin:1/3",
    "align-left", "random-legal:42"."""
    base, _, arg = identifier.partition(":")
    if base == "bob-center-pin":
        if player is not Player.BOB:
            raise UnknownStrategyError("bob-center-pin plays for bob")
        from .arith import parse_rational

        return BobCenterPin(parse_rational(arg) if arg else Fraction(0))
    if base == "alice-dense-pin":
        if player is not Player.ALICE:
            raise UnknownStrategyError("alice-dense-pin plays for alice")
        return AliceDensePin()
    if base == "bob-endpoint-pin-left":
        return EndpointPin(Player.BOB, "left")
    if base == "bob-endpoint-pin-right":
        return EndpointPin(Player.BOB, "right")
    if base == "align-left":
        return AlignEdge(player, "left")
    if base == "align-right":
        return AlignEdge(player, "right")
    if base == "split-thirds":
        return MidPlacement(player)
    if base == "random-legal":
        return RandomLegal(player, int(arg) if arg else 0)
    raise UnknownStrategyError(f"unknown strategy identifier {identifier!r}")


STRATEGY_IDS = (
    "bob-center-pin",
    "alice-dense-pin",
    "bob-endpoint-pin-left",
    "bob-endpoint-pin-right",
    "split-thirds",
    "align-left",
    "align-right",
    "random-legal:<seed>",
)


# ---------------------------------------------------------------------------
# Splitting and the play driver


def splitting_responses(state: GameState) -> tuple[Move, Move]:
    """Two legal moves with strictly disjoint intervals for the mover.

    Banach-Mazur movers use thirds of the host; an exact-ratio mover ratio
    rho splits into its aligned extremes iff rho < 1/2; a McMullen Bob reply
    splits across two feasible gaps, or within one gap that strictly fits
    two copies. Raises CannotSplitError otherwise.
    """
    req = move_requirements(state)
    if req.host is None:
        raise CannotSplitError("no host interval yet: the opening move is unconstrained")
    player = state.to_move
    if req.required_length is None:
        length = min(req.host.length / 3, req.max_length)
        first = place_subinterval(req.host, length, Anchor.left())
        second = place_subinterval(req.host, length, Anchor.right())
        return Move(player, first), Move(player, second)

    length = req.required_length
    if state.variant.kind == MCMULLEN and player is Player.BOB:
        feasible = [g for g in req.regions if g.length >= length]
        if len(feasible) >= 2:
            first = place_subinterval(feasible[0], length, Anchor.left())
            second = place_subinterval(feasible[-1], length, Anchor.right())
            return Move(player, first), Move(player, second)
        if feasible and feasible[0].length > 2 * length:
            g = feasible[0]
            return (
                Move(player, place_subinterval(g, length, Anchor.left())),
                Move(player, place_subinterval(g, length, Anchor.right())),
            )
        raise CannotSplitError("no two disjoint replies avoid the obstacle")

    if 2 * length >= req.host.length:
        ratio = length / req.host.length
        raise CannotSplitError(
            f"mover ratio {format_rational(ratio)} >= 1/2 leaves no two disjoint moves"
        )
    first = place_subinterval(req.host, length, Anchor.left())
    second = place_subinterval(req.host, length, Anchor.right())
    return Move(player, first), Move(player, second)


def _checked_apply(state: GameState, strategy: Strategy) -> GameState:
    move = strategy.propose(state)
    violation = check_legal(state, move)
    if violation is not None:
        raise StrategyFaultError(strategy.name, violation, state)
    return apply_move(state, move)


def decide_verdict(
    certificate: Certificate | None, target: TargetDescriptor | None
) -> str:
    """Certificate plus target decide the verdict; anything else is honest
    ignorance at a finite horizon."""
    if (
        certificate is None
        or certificate.kind != CERT_PINNED_POINT
        or target is None
    ):
        return VERDICT_UNDECIDED
    membership = target.decide(certificate.point)
    if membership is True:
        return VERDICT_ALICE_WINS
    if membership is False:
        return VERDICT_BOB_WINS
    return VERDICT_UNDECIDED


def pick_certificate(
    bob: Strategy, alice: Strategy, state: GameState
) -> Certificate | None:
    """Prefer a pinned point from either side, then any escape bound."""
    certs = [c for c in (bob.certificate(state), alice.certificate(state)) if c]
    for cert in certs:
        if cert.kind == CERT_PINNED_POINT:
            return cert
    return certs[0] if certs else None


def play(
    variant: GameVariant,
    bob: Strategy,
    alice: Strategy,
    horizon: int,
    b0: Interval | None = None,
    target: TargetDescriptor | None = None,
) -> Transcript:
    """Run `horizon` full rounds (one Alice move plus one Bob reply each)
    after Bob's opening, and adjudicate by certificate.

    Identical inputs produce bit-identical transcripts. A strategy that
    proposes an illegal move aborts with full context; that is a contract
    violation in the strategy, never a game outcome.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    for strategy, side in ((bob, Player.BOB), (alice, Player.ALICE)):
        if strategy.player is not side:
            raise InapplicableStrategyError(
                f"{strategy.name} plays {strategy.player.value}, not {side.value}"
            )
        if not strategy.applicable(variant):
            raise InapplicableStrategyError(
                f"{strategy.name} is not applicable to these parameters"
            )
    state = initial_state(variant)
    opening = b0 if b0 is not None else bob.opening(variant)
    if opening is None:
        raise ValueError("b0 required: the bob strategy has no opening preference")
    first = Move(Player.BOB, opening)
    violation = check_legal(state, first)
    if violation is not None:
        raise StrategyFaultError(bob.name, violation, state)
    state = apply_move(state, first)
    for _ in range(horizon):
        state = _checked_apply(state, alice)
        state = _checked_apply(state, bob)
    state = state.finish()

    certificate = pick_certificate(bob, alice, state)
    if certificate is not None and certificate.kind == CERT_PINNED_POINT:
        if not bracket(state).contains_point(certificate.point):
            raise StrategyFaultError(
                f"{bob.name}/{alice.name}",
                f"certificate point {format_rational(certificate.point)} "
                f"escaped the bracket {bracket(state)}",
                state,
            )
    verdict = decide_verdict(certificate, target)
    return Transcript(
        variant=variant,
        moves=state.history,
        horizon=horizon,
        verdict=verdict,
        certificate=certificate,
        target=None if target is None else target.to_jsonable(),
    )
