"""Finite-depth dyadic strategy trees.

Fix one player's strategy and branch the other player two ways at every
node. The result is a complete binary tree of game positions indexed by
binary words: children nest inside their parents, same-level intervals are
pairwise disjoint, and diameters shrink strictly along every path. Each
node keeps its full move fragment so verification can re-check legality
from scratch; the tree is evidence, not trust.

Branch rules:

* "split": the branching player has two strictly disjoint legal moves
  (aligned extremes, thirds for Banach-Mazur); one round per node.
* "endpoint": Schmidt with branching ratio >= 1/2, where no single move
  splits. Branch 0 runs the left-endpoint strategy, branch 1 the right,
  each for the smallest K rounds making the two branch brackets straddle
  the node midpoint with a gap of at least
  (displacement_partial_sum(alpha, beta, K) - (beta - 1/2)) times the node
  length. K is recorded on the node.
* "obstacles": McMullen with Bob pinned. Branch 0 plays the centered
  obstacle, branch 1 the obstacle offset beta*L/2 from the left edge; with
  Bob replying left-aligned in the leftmost feasible gap the two replies
  are strictly disjoint for every beta < 1/3.

Construction is deterministic; rebuilding with the same inputs is
bit-identical. Fragments are independent given the parent, so levels could
be built or verified concurrently; nothing here mutates shared state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import Anchor, Interval, format_rational, place_subinterval
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
    BranchCollisionError,
    DepthExceededError,
    TreeInvariantError,
    UnknownWordError,
)
from .strategies import (
    EndpointPin,
    Strategy,
    displacement_partial_sum,
    splitting_responses,
)

DEFAULT_MAX_DEPTH = 14
MAX_SEGMENT_ROUNDS = 64

BRANCHER_SPLIT = "split"
BRANCHER_ENDPOINT = "endpoint"
BRANCHER_OBSTACLES = "obstacles"
BRANCHER_AUTO = "auto"


def is_binary_word(word: str) -> bool:
    return isinstance(word, str) and all(ch in "01" for ch in word)


@dataclass(frozen=True)
class TreeNode:
    word: str
    interval: Interval
    moves: tuple[Move, ...]  # full fragment from the start of play
    rounds: int  # branch segment length that produced this node


@dataclass(frozen=True)
class StrategyTree:
    variant: GameVariant
    pinned_name: str
    pinned_player: Player
    brancher: str
    depth: int
    nodes: dict[str, TreeNode]

    @property
    def root(self) -> TreeNode:
        return self.nodes[""]


@dataclass(frozen=True)
class LevelReport:
    level: int
    count: int
    max_diameter: Fraction
    total_length: Fraction


def _resolve_brancher(variant: GameVariant, pinned: Strategy, brancher: str) -> str:
    if brancher != BRANCHER_AUTO:
        return brancher
    adversary = pinned.player.opponent
    if variant.kind == MCMULLEN and pinned.player is Player.BOB:
        return BRANCHER_OBSTACLES
    if variant.kind == SCHMIDT:
        ratio = variant.alpha if adversary is Player.ALICE else variant.beta
        if 2 * ratio >= 1:
            return BRANCHER_ENDPOINT
    return BRANCHER_SPLIT


def _pinned_reply(state: GameState, pinned: Strategy) -> GameState:
    move = pinned.propose(state)
    violation = check_legal(state, move)
    if violation is not None:
        raise BranchCollisionError(
            f"pinned strategy {pinned.name} proposed an illegal move: {violation}"
        )
    return apply_move(state, move)


def _apply_branch_move(state: GameState, move: Move) -> GameState:
    violation = check_legal(state, move)
    if violation is not None:
        raise BranchCollisionError(f"brancher proposed an illegal move: {violation}")
    return apply_move(state, move)


def _split_children(
    state: GameState, pinned: Strategy
) -> tuple[tuple[GameState, int], tuple[GameState, int]]:
    left_move, right_move = splitting_responses(state)
    out = []
    for move in (left_move, right_move):
        child = _apply_branch_move(state, move)
        child = _pinned_reply(child, pinned)
        out.append((child, 1))
    return out[0], out[1]


def _endpoint_children(state, pinned, variant):
    """Grow both endpoint branches until they straddle the node midpoint
    with at least the escape-margin gap."""
    mid = bracket(state).center
    node_length = bracket(state).length
    threshold = variant.beta - Fraction(1, 2)
    branches = {
        "left": EndpointPin(pinned.player.opponent, "left"),
        "right": EndpointPin(pinned.player.opponent, "right"),
    }
    states = {"left": state, "right": state}
    for rounds in range(1, MAX_SEGMENT_ROUNDS + 1):
        for side, adversary in branches.items():
            s = _apply_branch_move(states[side], adversary.propose(states[side]))
            states[side] = _pinned_reply(s, pinned)
        left_bracket = bracket(states["left"])
        right_bracket = bracket(states["right"])
        margin = displacement_partial_sum(variant.alpha, variant.beta, rounds) - threshold
        gap = right_bracket.lo - left_bracket.hi
        if (
            left_bracket.hi < mid
            and right_bracket.lo > mid
            and gap >= margin * node_length
        ):
            return (states["left"], rounds), (states["right"], rounds)
    raise BranchCollisionError(
        f"endpoint branches failed to separate within {MAX_SEGMENT_ROUNDS} rounds"
    )


def _obstacle_children(state, pinned, variant):
    """McMullen branching via two complementary obstacles for the adversary
    Alice; the pinned Bob replies make strictly disjoint child brackets."""
    host = bracket(state)
    length = variant.beta * host.length
    centered = place_subinterval(host, length, Anchor.centered(host.center))
    offset = place_subinterval(host, length, Anchor.offset(length / 2))
    out = []
    for obstacle in (centered, offset):
        child = _apply_branch_move(state, Move(Player.ALICE, obstacle))
        child = _pinned_reply(child, pinned)
        out.append((child, 1))
    return out[0], out[1]


def build_tree(
    variant: GameVariant,
    pinned: Strategy,
    depth: int,
    b0: Interval | None = None,
    brancher: str = BRANCHER_AUTO,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> StrategyTree:
    """Build the complete binary tree of positions down to `depth`.

    The pinned player's moves always come from their strategy; the other
    player branches. The root position is Bob's opening (plus the pinned
    Alice's first reply when Alice is pinned), so branching starts with the
    adversary to move.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if depth > max_depth:
        raise DepthExceededError(f"depth {depth} exceeds the maximum {max_depth}")
    rule = _resolve_brancher(variant, pinned, brancher)

    state = initial_state(variant)
    if pinned.player is Player.BOB:
        opening = b0 if b0 is not None else pinned.opening(variant)
        if opening is None:
            raise ValueError("b0 required: the pinned bob strategy has no opening")
        state = _apply_branch_move(state, Move(Player.BOB, opening))
    else:
        opening = b0 if b0 is not None else Interval(Fraction(0), Fraction(1))
        state = _apply_branch_move(state, Move(Player.BOB, opening))
        state = _pinned_reply(state, pinned)

    nodes: dict[str, TreeNode] = {}
    nodes[""] = TreeNode("", bracket(state), state.history, 0)
    frontier: list[tuple[str, GameState]] = [("", state)]
    for _ in range(depth):
        next_frontier: list[tuple[str, GameState]] = []
        for word, node_state in frontier:
            if rule == BRANCHER_SPLIT:
                (left, lr), (right, rr) = _split_children(node_state, pinned)
            elif rule == BRANCHER_ENDPOINT:
                (left, lr), (right, rr) = _endpoint_children(node_state, pinned, variant)
            elif rule == BRANCHER_OBSTACLES:
                (left, lr), (right, rr) = _obstacle_children(node_state, pinned, variant)
            else:
                raise ValueError(f"unknown brancher {rule!r}")
            lb, rb = bracket(left), bracket(right)
            if not lb.disjoint_from(rb):
                raise BranchCollisionError(
                    f"branches of {word!r} overlap: {lb} vs {rb}"
                )
            for bit, child_state, rounds in (("0", left, lr), ("1", right, rr)):
                child_word = word + bit
                nodes[child_word] = TreeNode(
                    child_word, bracket(child_state), child_state.history, rounds
                )
                next_frontier.append((child_word, child_state))
        frontier = next_frontier
    return StrategyTree(
        variant=variant,
        pinned_name=pinned.name,
        pinned_player=pinned.player,
        brancher=rule,
        depth=depth,
        nodes=nodes,
    )


def verify_tree(tree: StrategyTree) -> list[LevelReport]:
    """Recheck every invariant from raw node data and report per level.

    Checks: complete levels of 2^level valid words; child-in-parent nesting
    with strictly smaller diameter; pairwise disjointness across each level;
    parent fragments are strict prefixes of child fragments; every fragment
    replays legally from the initial state and brackets to the recorded
    interval. Raises TreeInvariantError naming the offending words.
    """
    by_level: dict[int, list[TreeNode]] = {}
    for word, node in tree.nodes.items():
        if not is_binary_word(word) or node.word != word:
            raise TreeInvariantError(f"malformed word {word!r}", [word])
        by_level.setdefault(len(word), []).append(node)

    reports: list[LevelReport] = []
    for level in range(tree.depth + 1):
        members = by_level.get(level, [])
        if len(members) != 2**level or len({n.word for n in members}) != len(members):
            raise TreeInvariantError(
                f"level {level} has {len(members)} nodes, expected {2 ** level}",
                [n.word for n in members],
            )
        ordered = sorted(members, key=lambda n: (n.interval.lo, n.interval.hi))
        for a, b in zip(ordered, ordered[1:]):
            if not a.interval.disjoint_from(b.interval):
                raise TreeInvariantError(
                    f"level {level} intervals overlap: {a.word!r} {a.interval} "
                    f"vs {b.word!r} {b.interval}",
                    [a.word, b.word],
                )
        reports.append(
            LevelReport(
                level=level,
                count=len(members),
                max_diameter=max(n.interval.length for n in members),
                total_length=sum((n.interval.length for n in members), Fraction(0)),
            )
        )

    for word, node in tree.nodes.items():
        if word == "":
            continue
        parent = tree.nodes.get(word[:-1])
        if parent is None:
            raise TreeInvariantError(f"missing parent of {word!r}", [word])
        if not parent.interval.contains(node.interval):
            raise TreeInvariantError(
                f"{word!r} {node.interval} escapes its parent {parent.interval}",
                [word, parent.word],
            )
        if not node.interval.length < parent.interval.length:
            raise TreeInvariantError(
                f"diameter does not strictly decrease at {word!r}", [word, parent.word]
            )
        if node.moves[: len(parent.moves)] != parent.moves or len(node.moves) <= len(
            parent.moves
        ):
            raise TreeInvariantError(
                f"fragment of {word!r} does not extend its parent's", [word, parent.word]
            )

    for word, node in tree.nodes.items():
        state = initial_state(tree.variant)
        for move in node.moves:
            violation = check_legal(state, move)
            if violation is not None:
                raise TreeInvariantError(
                    f"fragment of {word!r} contains an illegal move: {violation}",
                    [word],
                )
            state = apply_move(state, move)
        if bracket(state) != node.interval:
            raise TreeInvariantError(
                f"{word!r} records {node.interval} but its fragment brackets "
                f"to {bracket(state)}",
                [word],
            )
    return reports


def code_point(tree: StrategyTree, word: str) -> Interval:
    """The finite-depth bracket of every point coded by extensions of `word`."""
    if not is_binary_word(word) or len(word) > tree.depth or word not in tree.nodes:
        raise UnknownWordError(f"word {word!r} is not in this depth-{tree.depth} tree")
    return tree.nodes[word].interval


def tree_to_jsonable(tree: StrategyTree) -> dict:
    """Export: word -> {lo, hi, rounds}, plus construction metadata."""
    return {
        "variant": tree.variant.kind,
        "parameters": {
            k: format_rational(v) for k, v in tree.variant.parameters().items()
        },
        "pinned": tree.pinned_name,
        "pinned_player": tree.pinned_player.value,
        "brancher": tree.brancher,
        "depth": tree.depth,
        "nodes": {
            word: {
                "lo": format_rational(node.interval.lo),
                "hi": format_rational(node.interval.hi),
                "rounds": node.rounds,
            }
            for word, node in sorted(tree.nodes.items())
        },
    }


def level_table(reports: list[LevelReport]) -> list[dict]:
    return [
        {
            "level": r.level,
            "count": r.count,
            "max_diameter": format_rational(r.max_diameter),
            "total_length": format_rational(r.total_length),
        }
        for r in reports
    ]
