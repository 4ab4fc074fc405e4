"""Command-line surface: play, simulate, tree, classify, chain, serve."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .arith import Interval, format_rational, parse_rational
from .cantor import BRANCHER_AUTO, build_tree, level_table, tree_to_jsonable, verify_tree
from .engine import (
    BANACH_MAZUR,
    MCMULLEN,
    SCHMIDT,
    GameVariant,
    Move,
    Player,
    apply_move,
    bracket,
    check_legal,
    initial_state,
)
from .errors import IntervalGameError
from .regime import classify, verify_chain
from .session import hint_legal
from .strategies import (
    TargetDescriptor,
    decide_verdict,
    pick_certificate,
    play,
    strategy_from_id,
)
from .transcript import SCHEMA_VERSION, Transcript


def _variant_from_args(args: argparse.Namespace) -> GameVariant:
    if args.variant == SCHMIDT:
        if args.alpha is None or args.beta is None:
            raise IntervalGameError("schmidt requires --alpha and --beta")
        return GameVariant.schmidt(parse_rational(args.alpha), parse_rational(args.beta))
    if args.variant == MCMULLEN:
        if args.beta is None:
            raise IntervalGameError("mcmullen requires --beta")
        return GameVariant.mcmullen(parse_rational(args.beta))
    if args.no_shrink:
        return GameVariant.banach_mazur(shrink=None)
    if args.shrink is not None:
        return GameVariant.banach_mazur(shrink=parse_rational(args.shrink))
    return GameVariant.banach_mazur()


def _target_from_arg(spec: str | None) -> TargetDescriptor | None:
    if spec is None:
        return None
    kind, _, arg = spec.partition(":")
    if kind == "co-singleton":
        return TargetDescriptor.co_singleton(parse_rational(arg or "0"))
    if kind == "dense":
        return TargetDescriptor.dense()
    raise IntervalGameError(f"unknown target spec {spec!r} (co-singleton:<p/q> | dense)")


def _b0_from_args(args: argparse.Namespace) -> Interval | None:
    if args.b0_lo is None and args.b0_hi is None:
        return None
    if args.b0_lo is None or args.b0_hi is None:
        raise IntervalGameError("--b0-lo and --b0-hi go together")
    return Interval(parse_rational(args.b0_lo), parse_rational(args.b0_hi))


def _add_variant_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--variant", choices=[BANACH_MAZUR, SCHMIDT, MCMULLEN], default=SCHMIDT
    )
    parser.add_argument("--alpha", help='Schmidt ratio for Alice, e.g. "4/5"')
    parser.add_argument("--beta", help='ratio for Bob (Schmidt) or both (McMullen)')
    parser.add_argument("--shrink", help="Banach-Mazur per-round cap on Bob (default 1/2)")
    parser.add_argument(
        "--no-shrink", action="store_true", help="disable the Banach-Mazur shrink rule"
    )
    parser.add_argument("--b0-lo", help="opening interval left endpoint")
    parser.add_argument("--b0-hi", help="opening interval right endpoint")


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_classify(args: argparse.Namespace) -> int:
    verdict = classify(parse_rational(args.alpha), parse_rational(args.beta))
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "alpha": args.alpha,
            "beta": args.beta,
            "regime": verdict.regime,
            "margins": verdict.margins_as_strings(),
        },
        args.out,
    )
    return 0


def cmd_chain(args: argparse.Namespace) -> int:
    report = verify_chain(parse_rational(args.alpha), parse_rational(args.beta))
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "alpha": args.alpha,
            "beta": args.beta,
            "steps": report.as_rows(),
            "conclusion_margin": format_rational(report.conclusion_margin),
        },
        args.out,
    )
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    variant = _variant_from_args(args)

    def with_seed(identifier: str) -> str:
        # a bare random-legal id picks up --seed
        if identifier == "random-legal" and args.seed is not None:
            return f"random-legal:{args.seed}"
        return identifier

    bob = strategy_from_id(with_seed(args.bob), Player.BOB)
    alice = strategy_from_id(with_seed(args.alice), Player.ALICE)
    transcript = play(
        variant,
        bob,
        alice,
        horizon=args.horizon,
        b0=_b0_from_args(args),
        target=_target_from_arg(args.target),
    )
    _emit(transcript.to_jsonable(), args.out)
    return 0


def cmd_tree(args: argparse.Namespace) -> int:
    variant = _variant_from_args(args)
    pinned = strategy_from_id(args.pinned, Player(args.pinned_player))
    tree = build_tree(
        variant,
        pinned,
        depth=args.depth,
        b0=_b0_from_args(args),
        brancher=args.brancher,
    )
    reports = verify_tree(tree)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "tree": tree_to_jsonable(tree),
        "levels": level_table(reports),
    }
    _emit(payload, args.out)
    for row in level_table(reports):
        print(
            f"level {row['level']}: {row['count']} nodes, "
            f"max diameter {row['max_diameter']}",
            file=sys.stderr,
        )
    return 0


def cmd_play(args: argparse.Namespace) -> int:
    """Interactive terminal play: the human types 'lo hi' each turn."""
    variant = _variant_from_args(args)
    human = Player(args.side)
    engine = strategy_from_id(args.engine, human.opponent)
    if not engine.applicable(variant):
        raise IntervalGameError(f"{engine.name} is not applicable to these parameters")
    target = _target_from_arg(args.target)
    state = initial_state(variant)
    if human is not Player.BOB:
        b0 = _b0_from_args(args) or engine.opening(variant)
        if b0 is None:
            raise IntervalGameError("--b0-lo/--b0-hi required for this engine strategy")
        state = apply_move(state, Move(Player.BOB, b0))
        print(f"engine ({engine.name}) opens with {b0}")
    total_moves = 1 + 2 * args.horizon
    while len(state.history) < total_moves:
        if state.to_move is human:
            hint = hint_legal(state)
            print(f"your turn ({human.value}); hint: {json.dumps(hint)}")
            line = input("move lo hi> ").strip()
            if not line:
                print("empty input, try again")
                continue
            try:
                lo_text, hi_text = line.split()
                move = Move(human, Interval(parse_rational(lo_text), parse_rational(hi_text)))
            except (ValueError, IntervalGameError) as exc:
                print(f"bad input: {exc}")
                continue
            violation = check_legal(state, move)
            if violation is not None:
                print(f"illegal: {violation}")
                continue
            state = apply_move(state, move)
        else:
            move = engine.propose(state)
            state = apply_move(state, move)
            print(f"engine plays {move.interval}")
    state = state.finish()
    cert = engine.certificate(state)
    verdict = decide_verdict(cert, target)
    print(f"bracket: {bracket(state)}")
    print(f"verdict: {verdict}")
    if cert is not None:
        print(f"certificate: {json.dumps(cert.to_jsonable())}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(store_dir=args.store)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intervalgames",
        description="Exact-arithmetic nested-interval games: rules, strategies, trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="regime of a Schmidt parameter pair")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("chain", help="machine-check the escape-bound inequality chain")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("simulate", help="strategy vs strategy, emits a transcript")
    _add_variant_flags(p)
    p.add_argument("--bob", required=True, help='e.g. "bob-center-pin:0"')
    p.add_argument("--alice", required=True, help='e.g. "align-left"')
    p.add_argument("--horizon", type=int, default=10)
    p.add_argument("--target", help='"co-singleton:<p/q>" or "dense"')
    p.add_argument("--seed", type=int, default=0, help="seed for random-legal ids")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("tree", help="build and verify a dyadic strategy tree")
    _add_variant_flags(p)
    p.add_argument("--pinned", required=True, help="strategy id for the pinned player")
    p.add_argument("--pinned-player", choices=["bob", "alice"], default="alice")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--brancher", default=BRANCHER_AUTO)
    p.add_argument("--out")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("play", help="interactive terminal session")
    _add_variant_flags(p)
    p.add_argument("--side", choices=["bob", "alice"], default="alice")
    p.add_argument("--engine", required=True, help="engine strategy id")
    p.add_argument("--horizon", type=int, default=5)
    p.add_argument("--target", help='"co-singleton:<p/q>" or "dense"')
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("serve", help="start the HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8631)
    p.add_argument("--store", default="./transcripts")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IntervalGameError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
