"""Exact-arithmetic nested-interval games on the real line.

Rules for the Banach-Mazur, Schmidt, and McMullen variants; the pinning and
endpoint strategies with their certificates; dyadic strategy trees; an exact
parameter-regime classifier; and a playable session service. All arithmetic
is exact rational, end to end.
"""

from .arith import (
    Anchor,
    Interval,
    Rational,
    as_rational,
    format_rational,
    gap_components,
    parse_rational,
    place_subinterval,
)
from .cantor import (
    LevelReport,
    StrategyTree,
    build_tree,
    code_point,
    tree_to_jsonable,
    verify_tree,
)
from .engine import (
    BANACH_MAZUR,
    MCMULLEN,
    SCHMIDT,
    GameState,
    GameVariant,
    Move,
    MoveRequirements,
    Player,
    Violation,
    ViolationCode,
    apply_move,
    bracket,
    check_legal,
    initial_state,
    mcmullen_reply_witness,
    move_requirements,
)
from .regime import (
    ChainReport,
    RegimeVerdict,
    classify,
    mcmullen_param_ok,
    verify_chain,
)
from .session import SessionManager, TranscriptStore, hint_legal
from .strategies import (
    AliceDensePin,
    AlignEdge,
    BobCenterPin,
    EndpointPin,
    MidPlacement,
    RandomLegal,
    Strategy,
    TargetDescriptor,
    alice_dense_pin,
    bob_center_pin,
    bob_endpoint_pin,
    displacement_closed_form,
    displacement_partial_sum,
    escape_round_count,
    play,
    splitting_responses,
    strategy_from_id,
)
from .transcript import Certificate, Transcript, replay

__version__ = "0.1.0"
