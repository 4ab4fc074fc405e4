"""Exception hierarchy shared by every layer of the package."""


class IntervalGameError(Exception):
    """Base class for all errors raised by this package."""

    code = "interval-game-error"


class PlacementInfeasibleError(IntervalGameError):
    """A requested subinterval placement does not fit inside its host."""

    code = "placement-infeasible"


class NotContainedError(IntervalGameError):
    """gap_components called with a removed interval not inside the outer one."""

    code = "not-contained"


class BadParametersError(IntervalGameError):
    """Game parameters outside their legal range."""

    code = "bad-parameters"


class FinishedGameError(IntervalGameError):
    """A move was offered to a game that already reached its horizon."""

    code = "finished"


class EmptyHistoryError(IntervalGameError):
    code = "empty-history"


class IllegalMoveError(IntervalGameError):
    """apply() was given a move that fails check_legal; carries the Violation."""

    code = "illegal-move"

    def __init__(self, violation):
        super().__init__(str(violation))
        self.violation = violation


class NoLegalReplyError(IntervalGameError):
    code = "no-legal-reply"


class InapplicableStrategyError(IntervalGameError):
    code = "inapplicable-parameters"


class CannotSplitError(IntervalGameError):
    code = "cannot-split"


class StrategyFaultError(IntervalGameError):
    """A strategy proposed an illegal move; this is a bug in the strategy."""

    code = "strategy-produced-illegal-move"

    def __init__(self, strategy_name, violation, state):
        detail = (
            f"strategy {strategy_name!r} produced an illegal move: {violation}; "
            f"history length {len(state.history)}"
        )
        super().__init__(detail)
        self.strategy_name = strategy_name
        self.violation = violation
        self.state = state


class BranchCollisionError(IntervalGameError):
    code = "branch-collision"


class DepthExceededError(IntervalGameError):
    code = "depth-exceeded"


class UnknownWordError(IntervalGameError):
    code = "unknown-word"


class TreeInvariantError(IntervalGameError):
    """A strategy tree failed re-verification; names the offending words."""

    code = "invariant-violation"

    def __init__(self, message, words=()):
        super().__init__(message)
        self.words = tuple(words)


class RegimePreconditionError(IntervalGameError):
    code = "regime-precondition"


class ChainStepError(IntervalGameError):
    code = "chain-step-failed"


class TranscriptFormatError(IntervalGameError):
    code = "transcript-format"


class UnknownSessionError(IntervalGameError):
    code = "unknown-session"


class NotYourTurnError(IntervalGameError):
    code = "not-your-turn"


class UnknownStrategyError(IntervalGameError):
    code = "unknown-strategy"
