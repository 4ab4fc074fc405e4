import threading
from fractions import Fraction as F

import pytest

from intervalgames.arith import Interval
from intervalgames.engine import GameVariant, Player
from intervalgames.errors import (
    BadParametersError,
    InapplicableStrategyError,
    NotYourTurnError,
    UnknownSessionError,
)
from intervalgames.session import (
    STATUS_AWAITING_HUMAN,
    STATUS_FINISHED,
    SessionManager,
    TranscriptStore,
    hint_legal,
)
from intervalgames.strategies import TargetDescriptor
from intervalgames.engine import apply_move, initial_state, Move


@pytest.fixture()
def manager(tmp_path):
    return SessionManager(TranscriptStore(tmp_path / "store"))


def make_alice_session(manager, horizon=10):
    return manager.create_session(
        variant=GameVariant.schmidt(F(4, 5), F(1, 2)),
        human_side=Player.ALICE,
        horizon=horizon,
        bob_strategy="bob-center-pin:0",
        target=TargetDescriptor.co_singleton(F(0)),
    )


class TestCreate:
    def test_engine_opens_for_human_alice(self, manager):
        session = make_alice_session(manager)
        assert session.status == STATUS_AWAITING_HUMAN
        assert len(session.state.history) == 1
        assert session.state.history[0].interval == Interval(F(-1, 2), F(1, 2))

    def test_human_bob_opens_himself(self, manager):
        session = manager.create_session(
            variant=GameVariant.schmidt(F(1, 2), F(4, 5)),
            human_side=Player.BOB,
            horizon=3,
            alice_strategy="alice-dense-pin",
        )
        assert session.state.history == ()
        assert session.status == STATUS_AWAITING_HUMAN

    def test_inapplicable_strategy(self, manager):
        with pytest.raises(InapplicableStrategyError):
            manager.create_session(
                variant=GameVariant.schmidt(F(3, 5), F(1, 2)),
                human_side=Player.BOB,
                horizon=3,
                alice_strategy="alice-dense-pin",
            )

    def test_bad_parameters(self, manager):
        with pytest.raises(BadParametersError):
            manager.create_session(
                variant=GameVariant(kind="mcmullen", beta=F(1, 3)),
                human_side=Player.ALICE,
                horizon=3,
                bob_strategy="align-left",
            )

    def test_autoplay_when_no_human(self, manager):
        session = manager.create_session(
            variant=GameVariant.schmidt(F(4, 5), F(1, 2)),
            human_side=None,
            horizon=6,
            bob_strategy="bob-center-pin:0",
            alice_strategy="align-left",
            target=TargetDescriptor.co_singleton(F(0)),
        )
        assert session.status == STATUS_FINISHED
        assert session.verdict == "bob-wins"
        assert manager.replay_check(session.id)


class TestSubmit:
    def test_legal_move_gets_engine_reply(self, manager):
        session = make_alice_session(manager)
        view = manager.submit_move(session.id, Interval(F(-1, 2), F(3, 10)))
        assert view["violation"] is None
        assert len(view["moves"]) == 3
        assert view["moves"][-1] == {"player": "bob", "lo": "-1/5", "hi": "1/5"}

    def test_illegal_move_reports_violation_and_keeps_state(self, manager):
        session = make_alice_session(manager)
        before = session.state
        view = manager.submit_move(session.id, Interval(F(-1, 2), F(1, 4)))
        assert view["violation"]["code"] == "wrong-length"
        assert session.state == before
        assert len(view["moves"]) == 1

    def test_not_your_turn_after_finish(self, manager):
        session = make_alice_session(manager, horizon=1)
        view = manager.submit_move(session.id, Interval(F(-1, 2), F(3, 10)))
        assert view["status"] == STATUS_FINISHED
        with pytest.raises(NotYourTurnError):
            manager.submit_move(session.id, Interval(F(-1, 5), F(1, 5)))

    def test_unknown_session(self, manager):
        with pytest.raises(UnknownSessionError):
            manager.submit_move("nope", Interval(0, 1))

    def test_finished_session_has_verdict_and_transcript(self, manager):
        session = make_alice_session(manager, horizon=2)
        manager.submit_move(session.id, Interval(F(-1, 2), F(3, 10)))
        view = manager.submit_move(session.id, Interval(F(-1, 5), F(3, 25)))
        assert view["status"] == STATUS_FINISHED
        assert view["verdict"] == "bob-wins"
        assert manager.store.get(session.id).verdict == "bob-wins"
        assert manager.replay_check(session.id)


class TestHints:
    def test_schmidt_hint(self, manager):
        session = make_alice_session(manager)
        hint = manager.hint(session.id)
        assert hint["host"] == {"lo": "-1/2", "hi": "1/2"}
        assert hint["required_length"] == "4/5"
        region = hint["regions"][0]
        assert region["min_left_endpoint"] == "-1/2"
        assert region["max_left_endpoint"] == "-3/10"

    def test_hint_unit_example(self):
        variant = GameVariant.schmidt(F(1, 2), F(1, 2))
        state = apply_move(
            initial_state(variant), Move(Player.BOB, Interval(0, 1))
        )
        hint = hint_legal(state)
        assert hint["required_length"] == "1/2"
        assert hint["regions"][0]["max_left_endpoint"] == "1/2"

    def test_mcmullen_hint_offers_gaps(self, manager):
        session = manager.create_session(
            variant=GameVariant.mcmullen(F(1, 4)),
            human_side=Player.BOB,
            horizon=3,
            alice_strategy="split-thirds",
        )
        manager.submit_move(session.id, Interval(0, 1))
        hint = manager.hint(session.id)
        assert len(hint["regions"]) == 2
        assert hint["required_length"] == "1/4"

    def test_bm_hint_has_max_length(self, manager):
        session = manager.create_session(
            variant=GameVariant.banach_mazur(),
            human_side=Player.BOB,
            horizon=3,
            alice_strategy="split-thirds",
        )
        manager.submit_move(session.id, Interval(0, 1))
        hint = manager.hint(session.id)
        assert hint["required_length"] is None
        # host is Alice's middle third (length 1/3), shrink cap is 1/2 of B_0;
        # the binding limit is the host length
        assert hint["max_length"] == "1/3"


class TestIsolationAndReplay:
    def test_concurrent_sessions_do_not_cross_contaminate(self, manager):
        sessions = [make_alice_session(manager, horizon=30) for _ in range(4)]
        errors = []

        def drive(session):
            try:
                for _ in range(30):
                    state = session.state
                    host = state.history[-1].interval
                    need = state.variant.alpha * host.length
                    manager.submit_move(
                        session.id, Interval(host.lo, host.lo + need)
                    )
            except Exception as exc:  # pragma: no cover
                errors.append(exc)

        threads = [threading.Thread(target=drive, args=(s,)) for s in sessions]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        for session in sessions:
            assert session.status == STATUS_FINISHED
            assert manager.replay_check(session.id)

    def test_store_round_trip_is_bit_exact(self, manager):
        session = manager.create_session(
            variant=GameVariant.schmidt(F(4, 5), F(1, 2)),
            human_side=None,
            horizon=4,
            bob_strategy="bob-center-pin:0",
            alice_strategy="random-legal:11",
        )
        stored = manager.store.get(session.id)
        assert stored.moves == session.state.history
        assert stored.serialize() == manager.store.get(session.id).serialize()

    def test_store_lists_ids(self, manager):
        ids = {
            manager.create_session(
                variant=GameVariant.schmidt(F(4, 5), F(1, 2)),
                human_side=None,
                horizon=2,
                bob_strategy="bob-center-pin:0",
                alice_strategy="align-right",
            ).id
            for _ in range(3)
        }
        assert ids <= set(manager.store.list_ids())
