from dataclasses import replace
from fractions import Fraction as F

import pytest

from intervalgames.arith import Interval
from intervalgames.cantor import (
    BRANCHER_ENDPOINT,
    BRANCHER_OBSTACLES,
    BRANCHER_SPLIT,
    build_tree,
    code_point,
    level_table,
    tree_to_jsonable,
    verify_tree,
)
from intervalgames.engine import GameVariant, Player
from intervalgames.errors import (
    DepthExceededError,
    TreeInvariantError,
    UnknownWordError,
)
from intervalgames.strategies import (
    AlignEdge,
    MidPlacement,
    displacement_partial_sum,
)


def bm_thirds_tree(depth):
    return build_tree(
        GameVariant.banach_mazur(),
        MidPlacement(Player.ALICE),
        depth=depth,
        b0=Interval(0, 1),
    )


def schmidt_endpoint_tree(depth):
    return build_tree(
        GameVariant.schmidt(F(4, 5), F(4, 5)),
        MidPlacement(Player.ALICE),
        depth=depth,
        b0=Interval(0, 1),
    )


def mcmullen_obstacle_tree(depth):
    return build_tree(
        GameVariant.mcmullen(F(1, 5)),
        AlignEdge(Player.BOB, "left"),
        depth=depth,
        b0=Interval(0, 1),
    )


class TestBranchSelection:
    def test_bm_uses_split(self):
        assert bm_thirds_tree(1).brancher == BRANCHER_SPLIT

    def test_schmidt_large_ratio_uses_endpoint(self):
        assert schmidt_endpoint_tree(1).brancher == BRANCHER_ENDPOINT

    def test_schmidt_small_ratio_uses_split(self):
        tree = build_tree(
            GameVariant.schmidt(F(4, 5), F(1, 3)),
            MidPlacement(Player.ALICE),
            depth=2,
            b0=Interval(0, 1),
        )
        assert tree.brancher == BRANCHER_SPLIT
        verify_tree(tree)

    def test_mcmullen_pinned_bob_uses_obstacles(self):
        assert mcmullen_obstacle_tree(1).brancher == BRANCHER_OBSTACLES


class TestBanachMazurTree:
    def test_depth_two_structure(self):
        tree = bm_thirds_tree(2)
        reports = verify_tree(tree)
        assert [r.count for r in reports] == [1, 2, 4]
        leaves = [tree.nodes[w].interval for w in ("00", "01", "10", "11")]
        for i, a in enumerate(leaves):
            for b in leaves[i + 1 :]:
                assert a.disjoint_from(b)
        for word in ("00", "01", "10", "11"):
            parent = tree.nodes[word[:-1]].interval
            assert parent.contains(tree.nodes[word].interval)

    def test_code_point(self):
        tree = bm_thirds_tree(2)
        assert code_point(tree, "") == tree.root.interval
        child = code_point(tree, "01")
        assert code_point(tree, "0").contains(child)
        with pytest.raises(UnknownWordError):
            code_point(tree, "010")
        with pytest.raises(UnknownWordError):
            code_point(tree, "2")

    def test_rebuild_is_bit_identical(self):
        assert bm_thirds_tree(3) == bm_thirds_tree(3)


class TestSchmidtEndpointTree:
    def test_depth_three(self):
        tree = schmidt_endpoint_tree(3)
        reports = verify_tree(tree)
        assert [r.count for r in reports] == [1, 2, 4, 8]
        assert all(
            reports[i + 1].max_diameter < reports[i].max_diameter
            for i in range(len(reports) - 1)
        )

    def test_segment_rounds_recorded_and_minimal(self):
        tree = schmidt_endpoint_tree(1)
        k = tree.nodes["0"].rounds
        assert k >= 1 and tree.nodes["1"].rounds == k
        # every node in a deeper tree uses the same K: the rule is scale free
        deeper = schmidt_endpoint_tree(2)
        assert {n.rounds for w, n in deeper.nodes.items() if w} == {k}

    def test_branch_gap_at_least_escape_margin(self):
        alpha = beta = F(4, 5)
        tree = schmidt_endpoint_tree(3)
        for word, node in tree.nodes.items():
            if len(word) == 3:
                continue
            left = tree.nodes[word + "0"]
            right = tree.nodes[word + "1"]
            assert left.interval.hi < node.interval.center < right.interval.lo
            gap = right.interval.lo - left.interval.hi
            margin = displacement_partial_sum(alpha, beta, left.rounds) - (
                beta - F(1, 2)
            )
            assert gap >= margin * node.interval.length > 0


class TestMcMullenTree:
    def test_depth_two(self):
        tree = mcmullen_obstacle_tree(2)
        reports = verify_tree(tree)
        assert [r.count for r in reports] == [1, 2, 4]

    def test_branches_strictly_disjoint_for_beta_near_third(self):
        tree = build_tree(
            GameVariant.mcmullen(F(33, 100)),
            AlignEdge(Player.BOB, "left"),
            depth=3,
            b0=Interval(0, 1),
        )
        verify_tree(tree)


class TestVerification:
    def test_sabotage_equal_leaves(self):
        tree = bm_thirds_tree(2)
        nodes = dict(tree.nodes)
        nodes["11"] = replace(nodes["11"], interval=nodes["00"].interval)
        broken = replace(tree, nodes=nodes)
        with pytest.raises(TreeInvariantError) as exc:
            verify_tree(broken)
        assert set(exc.value.words) & {"00", "11"}

    def test_sabotage_escaped_parent(self):
        tree = bm_thirds_tree(2)
        nodes = dict(tree.nodes)
        nodes["01"] = replace(nodes["01"], interval=Interval(0, 2))
        with pytest.raises(TreeInvariantError):
            verify_tree(replace(tree, nodes=nodes))

    def test_sabotage_missing_node(self):
        tree = bm_thirds_tree(2)
        nodes = dict(tree.nodes)
        del nodes["10"]
        with pytest.raises(TreeInvariantError):
            verify_tree(replace(tree, nodes=nodes))

    def test_sabotage_illegal_fragment(self):
        tree = schmidt_endpoint_tree(1)
        nodes = dict(tree.nodes)
        node = nodes["0"]
        bad_moves = node.moves[:-1] + (
            replace(node.moves[-1], interval=Interval(0, 2)),
        )
        nodes["0"] = replace(node, moves=bad_moves)
        with pytest.raises(TreeInvariantError):
            verify_tree(replace(tree, nodes=nodes))

    def test_depth_cap(self):
        with pytest.raises(DepthExceededError):
            bm_thirds_tree(15)


class TestExport:
    def test_jsonable_shape(self):
        tree = bm_thirds_tree(2)
        data = tree_to_jsonable(tree)
        assert set(data["nodes"]) == {"", "0", "1", "00", "01", "10", "11"}
        assert data["nodes"]["01"].keys() == {"lo", "hi", "rounds"}
        rows = level_table(verify_tree(tree))
        assert rows[2]["count"] == 4
        assert "/" in rows[2]["max_diameter"]
