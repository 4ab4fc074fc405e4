import json

import pytest

from intervalgames.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClassifyChain:
    def test_classify(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "--alpha", "4/5", "--beta", "4/5")
        assert code == 0
        body = json.loads(out)
        assert body["regime"] == "nondeterminacy"
        assert body["margins"]["escape-margin"] == "13/90"

    def test_chain(self, capsys):
        code, out, _ = run_cli(capsys, "chain", "--alpha", "4/5", "--beta", "4/5")
        assert code == 0
        assert json.loads(out)["conclusion_margin"] == "13/90"

    def test_chain_precondition_error_exit(self, capsys):
        code, _, err = run_cli(capsys, "chain", "--alpha", "4/5", "--beta", "1/2")
        assert code == 2
        assert "regime-precondition" in err


class TestSimulate:
    def test_simulate_schmidt(self, capsys, tmp_path):
        out_file = tmp_path / "t.json"
        code, _, _ = run_cli(
            capsys,
            "simulate",
            "--variant",
            "schmidt",
            "--alpha",
            "4/5",
            "--beta",
            "1/2",
            "--bob",
            "bob-center-pin:0",
            "--alice",
            "align-left",
            "--horizon",
            "4",
            "--target",
            "co-singleton:0",
            "--out",
            str(out_file),
        )
        assert code == 0
        record = json.loads(out_file.read_text())
        assert record["verdict"] == "bob-wins"
        assert len(record["moves"]) == 9

    def test_simulate_mcmullen(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "simulate",
            "--variant",
            "mcmullen",
            "--beta",
            "1/5",
            "--bob",
            "align-left",
            "--alice",
            "split-thirds",
            "--horizon",
            "3",
            "--b0-lo",
            "0",
            "--b0-hi",
            "1",
        )
        assert code == 0
        assert json.loads(out)["verdict"] == "undecided-at-horizon"


class TestTree:
    def test_tree_command(self, capsys):
        code, out, err = run_cli(
            capsys,
            "tree",
            "--variant",
            "banach-mazur",
            "--pinned",
            "split-thirds",
            "--pinned-player",
            "alice",
            "--depth",
            "2",
            "--b0-lo",
            "0",
            "--b0-hi",
            "1",
        )
        assert code == 0
        body = json.loads(out)
        assert body["levels"][-1]["count"] == 4
        assert "level 2: 4 nodes" in err


class TestPlay:
    def test_interactive_play(self, capsys, monkeypatch):
        lines = iter(["-1/2 3/10", "junk", "-1/5 3/25"])
        monkeypatch.setattr("builtins.input", lambda prompt="": next(lines))
        code, out, _ = run_cli(
            capsys,
            "play",
            "--variant",
            "schmidt",
            "--alpha",
            "4/5",
            "--beta",
            "1/2",
            "--side",
            "alice",
            "--engine",
            "bob-center-pin:0",
            "--horizon",
            "2",
            "--target",
            "co-singleton:0",
        )
        assert code == 0
        assert "verdict: bob-wins" in out

    def test_illegal_then_legal(self, capsys, monkeypatch):
        lines = iter(["-1/2 0", "-1/2 3/10"])
        monkeypatch.setattr("builtins.input", lambda prompt="": next(lines))
        code, out, _ = run_cli(
            capsys,
            "play",
            "--variant",
            "schmidt",
            "--alpha",
            "4/5",
            "--beta",
            "1/2",
            "--side",
            "alice",
            "--engine",
            "bob-center-pin:0",
            "--horizon",
            "1",
        )
        assert code == 0
        assert "illegal: wrong-length" in out
