import json
import subprocess
import sys

import pytest

from graycyl.cli import main


def run_cli(args):
    proc = subprocess.run([sys.executable, "-m", "graycyl.cli"] + args,
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


class TestSubcommands:
    def test_decompose(self, capsys):
        assert main(["decompose", "[2]([1],[0])"]) == 0
        assert capsys.readouterr().out.strip() == "2 ⊕₀ 1"

    def test_lambda_json(self, capsys):
        assert main(["lambda", "[1]"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["degrees"] == [["o0", "o1"], ["1|o0"]]
        assert data["e"] == {"o0": 1, "o1": 1}

    def test_tensor_json(self, capsys):
        assert main(["tensor", "[0]"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert [len(row) for row in data["degrees"]] == [2, 1]

    def test_counts_table(self, capsys):
        assert main(["counts", "[1]", "--max-dim", "2"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["rows"][0] == {"dim": 0, "nu": 4, "pr": 4}
        assert data["rows"][1] == {"dim": 1, "nu": 10, "pr": 10}
        assert data["agree"]

    def test_verify_gray_exit_zero(self, capsys):
        assert main(["verify", "gray", "[3]"]) == 0

    def test_verify_all_point(self, capsys):
        assert main(["verify", "all", "[0]"]) == 0

    def test_nu_gray_emit_handle_point(self, capsys):
        for args in (["nu", "[0]"], ["gray", "[0]"], ["counts", "[0]"],
                     ["emit", "shuffle", "[0]"], ["emit", "skeleton", "[0]"],
                     ["emit", "span", "[0]"], ["span", "[0]"],
                     ["lambda", "[0]"], ["tensor", "[0]"], ["decompose", "[0]"]):
            assert main(args) == 0, args
            capsys.readouterr()

    def test_parse_error_exit_two(self, capsys):
        assert main(["decompose", "[2]([1]"]) == 2

    def test_span_subcommand(self, capsys):
        assert main(["span", "[1]([1])"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["passed"]

    def test_emit_writes_file(self, tmp_path, capsys):
        out = tmp_path / "g.dot"
        assert main(["emit", "shuffle", "[2]", "--out", str(out)]) == 0
        assert out.read_text().startswith("digraph shuffle")


class TestDeterminism:
    @pytest.mark.parametrize("args", [
        ["counts", "[1]([1])"],
        ["verify", "gray", "[2]"],
        ["emit", "shuffle", "[2]([1],[0])"],
        ["emit", "skeleton", "[1]"],
        ["gray", "[1]"],
    ])
    def test_byte_identical_runs(self, args):
        outs = set()
        for _ in range(3):
            code, out, err = run_cli(args)
            assert code == 0, err
            outs.add(out)
        assert len(outs) == 1
