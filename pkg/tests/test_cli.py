"""Black-box CLI tests through main(argv)."""

import json

import pytest

from qpg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


GAME = "parity 1;\n0 2 0 1;\n1 3 1 0;\n"


@pytest.fixture
def game_file(tmp_path):
    path = tmp_path / "game.gm"
    path.write_text(GAME)
    return str(path)


class TestSolve:
    def test_json_output(self, capsys, game_file):
        code, out, _ = run(capsys, "solve", game_file)
        assert code == 0
        lines = [json.loads(line) for line in out.strip().splitlines()]
        assert lines[0] == {"vertex": 0, "winner": "odd"}
        assert lines[1] == {"vertex": 1, "winner": "odd"}
        stats = lines[2]
        assert stats["k"] == 2 and stats["product_nodes"] <= stats["bound_nodes"]

    def test_text_output(self, capsys, game_file):
        code, out, _ = run(capsys, "solve", game_file, "--format", "text")
        assert code == 0
        assert "vertex 0: odd" in out and "k=2" in out

    def test_stdin(self, capsys, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO(GAME))
        code, out, _ = run(capsys, "solve", "-")
        assert code == 0 and '"odd"' in out

    def test_algorithms_agree(self, capsys, game_file):
        outputs = set()
        for algorithm in ("qp", "zielonka", "brute"):
            code, out, _ = run(capsys, "solve", game_file, "--algorithm", algorithm)
            assert code == 0
            outputs.add(out.strip().splitlines()[0])
        assert len(outputs) == 1

    def test_check_passes(self, capsys, game_file):
        code, _, err = run(capsys, "solve", game_file, "--check")
        assert code == 0 and err == ""

    def test_parse_error_exit_1(self, capsys, tmp_path):
        bad = tmp_path / "bad.gm"
        bad.write_text("this is not a game\n")
        code, _, err = run(capsys, "solve", str(bad))
        assert code == 1 and "error" in err

    def test_missing_file_exit_1(self, capsys):
        code, _, err = run(capsys, "solve", "/nonexistent/game.gm")
        assert code == 1 and "error" in err

    def test_invalid_game_exit_1(self, capsys, tmp_path):
        sink = tmp_path / "sink.gm"
        sink.write_text("0 2 0 1;\n1 3 1 1;\n")
        # remove vertex 1's loop to create a sink
        sink.write_text("parity 1;\n0 2 0 1;\n")
        code, _, err = run(capsys, "solve", str(sink))
        assert code == 1 and "dangling" in err or "sink" in err

    def test_budget_exhaustion_exit_2(self, capsys, game_file):
        code, _, err = run(capsys, "solve", game_file, "--budget", "1")
        assert code == 2 and "error" in err

    def test_k_override(self, capsys, game_file):
        code, out, _ = run(capsys, "solve", game_file, "--k", "4")
        assert code == 0
        stats = json.loads(out.strip().splitlines()[-1])
        assert stats["k"] == 4


class TestGen:
    def test_deterministic(self, capsys):
        _, out_a, _ = run(capsys, "gen", "--n", "5", "--max-priority", "4", "--seed", "9")
        _, out_b, _ = run(capsys, "gen", "--n", "5", "--max-priority", "4", "--seed", "9")
        assert out_a == out_b
        assert out_a.startswith("parity 4;")

    def test_generated_game_solves(self, capsys, tmp_path):
        path = tmp_path / "g.gm"
        code, _, _ = run(
            capsys, "gen", "--n", "6", "--max-priority", "5", "--out", str(path)
        )
        assert code == 0
        code, _, _ = run(capsys, "solve", str(path), "--check")
        assert code == 0

    def test_bad_params_exit_1(self, capsys):
        code, _, err = run(capsys, "gen", "--n", "0", "--max-priority", "1")
        assert code == 1 and "error" in err


class TestVerify:
    def test_small_run_exit_0(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--games", "15", "--seed", "4", "--no-timings"
        )
        assert code == 0
        data = json.loads(out)
        assert data["all_agree"] is True
        assert data["games_attempted"] == 15
        assert all("millis" not in r for r in data["records"])

    def test_no_records(self, capsys):
        code, out, _ = run(capsys, "verify", "--games", "5", "--no-records")
        assert code == 0 and json.loads(out)["records"] == []


class TestCount:
    def test_output_shape(self, capsys):
        code, out, _ = run(capsys, "count", "--k", "3", "--max-priority", "3")
        assert code == 0
        assert "|S_{2,3}| = 38" in out
        assert "naive bound (M+1)^k = 64" in out
        assert "exponent constant" in out


class TestTrace:
    def test_known_trace(self, capsys):
        code, out, _ = run(capsys, "trace", "--priorities", "2,2,1,2", "--k", "2")
        assert code == 0
        assert "all trace properties hold" in out
        assert "factorization:" in out
        assert out.count("kind=I") >= 1

    def test_bad_priorities_exit_1(self, capsys):
        code, _, err = run(capsys, "trace", "--priorities", "0,2", "--k", "2")
        assert code == 1 and "error" in err


class TestBench:
    def test_csv_to_stdout(self, capsys):
        code, out, _ = run(capsys, "bench", "--n-list", "4,6", "--m-list", "2")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,M,k,product_nodes,millis,zielonka_millis"
        assert len(lines) == 3

    def test_writes_csv_and_figure(self, capsys, tmp_path):
        out_csv = tmp_path / "bench.csv"
        code, _, _ = run(
            capsys,
            "bench",
            "--n-list",
            "4,6",
            "--m-list",
            "2,3",
            "--out",
            str(out_csv),
        )
        assert code == 0
        assert out_csv.exists()
        figure = tmp_path / "bench.png"
        assert figure.exists() and figure.stat().st_size > 0

    def test_explicit_figure_path(self, capsys, tmp_path):
        out_csv = tmp_path / "b.csv"
        fig = tmp_path / "custom.png"
        code, _, _ = run(
            capsys,
            "bench",
            "--n-list",
            "4",
            "--m-list",
            "2",
            "--out",
            str(out_csv),
            "--figure",
            str(fig),
        )
        assert code == 0 and fig.exists()
