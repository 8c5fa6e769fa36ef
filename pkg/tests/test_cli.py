import io
import json
import subprocess
import sys

import pytest

from ahpkit.cli import main
from ahpkit.documents import load_model, load_model_document, load_session, save_model


def run_cli(args, stdin_text=None):
    """Invoke the CLI in a subprocess to capture exact streams and codes."""
    return subprocess.run(
        [sys.executable, "-m", "ahpkit.cli", *args],
        input=stdin_text.encode() if stdin_text is not None else None,
        capture_output=True,
    )


@pytest.fixture
def model_path(tmp_path):
    path = tmp_path / "choice.model.json"
    code = main(
        [
            "new",
            "--goal", "Pick a laptop",
            "--criteria", "Price", "Battery",
            "--alternatives", "Nimbus", "Crater", "Squall",
            "-o", str(path),
        ]
    )
    assert code == 0
    return path


class TestNew:
    def test_scaffolds_a_loadable_model(self, model_path):
        h = load_model(model_path.read_bytes())
        assert h.root == "pick_a_laptop"
        assert h.children("pick_a_laptop") == ("price", "battery")
        assert h.alternative_ids == ("nimbus", "crater", "squall")

    def test_requires_two_criteria(self, tmp_path, capsys):
        code = main(["new", "--goal", "g", "--criteria", "only", "--alternatives", "a", "b"])
        assert code == 1
        assert "two criteria" in capsys.readouterr().err

    def test_writes_to_stdout_by_default(self):
        proc = run_cli(["new", "--goal", "g", "--criteria", "a", "b", "--alternatives", "x", "y"])
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["format"] == "ahpkit/model"


class TestCompute:
    def test_bundled_tabular_three_decimals(self):
        proc = run_cli(["compute", "--bundled", "banking", "--format", "tabular", "--decimals", "3"])
        assert proc.returncode == 0
        lines = proc.stdout.decode().strip().splitlines()
        assert lines[1] == "Management,0.112,0.054,0.011,0.177"
        assert lines[5] == "TOTAL,0.449,0.346,0.206,"

    def test_structured_output_is_deterministic(self):
        a = run_cli(["compute", "--bundled", "banking", "--format", "structured"])
        b = run_cli(["compute", "--bundled", "banking", "--format", "structured"])
        assert a.stdout == b.stdout
        payload = json.loads(a.stdout)
        assert payload["format"] == "ahpkit/report"

    def test_model_from_stdin(self, model_path, tmp_path):
        model = json.loads(model_path.read_bytes())
        model["local_weights"] = {
            "pick_a_laptop": {"method": "assigned", "weights": [0.7, 0.3]},
            "price": {"method": "assigned", "weights": [0.5, 0.3, 0.2]},
            "battery": {"method": "assigned", "weights": [0.2, 0.3, 0.5]},
        }
        proc = run_cli(["compute", "-", "--format", "structured"], stdin_text=json.dumps(model))
        assert proc.returncode == 0, proc.stderr
        scores = json.loads(proc.stdout)["global_priorities"]["alternatives"]
        assert scores["nimbus"] == pytest.approx(0.7 * 0.5 + 0.3 * 0.2, abs=1e-6)

    def test_incomplete_matrix_exit_one_names_node_and_pairs(self, model_path):
        model = json.loads(model_path.read_bytes())
        model["local_weights"] = {"pick_a_laptop": {"method": "assigned", "weights": [0.7, 0.3]}}
        model["judgments"] = {
            "price": [[1, 3, None], ["1/3", 1, 2], [None, "1/2", 1]],
            "battery": [[1, 1, 1], [1, 1, 1], [1, 1, 1]],
        }
        proc = run_cli(["compute", "-"], stdin_text=json.dumps(model))
        assert proc.returncode == 1
        err = proc.stderr.decode()
        assert "price" in err
        assert "(0, 2)" in err

    def test_missing_priorities_exit_one(self, model_path):
        proc = run_cli(["compute", str(model_path)])
        assert proc.returncode == 1
        assert "local priorities" in proc.stderr.decode()

    def test_matrix_model_derives_and_reports_consistency(self, model_path):
        model = json.loads(model_path.read_bytes())
        model["local_weights"] = {"pick_a_laptop": {"method": "assigned", "weights": [0.5, 0.5]}}
        model["judgments"] = {
            "price": [[1, 3, 5], ["1/3", 1, 7], ["1/5", "1/7", 1]],
            "battery": [[1, 2, 4], ["1/2", 1, 2], ["1/4", "1/2", 1]],
        }
        proc = run_cli(["compute", "-", "--format", "structured"], stdin_text=json.dumps(model))
        assert proc.returncode == 0, proc.stderr
        payload = json.loads(proc.stdout)
        assert payload["consistency"]["price"]["consistent"] is False
        assert payload["consistency"]["battery"]["consistent"] is True


class TestSensitivity:
    def test_culture_to_zero(self):
        proc = run_cli(
            ["sensitivity", "--bundled", "banking", "--criterion", "culture", "--weight", "0",
             "--format", "structured"]
        )
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["alternatives"]["confidentiality"] == pytest.approx(0.516, abs=0.001)
        assert payload["rank_changes"] == []

    def test_unknown_criterion_exit_one(self):
        proc = run_cli(["sensitivity", "--bundled", "banking", "--criterion", "nope", "--weight", "0.5"])
        assert proc.returncode == 1
        assert "not a child" in proc.stderr.decode()


class TestValidatePaper:
    def test_passes_and_prints_cell_lines(self):
        proc = run_cli(["validate-paper"])
        assert proc.returncode == 0
        out = proc.stdout.decode()
        assert out.count("cell") == 12
        assert "result: PASS" in out


class TestUsageErrors:
    def test_unknown_subcommand_exit_two(self):
        proc = run_cli(["frobnicate"])
        assert proc.returncode == 2

    def test_unknown_flag_exit_two(self):
        proc = run_cli(["compute", "--bundled", "banking", "--wat"])
        assert proc.returncode == 2

    def test_missing_file_exit_one(self):
        proc = run_cli(["compute", "/nonexistent/model.json"])
        assert proc.returncode == 1

    def test_version_flag(self):
        proc = run_cli(["--version"])
        assert proc.returncode == 0
        assert b"ahpkit" in proc.stdout


class TestAsk:
    def test_scripted_session_computes_report(self, model_path, tmp_path):
        session_path = tmp_path / "s.session.json"
        # goal: 1 pair; price/battery: 3 pairs each = 7 answers
        answers = "\n".join(["2", "3", "5", "2", "1", "1", "1", "n"]) + "\n"
        proc = run_cli(
            ["ask", str(model_path), "--save-session", str(session_path),
             "--format", "structured"],
            stdin_text=answers,
        )
        assert proc.returncode == 0, proc.stderr
        stdout = proc.stdout.decode()
        assert "How important is" in stdout
        assert "consistency of" in stdout
        doc = load_model_document(model_path.read_bytes())
        session = load_session(session_path.read_bytes(), doc)
        assert session.complete

    def test_skipped_pairs_leave_session_incomplete(self, model_path, tmp_path):
        session_path = tmp_path / "s.session.json"
        answers = "\n".join(["s"] * 7) + "\n"
        proc = run_cli(["ask", str(model_path), "--save-session", str(session_path)], stdin_text=answers)
        assert proc.returncode == 0, proc.stderr
        assert b"incomplete" in proc.stdout
        doc = load_model_document(model_path.read_bytes())
        session = load_session(session_path.read_bytes(), doc)
        assert not session.complete
        assert len(session.pending) == 7

    def test_discrete_rejection_reprompts(self, model_path):
        # 2.08 is rejected in discrete mode; the prompt repeats, then accepts 2
        answers = "\n".join(["2.08", "2", "1", "1", "1", "1", "1", "1"]) + "\n"
        proc = run_cli(["ask", str(model_path)], stdin_text=answers)
        assert proc.returncode == 0, proc.stderr
        assert b"not on the discrete scale" in proc.stdout

    def test_continuous_mode_accepts_fractional(self, model_path):
        answers = "\n".join(["2.08", "1.5", "0.4", "3", "1", "1", "1"]) + "\n"
        proc = run_cli(["ask", str(model_path), "--continuous", "--format", "structured"], stdin_text=answers)
        assert proc.returncode == 0, proc.stderr

    def test_inconsistent_node_offers_revision(self, model_path):
        # price answered with the visibly inconsistent 3/5/7 pattern, then
        # revised when offered; remaining nodes uniform
        answers = "\n".join(["1", "3", "5", "7", "y", "5", "n", "1", "1", "1"]) + "\n"
        proc = run_cli(["ask", str(model_path)], stdin_text=answers)
        assert proc.returncode == 0, proc.stderr
        out = proc.stdout.decode()
        assert "INCONSISTENT" in out
        assert "revise" in out

    def test_resume_from_saved_session(self, model_path, tmp_path):
        session_path = tmp_path / "s.session.json"
        run_cli(["ask", str(model_path), "--save-session", str(session_path)], stdin_text="3\ns\ns\ns\ns\ns\ns\n")
        proc = run_cli(
            ["ask", str(model_path), "--session", str(session_path),
             "--save-session", str(session_path)],
            stdin_text="\n".join(["1", "1", "1", "2", "2", "4", "n"]) + "\n",
        )
        assert proc.returncode == 0, proc.stderr
        doc = load_model_document(model_path.read_bytes())
        session = load_session(session_path.read_bytes(), doc)
        assert session.complete
        assert session.answered[("pick_a_laptop", (0, 1))] == 3.0
