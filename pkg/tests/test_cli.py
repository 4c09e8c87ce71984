import csv
import json

import pytest

from symflag.cli import build_parser, config_from_args, run
from symflag.config import REPORT_SCHEMA, SUPPORTED_COMMANDS
from symflag.errors import ConfigError, MatrixFormatError, SignPatternError
from symflag.flags import SignSample
from symflag.matrices import Mat
from symflag.run_config import RunConfig
from symflag.scalars import Backend, exact_sqrt
from symflag.symflag_tool import SymflagTool
from symflag.utils import derive_seed, read_matrix_file, thread_count

SHIFTED_CORNER_ROWS = "1 0 1 0\n0 1 0 1\n0 0 1 0\n0 0 0 1\n"


def run_json(argv, capsys):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_key_lemma_exact(capsys):
    code, report = run_json(["verify", "key-lemma", "--n", "3", "--samples", "100", "--backend", "exact", "--seed", "7"], capsys)
    assert code == 0
    assert report["schema"] == REPORT_SCHEMA
    assert report["summary"] == {"status": "pass", "checks": 100, "failed": []}
    assert all(record["residual"] == "0" for record in report["records"])
    assert [record["index"] for record in report["records"]] == list(range(100))


def test_property_i_even_only(capsys):
    code, report = run_json(["verify", "property-i", "--n", "2", "--theta", "2", "--samples", "5"], capsys)
    assert code == 0
    assert "even-only" in report["certificate"]["note"]
    assert report["certificate"]["obstruction"] is False


def test_property_i_counterexample_aborts_the_run(monkeypatch, capsys):
    kept_sign = lambda theta, rng, index: SignSample(index, {1: (1, 1)})
    monkeypatch.setattr("symflag.checks.sample_sign_pattern", kept_sign)
    assert run(["verify", "property-i", "--n", "2", "--theta", "1", "--samples", "3"]) == 1
    captured = capsys.readouterr()
    assert "sign pattern violated" in captured.err
    assert captured.out == ""
    with pytest.raises(SignPatternError):
        SymflagTool(RunConfig("verify property-i", n=2, theta=(1,), samples=3)).run()


@pytest.mark.parametrize("command", ["transversality", "inversion", "rep"])
def test_verify_commands_pass(command, capsys):
    code, report = run_json(["verify", command, "--n", "2", "--samples", "3"], capsys)
    assert code == 0
    assert report["summary"]["status"] == "pass"


def test_witness_sl2c_identity(capsys):
    code, report = run_json(["witness", "sl2c", "--n", "2", "--g", "identity"], capsys)
    assert code == 0
    (record,) = report["records"]
    assert record["verdict"] == "witness_found"
    assert record["witness"] == {"alpha": 0.0, "beta": 0.0}
    assert record["confirmed_non_antipodal"] is True
    assert report["config"]["backend"] == "float"


def test_witness_su_and_non_maximal(capsys):
    code, report = run_json(["witness", "su", "--n", "3", "--samples", "3", "--backend", "exact"], capsys)
    assert code == 0
    assert all(record["residual"] == "0" for record in report["records"])
    code, report = run_json(["check", "non-maximal", "--n", "4", "--samples", "3"], capsys)
    assert code == 0
    assert report["records"][0]["determinant"] == "1"


@pytest.mark.parametrize("argv", [
    ["verify", "property-i", "--n", "2", "--theta", "5"],
    ["verify", "property-i", "--n", "2", "--theta", "a"],
    ["verify", "key-lemma", "--frobnicate"],
    ["verify", "nothing"],
    ["witness", "su", "--n", "2"],
    ["verify", "key-lemma", "--samples", "0"],
    ["verify", "key-lemma", "--dump-locus", "locus.csv"],
    ["witness", "sl2c", "--epsilon", "-1"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2
    capsys.readouterr()


def test_malformed_matrix_file(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("1 x\n0 1\n")
    assert run(["witness", "sl2c", "--n", "2", "--g", str(path)]) == 2
    assert run(["witness", "sl2c", "--n", "2", "--g", str(tmp_path / "missing.txt")]) == 2
    assert "error" in capsys.readouterr().err


def test_out_and_dump_locus(tmp_path):
    g = tmp_path / "g.txt"
    g.write_text(SHIFTED_CORNER_ROWS)
    out, locus = tmp_path / "report.json", tmp_path / "locus.csv"
    assert run(["witness", "sl2c", "--n", "2", "--g", str(g), "--out", str(out), "--dump-locus", str(locus)]) == 0
    report = json.loads(out.read_text())
    assert report["records"][0]["witness"]["alpha"] == pytest.approx(2 ** -0.5, abs=1e-8)
    with open(locus, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["alpha", "beta", "det"]
    assert len(rows) > 1


def test_rational_matrix_file_on_the_float_backend(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text("1 0 1/2 0\n0 1 0 1/2\n0 0 1 0\n0 0 0 1\n")
    code, report = run_json(["witness", "sl2c", "--n", "2", "--g", str(g)], capsys)
    assert code == 0
    (record,) = report["records"]
    assert record["verdict"] == "witness_found"
    assert record["confirmed_non_antipodal"] is True


def test_reports_are_deterministic(tmp_path):
    documents = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert run(["verify", "transversality", "--n", "3", "--samples", "20", "--seed", "3", "--out", str(out)]) == 0
        document = json.loads(out.read_text())
        document.pop("wall_time")
        documents.append(document)
    assert documents[0] == documents[1]


def test_threads_do_not_change_the_report(tmp_path, monkeypatch):
    documents = []
    for threads in ("1", "4"):
        monkeypatch.setenv("SYMFLAG_THREADS", threads)
        out = tmp_path / f"{threads}.json"
        assert run(["witness", "su", "--n", "4", "--samples", "6", "--seed", "2", "--backend", "exact", "--out", str(out)]) == 0
        document = json.loads(out.read_text())
        document.pop("wall_time")
        documents.append(document)
    assert documents[0] == documents[1]


def test_verbose_goes_to_stderr(capsys):
    assert run(["verify", "key-lemma", "--n", "1", "--samples", "2", "--verbose"]) == 0
    captured = capsys.readouterr()
    json.loads(captured.out)
    assert "pass" in captured.err


def test_parser_covers_every_command():
    parser = build_parser()
    for command in SUPPORTED_COMMANDS:
        args = parser.parse_args(command.split() + ["--n", "3", "--tol", "1e-8"])
        config = config_from_args(args)
        assert config.command == command
        assert config.tolerance == 1e-8


@pytest.mark.parametrize("config", [
    RunConfig("verify everything"),
    RunConfig("verify rep", n=1),
    RunConfig("check non-maximal", n=2),
    RunConfig("verify key-lemma", samples=0),
    RunConfig("witness sl2c", tolerance=0),
    RunConfig("verify inversion", theta=(0,)),
    RunConfig("verify inversion", backend="quad"),
    RunConfig("verify inversion", dump_locus="x.csv"),
])
def test_run_config_validation(config):
    with pytest.raises(ConfigError):
        config.validate()


def test_run_config_defaults():
    config = RunConfig("witness sl2c").validate()
    assert config.check_name == "sl2c_witness"
    assert config.resolved_backend is Backend.FLOAT
    assert RunConfig("verify rep").resolved_backend is Backend.EXACT
    assert "verbose" not in config.to_dict()


def test_tool_delegates_to_the_check():
    tool = SymflagTool(RunConfig("verify rep", n=3, samples=2))
    with pytest.raises(ValueError):
        tool.to_json()
    report = tool.run()
    assert tool.report is report
    assert report.passed
    document = json.loads(tool.to_json())
    assert len(document["records"]) == 3
    assert document["records"][0]["odd_reduction"] is True


def test_read_matrix_file(tmp_path):
    text = tmp_path / "m.txt"
    text.write_text("# comment\n1/2 sqrt(2)\n\n0 1\n")
    m = read_matrix_file(str(text))
    assert m == Mat.from_rows([[0.5, exact_sqrt(2)], [0, 1]])
    assert read_matrix_file(str(text), Backend.FLOAT).backend is Backend.FLOAT
    document = tmp_path / "m.json"
    document.write_text(json.dumps(m.to_dict()))
    assert read_matrix_file(str(document)) == m
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    with pytest.raises(MatrixFormatError):
        read_matrix_file(str(broken))
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing\n")
    with pytest.raises(MatrixFormatError):
        read_matrix_file(str(empty))


def test_thread_count(monkeypatch):
    monkeypatch.setenv("SYMFLAG_THREADS", "3")
    assert thread_count() == 3
    for bad in ("x", "0"):
        monkeypatch.setenv("SYMFLAG_THREADS", bad)
        with pytest.raises(ConfigError):
            thread_count()


def test_derive_seed():
    assert derive_seed(1, 2) == derive_seed(1, 2)
    assert derive_seed(1, 2) != derive_seed(1, 3)
