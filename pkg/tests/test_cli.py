import pytest

from siegel_pw.cli import main, read_config, validate, UsageError
from siegel_pw.experiments import EXPERIMENTS, SCHEMAS


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert out.split() == list(EXPERIMENTS)


def test_schema(capsys):
    code, out, _ = run(capsys, "run", "pw-frame", "--schema")
    assert code == 0
    assert out.strip() == ",".join(SCHEMAS["pw-frame"])


def test_run_writes_outputs(tmp_path, capsys):
    code, out, _ = run(capsys, "run", "sinc-closed-form", "--seed", "7", "--out", str(tmp_path))
    assert code == 0
    assert out.startswith("PASS sinc-closed-form")
    csv_text = (tmp_path / "sinc-closed-form.csv").read_text()
    assert csv_text.splitlines()[0] == ",".join(SCHEMAS["sinc-closed-form"])
    assert (tmp_path / "sinc-closed-form.summary.txt").read_text().strip() == out.strip()
    assert not list(tmp_path.glob(".tmp-*"))


def test_reruns_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "--experiment", "basis-gram", "--seed", "3", "--out", str(a))
    run(capsys, "basis-gram", "--seed", "3", "--out", str(b))
    assert (a / "basis-gram.csv").read_bytes() == (b / "basis-gram.csv").read_bytes()


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "params.cfg"
    cfg.write_text("# demo\na = 2.0\nseed = 5  # inline\n")
    assert read_config(cfg) == {"a": 2.0, "seed": 5}
    code, out, _ = run(capsys, "kernel-repro", "--config", str(cfg), "--a", "1.0", "--out", str(tmp_path))
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["run", "no-such-experiment"],
    [],
    ["run", "plancherel", "--experiment", "schur"],
    ["run", "plancherel", "--n", "0"],
    ["run", "plancherel", "--s", "2.5"],
    ["run", "plancherel", "--set", "oops"],
    ["run", "plancherel", "--config", "/nonexistent/file.cfg"],
])
def test_usage_errors_exit_2(argv, capsys, tmp_path):
    code, _, err = run(capsys, *argv, "--out", str(tmp_path))
    assert code == 2
    assert "error" in err


def test_validate():
    validate({"n": 2, "s": 2.5, "seed": 0})
    with pytest.raises(UsageError):
        validate({"K_t": 0})
    with pytest.raises(UsageError):
        validate({"seed": -1})
