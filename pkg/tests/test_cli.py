import io
import json

from periodic_twist.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_loewy_display():
    code, text = call("module", "loewy", "M")
    assert code == 0 and "dim 6" in text


def test_omega_dim():
    code, text = call("module", "omega", "M", "-n", "1", "--format", "json")
    assert code == 0
    data = json.loads(text)
    assert data["assertions"][0]["ledger"]["dim"] == 12


def test_options_after_subcommand():
    assert call("periodicity", "check", "M", "sigma", "2", "-i", "s6")[0] == 0
    assert call("-i", "s6", "periodicity", "check", "M", "sigma", "2")[0] == 0


def test_failing_check_exits_one(capsys):
    code, _ = call("periodicity", "check", "M", "sigma", "1")
    assert code == 1
    assert "first failing assertion" in capsys.readouterr().err


def test_strong_side_inferred():
    assert call("strong-periodicity", "check", "Mdual", "W")[0] == 0
    assert call("strong-periodicity", "check", "M", "W")[0] == 0


def test_json_is_deterministic():
    a = call("algebra", "info", "--format", "json")[1]
    b = call("algebra", "info", "--format", "json")[1]
    assert a == b
    json.loads(a)


def test_unknown_name_exits_two():
    assert call("module", "loewy", "Nope")[0] == 2


def test_parse_error_exits_two(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("algebra X over GF(3) {\n  vertices\n")
    assert call("-i", str(bad), "golden")[0] == 2


def test_tilt_command():
    code, text = call("-i", "s6", "tilt", "verify", "-J", "3", "--format", "json")
    assert code == 0
    assert json.loads(text)["perversity"].startswith("∅ ⊂_0 {3}")


def test_corpus_dump():
    code, text = call("corpus", "dump", "toys")
    assert code == 0 and "algebra" in text


def test_verify_s8_fails_honestly(capsys):
    code, _ = call("verify", "s8")
    assert code == 1
