import json
import subprocess
import sys

import pytest

from schubert_tanner import schubert as sc
from schubert_tanner.cli import main, parse_ideal
from schubert_tanner.code import LinearCode


def run(*args):
    return main([str(a) for a in args])


def test_grassmann_outputs(tmp_path, capsys):
    assert run("grassmann", "--q", 2, "--l", 2, "--m", 4, "--out", tmp_path) == 0
    assert "35 points, 105 lines, [35,6] generator" in capsys.readouterr().out
    assert {p.name for p in tmp_path.iterdir()} == {
        "points.txt", "lines.txt", "incidence.txt", "generator.txt", "params.txt"
    }
    assert (tmp_path / "incidence.txt").read_text().startswith("35 105 3\n")


def test_grassmann_small(capsys):
    assert run("grassmann", "--q", 2, "--l", 1, "--m", 2) == 0
    assert "3 points, 1 lines" in capsys.readouterr().out


def test_l_bigger_than_m_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        run("grassmann", "--q", 2, "--l", 3, "--m", 2)
    assert exc.value.code == 2


def test_bad_field_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        run("grassmann", "--q", 6, "--l", 2, "--m", 4)
    assert exc.value.code == 2


def test_parse_ideal():
    assert parse_ideal("1,4;2,3") == ((1, 4), (2, 3))


def test_ideal_echoes_closure(capsys):
    assert run("schubert", "--q", 2, "--l", 2, "--m", 4, "--ideal", "2,4") == 0
    out = capsys.readouterr().out
    assert "downward closure: 1,2 1,3 1,4 2,3 2,4" in out
    assert "[19,5,8]" in out


def test_encode_zero_message(tmp_path, capsys):
    run("encode", "--q", 3, "--l", 2, "--m", 4, "--ideal", "2,4", "--out", tmp_path / "r")
    labels = [ln.split("=")[0] for ln in (tmp_path / "r" / "message.txt").read_text().splitlines()]
    msg = tmp_path / "zero.txt"
    msg.write_text("".join(f"{a}=0\n" for a in labels))
    capsys.readouterr()
    assert run("encode", "--q", 3, "--l", 2, "--m", 4, "--ideal", "2,4", "--message", msg, "--out", tmp_path / "z") == 0
    assert "cross-check: pass" in capsys.readouterr().out
    values = [ln.split("=")[1] for ln in (tmp_path / "z" / "codeword.txt").read_text().splitlines()]
    assert len(values) == 49 and set(values) == {"0"}


def test_encode_deterministic(tmp_path):
    for name in ("a", "b"):
        assert run("encode", "--q", 3, "--l", 2, "--m", 4, "--ideal", "2,4", "--seed", 11, "--out", tmp_path / name) == 0
    for f in ("message.txt", "codeword.txt", "trace.txt"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def test_encode_unknown_label(tmp_path, capsys):
    msg = tmp_path / "m.txt"
    msg.write_text("1,0,0,0;0,1,0,0=1\nnot-a-point=2\n")
    assert run("encode", "--q", 3, "--l", 2, "--m", 4, "--ideal", "2,4", "--message", msg) == 2
    assert "not-a-point" in capsys.readouterr().err


def test_encode_malformed(tmp_path, capsys):
    msg = tmp_path / "m.txt"
    msg.write_text("garbage\n")
    assert run("encode", "--q", 2, "--l", 2, "--m", 4, "--ideal", "1,3", "--message", msg) == 2
    assert "label=value" in capsys.readouterr().err


def test_closure_graph_file(tmp_path, capsys, small_graph):
    g = tmp_path / "g.txt"
    g.write_text(small_graph.to_text())
    assert run("closure", "--graph", g, "--k", 2, "--start", 1, 2, "--out", tmp_path / "c") == 0
    assert "closure 4/4 after 2 firings" in capsys.readouterr().out
    assert (tmp_path / "c" / "trace.txt").read_text() == "1 a\n2 b\n"
    assert run("closure", "--graph", g, "--k", 2, "--start", 1) == 0
    assert "closure 1/4" in capsys.readouterr().out


def test_closure_schubert(capsys):
    assert run("closure", "--q", 3, "--l", 2, "--m", 4, "--ideal", "1,4;2,3") == 0
    assert "(forcing)" in capsys.readouterr().out


def test_bounds(capsys):
    assert run("bounds", "--q", 2, "--l", 2, "--m", 4) == 0
    out = capsys.readouterr().out
    assert "lower = 14" in out and "upper = 20" in out and "inside" in out


def test_field(tmp_path, capsys):
    assert run("field", "--p", 2, "--e", 2, "--out", tmp_path) == 0
    assert capsys.readouterr().out.startswith("2^2/modulus=7")
    assert "mul\n0 0 0 0\n0 1 2 3\n0 2 3 1\n0 3 1 2\n" in (tmp_path / "field.txt").read_text()


def test_verify_all_ideals(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("verify", "--q", 2, "--l", 2, "--m", 4, "--all-ideals", "--out", a) == 0
    assert run("verify", "--q", 2, "--l", 2, "--m", 4, "--all-ideals", "--jobs", 2, "--out", b) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["passed"] and rep["failed"] == 0 and len(rep["header"]["ideals"]) == 7


def test_verify_single_ideal_gf3():
    assert run("verify", "--q", 3, "--l", 2, "--m", 4, "--ideal", "2,4") == 0


def test_verify_fails_on_corrupted_generator(monkeypatch, tmp_path):
    real = sc.grassmann_code

    def fake(l, m, fld):
        code = real(l, m, fld)
        gen = code.gen.array.copy()
        gen[:, 0] = 0
        return LinearCode(fld, code.coords, gen)

    monkeypatch.setattr(sc, "grassmann_code", fake)
    out = tmp_path / "r.json"
    assert run("verify", "--q", 2, "--l", 2, "--m", 4, "--ideal", "3,4", "--messages", 5, "--out", out) == 1
    rep = json.loads(out.read_text())
    bad = {c["check"]: c for c in rep["checks"] if not c["passed"]}
    assert "min-distance" in bad and bad["min-distance"]["witness"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "schubert_tanner", "grassmann", "--q", "2", "--l", "1", "--m", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "3 points" in proc.stdout
