import json

import pytest

from schubert_tanner import schubert as sc
from schubert_tanner import verify as vf
from schubert_tanner.code import LinearCode
from schubert_tanner.field import build_field
from schubert_tanner.geometry import downward_closure, full_downset


@pytest.fixture
def corrupted(monkeypatch):
    """Grassmann code with its first coordinate zeroed out."""
    real = sc.grassmann_code

    def fake(l, m, fld):
        code = real(l, m, fld)
        gen = code.gen.array.copy()
        gen[:, 0] = 0
        return LinearCode(fld, code.coords, gen)

    monkeypatch.setattr(sc, "grassmann_code", fake)


def test_ideal_suite_passes(gf3):
    results = vf.ideal_suite(downward_closure([(2, 4)], 2, 4), gf3, messages=20, shuffles=10)
    assert [r.check for r in results] == [
        "schubert-dimension", "tanner-equality", "apartment-closure", "encoder-equivalence",
        "encoder-workload", "min-distance", "dual-structure", "closure-order",
    ]
    assert all(r.passed for r in results)


def test_negative_control_min_distance(corrupted, gf2):
    r = vf.check_min_distance(full_downset(2, 4), gf2)
    assert not r.passed
    assert r.detail["bruteforce"] == 15
    assert isinstance(r.witness, dict) and len(r.witness) == 15


def test_negative_control_parameters(corrupted, gf2):
    r = vf.check_grassmann_parameters(2, 4, gf2)
    assert not r.passed and r.witness


def test_negative_control_tanner(corrupted, gf2):
    r = vf.check_tanner_equality(full_downset(2, 4), gf2)
    assert not r.passed
    assert "error" in r.detail or r.witness


def test_crashing_check_is_reported(monkeypatch, gf2):
    def boom(*args):
        raise RuntimeError("broken")

    monkeypatch.setattr(sc, "dual_checks", boom)
    r = vf.check_dual_structure(full_downset(2, 4), gf2)
    assert not r.passed and r.detail == {"error": "RuntimeError: broken"}


def test_cyclic_check():
    assert vf.check_cyclic_tanner().passed


def test_example_closure_check():
    assert vf.check_example_closure_order(shuffles=20).passed


def test_report_is_stable(gf2):
    s = [downward_closure([(1, 4)], 2, 4)]
    a = vf.report_json(vf.report(vf.run_suite(2, 4, gf2, s, messages=5, shuffles=5), {"x": 1}))
    b = vf.report_json(vf.report(vf.run_suite(2, 4, gf2, s, messages=5, shuffles=5, jobs=2), {"x": 1}))
    assert a == b
    rep = json.loads(a)
    assert list(rep) == ["header", "passed", "total", "failed", "checks"]
    assert list(rep["checks"][0]) == ["check", "claim", "instance", "passed", "detail", "witness"]
    assert rep["passed"]


def test_suite_skips_sweeps_when_too_large(gf2):
    assert [r.check for r in vf.grassmann_suite(2, 4, gf2, sweep_limit=10)] == [
        "plucker-lines", "grassmann-parameters"
    ]
    names = [r.check for r in vf.grassmann_suite(1, 3, build_field(3))]
    assert names == [
        "plucker-lines", "grassmann-parameters", "weight-divisibility", "clique-intersections", "eigenvalue-bounds"
    ]
