"""Exhaustive theorem checks over small Grassmannians.

Every check returns a CheckResult; a report is a JSON object with a fixed
key order so repeated runs are byte-identical.
"""
from __future__ import annotations

import json
import random
from math import comb
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import schubert as sc
from .code import (
    BRUTE_FORCE_LIMIT,
    Codeword,
    LinearCode,
    dual,
    is_information_set,
    label_str,
    min_distance_bruteforce,
    min_weight_codeword,
)
from .field import FieldSpec, build_field
from .geometry import (
    DownSet,
    delta,
    full_downset,
    grassmannian,
    incidence_graph,
    j_set,
    order_ideals,
    plucker_line_is_projective_line,
    schubert_union_points,
)
from .tanner import BipartiteGraph, cyclic_as_tanner, k_closure, maximal_tanner_code


SWEEP_LIMIT = 10**4


@dataclass
class CheckResult:
    check: str
    claim: str
    instance: dict
    passed: bool
    detail: dict = field(default_factory=dict)
    witness: object = None

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "claim": self.claim,
            "instance": self.instance,
            "passed": self.passed,
            "detail": self.detail,
            "witness": self.witness,
        }

    def line(self) -> str:
        inst = " ".join(f"{k}={v}" for k, v in self.instance.items() if v is not None)
        return f"{'PASS' if self.passed else 'FAIL'}  {self.check:<22} {inst}"


CLAIMS = {
    "grassmann-parameters": "C(l,m) has length [m l]_q, dimension binom(m,l), minimum distance q^(l(m-l))",
    "schubert-dimension": "dim C(S) = #S and J_S is an information set",
    "plucker-lines": "every Grassmannian line maps onto a projective line of Pluecker space",
    "tanner-equality": "C(S) equals the maximal Tanner code of the incidence graph of Omega_S",
    "apartment-closure": "the 2-closure of J_S in the incidence graph of Omega_S is Omega_S",
    "encoder-equivalence": "iterative encoding from J_S equals generator-matrix lengthening",
    "encoder-workload": "each constraint fires at most once, so firings <= #V2",
    "min-distance": "d(C(S)) = min over maximal alpha of q^delta(alpha)",
    "dual-structure": "C(S)^perp is spanned by weight-3 line words and has minimum weight 3",
    "weight-divisibility": "q^l and q^(m-l) divide every codeword weight of C(l,m)",
    "clique-intersections": "supports meet lines in 0 or q, top cliques in 0 or q^l, star cliques in 0 or q^(m-l)",
    "eigenvalue-bounds": "nonzero weights lie between the eigenvalue bounds; a1 pair-count identity holds",
    "closure-order": "threshold closure is independent of the constraint scan order",
    "cyclic-tanner": "the cyclic [7,4] Hamming code is the Tanner code of its check-vector shifts",
}


def _instance(l, m, fld: FieldSpec, s: DownSet | None = None) -> dict:
    return {"l": l, "m": m, "q": fld.q, "S": s.label() if s is not None else None}


def _word(c) -> dict:
    return {label_str(a): int(v) for a, v in zip(c.coords, c.values) if v}


def _guard(check: str, inst: dict, fn: Callable[[], CheckResult]) -> CheckResult:
    try:
        return fn()
    except Exception as exc:  # a crashing check is a failing check
        return CheckResult(check, CLAIMS[check], inst, False, {"error": f"{type(exc).__name__}: {exc}"})


# -- whole-Grassmannian checks ---------------------------------------------------


def check_grassmann_parameters(l: int, m: int, fld: FieldSpec) -> CheckResult:
    inst = _instance(l, m, fld)

    def run():
        code = sc.grassmann_code(l, m, fld)
        params = sc.grassmann_parameters(l, m, fld.q)
        d = min_distance_bruteforce(code)
        ok = (code.n, code.k, d) == (params.n, params.dim, params.d)
        witness = None if ok else _word(min_weight_codeword(code))
        return CheckResult(
            "grassmann-parameters", CLAIMS["grassmann-parameters"], inst, ok,
            {"n": code.n, "k": code.k, "d": d, "expected": [params.n, params.dim, params.d]}, witness,
        )

    return _guard("grassmann-parameters", inst, run)


def check_plucker_lines(l: int, m: int, fld: FieldSpec) -> CheckResult:
    inst = _instance(l, m, fld)

    def run():
        grass = grassmannian(l, m, fld)
        bad = [ln for ln in grass.lines if not plucker_line_is_projective_line(fld, ln)]
        params = sc.grassmann_parameters(l, m, fld.q)
        ok = not bad and len(grass.lines) == params.line_count
        return CheckResult(
            "plucker-lines", CLAIMS["plucker-lines"], inst, ok,
            {"lines": len(grass.lines), "expected": params.line_count},
            bad[0].label() if bad else None,
        )

    return _guard("plucker-lines", inst, run)


def _all_codewords(l, m, fld):
    code = sc.grassmann_code(l, m, fld)
    for block in code.codeword_array():
        for row in block:
            if row.any():
                yield Codeword(code.coords, tuple(int(v) for v in row))


def check_divisibility(l: int, m: int, fld: FieldSpec) -> CheckResult:
    inst = _instance(l, m, fld)

    def run():
        q = fld.q
        count, bad = 0, None
        for c in _all_codewords(l, m, fld):
            count += 1
            w = sum(1 for v in c.values if v)
            if w % q**l or w % q ** (m - l):
                bad = c
                break
        return CheckResult(
            "weight-divisibility", CLAIMS["weight-divisibility"], inst, bad is None,
            {"nonzero_codewords": count, "divisors": [q**l, q ** (m - l)]},
            _word(bad) if bad else None,
        )

    return _guard("weight-divisibility", inst, run)


def check_clique_intersections(l: int, m: int, fld: FieldSpec) -> CheckResult:
    inst = _instance(l, m, fld)

    def run():
        grass = grassmannian(l, m, fld)
        seen = {"lines": set(), "tops": set(), "stars": set()}
        count, bad = 0, None
        for c in _all_codewords(l, m, fld):
            count += 1
            rep = sc.support_structure_checks(c, grass)
            seen["lines"] |= rep.line_hits
            seen["tops"] |= rep.top_hits
            seen["stars"] |= rep.star_hits
            if not (rep.lines_ok and rep.tops_ok and rep.stars_ok):
                bad = c
                break
        detail = {k: sorted(v) for k, v in seen.items()}
        detail["nonzero_codewords"] = count
        return CheckResult(
            "clique-intersections", CLAIMS["clique-intersections"], inst, bad is None, detail,
            _word(bad) if bad else None,
        )

    return _guard("clique-intersections", inst, run)


def check_eigenvalue_bounds(l: int, m: int, fld: FieldSpec) -> CheckResult:
    inst = _instance(l, m, fld)

    def run():
        grass = grassmannian(l, m, fld)
        b = sc.eisfeld_bounds(l, m, fld)
        weights, bad = set(), None
        for c in _all_codewords(l, m, fld):
            rep = sc.verify_eisfeld(c, grass, b)
            weights.add(rep.weight)
            if not rep.passed:
                bad = c
                break
        detail = {
            "theta0": b.theta0, "theta1": b.theta1, "theta_l": b.theta_ell,
            "lower": b.lower, "upper": str(b.upper), "weights": sorted(weights),
        }
        return CheckResult(
            "eigenvalue-bounds", CLAIMS["eigenvalue-bounds"], inst, bad is None, detail,
            _word(bad) if bad else None,
        )

    return _guard("eigenvalue-bounds", inst, run)


# -- per-ideal checks --------------------------------------------------------------


def check_schubert_dimension(s: DownSet, fld: FieldSpec) -> CheckResult:
    inst = _instance(s.l, s.m, fld, s)

    def run():
        code = sc.schubert_union_code(s, fld)
        info = is_information_set(code, j_set(s))
        ok = code.k == len(s) and info
        return CheckResult(
            "schubert-dimension", CLAIMS["schubert-dimension"], inst, ok,
            {"n": code.n, "k": code.k, "size_S": len(s), "information_set": info},
        )

    return _guard("schubert-dimension", inst, run)


def check_tanner_equality(s: DownSet, fld: FieldSpec) -> CheckResult:
    inst = _instance(s.l, s.m, fld, s)

    def run():
        code = sc.schubert_union_code(s, fld)
        spec = sc.schubert_tanner_spec(s, fld)
        tanner = maximal_tanner_code(spec, fld)
        ok = tanner == code
        witness = None
        if not ok:
            for row in tanner.gen.array:
                if not code.contains(row):
                    witness = _word(Codeword(tanner.coords, tuple(int(v) for v in row)))
                    break
        return CheckResult(
            "tanner-equality", CLAIMS["tanner-equality"], inst, ok,
            {"n": code.n, "k_code": code.k, "k_tanner": tanner.k, "constraints": len(spec.graph.v2)},
            witness,
        )

    return _guard("tanner-equality", inst, run)


def check_apartment_closure(s: DownSet, fld: FieldSpec) -> CheckResult:
    inst = _instance(s.l, s.m, fld, s)

    def run():
        geo = schubert_union_points(s, fld)
        z, state = sc.apartment_closure(s, fld)
        ok = z == geo.point_set
        missing = [p.label() for p in geo.points if p not in z]
        return CheckResult(
            "apartment-closure", CLAIMS["apartment-closure"], inst, ok,
            {"start": len(s), "closure": len(z), "points": len(geo.points), "firings": state.t},
            missing[:5] or None,
        )

    return _guard("apartment-closure", inst, run)


def _rng(seed: int, s: DownSet, fld: FieldSpec, tag: str) -> random.Random:
    return random.Random(f"{seed}:{tag}:{s.l}:{s.m}:{fld}:{s.label()}")


def check_encoder(s: DownSet, fld: FieldSpec, seed: int = 0, messages: int = 100) -> list[CheckResult]:
    inst = _instance(s.l, s.m, fld, s)
    out = {}

    def run():
        spec = sc.schubert_tanner_spec(s, fld)
        rng = _rng(seed, s, fld, "encode")
        js = j_set(s)
        nv2 = len(spec.graph.v2)
        mismatch, over = None, None
        max_firings = 0
        for _ in range(messages):
            msg = {p: rng.randrange(fld.q) for p in js}
            word, state = sc.encode_schubert(s, msg, fld, spec)
            if word != sc.matrix_encode(s, msg, fld) and mismatch is None:
                mismatch = {label_str(p): v for p, v in msg.items()}
            max_firings = max(max_firings, state.t)
            if (state.t > nv2 or len(set(state.fired)) != len(state.fired)) and over is None:
                over = {"fired": state.t, "constraints": nv2}
        out["workload"] = CheckResult(
            "encoder-workload", CLAIMS["encoder-workload"], inst, over is None,
            {"max_firings": max_firings, "constraints": nv2, "runs": messages}, over,
        )
        return CheckResult(
            "encoder-equivalence", CLAIMS["encoder-equivalence"], inst, mismatch is None,
            {"messages": messages, "seed": seed}, mismatch,
        )

    eq = _guard("encoder-equivalence", inst, run)
    work = out.get("workload") or CheckResult(
        "encoder-workload", CLAIMS["encoder-workload"], inst, False, {"error": "encoder did not run"}
    )
    return [eq, work]


def check_min_distance(s: DownSet, fld: FieldSpec) -> CheckResult:
    inst = _instance(s.l, s.m, fld, s)

    def run():
        code = sc.schubert_union_code(s, fld)
        d = min_distance_bruteforce(code)
        formula = sc.min_distance_formula(s, fld.q)
        wit = sc.min_distance_witness(s, fld)
        wit_ok = code.contains(wit.values) and wit.weight == formula
        ok = d == formula and wit_ok
        witness = None if ok else _word(min_weight_codeword(code))
        return CheckResult(
            "min-distance", CLAIMS["min-distance"], inst, ok,
            {"bruteforce": d, "formula": formula, "maximal": [list(a) for a in s.maximal_elements],
             "deltas": [delta(a) for a in s.maximal_elements], "witness_weight": wit.weight},
            witness,
        )

    return _guard("min-distance", inst, run)


def check_dual_structure(s: DownSet, fld: FieldSpec) -> CheckResult:
    inst = _instance(s.l, s.m, fld, s)

    def run():
        rep = sc.dual_checks(s, fld)
        detail = {
            "dual_dim": rep.dual_dim, "triples": rep.triple_count, "triple_rank": rep.triple_rank,
            "weight_le_2": rep.has_weight_one or rep.has_weight_two, "applicable": rep.applicable,
        }
        # not part of the pass criterion
        covered, sampled = sc.dual_coverage(s, fld)
        detail["coverage_spot_check"] = f"{covered}/{sampled}"
        return CheckResult("dual-structure", CLAIMS["dual-structure"], inst, rep.passed, detail)

    return _guard("dual-structure", inst, run)


def example_graph() -> BipartiteGraph:
    return BipartiteGraph((1, 2, 3, 4), ("a", "b"), {"a": (1, 2, 3), "b": (2, 3, 4)}, 3)


def check_closure_order(s: DownSet, fld: FieldSpec, seed: int = 0, shuffles: int = 100) -> CheckResult:
    inst = _instance(s.l, s.m, fld, s)

    def run():
        rng = _rng(seed, s, fld, "shuffle")
        geo = schubert_union_points(s, fld)
        graph = incidence_graph(geo)
        starts = [j_set(s)]
        pts = list(geo.points)
        for _ in range(3):
            starts.append(rng.sample(pts, min(len(pts), rng.randint(1, 4))))
        bad = None
        for start in starts:
            ref, _ = k_closure(graph, 2, start)
            order = list(graph.v2)
            for _ in range(shuffles):
                rng.shuffle(order)
                z, _ = k_closure(graph, 2, start, order)
                if z != ref:
                    bad = [p.label() for p in start]
                    break
        return CheckResult(
            "closure-order", CLAIMS["closure-order"], inst, bad is None,
            {"starts": len(starts), "shuffles": shuffles}, bad,
        )

    return _guard("closure-order", inst, run)


def check_example_closure_order(seed: int = 0, shuffles: int = 100) -> CheckResult:
    inst = {"graph": "example", "S": None}

    def run():
        g = example_graph()
        rng = random.Random(f"{seed}:example")
        bad = None
        for start in ([1, 2], [1], [2, 3], [1, 4], []):
            ref, _ = k_closure(g, 2, start)
            for _ in range(shuffles):
                order = list(g.v2)
                rng.shuffle(order)
                if k_closure(g, 2, start, order)[0] != ref:
                    bad = start
        return CheckResult("closure-order", CLAIMS["closure-order"], inst, bad is None,
                           {"shuffles": shuffles}, bad)

    return _guard("closure-order", inst, run)


HAMMING_CHECK = (1, 1, 1, 0, 1, 0, 0)


def shift_span_code(h, fld: FieldSpec) -> LinearCode:
    """Dual of the span of all cyclic shifts of h."""
    n = len(h)
    shifts = np.array([[h[(i - s) % n] for i in range(n)] for s in range(n)], dtype=np.int64)
    return dual(LinearCode(fld, range(n), shifts))


def check_cyclic_tanner() -> CheckResult:
    fld = build_field(2)
    inst = {"n": 7, "q": 2, "h": "".join(map(str, HAMMING_CHECK))}

    def run():
        tanner = maximal_tanner_code(cyclic_as_tanner(HAMMING_CHECK, fld))
        oracle = shift_span_code(HAMMING_CHECK, fld)
        d = min_distance_bruteforce(tanner)
        ok = tanner == oracle and (tanner.n, tanner.k, d) == (7, 4, 3)
        return CheckResult("cyclic-tanner", CLAIMS["cyclic-tanner"], inst, ok,
                           {"n": tanner.n, "k": tanner.k, "d": d})

    return _guard("cyclic-tanner", inst, run)


# -- suites ----------------------------------------------------------------------------


def ideal_suite(s: DownSet, fld: FieldSpec, seed: int = 0, messages: int = 100,
                shuffles: int = 100) -> list[CheckResult]:
    out = [
        check_schubert_dimension(s, fld),
        check_tanner_equality(s, fld),
        check_apartment_closure(s, fld),
    ]
    out += check_encoder(s, fld, seed, messages)
    out += [
        check_min_distance(s, fld),
        check_dual_structure(s, fld),
        check_closure_order(s, fld, seed, shuffles),
    ]
    return out


def _ideal_job(args) -> list[CheckResult]:
    members, l, m, p, e, seed, messages, shuffles = args
    s = DownSet.from_members(members, l, m)
    return ideal_suite(s, build_field(p, e), seed, messages, shuffles)


def grassmann_suite(l: int, m: int, fld: FieldSpec, sweep_limit: int = SWEEP_LIMIT) -> list[CheckResult]:
    out = [check_plucker_lines(l, m, fld)]
    words = fld.q ** comb(m, l)
    if words <= BRUTE_FORCE_LIMIT:
        out.append(check_grassmann_parameters(l, m, fld))
    # per-codeword sweeps run in Python, so they get a tighter budget
    if words <= sweep_limit:
        out += [check_divisibility(l, m, fld), check_clique_intersections(l, m, fld)]
        if 2 * l <= m:
            out.append(check_eigenvalue_bounds(l, m, fld))
    return out


def run_suite(l: int, m: int, fld: FieldSpec, ideals: list[DownSet] | None = None, seed: int = 0,
              messages: int = 100, shuffles: int = 100, jobs: int = 1) -> list[CheckResult]:
    if ideals is None:
        ideals = order_ideals(l, m)
    results = grassmann_suite(l, m, fld)
    args = [(s.members, l, m, fld.p, fld.e, seed, messages, shuffles) for s in ideals]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_ideal = list(pool.map(_ideal_job, args))
    else:
        per_ideal = [_ideal_job(a) for a in args]
    for chunk in per_ideal:
        results += chunk
    results.append(check_example_closure_order(seed, shuffles))
    results.append(check_cyclic_tanner())
    return results


def report(results: list[CheckResult], header: dict) -> dict:
    return {
        "header": header,
        "passed": all(r.passed for r in results),
        "total": len(results),
        "failed": sum(1 for r in results if not r.passed),
        "checks": [r.to_dict() for r in results],
    }


def report_json(rep: dict) -> str:
    return json.dumps(rep, indent=2) + "\n"


def default_ideals(l: int, m: int) -> list[DownSet]:
    return order_ideals(l, m)


def full_ideal(l: int, m: int) -> DownSet:
    return full_downset(l, m)
