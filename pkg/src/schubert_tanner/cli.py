"""Command-line entry point: ``schubert-tanner <command> [options]``."""
from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from . import schubert as sc
from . import verify as vf
from .code import (
    CodeError,
    InstanceTooLarge,
    UnknownLabelError,
    code_to_text,
    label_str,
    weight_distribution,
    weight_distribution_text,
)
from .field import FieldSpec, build_field, field_of_order
from .geometry import (
    DownSet,
    downward_closure,
    grassmannian,
    incidence_graph,
    j_set,
    order_ideals,
    schubert_union_points,
)
from .tanner import BipartiteGraph, k_closure


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    e: int = 1
    l: int | None = None
    m: int | None = None
    ideal: tuple | None = None
    all_ideals: bool = False
    out: Path | None = None
    seed: int = 0
    jobs: int = 1
    message: Path | None = None
    graph: Path | None = None
    k: int = 2
    start: tuple = ()
    messages: int = 100
    shuffles: int = 100

    @property
    def field(self) -> FieldSpec:
        return build_field(self.p, self.e)


def parse_ideal(text: str) -> tuple:
    try:
        return tuple(tuple(int(v) for v in part.split(",")) for part in text.split(";") if part.strip())
    except ValueError:
        raise UsageError(f"cannot parse ideal {text!r}; expected a1,a2[;b1,b2...]") from None


def _add_field(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=int, help="field order (prime power)")
    p.add_argument("--p", type=int, help="field characteristic")
    p.add_argument("--e", type=int, default=None, help="extension degree")


def _add_grass(p: argparse.ArgumentParser) -> None:
    _add_field(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)


def _add_ideal(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--ideal", help="generator tuples a1,a2[;b1,b2...]; closed downward automatically",
                   required=required)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="schubert-tanner", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="describe GF(q) and dump its tables")
    _add_field(p)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("grassmann", help="points, lines, incidence graph and generator of C(l,m)")
    _add_grass(p)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("schubert", help="Schubert union code and its Tanner realization")
    _add_grass(p)
    _add_ideal(p, True)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("encode", help="iteratively lengthen a message on J_S")
    _add_grass(p)
    _add_ideal(p, True)
    p.add_argument("--message", type=Path, help="file of label=value lines (default: random from --seed)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("closure", help="k-threshold closure in a graph file or in the Schubert incidence graph")
    _add_field(p)
    p.add_argument("--l", type=int)
    p.add_argument("--m", type=int)
    _add_ideal(p, False)
    p.add_argument("--graph", type=Path)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--start", nargs="*", help="start labels (default: J_S in Schubert mode)")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("verify", help="run the theorem checks")
    _add_grass(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--ideal")
    group.add_argument("--all-ideals", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--messages", type=int, default=100)
    p.add_argument("--shuffles", type=int, default=100)
    p.add_argument("--out", type=Path, help="JSON report path")

    p = sub.add_parser("bounds", help="eigenvalue weight bounds for C(l,m)")
    _add_grass(p)
    p.add_argument("--out", type=Path)
    return ap


def to_config(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    for name in ("l", "m", "out", "seed", "jobs", "message", "graph", "k", "messages", "shuffles"):
        if getattr(ns, name, None) is not None:
            setattr(cfg, name, getattr(ns, name))
    cfg.all_ideals = getattr(ns, "all_ideals", False)
    cfg.start = tuple(getattr(ns, "start", None) or ())
    if getattr(ns, "ideal", None):
        cfg.ideal = parse_ideal(ns.ideal)

    needs_field = not (cfg.command == "closure" and cfg.graph is not None)
    q, p, e = getattr(ns, "q", None), getattr(ns, "p", None), getattr(ns, "e", None)
    if q is not None:
        fld = field_of_order(q)
        if (p is not None and p != fld.p) or (e is not None and e != fld.e):
            raise UsageError(f"--q {q} disagrees with --p/--e")
        cfg.p, cfg.e = fld.p, fld.e
    elif p is not None:
        cfg.p, cfg.e = p, e or 1
        build_field(cfg.p, cfg.e)
    elif needs_field:
        raise UsageError("give the field with --q or --p [--e]")

    if cfg.command == "closure" and cfg.graph is None:
        if cfg.l is None or cfg.m is None or cfg.ideal is None:
            raise UsageError("closure needs --graph, or --l, --m and --ideal")
    if cfg.l is not None and cfg.m is not None and not 1 <= cfg.l <= cfg.m:
        raise UsageError(f"need 1 <= l <= m, got l={cfg.l}, m={cfg.m}")
    if cfg.jobs < 1:
        raise UsageError("--jobs must be positive")
    return cfg


def _ideal(cfg: RunConfig) -> DownSet:
    s = downward_closure(cfg.ideal, cfg.l, cfg.m)
    members = " ".join(",".join(map(str, a)) for a in s.members)
    print(f"S = {s.label()}  (downward closure: {members})")
    return s


def _write(out: Path | None, name: str, text: str) -> None:
    if out is None:
        return
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(text)


def _lines_text(geo) -> str:
    g = geo.grass
    head = f"# lines G({g.l},{g.m}) q={g.q} count={len(geo.lines)}"
    return "\n".join([head] + [ln.label() for ln in geo.lines]) + "\n"


def _kv(pairs) -> str:
    return "".join(f"{k} {v}\n" for k, v in pairs)


# -- commands -----------------------------------------------------------------------


def cmd_field(cfg: RunConfig) -> int:
    fld = cfg.field
    print(f"{fld}  q={fld.q}")
    body = [str(fld), "add"] + [" ".join(map(str, r)) for r in fld.add_table]
    body += ["mul"] + [" ".join(map(str, r)) for r in fld.mul_table]
    _write(cfg.out, "field.txt", "\n".join(body) + "\n")
    return 0


def _geometry_files(cfg: RunConfig, geo, code) -> None:
    _write(cfg.out, "points.txt", geo.to_text())
    _write(cfg.out, "lines.txt", _lines_text(geo))
    _write(cfg.out, "incidence.txt", incidence_graph(geo).to_text())
    _write(cfg.out, "generator.txt", code_to_text(code))


def cmd_grassmann(cfg: RunConfig) -> int:
    fld = cfg.field
    grass = grassmannian(cfg.l, cfg.m, fld)
    geo = grass.geometry
    code = sc.grassmann_code(cfg.l, cfg.m, fld)
    params = sc.grassmann_parameters(cfg.l, cfg.m, fld.q)
    _geometry_files(cfg, geo, code)
    summary = [("l", cfg.l), ("m", cfg.m), ("field", fld), ("points", len(geo.points)),
               ("lines", len(geo.lines)), ("length", code.n), ("dimension", code.k),
               ("min_distance_formula", params.d)]
    _write(cfg.out, "params.txt", _kv(summary))
    print(f"{len(geo.points)} points, {len(geo.lines)} lines, [{code.n},{code.k}] generator")
    return 0


def cmd_schubert(cfg: RunConfig) -> int:
    fld = cfg.field
    s = _ideal(cfg)
    geo = schubert_union_points(s, fld)
    code = sc.schubert_union_code(s, fld)
    spec = sc.schubert_tanner_spec(s, fld)
    _geometry_files(cfg, geo, code)
    d = sc.min_distance_formula(s, fld.q)
    summary = [("S", s.label()), ("field", fld), ("length", code.n), ("dimension", code.k),
               ("min_distance_formula", d), ("constraints", len(spec.graph.v2)),
               ("component", f"[{fld.q + 1},2]")]
    _write(cfg.out, "params.txt", _kv(summary))
    print(f"[{code.n},{code.k},{d}] code, {len(spec.graph.v2)} line constraints")
    return 0


def read_message(path: Path, labels) -> dict:
    by_label = {label_str(p): p for p in labels}
    msg = {}
    for n, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition("=")
        key = key.strip()
        if not sep:
            raise CodeError(f"{path}:{n}: expected label=value, got {line!r}")
        if key not in by_label:
            raise UnknownLabelError(f"unknown label {key!r} (not in J_S)")
        try:
            msg[by_label[key]] = int(val)
        except ValueError:
            raise CodeError(f"{path}:{n}: value {val.strip()!r} is not an integer") from None
    missing = [label_str(p) for p in labels if p not in msg]
    if missing:
        raise CodeError(f"message is missing labels: {', '.join(missing)}")
    return msg


def cmd_encode(cfg: RunConfig) -> int:
    fld = cfg.field
    s = _ideal(cfg)
    js = j_set(s)
    if cfg.message is not None:
        msg = read_message(cfg.message, js)
        bad = [label_str(p) for p, v in msg.items() if not 0 <= v < fld.q]
        if bad:
            raise CodeError(f"values outside GF({fld.q}) at {', '.join(bad)}")
    else:
        rng = random.Random(cfg.seed)
        msg = {p: rng.randrange(fld.q) for p in js}
    word, state = sc.encode_schubert(s, msg, fld)
    ok = word == sc.matrix_encode(s, msg, fld)
    _write(cfg.out, "message.txt", "".join(f"{label_str(p)}={msg[p]}\n" for p in js))
    _write(cfg.out, "codeword.txt", "".join(f"{label_str(p)}={v}\n" for p, v in zip(word.coords, word.values)))
    _write(cfg.out, "trace.txt", "".join(f"{i} {ln.label()}\n" for i, ln in enumerate(state.fired, 1)))
    print(f"weight {word.weight}, {state.t} constraints fired")
    print(f"cross-check: {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_closure(cfg: RunConfig) -> int:
    if cfg.graph is not None:
        graph = BipartiteGraph.from_text(cfg.graph.read_text())
        known = set(graph.v1)
        for a in cfg.start:
            if a not in known:
                raise UnknownLabelError(f"unknown label {a!r} (not a variable node)")
        start = list(cfg.start)
    else:
        fld = cfg.field
        s = _ideal(cfg)
        geo = schubert_union_points(s, fld)
        graph = incidence_graph(geo)
        by_label = {label_str(p): p for p in geo.points}
        if cfg.start:
            unknown = [a for a in cfg.start if a not in by_label]
            if unknown:
                raise UnknownLabelError(f"unknown label {unknown[0]!r} (not a point of Omega_S)")
            start = [by_label[a] for a in cfg.start]
        else:
            start = j_set(s)
    z, state = k_closure(graph, cfg.k, start)
    closure = [v for v in graph.v1 if v in z]
    _write(cfg.out, "closure.txt", "".join(label_str(v) + "\n" for v in closure))
    _write(cfg.out, "trace.txt", "".join(f"{i} {label_str(u)}\n" for i, u in enumerate(state.fired, 1)))
    full = len(closure) == len(graph.v1)
    print(f"closure {len(closure)}/{len(graph.v1)} after {state.t} firings"
          f"{' (forcing)' if full else ''}")
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    fld = cfg.field
    if cfg.ideal is not None:
        ideals = [_ideal(cfg)]
    else:
        ideals = order_ideals(cfg.l, cfg.m)
    results = vf.run_suite(cfg.l, cfg.m, fld, ideals, cfg.seed, cfg.messages, cfg.shuffles, cfg.jobs)
    for r in results:
        print(r.line())
    header = {"l": cfg.l, "m": cfg.m, "field": str(fld), "seed": cfg.seed,
              "ideals": [s.label() for s in ideals]}
    rep = vf.report(results, header)
    if cfg.out is not None:
        cfg.out.parent.mkdir(parents=True, exist_ok=True)
        cfg.out.write_text(vf.report_json(rep))
    print(f"{rep['total'] - rep['failed']}/{rep['total']} checks passed")
    return 0 if rep["passed"] else 1


def cmd_bounds(cfg: RunConfig) -> int:
    fld = cfg.field
    b = sc.eisfeld_bounds(cfg.l, cfg.m, fld)
    rows = [("theta0", b.theta0), ("theta1", b.theta1), ("theta_l", b.theta_ell),
            ("lower", b.lower), ("upper", b.upper)]
    try:
        dist = weight_distribution(sc.grassmann_code(cfg.l, cfg.m, fld))
    except InstanceTooLarge:
        dist = None
    text = _kv(rows)
    for k, v in rows:
        print(f"{k} = {v}")
    if dist is not None:
        inside = all(b.lower <= w <= b.upper for w in dist if w)
        print(f"nonzero weights {sorted(w for w in dist if w)}: {'inside' if inside else 'OUTSIDE'} bounds")
        text += "# weight distribution\n" + weight_distribution_text(dist)
    _write(cfg.out, "bounds.txt", text)
    return 0


COMMANDS = {
    "field": cmd_field,
    "grassmann": cmd_grassmann,
    "schubert": cmd_schubert,
    "encode": cmd_encode,
    "closure": cmd_closure,
    "verify": cmd_verify,
    "bounds": cmd_bounds,
}


def main(argv=None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        cfg = to_config(ns)
    except ValueError as exc:
        ap.error(str(exc))
    try:
        return COMMANDS[cfg.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
