"""Weight distribution of C(l,m) against its eigenvalue bounds.

    python3 scripts/weight_spectrum.py --l 2 --m 4 --q 2 3 4
"""
import argparse
from dataclasses import dataclass

from schubert_tanner import schubert as sc
from schubert_tanner.code import weight_distribution
from schubert_tanner.field import field_of_order


@dataclass
class SpectrumConfig:
    l: int
    m: int
    fields: list[int]


def spectrum(cfg: SpectrumConfig):
    for q in cfg.fields:
        fld = field_of_order(q)
        dist = weight_distribution(sc.grassmann_code(cfg.l, cfg.m, fld))
        b = sc.eisfeld_bounds(cfg.l, cfg.m, fld) if 2 * cfg.l <= cfg.m else None
        yield q, dist, b


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--l", type=int, default=2)
    ap.add_argument("--m", type=int, default=4)
    ap.add_argument("--q", nargs="+", type=int, default=[2, 3])
    args = ap.parse_args()
    for q, dist, b in spectrum(SpectrumConfig(args.l, args.m, args.q)):
        print(f"C({args.l},{args.m}) over GF({q})")
        for w, c in dist.items():
            print(f"  weight {w:>5}: {c}")
        if b is not None:
            nonzero = [w for w in dist if w]
            ok = all(b.lower <= w <= b.upper for w in nonzero)
            print(f"  bounds [{b.lower}, {b.upper}] theta=({b.theta0},{b.theta1},{b.theta_ell}) "
                  f"{'all weights inside' if ok else 'VIOLATED'}")


if __name__ == "__main__":
    main()
