"""Grassmann, Schubert and Schubert union codes, and their Tanner realization
on the point-line incidence graph."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence

import numpy as np

from .code import (
    Codeword,
    LinearCode,
    is_mds,
    min_distance_bruteforce,
    project,
    systematic_encode,
)
from .field import FieldSpec
from .geometry import (
    DownSet,
    GrassLine,
    Grassmannian,
    delta,
    downward_closure,
    enumerate_grassmannian,
    gaussian_binomial,
    grassmannian,
    incidence_graph,
    is_subspace,
    j_set,
    line_representative,
    schubert_union_points,
)
from .matrix import MatrixGF, det_array, matmul, rank_array
from .tanner import ClosureState, TannerSpec, TannerSpecError, iterative_encode, k_closure


@dataclass(frozen=True)
class GrassmannParameters:
    l: int
    m: int
    q: int
    n: int
    dim: int
    d: int
    line_count: int
    lines_per_point: int


def grassmann_parameters(l: int, m: int, q: int) -> GrassmannParameters:
    return GrassmannParameters(
        l,
        m,
        q,
        n=gaussian_binomial(m, l, q),
        dim=comb(m, l),
        d=q ** (l * (m - l)),
        line_count=gaussian_binomial(m, l + 1, q) * gaussian_binomial(l + 1, 2, q),
        lines_per_point=gaussian_binomial(m - l, 1, q) * gaussian_binomial(l, 1, q),
    )


# -- codes ----------------------------------------------------------------------


def plucker_generator(l: int, m: int, fld: FieldSpec) -> MatrixGF:
    """Rows indexed by I(l, m) in lex order, columns by the enumerated points."""
    return MatrixGF(fld, grassmannian(l, m, fld).plucker_matrix)


@lru_cache(maxsize=32)
def grassmann_code(l: int, m: int, fld: FieldSpec) -> LinearCode:
    grass = grassmannian(l, m, fld)
    return LinearCode(fld, grass.points, grass.plucker_matrix)


def schubert_union_code(s: DownSet, fld: FieldSpec) -> LinearCode:
    """Projection of the Grassmann code onto Omega_S."""
    points = schubert_union_points(s, fld).points
    return project(grassmann_code(s.l, s.m, fld), points)


def schubert_code(alpha: Sequence[int], l: int, m: int, fld: FieldSpec) -> LinearCode:
    return schubert_union_code(downward_closure([alpha], l, m), fld)


def generator_row(s: DownSet, alpha: Sequence[int], fld: FieldSpec) -> Codeword:
    """The codeword det_alpha restricted to Omega_S."""
    grass = grassmannian(s.l, s.m, fld)
    row = grass.plucker_matrix[grass.tuples.index(tuple(alpha))]
    pts = schubert_union_points(s, fld).points
    return Codeword(pts, tuple(int(row[grass.index[p]]) for p in pts))


# -- line structure ---------------------------------------------------------------


def line_scalars(fld: FieldSpec, line: GrassLine) -> dict:
    """lambda_P with det_I(RREF basis of P) = lambda_P * det_I([Z; x u + y w]) for all I."""
    out = {}
    for p, param in zip(line.points, line.params):
        rep = line_representative(fld, line, param)
        d = det_array(fld, rep[:, [c - 1 for c in p.pivots]])
        out[p] = fld.inv(d)
    return out


def line_component_code(fld: FieldSpec, line: GrassLine) -> LinearCode:
    """The doubly extended RS code on the line's parameters, columns scaled by lambda_P."""
    lam = line_scalars(fld, line)
    gen = np.array(
        [[fld.mul(lam[p], x) for p, (x, _) in zip(line.points, line.params)],
         [fld.mul(lam[p], y) for p, (_, y) in zip(line.points, line.params)]],
        dtype=np.int64,
    )
    return LinearCode(fld, line.params, gen)


def line_parity_checks(fld: FieldSpec, line: GrassLine) -> list[dict]:
    """Weight-3 dual words on (P_b, P_0, P_inf), one for each nonzero b.

    Multilinearity in the last row gives f([Z; u + b w]) = f([Z; u]) + b f([Z; w]),
    so c_b / lam_b - c_0 / lam_0 - b c_inf / lam_inf = 0.
    """
    lam = line_scalars(fld, line)
    by_param = dict(zip(line.params, line.points))
    p_inf, p_0 = by_param[(0, 1)], by_param[(1, 0)]
    checks = []
    for b in range(1, fld.q):
        p_b = by_param[(1, b)]
        checks.append({
            p_b: fld.inv(lam[p_b]),
            p_0: fld.neg(fld.inv(lam[p_0])),
            p_inf: fld.neg(fld.mul(b, fld.inv(lam[p_inf]))),
        })
    return checks


def schubert_tanner_spec(s: DownSet, fld: FieldSpec) -> TannerSpec:
    """Incidence graph of Omega_S with the projected code on every line."""
    geo = schubert_union_points(s, fld)
    code = schubert_union_code(s, fld)
    graph = incidence_graph(geo)
    components, phi = {}, {}
    q = fld.q
    for line in geo.lines:
        local = project(code, line.points)
        param = line.param_of()
        cu = local.relabel(param).reorder(line.params)
        if cu.n != q + 1 or cu.k != 2 or not is_mds(cu):
            raise TannerSpecError(f"line {line.label()} projects to a [{cu.n},{cu.k}] non-RS code")
        if cu != line_component_code(fld, line):
            raise TannerSpecError(f"line {line.label()} disagrees with its parameterization")
        components[line] = cu
        phi[line] = param
    return TannerSpec(graph, components, phi, fld)


def apartment_closure(s: DownSet, fld: FieldSpec) -> tuple[frozenset, ClosureState]:
    geo = schubert_union_points(s, fld)
    return k_closure(incidence_graph(geo), 2, j_set(s))


def closure_of_apartment(s: DownSet, fld: FieldSpec) -> bool:
    z, _ = apartment_closure(s, fld)
    return z == schubert_union_points(s, fld).point_set


def encode_schubert(
    s: DownSet, message: Mapping, fld: FieldSpec, spec: TannerSpec | None = None
) -> tuple[Codeword, ClosureState]:
    """Iteratively lengthen a message on J_S to a codeword on Omega_S."""
    spec = spec or schubert_tanner_spec(s, fld)
    word, state = iterative_encode(spec, j_set(s), message)
    points = spec.graph.v1
    missing = [p for p in points if p not in word]
    if missing:
        raise AssertionError(f"encoder left {len(missing)} positions undetermined")
    return Codeword(points, tuple(word[p] for p in points)), state


def matrix_encode(s: DownSet, message: Mapping, fld: FieldSpec) -> Codeword:
    return systematic_encode(schubert_union_code(s, fld), message)


# -- minimum distance ---------------------------------------------------------------


def min_distance_formula(s: DownSet, q: int) -> int:
    return min(q ** delta(a) for a in s.maximal_elements)


def min_distance_witness(s: DownSet, fld: FieldSpec) -> Codeword:
    """Generator row of a maximal element attaining the formula."""
    alpha = min(s.maximal_elements, key=lambda a: (delta(a), a))
    return generator_row(s, alpha, fld)


def verify_min_distance(s: DownSet, fld: FieldSpec) -> bool:
    return min_distance_bruteforce(schubert_union_code(s, fld)) == min_distance_formula(s, fld.q)


# -- dual structure -------------------------------------------------------------------


@dataclass(frozen=True)
class DualReport:
    n: int
    k: int
    dual_dim: int
    triple_count: int
    triple_rank: int
    triples_in_dual: bool
    has_weight_one: bool
    has_weight_two: bool
    applicable: bool

    @property
    def spanned_by_triples(self) -> bool:
        return self.triples_in_dual and self.triple_rank == self.dual_dim

    @property
    def min_weight_three(self) -> bool:
        return self.triple_count > 0 and not (self.has_weight_one or self.has_weight_two)

    @property
    def passed(self) -> bool:
        if not self.applicable:
            return self.spanned_by_triples
        return self.spanned_by_triples and self.min_weight_three


def triple_matrix(s: DownSet, fld: FieldSpec) -> np.ndarray:
    geo = schubert_union_points(s, fld)
    index = {p: i for i, p in enumerate(geo.points)}
    rows = []
    for line in geo.lines:
        for check in line_parity_checks(fld, line):
            row = np.zeros(len(geo.points), dtype=np.int64)
            for p, v in check.items():
                row[index[p]] = v
            rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(geo.points))


def low_weight_dual_words(code: LinearCode) -> tuple[bool, bool]:
    """(weight-1 dual word exists, weight-2 dual word exists).

    A weight-1 dual word sits on a zero column; a weight-2 one on a pair of
    proportional nonzero columns.
    """
    fld = code.field
    g = code.gen.array
    zero_cols = ~g.any(axis=0)
    seen = set()
    pair = False
    for j in np.nonzero(~zero_cols)[0]:
        col = g[:, j]
        lead = col[np.nonzero(col)[0][0]]
        key = tuple(fld.mul_table[fld.inv_table[lead], col].tolist())
        if key in seen:
            pair = True
            break
        seen.add(key)
    return bool(zero_cols.any()), pair


def dual_checks(s: DownSet, fld: FieldSpec) -> DualReport:
    code = schubert_union_code(s, fld)
    trip = triple_matrix(s, fld)
    in_dual = not matmul(fld, code.gen.array, trip.T).any() if trip.size else True
    w1, w2 = low_weight_dual_words(code)
    bottom = tuple(range(1, s.l + 1))
    return DualReport(
        n=code.n,
        k=code.k,
        dual_dim=code.n - code.k,
        triple_count=trip.shape[0],
        triple_rank=rank_array(fld, trip) if trip.size else 0,
        triples_in_dual=bool(in_dual),
        has_weight_one=w1,
        has_weight_two=w2,
        applicable=s.members != (bottom,),
    )


def dual_coverage(s: DownSet, fld: FieldSpec, samples: int = 10, seed: int = 0) -> tuple[int, int]:
    """Spot-check that sampled positions lie on some weight-3 dual word.

    Returns (covered, sampled). Informational only.
    """
    geo = schubert_union_points(s, fld)
    trip = triple_matrix(s, fld)
    hit = trip.any(axis=0) if trip.size else np.zeros(len(geo.points), dtype=bool)
    rng = random.Random(f"{seed}:{s.label()}:{fld}")
    idx = rng.sample(range(len(geo.points)), min(samples, len(geo.points)))
    return sum(1 for i in idx if hit[i]), len(idx)


# -- support structure of Grassmann codewords ---------------------------------------------


@lru_cache(maxsize=8)
def clique_families(grass: Grassmannian) -> tuple[list, list]:
    """(star cliques, top cliques) as lists of frozensets of points."""
    fld = grass.field
    stars, tops = [], []
    if grass.l >= 1:
        for sp in enumerate_grassmannian(grass.l - 1, grass.m, fld):
            stars.append(frozenset(w for w in grass.points if is_subspace(fld, sp, w)))
    if grass.l + 1 <= grass.m:
        for t in enumerate_grassmannian(grass.l + 1, grass.m, fld):
            tops.append(frozenset(w for w in grass.points if is_subspace(fld, w, t)))
    return stars, tops


@dataclass(frozen=True)
class SupportReport:
    weight: int
    line_hits: frozenset
    top_hits: frozenset
    star_hits: frozenset
    lines_ok: bool
    tops_ok: bool
    stars_ok: bool
    divisible: bool

    @property
    def passed(self) -> bool:
        return self.lines_ok and self.tops_ok and self.stars_ok and self.divisible


def support_structure_checks(c: Codeword, grass: Grassmannian) -> SupportReport:
    q, l, m = grass.q, grass.l, grass.m
    supp = {p for p, v in zip(c.coords, c.values) if v}
    line_hits = frozenset(sum(1 for p in ln.points if p in supp) for ln in grass.lines)
    stars, tops = clique_families(grass)
    top_hits = frozenset(len(t & supp) for t in tops)
    star_hits = frozenset(len(s & supp) for s in stars)
    w = len(supp)
    return SupportReport(
        weight=w,
        line_hits=line_hits,
        top_hits=top_hits,
        star_hits=star_hits,
        lines_ok=line_hits <= {0, q},
        tops_ok=top_hits <= {0, q**l},
        stars_ok=star_hits <= {0, q ** (m - l)},
        divisible=w % q**l == 0 and w % q ** (m - l) == 0,
    )


# -- eigenvalue bounds -------------------------------------------------------------------


@dataclass(frozen=True)
class EisfeldBounds:
    l: int
    m: int
    q: int
    theta0: int
    theta1: int
    theta_ell: int
    lower: int
    upper: Fraction

    def a1_bounds(self, size: int) -> tuple[Fraction, Fraction]:
        """Lower and upper bounds on collinear ordered pairs in a set of the given size."""
        n = gaussian_binomial(self.m, self.l, self.q)
        lo = Fraction(size, n) * ((self.theta0 - self.theta_ell) * size + self.theta_ell * n)
        hi = Fraction(size, n) * ((self.theta0 - self.theta1) * size + self.theta1 * n)
        return lo, hi


def eisfeld_bounds(l: int, m: int, fld: FieldSpec) -> EisfeldBounds:
    if 2 * l > m:
        raise ValueError(f"eigenvalue bounds need 2l <= m, got l={l}, m={m}")
    q = fld.q
    gb = gaussian_binomial
    return EisfeldBounds(
        l,
        m,
        q,
        theta0=q * gb(m - l, 1, q) * gb(l, 1, q),
        theta1=q * q * gb(m - l - 1, 1, q) * gb(l - 1, 1, q) - 1,
        theta_ell=-gb(l, 1, q),
        lower=gb(m, l, q) - gb(m - l, 1, q) * gb(m - 1, l - 1, q),
        upper=Fraction(q ** (m - l), gb(m - l + 1, 1, q)) * gb(m, l, q),
    )


@lru_cache(maxsize=8)
def adjacency(grass: Grassmannian) -> np.ndarray:
    """Boolean matrix: points meeting in an (l-1)-space."""
    fld = grass.field
    n = len(grass.points)
    arrs = [p.array() for p in grass.points]
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if rank_array(fld, np.concatenate([arrs[i], arrs[j]])) == grass.l + 1:
                adj[i, j] = adj[j, i] = True
    return adj


def collinear_pairs(grass: Grassmannian, points) -> int:
    """Ordered pairs of distinct points of the set lying on a common line."""
    idx = [grass.index[p] for p in points]
    return int(adjacency(grass)[np.ix_(idx, idx)].sum())


@dataclass(frozen=True)
class EisfeldReport:
    weight: int
    in_bounds: bool
    a1_direct: int
    a1_formula: int
    a1_within_eigen_bounds: bool

    @property
    def passed(self) -> bool:
        return self.in_bounds and self.a1_direct == self.a1_formula and self.a1_within_eigen_bounds


def verify_eisfeld(c: Codeword, grass: Grassmannian, bounds: EisfeldBounds | None = None) -> EisfeldReport:
    bounds = bounds or eisfeld_bounds(grass.l, grass.m, grass.field)
    q, l, m = grass.q, grass.l, grass.m
    supp = [p for p, v in zip(c.coords, c.values) if v]
    w = len(supp)
    direct = collinear_pairs(grass, supp)
    formula = w * (q - 1) * gaussian_binomial(m - l, 1, q) * gaussian_binomial(l, 1, q)
    lo, hi = bounds.a1_bounds(w)
    return EisfeldReport(
        weight=w,
        in_bounds=w == 0 or bounds.lower <= w <= bounds.upper,
        a1_direct=direct,
        a1_formula=formula,
        a1_within_eigen_bounds=lo <= direct <= hi,
    )
