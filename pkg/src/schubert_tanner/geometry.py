"""The Grassmannian G(l, m) over GF(q): points, Pluecker coordinates, lines,
Schubert unions and the point-line incidence graph.

Index tuples are 1-based strictly increasing tuples, ordered
lexicographically. A point is an l-dimensional subspace of GF(q)^m stored
by its RREF basis.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .field import FieldSpec
from .matrix import MatrixGF, det_array, matmul, rank_array, rref_array
from .tanner import BipartiteGraph, k_closure

SIZE_CAP = 10**6
IDEAL_CAP = 10**4


class GeometryError(ValueError):
    pass


class GeometryTooLarge(GeometryError):
    pass


def gaussian_binomial(m: int, l: int, q: int) -> int:
    """Number of l-dimensional subspaces of GF(q)^m."""
    if not 0 <= l <= m:
        return 0
    num = den = 1
    for i in range(l):
        num *= q ** (m - i) - 1
        den *= q ** (l - i) - 1
    return num // den


def index_tuples(l: int, m: int) -> list[tuple[int, ...]]:
    """I(l, m) in lexicographic order."""
    return list(itertools.combinations(range(1, m + 1), l))


def delta(alpha: Sequence[int]) -> int:
    return sum(a - i for i, a in enumerate(alpha, start=1))


def check_tuple(alpha: Sequence[int], l: int, m: int) -> tuple[int, ...]:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != l or any(b <= a for a, b in zip(alpha, alpha[1:])) or (
        alpha and (alpha[0] < 1 or alpha[-1] > m)
    ):
        raise GeometryError(f"{alpha} is not in I({l},{m})")
    return alpha


# -- points ------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SubspacePoint:
    pivots: tuple  # 1-based pivot columns
    rows: tuple  # RREF basis rows
    m: int

    @property
    def dim(self) -> int:
        return len(self.rows)

    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(len(self.rows), self.m)

    def matrix(self, fld: FieldSpec) -> MatrixGF:
        return MatrixGF(fld, self.array(), self.m)

    def label(self) -> str:
        if not self.rows:
            return f"0^{self.m}"
        return ";".join(",".join(str(v) for v in row) for row in self.rows)

    def __repr__(self) -> str:
        return f"<{self.label()}>"


def point_from_rows(fld: FieldSpec, rows, m: int | None = None) -> SubspacePoint:
    """Canonical point spanned by the given rows (any spanning set)."""
    arr = np.asarray(rows, dtype=np.int64)
    if arr.size == 0:
        return SubspacePoint((), (), int(m if m is not None else arr.shape[-1]))
    red, piv = rref_array(fld, arr)
    red = red[: len(piv)]
    return SubspacePoint(
        tuple(p + 1 for p in piv), tuple(tuple(int(v) for v in row) for row in red), arr.shape[1]
    )


def parse_point(text: str) -> SubspacePoint:
    """Inverse of SubspacePoint.label(); the rows must already be in RREF."""
    text = text.strip()
    if text.startswith("0^"):
        return SubspacePoint((), (), int(text[2:]))
    rows = tuple(tuple(int(v) for v in r.split(",")) for r in text.split(";"))
    piv = tuple(next(j for j, v in enumerate(r) if v) + 1 for r in rows)
    return SubspacePoint(piv, rows, len(rows[0]))


def coordinate_point(alpha: Sequence[int], m: int) -> SubspacePoint:
    """W_alpha: the row space of the matrix with a 1 at (i, alpha_i)."""
    rows = []
    for a in alpha:
        row = [0] * m
        row[a - 1] = 1
        rows.append(tuple(row))
    return SubspacePoint(tuple(alpha), tuple(rows), m)


def _points_with_pivots(fld: FieldSpec, alpha: tuple, m: int):
    pivset = set(alpha)
    free = [(i, j) for i, a in enumerate(alpha) for j in range(a, m) if j + 1 not in pivset]
    base = [[0] * m for _ in alpha]
    for i, a in enumerate(alpha):
        base[i][a - 1] = 1
    for values in itertools.product(range(fld.q), repeat=len(free)):
        rows = [r[:] for r in base]
        for (i, j), v in zip(free, values):
            rows[i][j] = v
        yield SubspacePoint(alpha, tuple(tuple(r) for r in rows), m)


def enumerate_grassmannian(l: int, m: int, fld: FieldSpec, cap: int = SIZE_CAP) -> list[SubspacePoint]:
    """All l-subspaces, ordered by pivot pattern then free entries."""
    if not 0 <= l <= m:
        raise GeometryError(f"need 0 <= l <= m, got l={l}, m={m}")
    size = gaussian_binomial(m, l, fld.q)
    if size > cap:
        raise GeometryTooLarge(f"G({l},{m}) over GF({fld.q}) has {size} points, cap is {cap}")
    out = []
    for alpha in index_tuples(l, m):
        out.extend(_points_with_pivots(fld, alpha, m))
    return out


def _contains(fld: FieldSpec, big: SubspacePoint, small: SubspacePoint) -> bool:
    if small.dim == 0:
        return True
    b = big.array()
    s = small.array()
    piv = [p - 1 for p in big.pivots]
    coef = s[:, piv]
    resid = s
    for i in range(b.shape[0]):
        resid = fld.add_table[resid, fld.mul_table[fld.neg_table[coef[:, i]][:, None], b[i][None, :]]]
    return not resid.any()


def is_subspace(fld: FieldSpec, small: SubspacePoint, big: SubspacePoint) -> bool:
    return _contains(fld, big, small)


# -- Pluecker embedding -------------------------------------------------------


@dataclass(frozen=True)
class PluckerVector:
    tuples: tuple
    values: tuple

    def __getitem__(self, alpha) -> int:
        return self.values[self.tuples.index(tuple(alpha))]

    def support(self) -> list:
        return [a for a, v in zip(self.tuples, self.values) if v]


def plucker_raw(fld: FieldSpec, point: SubspacePoint) -> tuple[int, ...]:
    """All l x l minors of the point's RREF basis, I(l, m) in lex order."""
    arr = point.array()
    return tuple(
        det_array(fld, arr[:, [c - 1 for c in cols]]) for cols in index_tuples(point.dim, point.m)
    )


def normalize(fld: FieldSpec, values: Sequence[int]) -> tuple[int, ...]:
    lead = next((v for v in values if v), 0)
    if lead == 0:
        raise GeometryError("the zero vector has no projective normalization")
    inv = fld.inv(lead)
    return tuple(fld.mul(inv, v) for v in values)


def plucker(fld: FieldSpec, point: SubspacePoint) -> PluckerVector:
    return PluckerVector(
        tuple(index_tuples(point.dim, point.m)), normalize(fld, plucker_raw(fld, point))
    )


# -- lines --------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class GrassLine:
    """pi_Z^{Z'}: the l-spaces between Z (dim l-1) and Z' (dim l+1).

    Points are listed by their parameter on P^1: span(Z, w) is (0, 1) and
    span(Z, u + b w) is (1, b), for the complement vectors u, w stored here.
    """

    z: SubspacePoint
    z_prime: SubspacePoint
    points: tuple = field(compare=False)
    params: tuple = field(compare=False)
    u: tuple = field(compare=False)
    w: tuple = field(compare=False)

    def label(self) -> str:
        return f"({self.z.label()} | {self.z_prime.label()})"

    def __repr__(self) -> str:
        return f"GrassLine{self.label()}"

    def param_of(self) -> dict:
        return dict(zip(self.points, self.params))


def _complement_pair(fld: FieldSpec, z: np.ndarray, zp: np.ndarray):
    basis = z
    picked = []
    for row in zp:
        cand = np.concatenate([basis, row[None, :]])
        if rank_array(fld, cand) > basis.shape[0]:
            picked.append(row)
            basis = cand
        if len(picked) == 2:
            break
    return picked


def line_representative(fld: FieldSpec, line: GrassLine, param) -> np.ndarray:
    """The basis [Z; x u + y w] of the point with parameter (x, y), before reduction."""
    x, y = param
    u = np.array(line.u, dtype=np.int64)
    w = np.array(line.w, dtype=np.int64)
    last = fld.add_table[fld.mul_table[x, u], fld.mul_table[y, w]]
    return np.concatenate([line.z.array(), last[None, :]])


def make_line(fld: FieldSpec, z: SubspacePoint, zp: SubspacePoint) -> GrassLine:
    za, zpa = z.array(), zp.array()
    u, w = _complement_pair(fld, za, zpa)
    params = [(0, 1)] + [(1, b) for b in fld.elements]
    pts = []
    for x, y in params:
        last = fld.add_table[fld.mul_table[x, u], fld.mul_table[y, w]]
        pts.append(point_from_rows(fld, np.concatenate([za, last[None, :]])))
    return GrassLine(z, zp, tuple(pts), tuple(params), tuple(int(v) for v in u), tuple(int(v) for v in w))


# -- the Grassmannian as a cached object --------------------------------------


class Grassmannian:
    """Points, Pluecker data and lines of G(l, m) over one field."""

    def __init__(self, l: int, m: int, fld: FieldSpec, cap: int = SIZE_CAP):
        self.l, self.m, self.field, self.cap = l, m, fld, cap
        self.points = enumerate_grassmannian(l, m, fld, cap)
        self.index = {p: i for i, p in enumerate(self.points)}
        self.tuples = index_tuples(l, m)

    @property
    def q(self) -> int:
        return self.field.q

    def __repr__(self) -> str:
        return f"Grassmannian(G({self.l},{self.m}) over GF({self.q}), {len(self.points)} points)"

    @cached_property
    def plucker_matrix(self) -> np.ndarray:
        """Row I, column W: det_I of W's RREF basis."""
        mat = np.array([plucker_raw(self.field, p) for p in self.points], dtype=np.int64)
        return mat.T.reshape(len(self.tuples), len(self.points)).copy()

    @cached_property
    def lines(self) -> list[GrassLine]:
        l, m, fld = self.l, self.m, self.field
        if l < 1 or l + 1 > m:
            return []
        count = gaussian_binomial(m, l + 1, fld.q) * gaussian_binomial(l + 1, 2, fld.q)
        if count > self.cap:
            raise GeometryTooLarge(f"G({l},{m}) over GF({fld.q}) has {count} lines, cap is {self.cap}")
        coefs = enumerate_grassmannian(l - 1, l + 1, fld)
        out = []
        for zp in enumerate_grassmannian(l + 1, m, fld, self.cap):
            zpa = zp.array()
            for c in coefs:
                if c.dim:
                    z = point_from_rows(fld, matmul(fld, c.array(), zpa))
                else:
                    z = SubspacePoint((), (), m)
                out.append(make_line(fld, z, zp))
        return out

    @cached_property
    def lines_through(self) -> dict:
        out = {p: [] for p in self.points}
        for line in self.lines:
            for p in line.points:
                out[p].append(line)
        return out

    @cached_property
    def geometry(self) -> "GeometrySet":
        return GeometrySet(self, tuple(self.points), tuple(self.lines), "grassmannian")

    @cached_property
    def graph(self) -> BipartiteGraph:
        return incidence_graph(self.geometry)


@lru_cache(maxsize=32)
def grassmannian(l: int, m: int, fld: FieldSpec) -> Grassmannian:
    return Grassmannian(l, m, fld)


def enumerate_lines(l: int, m: int, fld: FieldSpec) -> list[GrassLine]:
    return grassmannian(l, m, fld).lines


def plucker_span_rank(fld: FieldSpec, points: Iterable[SubspacePoint]) -> int:
    vecs = [plucker(fld, p).values for p in points]
    return rank_array(fld, np.array(vecs, dtype=np.int64)) if vecs else 0


def plucker_line_is_projective_line(fld: FieldSpec, line) -> bool:
    """True iff the Pluecker images of the q+1 given points span a projective line."""
    pts = line.points if isinstance(line, GrassLine) else tuple(line)
    return len(set(pts)) == fld.q + 1 and plucker_span_rank(fld, pts) == 2


# -- Bruhat order and Schubert unions ------------------------------------------


def bruhat_leq(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    if len(alpha) != len(beta):
        raise GeometryError(f"cannot compare {alpha} and {beta}")
    return all(a <= b for a, b in zip(alpha, beta))


@dataclass(frozen=True)
class DownSet:
    l: int
    m: int
    members: tuple  # lex order
    maximal_elements: tuple
    vanishing: tuple

    def __contains__(self, alpha) -> bool:
        return tuple(alpha) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def label(self) -> str:
        return ";".join(",".join(map(str, a)) for a in self.maximal_elements)

    @classmethod
    def from_members(cls, members: Iterable, l: int, m: int) -> "DownSet":
        mem = {check_tuple(a, l, m) for a in members}
        if not is_downward_closed(mem, l, m):
            raise GeometryError("set is not downward closed in the Bruhat order")
        ordered = tuple(sorted(mem))
        maximal = tuple(
            a for a in ordered if not any(b != a and bruhat_leq(a, b) for b in ordered)
        )
        vanishing = tuple(i for i in index_tuples(l, m) if i not in mem)
        return cls(l, m, ordered, maximal, vanishing)


def downward_closure(gens: Iterable, l: int, m: int) -> DownSet:
    gens = [check_tuple(g, l, m) for g in gens]
    mem = [i for i in index_tuples(l, m) if any(bruhat_leq(i, g) for g in gens)]
    return DownSet.from_members(mem, l, m)


def is_downward_closed(members: Iterable, l: int, m: int) -> bool:
    mem = {tuple(a) for a in members}
    return all(
        i in mem for b in mem for i in index_tuples(l, m) if bruhat_leq(i, b)
    )


def full_downset(l: int, m: int) -> DownSet:
    return DownSet.from_members(index_tuples(l, m), l, m)


def order_ideals(l: int, m: int, include_empty: bool = False, cap: int = IDEAL_CAP) -> list[DownSet]:
    """Every downward-closed subset of I(l, m)."""
    elems = sorted(index_tuples(l, m), key=lambda a: (delta(a), a))
    below = {a: [b for b in elems if b != a and bruhat_leq(b, a)] for a in elems}
    found = []

    def grow(i: int, chosen: set):
        if i == len(elems):
            found.append(frozenset(chosen))
            if len(found) > cap:
                raise GeometryTooLarge(f"I({l},{m}) has more than {cap} order ideals")
            return
        a = elems[i]
        grow(i + 1, chosen)
        if all(b in chosen for b in below[a]):
            chosen.add(a)
            grow(i + 1, chosen)
            chosen.remove(a)

    grow(0, set())
    ideals = [DownSet.from_members(s, l, m) for s in found if s or include_empty]
    return sorted(ideals, key=lambda d: (len(d), d.members))


@dataclass(frozen=True, eq=False)
class GeometrySet:
    grass: Grassmannian
    points: tuple
    lines: tuple
    origin: str

    @cached_property
    def point_set(self) -> frozenset:
        return frozenset(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def to_text(self) -> str:
        g = self.grass
        head = f"# {self.origin} G({g.l},{g.m}) q={g.q} points={len(self.points)}"
        return "\n".join([head] + [p.label() for p in self.points]) + "\n"


def geometry_from_points(grass: Grassmannian, points: Iterable[SubspacePoint], origin: str) -> GeometrySet:
    pts = set(points)
    ordered = tuple(p for p in grass.points if p in pts)
    if len(ordered) != len(pts):
        raise GeometryError("some points are not in the Grassmannian")
    lines = tuple(ln for ln in grass.lines if pts.issuperset(ln.points))
    return GeometrySet(grass, ordered, lines, origin)


def schubert_union_points(s: DownSet, fld: FieldSpec) -> GeometrySet:
    """Omega_S: points whose Pluecker coordinates vanish off S."""
    if not is_downward_closed(s.members, s.l, s.m):
        raise GeometryError("S must be downward closed")
    grass = grassmannian(s.l, s.m, fld)
    rows = [grass.tuples.index(i) for i in s.vanishing]
    mat = grass.plucker_matrix
    keep = ~mat[rows].any(axis=0) if rows else np.ones(len(grass.points), dtype=bool)
    pts = [p for p, k in zip(grass.points, keep) if k]
    return geometry_from_points(grass, pts, f"schubert-union {s.label()}")


def schubert_variety_points(alpha: Sequence[int], l: int, m: int, fld: FieldSpec) -> GeometrySet:
    return schubert_union_points(downward_closure([alpha], l, m), fld)


def j_set(s: DownSet) -> list[SubspacePoint]:
    return [coordinate_point(b, s.m) for b in s.members]


def incidence_graph(x: GeometrySet) -> BipartiteGraph:
    q = x.grass.q
    return BipartiteGraph(x.points, x.lines, {ln: ln.points for ln in x.lines}, q + 1)


def is_geometric_subspace(grass: Grassmannian, points: Iterable[SubspacePoint]) -> bool:
    pts = set(points)
    full = grass.q + 1
    for line in grass.lines:
        hits = sum(1 for p in line.points if p in pts)
        if hits not in (0, 1, full):
            return False
    return True


def geometric_closure(grass: Grassmannian, points: Iterable[SubspacePoint]) -> GeometrySet:
    """Smallest geometric subspace containing the points: the 2-closure in the full graph."""
    z, _ = k_closure(grass.graph, 2, points)
    return geometry_from_points(grass, z, "geometric-closure")


# -- cliques --------------------------------------------------------------------


def star_clique(grass: Grassmannian, sp: SubspacePoint) -> list[SubspacePoint]:
    """[Sp>: every point containing the (l-1)-space Sp."""
    if sp.dim != grass.l - 1 or sp.m != grass.m:
        raise GeometryError(f"star clique needs a {grass.l - 1}-space of GF(q)^{grass.m}")
    return [w for w in grass.points if _contains(grass.field, w, sp)]


def top_clique(grass: Grassmannian, t: SubspacePoint) -> list[SubspacePoint]:
    """<T]: every point inside the (l+1)-space T."""
    if t.dim != grass.l + 1 or t.m != grass.m:
        raise GeometryError(f"top clique needs a {grass.l + 1}-space of GF(q)^{grass.m}")
    return [w for w in grass.points if _contains(grass.field, t, w)]


def line_through(grass: Grassmannian, a: SubspacePoint, b: SubspacePoint) -> GrassLine | None:
    """The unique line through two distinct adjacent points, if any."""
    fld = grass.field
    if a == b:
        return None
    both = np.concatenate([a.array(), b.array()])
    if rank_array(fld, both) != grass.l + 1:
        return None
    zp = point_from_rows(fld, both)
    for line in grass.lines_through[a]:
        if line.z_prime == zp and b in line.points:
            return line
    return None
