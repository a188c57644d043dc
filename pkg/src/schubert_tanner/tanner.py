"""Right-regular bipartite graphs, threshold closure, and Tanner codes.

Variable nodes carry code coordinates; each constraint node u ties its
neighborhood N(u) to a component code through a bijection onto the
component's coordinate set.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .code import LinearCode, dual
from .field import FieldSpec
from .matrix import matmul, rank_array, solve_array


class GraphError(ValueError):
    pass


class TannerSpecError(ValueError):
    pass


class ParityBitError(ValueError):
    """No component codeword matches the known values."""


class ExtendError(ValueError):
    pass


class EncodingError(ValueError):
    def __init__(self, constraint, message: str):
        super().__init__(f"constraint {constraint!r}: {message}")
        self.constraint = constraint


@dataclass(frozen=True, eq=False)
class BipartiteGraph:
    v1: tuple
    v2: tuple
    nbr: Mapping[Hashable, tuple]
    n_prime: int

    def __post_init__(self):
        known = set(self.v1)
        if len(known) != len(self.v1) or len(set(self.v2)) != len(self.v2):
            raise GraphError("vertex labels must be distinct")
        for u in self.v2:
            nb = self.nbr[u]
            if len(nb) != self.n_prime:
                raise GraphError(f"constraint {u!r} has degree {len(nb)}, expected {self.n_prime}")
            if len(set(nb)) != len(nb):
                raise GraphError(f"constraint {u!r} repeats a neighbor")
            if not known.issuperset(nb):
                raise GraphError(f"constraint {u!r} has neighbors outside V1")

    @classmethod
    def from_sets(cls, v1: Iterable, neighborhoods: Mapping[Hashable, Iterable], n_prime=None):
        nbr = {u: tuple(vs) for u, vs in neighborhoods.items()}
        if n_prime is None:
            degrees = {len(vs) for vs in nbr.values()}
            if len(degrees) > 1:
                raise GraphError(f"graph is not right-regular: degrees {sorted(degrees)}")
            n_prime = degrees.pop() if degrees else 0
        return cls(tuple(v1), tuple(nbr), nbr, n_prime)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            self.v1 == other.v1
            and self.v2 == other.v2
            and self.n_prime == other.n_prime
            and all(set(self.nbr[u]) == set(other.nbr[u]) for u in self.v2)
        )

    @cached_property
    def constraints_of(self) -> dict:
        """Variable node -> constraints whose neighborhood contains it."""
        out = {v: [] for v in self.v1}
        for u in self.v2:
            for v in self.nbr[u]:
                out[v].append(u)
        return out

    def to_text(self) -> str:
        from .code import label_str

        lines = [f"{len(self.v1)} {len(self.v2)} {self.n_prime}"]
        lines.append("# v1: " + " ".join(label_str(v) for v in self.v1))
        for u in self.v2:
            lines.append(f"{label_str(u)}: " + " ".join(label_str(v) for v in self.nbr[u]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BipartiteGraph":
        """Parse the graph file format; labels come back as strings."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        n1, n2, n_prime = (int(t) for t in lines[0].split())
        v1 = None
        nbr = {}
        for ln in lines[1:]:
            if ln.startswith("# v1:"):
                v1 = ln[len("# v1:") :].split()
                continue
            if ln.startswith("#"):
                continue
            u, _, rest = ln.partition(":")
            nbr[u.strip()] = tuple(rest.split())
        if v1 is None:
            seen = []
            for vs in nbr.values():
                seen.extend(v for v in vs if v not in seen)
            v1 = seen
        if len(v1) != n1 or len(nbr) != n2:
            raise GraphError(f"header says {n1} x {n2}, body has {len(v1)} x {len(nbr)}")
        return cls(tuple(v1), tuple(nbr), nbr, n_prime)


@dataclass(frozen=True)
class ClosureState:
    z: frozenset
    fired: tuple
    t: int


def _check_k(graph: BipartiteGraph, k: int) -> None:
    if not 1 <= k <= max(graph.n_prime, 1):
        raise ValueError(f"threshold k={k} outside 1..{graph.n_prime}")


def _check_subset(graph: BipartiteGraph, s: Iterable) -> set:
    s = set(s)
    extra = s.difference(graph.v1)
    if extra:
        raise GraphError(f"vertices {sorted(map(repr, extra))[:3]} are not in V1")
    return s


def _threshold_run(graph: BipartiteGraph, k: int, start: set, order, on_fire=None):
    """Worklist form of the irreversible k-threshold process.

    Among qualifying constraints the one earliest in `order` fires first.
    `on_fire(u, z)` runs before N(u) is merged into z and must not mutate z.
    """
    order = graph.v2 if order is None else tuple(order)
    rank = {u: i for i, u in enumerate(order)}
    n_prime = graph.n_prime
    z = set(start)
    count = {u: sum(1 for v in graph.nbr[u] if v in z) for u in graph.v2}
    heap = [rank[u] for u in graph.v2 if k <= count[u] < n_prime]
    heapq.heapify(heap)
    fired = []
    while heap:
        u = order[heapq.heappop(heap)]
        if not (k <= count[u] < n_prime):
            continue
        if on_fire is not None:
            on_fire(u, z)
        fired.append(u)
        for v in graph.nbr[u]:
            if v in z:
                continue
            z.add(v)
            for w in graph.constraints_of[v]:
                before = count[w]
                count[w] = before + 1
                if before < k <= count[w] < n_prime:
                    heapq.heappush(heap, rank[w])
    return ClosureState(frozenset(z), tuple(fired), len(fired))


def k_closure(graph: BipartiteGraph, k: int, s: Iterable, order: Sequence | None = None):
    """cl_{G,k}(S) together with the firing trace."""
    _check_k(graph, k)
    start = _check_subset(graph, s)
    state = _threshold_run(graph, k, start, order)
    return state.z, state


def is_k_closed(graph: BipartiteGraph, k: int, t: Iterable) -> bool:
    t = _check_subset(graph, t)
    for u in graph.v2:
        hits = sum(1 for v in graph.nbr[u] if v in t)
        if hits >= k and hits != graph.n_prime:
            return False
    return True


def is_k_forcing(graph: BipartiteGraph, k: int, s: Iterable) -> bool:
    z, _ = k_closure(graph, k, s)
    return len(z) == len(graph.v1)


def induced_subgraph(graph: BipartiteGraph, t: Iterable) -> BipartiteGraph:
    t = _check_subset(graph, t)
    v1 = tuple(v for v in graph.v1 if v in t)
    v2 = tuple(u for u in graph.v2 if t.issuperset(graph.nbr[u]))
    return BipartiteGraph(v1, v2, {u: graph.nbr[u] for u in v2}, graph.n_prime)


@dataclass(frozen=True, eq=False)
class TannerSpec:
    """A graph with one component code C'_u and bijection phi_u per constraint.

    phi[u] maps each v in N(u) to a coordinate label of components[u].
    """

    graph: BipartiteGraph
    components: Mapping[Hashable, LinearCode]
    phi: Mapping[Hashable, Mapping[Hashable, Hashable]]
    field: FieldSpec = field(default=None)

    def __post_init__(self):
        dims = set()
        for u in self.graph.v2:
            cu = self.components[u]
            if cu.n != self.graph.n_prime:
                raise TannerSpecError(f"component at {u!r} has length {cu.n}, expected {self.graph.n_prime}")
            phi_u = self.phi[u]
            if set(phi_u) != set(self.graph.nbr[u]) or set(phi_u.values()) != set(cu.coords):
                raise TannerSpecError(f"phi at {u!r} is not a bijection N(u) -> component coordinates")
            dims.add(cu.k)
        if len(dims) > 1:
            raise TannerSpecError(f"component dimensions differ: {sorted(dims)}")
        if self.field is None:
            fld = next(iter(self.components.values())).field if self.components else None
            object.__setattr__(self, "field", fld)

    @property
    def component_dim(self) -> int:
        if not self.graph.v2:
            return 0
        return self.components[self.graph.v2[0]].k

    @classmethod
    def uniform(cls, graph: BipartiteGraph, component: LinearCode, phi) -> "TannerSpec":
        """Same component code at every constraint."""
        return cls(graph, {u: component for u in graph.v2}, phi, component.field)


def maximal_tanner_code(spec: TannerSpec, field: FieldSpec | None = None) -> LinearCode:
    """D^perp, where D is spanned by the lifted component duals."""
    graph = spec.graph
    fld = field or spec.field
    if fld is None:
        raise TannerSpecError("a field is needed for a graph without constraints")
    index = {v: i for i, v in enumerate(graph.v1)}
    rows = []
    for u in graph.v2:
        cu = spec.components[u]
        if cu.field != fld:
            raise TannerSpecError(f"component at {u!r} lives over a different field")
        h = dual(cu).gen.array
        inv_phi = {a: v for v, a in spec.phi[u].items()}
        cols = [index[inv_phi[a]] for a in cu.coords]
        lifted = np.zeros((h.shape[0], len(graph.v1)), dtype=np.int64)
        lifted[:, cols] = h
        rows.append(lifted)
    d = np.concatenate(rows) if rows else np.zeros((0, len(graph.v1)), dtype=np.int64)
    return dual(LinearCode(fld, graph.v1, d))


def parity_bit(m, cu: LinearCode, b: Sequence[Hashable], u: Hashable) -> int:
    """Value at u of the unique codeword of cu that equals m on b.

    m is either a mapping label -> value or a sequence aligned with b.
    """
    b = list(b)
    values = [m[a] for a in b] if isinstance(m, Mapping) else list(m)
    if len(values) != len(b):
        raise ValueError("known values do not match the known positions")
    g = cu.gen.array
    sub = g[:, cu.index_of(b)]
    if rank_array(cu.field, sub) != cu.k:
        raise ParityBitError("known positions do not contain an information set")
    x = solve_array(cu.field, sub.T.copy(), values)
    if x is None:
        raise ParityBitError("no component codeword matches the known values")
    col = g[:, cu.index_of([u])[0]]
    return int(matmul(cu.field, x[None, :], col[:, None])[0, 0])


def extend(x: Mapping, y: Mapping) -> dict:
    """The word on A u B restricting to x on A and y on B."""
    out = dict(x)
    for a, val in y.items():
        if a in out and out[a] != val:
            raise ExtendError(f"words disagree at {a!r}: {out[a]} vs {val}")
        out[a] = val
    return out


def iterative_encode(spec: TannerSpec, s: Iterable, message: Mapping, order: Sequence | None = None):
    """Lengthen a word known on S to the unique codeword on cl(S).

    Returns (word, state): the word as a dict on cl_{G,k}(S), and the firing
    trace. Each qualifying constraint fills its unknown neighbors one at a
    time from the ones already known; the loop repeats until nothing
    qualifies.
    """
    graph = spec.graph
    k = spec.component_dim
    start = _check_subset(graph, s)
    if set(message) != start:
        raise ValueError("message must assign a value to exactly the positions in S")
    if not graph.v2:
        return dict(message), ClosureState(frozenset(start), (), 0)
    _check_k(graph, k)
    word = dict(message)

    def fire(u, z):
        cu = spec.components[u]
        phi_u = spec.phi[u]
        t = graph.nbr[u]
        filled = {w for w in t if w in z}
        for v in t:
            if v in filled:
                continue
            known = [w for w in t if w in filled]
            try:
                val = parity_bit([word[w] for w in known], cu, [phi_u[w] for w in known], phi_u[v])
            except ParityBitError as exc:
                raise EncodingError(u, str(exc)) from None
            word[v] = val
            filled.add(v)

    state = _threshold_run(graph, k, start, order, on_fire=fire)
    return word, state


def cyclic_as_tanner(h: Sequence[int], field: FieldSpec) -> TannerSpec:
    """Tanner spec on Z_n whose parity checks are the cyclic shifts of h."""
    n = len(h)
    supp = [i for i, x in enumerate(h) if x]
    if not supp:
        raise ValueError("parity vector must be nonzero")
    component = dual(LinearCode(field, supp, [[h[i] for i in supp]]))
    nbr = {b: tuple((b + s) % n for s in supp) for b in range(n)}
    phi = {b: {(b + s) % n: s for s in supp} for b in range(n)}
    graph = BipartiteGraph(tuple(range(n)), tuple(range(n)), nbr, len(supp))
    return TannerSpec.uniform(graph, component, phi)
