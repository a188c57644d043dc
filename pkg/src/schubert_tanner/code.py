"""Linear codes indexed by arbitrary coordinate labels."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .field import FieldSpec, parse_field
from .matrix import (
    MatrixGF,
    kernel_array,
    matmul,
    rank_array,
    row_basis,
    solve_array,
)

BRUTE_FORCE_LIMIT = 2**24
CHUNK = 1 << 14


class CodeError(ValueError):
    pass


class UnknownLabelError(CodeError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown label"


class InstanceTooLarge(CodeError):
    pass


class NoNonzeroCodeword(CodeError):
    """Raised for properties (like minimum distance) undefined on the zero code."""


@dataclass(frozen=True)
class Codeword:
    coords: tuple
    values: tuple

    def __post_init__(self):
        if len(self.coords) != len(self.values):
            raise CodeError("codeword length does not match its coordinates")

    def as_dict(self) -> dict:
        return dict(zip(self.coords, self.values))

    @property
    def weight(self) -> int:
        return sum(1 for v in self.values if v)


def support(c: Codeword) -> frozenset:
    return frozenset(a for a, v in zip(c.coords, c.values) if v)


class LinearCode:
    """A linear code stored by its RREF generator matrix.

    Two codes compare equal iff they share the field, the coordinate
    sequence and the canonical generator.
    """

    def __init__(self, field: FieldSpec, coords: Sequence[Hashable], generator):
        coords = tuple(coords)
        if len(set(coords)) != len(coords):
            raise CodeError("coordinate labels must be distinct")
        arr = np.asarray(generator, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, len(coords))
        if arr.ndim != 2 or arr.shape[1] != len(coords):
            raise CodeError(f"generator shape {arr.shape} does not match {len(coords)} coordinates")
        self.field = field
        self.coords = coords
        self.gen = MatrixGF(field, row_basis(field, arr), len(coords))
        self._index = {a: i for i, a in enumerate(coords)}

    @classmethod
    def full(cls, field: FieldSpec, coords: Sequence[Hashable]) -> "LinearCode":
        return cls(field, coords, np.eye(len(coords), dtype=np.int64))

    @classmethod
    def zero(cls, field: FieldSpec, coords: Sequence[Hashable]) -> "LinearCode":
        return cls(field, coords, np.zeros((0, len(tuple(coords))), dtype=np.int64))

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def k(self) -> int:
        return self.gen.rows

    def index_of(self, labels: Iterable[Hashable]) -> list[int]:
        out = []
        for a in labels:
            if a not in self._index:
                raise UnknownLabelError(f"unknown coordinate label {a!r}")
            out.append(self._index[a])
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords and self.gen == other.gen

    def __hash__(self) -> int:
        return hash((self.field, self.coords, self.gen))

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over GF({self.field.q}))"

    def relabel(self, mapping: Mapping) -> "LinearCode":
        return LinearCode(self.field, [mapping[a] for a in self.coords], self.gen.array)

    def reorder(self, coords: Sequence[Hashable]) -> "LinearCode":
        idx = self.index_of(coords)
        if len(idx) != self.n:
            raise CodeError("reorder needs a permutation of the coordinates")
        return LinearCode(self.field, coords, self.gen.array[:, idx])

    def encode(self, message: Sequence[int]) -> Codeword:
        msg = np.asarray(message, dtype=np.int64).reshape(1, -1)
        if msg.shape[1] != self.k:
            raise CodeError(f"message length {msg.shape[1]} != dimension {self.k}")
        word = matmul(self.field, msg, self.gen.array)[0]
        return Codeword(self.coords, tuple(int(v) for v in word))

    def contains(self, word: Sequence[int]) -> bool:
        w = np.asarray(word, dtype=np.int64).reshape(1, -1)
        return rank_array(self.field, np.concatenate([self.gen.array, w])) == self.k

    def codeword_array(self) -> Iterator[np.ndarray]:
        """All q^k codewords as row blocks, messages in lexicographic order."""
        q, k = self.field.q, self.k
        _check_size(q, k)
        total = q**k
        for start in range(0, total, CHUNK):
            idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
            msgs = np.empty((idx.size, k), dtype=np.int64)
            rest = idx
            for j in range(k - 1, -1, -1):
                msgs[:, j] = rest % q
                rest = rest // q
            yield matmul(self.field, msgs, self.gen.array)

    def codewords(self) -> Iterator[Codeword]:
        for block in self.codeword_array():
            for row in block:
                yield Codeword(self.coords, tuple(int(v) for v in row))


def _check_size(q: int, k: int) -> None:
    if q**k > BRUTE_FORCE_LIMIT:
        raise InstanceTooLarge(f"q^k = {q}^{k} exceeds the brute-force limit {BRUTE_FORCE_LIMIT}")


def project(code: LinearCode, labels: Iterable[Hashable]) -> LinearCode:
    """Projection onto a subset of coordinates, kept in the code's coordinate order."""
    wanted = set(labels)
    idx = sorted(code.index_of(wanted))
    coords = [code.coords[i] for i in idx]
    return LinearCode(code.field, coords, code.gen.array[:, idx])


def is_information_set(code: LinearCode, labels: Iterable[Hashable]) -> bool:
    idx = code.index_of(set(labels))
    if len(idx) != code.k:
        return False
    return rank_array(code.field, code.gen.array[:, idx]) == code.k


def dual(code: LinearCode) -> LinearCode:
    return LinearCode(code.field, code.coords, kernel_array(code.field, code.gen.array))


def weight_distribution(code: LinearCode) -> dict[int, int]:
    counts: Counter = Counter()
    for block in code.codeword_array():
        w = np.count_nonzero(block, axis=1)
        vals, cnt = np.unique(w, return_counts=True)
        counts.update(dict(zip(vals.tolist(), cnt.tolist())))
    return dict(sorted(counts.items()))


def min_distance_bruteforce(code: LinearCode) -> int:
    if code.k == 0:
        raise NoNonzeroCodeword("the zero code has no nonzero codeword")
    return min(w for w in weight_distribution(code) if w > 0)


def min_weight_codeword(code: LinearCode) -> Codeword:
    if code.k == 0:
        raise NoNonzeroCodeword("the zero code has no nonzero codeword")
    best = None
    for block in code.codeword_array():
        w = np.count_nonzero(block, axis=1)
        w[w == 0] = code.n + 1
        i = int(np.argmin(w))
        if best is None or w[i] < best[0]:
            best = (int(w[i]), block[i])
    return Codeword(code.coords, tuple(int(v) for v in best[1]))


def is_mds(code: LinearCode) -> bool:
    return min_distance_bruteforce(code) == code.n - code.k + 1


def generated_by_weight(code: LinearCode, w: int) -> bool:
    rows = []
    for block in code.codeword_array():
        rows.append(block[np.count_nonzero(block, axis=1) == w])
    words = np.concatenate(rows) if rows else np.zeros((0, code.n), dtype=np.int64)
    if words.shape[0] == 0:
        return code.k == 0
    return rank_array(code.field, words) == code.k


def projective_line_points(field: FieldSpec) -> list[tuple[int, int]]:
    """(0,1) followed by (1,b) for b in GF(q)."""
    return [(0, 1)] + [(1, b) for b in field.elements]


def doubly_extended_rs(field: FieldSpec) -> LinearCode:
    """The [q+1, 2, q] evaluation code of the two coordinate functionals on P^1."""
    pts = projective_line_points(field)
    gen = np.array([[x for x, _ in pts], [y for _, y in pts]], dtype=np.int64)
    return LinearCode(field, pts, gen)


def systematic_encode(code: LinearCode, message: Mapping[Hashable, int]) -> Codeword:
    """The unique codeword agreeing with message on its labels (an information set)."""
    labels = list(message)
    idx = code.index_of(labels)
    sub = code.gen.array[:, idx]
    if rank_array(code.field, sub) != code.k:
        raise CodeError("message positions do not contain an information set")
    x = solve_array(code.field, sub.T.copy(), [message[a] for a in labels])
    if x is None:
        raise CodeError("message is not the projection of any codeword")
    return code.encode(x)


def label_str(label) -> str:
    if hasattr(label, "label"):
        return label.label()
    if isinstance(label, tuple):
        return ",".join(label_str(x) for x in label)
    return str(label)


def code_to_text(code: LinearCode) -> str:
    lines = [f"field {code.field}", f"coords {code.n}"]
    lines += [label_str(a) for a in code.coords]
    return "\n".join(lines) + "\n" + code.gen.to_text()


def code_from_text(text: str) -> LinearCode:
    """Read a code file; labels come back as strings."""
    lines = text.splitlines()
    if not lines[0].startswith("field ") or not lines[1].startswith("coords "):
        raise CodeError("code file must start with 'field' and 'coords' lines")
    field = parse_field(lines[0][len("field ") :])
    n = int(lines[1].split()[1])
    coords = lines[2 : 2 + n]
    mat = MatrixGF.from_text("\n".join(lines[2 + n :]))
    if mat.field != field or mat.cols != n:
        raise CodeError("generator matrix does not match the code header")
    return LinearCode(field, coords, mat.array)


def weight_distribution_text(dist: Mapping[int, int]) -> str:
    return "".join(f"{w} {c}\n" for w, c in sorted(dist.items()))

