"""Dense matrices over GF(q).

Arithmetic runs through the field's lookup tables on numpy integer arrays,
so one row operation is a single vectorized table gather.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .field import FieldSpec, parse_field


class DimensionError(ValueError):
    pass


def as_array(rows, cols: int | None = None) -> np.ndarray:
    arr = np.array(rows, dtype=np.int64)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, cols or 0)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-d array, got shape {arr.shape}")
    return arr


def scale(field: FieldSpec, c, arr: np.ndarray) -> np.ndarray:
    return field.mul_table[c, arr]


def axpy(field: FieldSpec, a, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """y + a*x elementwise; a broadcasts."""
    return field.add_table[y, field.mul_table[a, x]]


def matmul(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    if field.e == 1:
        return (a @ b) % field.p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for t in range(a.shape[1]):
        out = field.add_table[out, field.mul_table[a[:, t, None], b[None, t, :]]]
    return out


def rref_array(field: FieldSpec, arr: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns (0-based); zero rows kept at the bottom."""
    a = np.array(arr, dtype=np.int64, copy=True)
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        s = r + nz[0]
        if s != r:
            a[[r, s]] = a[[s, r]]
        lead = a[r, c]
        if lead != 1:
            a[r] = field.mul_table[field.inv_table[lead], a[r]]
        col = a[:, c].copy()
        col[r] = 0
        others = np.nonzero(col)[0]
        if others.size:
            factors = field.neg_table[col[others]]
            a[others] = field.add_table[a[others], field.mul_table[factors[:, None], a[r][None, :]]]
        pivots.append(c)
        r += 1
    return a, tuple(pivots)


def rank_array(field: FieldSpec, arr: np.ndarray) -> int:
    return len(rref_array(field, arr)[1])


def row_basis(field: FieldSpec, arr: np.ndarray) -> np.ndarray:
    """Nonzero rows of the RREF: the canonical basis of the row space."""
    red, piv = rref_array(field, arr)
    return red[: len(piv)]


def kernel_array(field: FieldSpec, arr: np.ndarray) -> np.ndarray:
    """Rows spanning {x : arr @ x = 0}, one per free column."""
    ncols = arr.shape[1]
    red, piv = rref_array(field, arr)
    free = [c for c in range(ncols) if c not in set(piv)]
    ker = np.zeros((len(free), ncols), dtype=np.int64)
    for j, f in enumerate(free):
        ker[j, f] = 1
        for i, pc in enumerate(piv):
            ker[j, pc] = field.neg_table[red[i, f]]
    return ker


def solve_array(field: FieldSpec, a: np.ndarray, b: Sequence[int]) -> np.ndarray | None:
    """Some x with a @ x = b, or None when inconsistent."""
    b = np.asarray(b, dtype=np.int64)
    if b.shape != (a.shape[0],):
        raise DimensionError(f"right-hand side has length {b.size}, expected {a.shape[0]}")
    aug = np.concatenate([a, b[:, None]], axis=1)
    red, piv = rref_array(field, aug)
    ncols = a.shape[1]
    if piv and piv[-1] == ncols:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = red[i, ncols]
    return x


def det_array(field: FieldSpec, a: np.ndarray) -> int:
    """Determinant by elimination, tracking swaps and pivot scalings."""
    a = np.array(a, dtype=np.int64, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionError(f"determinant of non-square {a.shape}")
    det = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        s = c + nz[0]
        if s != c:
            a[[c, s]] = a[[s, c]]
            det = field.neg(det)
        lead = int(a[c, c])
        det = field.mul(det, lead)
        inv = field.inv_table[lead]
        below = a[c + 1 :, c]
        rows = np.nonzero(below)[0] + c + 1
        if rows.size:
            factors = field.neg_table[field.mul_table[inv, a[rows, c]]]
            a[rows] = field.add_table[a[rows], field.mul_table[factors[:, None], a[c][None, :]]]
    return det


class MatrixGF:
    """An immutable rows x cols matrix over a finite field."""

    def __init__(self, field: FieldSpec, entries, cols: int | None = None):
        arr = as_array(entries, cols)
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise ValueError(f"entries must lie in 0..{field.q - 1}")
        arr.setflags(write=False)
        self.field = field
        self.array = arr

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "MatrixGF":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "MatrixGF":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.array.shape

    def tolist(self) -> list[list[int]]:
        return self.array.tolist()

    def __getitem__(self, idx):
        return self.array[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.array, other.array))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self.array.tobytes()))

    def __repr__(self) -> str:
        return f"MatrixGF({self.field}, {self.tolist()})"

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        return MatrixGF(self.field, matmul(self.field, self.array, other.array))

    def transpose(self) -> "MatrixGF":
        return MatrixGF(self.field, self.array.T.copy())

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols} {self.field}"]
        lines += [" ".join(str(int(v)) for v in row) for row in self.array]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MatrixGF":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        rows, cols, fstr = lines[0].split(maxsplit=2)
        rows, cols = int(rows), int(cols)
        field = parse_field(fstr)
        body = [[int(t) for t in ln.split()] for ln in lines[1 : 1 + rows]]
        if len(body) != rows or any(len(r) != cols for r in body):
            raise DimensionError(f"matrix body does not match header {rows}x{cols}")
        return cls(field, body, cols)


def rref(m: MatrixGF) -> tuple[MatrixGF, tuple[int, ...]]:
    red, piv = rref_array(m.field, m.array)
    return MatrixGF(m.field, red), piv


def rank(m: MatrixGF) -> int:
    return rank_array(m.field, m.array)


def kernel_basis(m: MatrixGF) -> MatrixGF:
    return MatrixGF(m.field, kernel_array(m.field, m.array), m.cols)


def solve(m: MatrixGF, b: Sequence[int]) -> tuple[int, ...] | None:
    x = solve_array(m.field, m.array, b)
    return None if x is None else tuple(int(v) for v in x)


def minor_det(m: MatrixGF, cols: Iterable[int]) -> int:
    """det of the square submatrix on the given 1-based columns."""
    cols = tuple(cols)
    if len(cols) != m.rows:
        raise DimensionError(f"need {m.rows} columns for a minor, got {len(cols)}")
    if any(b <= a for a, b in zip(cols, cols[1:])):
        raise ValueError(f"column tuple {cols} is not strictly increasing")
    if cols and (cols[0] < 1 or cols[-1] > m.cols):
        raise ValueError(f"column tuple {cols} out of range 1..{m.cols}")
    if not cols:
        return 1
    sub = m.array[:, [c - 1 for c in cols]]
    return det_array(m.field, sub)


def row_space_equal(a: MatrixGF, b: MatrixGF) -> bool:
    ra, rb = row_basis(a.field, a.array), row_basis(b.field, b.array)
    return ra.shape == rb.shape and bool(np.array_equal(ra, rb))
