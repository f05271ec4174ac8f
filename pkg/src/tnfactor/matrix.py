"""Small dense matrices over exact, radical or binary64 scalars."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .scalars import (
    RadicalScalar,
    as_exact,
    checked_float,
    format_scalar,
    parse_scalar,
    radical_mul,
    to_float,
)

__all__ = [
    "Matrix",
    "MinorSpec",
    "PSDVerdict",
    "mat_mul",
    "det_exact",
    "det_float",
    "minor",
    "rank_exact",
    "is_psd_float",
    "eigvals_symmetric",
    "integer_scaled",
    "bareiss_det",
]

KINDS = ("exact", "radical", "float")


def _coerce(value, kind):
    if kind == "exact":
        return as_exact(value)
    if kind == "float":
        if isinstance(value, (Fraction, int, RadicalScalar)) and not isinstance(value, bool):
            return to_float(value)
        return checked_float(value)
    if kind == "radical":
        if isinstance(value, RadicalScalar):
            return value
        return RadicalScalar(as_exact(value))
    raise ValueError(f"unknown matrix kind {kind!r}")


class Matrix:
    """Immutable row-major matrix with one scalar kind.

    ``kind`` is ``"exact"`` (Fraction), ``"radical"`` (:class:`RadicalScalar`)
    or ``"float"`` (finite Python floats).  When omitted it is inferred:
    any float makes the matrix float, any radical makes it radical.
    """

    __slots__ = ("_rows", "_kind")

    def __init__(self, rows: Iterable[Iterable], kind: str | None = None):
        data = [list(r) for r in rows]
        if not data or not data[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("ragged rows")
        if kind is None:
            flat = [v for r in data for v in r]
            if any(isinstance(v, float) or isinstance(v, np.floating) for v in flat):
                kind = "float"
            elif any(isinstance(v, RadicalScalar) for v in flat):
                kind = "radical"
            else:
                kind = "exact"
        if kind not in KINDS:
            raise ValueError(f"unknown matrix kind {kind!r}")
        self._kind = kind
        self._rows = tuple(tuple(_coerce(v, kind) for v in r) for r in data)

    # construction helpers
    @classmethod
    def identity(cls, n: int, kind: str = "exact") -> "Matrix":
        one, zero = (1.0, 0.0) if kind == "float" else (Fraction(1), Fraction(0))
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], kind)

    @classmethod
    def zeros(cls, rows: int, cols: int, kind: str = "exact") -> "Matrix":
        zero = 0.0 if kind == "float" else Fraction(0)
        return cls([[zero] * cols for _ in range(rows)], kind)

    @classmethod
    def diag(cls, values: Sequence, kind: str = "exact") -> "Matrix":
        n = len(values)
        zero = 0.0 if kind == "float" else Fraction(0)
        return cls([[values[i] if i == j else zero for j in range(n)] for i in range(n)], kind)

    @classmethod
    def from_numpy(cls, array) -> "Matrix":
        array = np.asarray(array, dtype=float)
        if array.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls(array.tolist(), "float")

    # accessors
    @property
    def kind(self) -> str:
        return self._kind

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index):
        i, j = index
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._rows]

    def entries(self):
        for r in self._rows:
            yield from r

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self._rows), self._kind)

    T = property(transpose)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self._rows[i][j] for j in cols] for i in rows], self._kind)

    def to_float(self) -> "Matrix":
        if self._kind == "float":
            return self
        return Matrix([[to_float(v) for v in r] for r in self._rows], "float")

    def to_numpy(self) -> np.ndarray:
        return np.array([[to_float(v) for v in r] for r in self._rows], dtype=float)

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self._rows[i][j] == self._rows[j][i] for i in range(self.rows) for j in range(i)
        )

    def hadamard(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in Hadamard product")
        kind = "float" if "float" in (self.kind, other.kind) else "exact"
        a = self if kind == "exact" else self.to_float()
        b = other if kind == "exact" else other.to_float()
        return Matrix([[x * y for x, y in zip(ra, rb)] for ra, rb in zip(a._rows, b._rows)], kind)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self._kind, self._rows))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_scalar(v) for v in r) + "]" for r in self._rows)
        return f"Matrix({self._kind}, [{body}])"

    # JSON
    def to_dict(self) -> dict:
        return {
            "kind": self._kind,
            "rows": self.rows,
            "cols": self.cols,
            "data": [[format_scalar(v) for v in r] for r in self._rows],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Matrix":
        kind = doc["kind"]
        data = [[parse_scalar(v, kind) for v in r] for r in doc["data"]]
        m = cls(data, kind)
        if m.rows != doc.get("rows", m.rows) or m.cols != doc.get("cols", m.cols):
            raise ValueError("declared shape does not match data")
        return m

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Matrix":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class MinorSpec:
    """Row and column index sets of a minor (0-based, strictly increasing)."""

    row_indices: tuple[int, ...]
    col_indices: tuple[int, ...]

    def __post_init__(self):
        r, c = tuple(self.row_indices), tuple(self.col_indices)
        object.__setattr__(self, "row_indices", r)
        object.__setattr__(self, "col_indices", c)
        if not r or len(r) != len(c):
            raise ValueError("minor index sets must be nonempty and of equal length")
        for idx in (r, c):
            if any(b <= a for a, b in zip(idx, idx[1:])) or idx[0] < 0:
                raise ValueError(f"indices {idx} are not strictly increasing and nonnegative")

    @property
    def order(self) -> int:
        return len(self.row_indices)

    def to_dict(self) -> dict:
        # 1-based in serialized reports, matching the usual matrix notation
        return {"rows": [i + 1 for i in self.row_indices], "cols": [j + 1 for j in self.col_indices]}


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product.

    Exact and radical operands multiply exactly; radical entries must pair
    up so that every sum is representable (products with matching radicands
    collapse to rationals).  Anything involving a float matrix is computed
    in binary64.
    """
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    if "float" in (a.kind, b.kind):
        return Matrix.from_numpy(a.to_numpy() @ b.to_numpy())
    if a.kind == "exact" and b.kind == "exact":
        bt = list(zip(*(b.row(k) for k in range(b.rows))))
        return Matrix(
            [[sum((x * y for x, y in zip(ra, cb)), Fraction(0)) for cb in bt] for ra in (a.row(i) for i in range(a.rows))],
            "exact",
        )
    ra = a if a.kind == "radical" else Matrix(a.tolist(), "radical")
    rb = b if b.kind == "radical" else Matrix(b.tolist(), "radical")
    out = []
    for i in range(ra.rows):
        row = []
        for j in range(rb.cols):
            acc = RadicalScalar(Fraction(0))
            for k in range(ra.cols):
                p = radical_mul(ra[i, k], rb[k, j])
                try:
                    acc = acc + (p if isinstance(p, RadicalScalar) else RadicalScalar(p))
                except ArithmeticError as exc:
                    raise ArithmeticError(f"irreducible radical sum at entry ({i + 1},{j + 1})") from exc
            row.append(acc)
        out.append(row)
    if all(v.is_rational for r in out for v in r):
        return Matrix([[v.coefficient for v in r] for r in out], "exact")
    return Matrix(out, "radical")


def integer_scaled(a: Matrix) -> tuple[list[list[int]], Fraction]:
    """Clear denominators row by row.

    Returns integer rows ``B`` and the factor ``f`` with ``det(a) = det(B) * f``.
    Every row multiplier is positive, so signs of all minors are preserved.
    """
    rows = []
    factor = Fraction(1)
    for i in range(a.rows):
        r = a.row(i)
        lcm = 1
        for v in r:
            lcm = math.lcm(lcm, v.denominator)
        rows.append([v.numerator * (lcm // v.denominator) for v in r])
        factor /= lcm
    return rows, factor


def bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n = len(m)
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def det_exact(a: Matrix) -> Fraction:
    if not a.is_square:
        raise ValueError(f"determinant of non-square {a.shape} matrix")
    if a.kind != "exact":
        raise TypeError(f"det_exact needs an exact matrix, got {a.kind}")
    ints, factor = integer_scaled(a)
    return bareiss_det(ints) * factor


def det_float(a: Matrix) -> float:
    """Determinant via LU with partial pivoting (LAPACK getrf)."""
    if not a.is_square:
        raise ValueError(f"determinant of non-square {a.shape} matrix")
    return float(np.linalg.det(a.to_numpy()))


def minor(a: Matrix, spec: MinorSpec):
    if spec.row_indices[-1] >= a.rows or spec.col_indices[-1] >= a.cols:
        raise IndexError(f"minor indices {spec.to_dict()} out of range for {a.shape} matrix")
    sub = a.submatrix(spec.row_indices, spec.col_indices)
    if a.kind == "exact":
        return det_exact(sub)
    if a.kind == "float":
        return det_float(sub)
    raise TypeError("minors of radical matrices are not supported")


def rank_exact(a: Matrix) -> int:
    """Rank over the rationals by fraction-free elimination with pivot search."""
    if a.kind != "exact":
        raise TypeError(f"rank_exact needs an exact matrix, got {a.kind}")
    m, _ = integer_scaled(a)
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot_row = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        for i in range(rank + 1, nrows):
            aic = m[i][col]
            row_i, row_p = m[i], m[rank]
            for j in range(col + 1, ncols):
                row_i[j] = (row_i[j] * pivot - aic * row_p[j]) // prev
            row_i[col] = 0
        prev = pivot
        rank += 1
    return rank


class PSDVerdict(enum.Enum):
    PSD = "PSD"
    NOT_PSD = "NOT_PSD"
    INDETERMINATE = "INDETERMINATE"


def eigvals_symmetric(a: Matrix) -> np.ndarray:
    """Eigenvalues of a symmetric matrix (LAPACK tridiagonal reduction + QR/D&C)."""
    return np.linalg.eigvalsh(a.to_numpy())


def is_psd_float(a: Matrix, tol: float = 1e-10) -> PSDVerdict:
    """Tolerance-gated positive semidefiniteness test.

    With ``scale`` the largest eigenvalue magnitude, the matrix is PSD when
    the smallest eigenvalue is at least ``-tol * scale`` and NOT_PSD
    otherwise.  INDETERMINATE is returned only when the eigensolver
    produces non-finite values.
    """
    if not a.is_square:
        raise ValueError("PSD test needs a square matrix")
    arr = a.to_numpy()
    mag = float(np.max(np.abs(arr))) if arr.size else 0.0
    if float(np.max(np.abs(arr - arr.T))) > tol * max(mag, 1.0):
        raise ValueError("matrix is not symmetric within tolerance")
    w = np.linalg.eigvalsh((arr + arr.T) / 2)
    if not np.all(np.isfinite(w)):
        return PSDVerdict.INDETERMINATE
    scale = float(np.max(np.abs(w)))
    if w[0] >= -tol * scale:
        return PSDVerdict.PSD
    return PSDVerdict.NOT_PSD
