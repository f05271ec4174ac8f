"""Constructors for the structured matrices: S = [1 + x_i y_j], its Hadamard
powers, Cauchy, Vandermonde and mean matrices."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .matrix import Matrix
from .scalars import as_exact, checked_float, format_exact, rational_root

__all__ = [
    "Ordering",
    "GridParams",
    "MeanKind",
    "MeanSpec",
    "gen_S",
    "gen_S_hadamard_int",
    "gen_S_hadamard_real",
    "gen_cauchy",
    "gen_mean",
    "gen_vandermonde",
    "gen_min_matrix",
]


class Ordering(str, enum.Enum):
    STRICT_POSITIVE = "strictly-increasing-positive"
    STRICT = "strictly-increasing"
    DISTINCT = "distinct-only"


def _check_ordering(values: tuple[Fraction, ...], ordering: Ordering, name: str):
    if ordering in (Ordering.STRICT_POSITIVE, Ordering.STRICT):
        for i in range(1, len(values)):
            if not values[i - 1] < values[i]:
                raise ValueError(
                    f"{name} is not strictly increasing at index {i + 1}: "
                    f"{format_exact(values[i - 1])} >= {format_exact(values[i])}"
                )
        if ordering is Ordering.STRICT_POSITIVE and values[0] <= 0:
            raise ValueError(f"{name}_1 = {format_exact(values[0])} is not positive")
    elif len(set(values)) != len(values):
        raise ValueError(f"{name} has repeated entries")


@dataclass(frozen=True)
class GridParams:
    """Node data ``x`` and ``y`` with a validated ordering regime.

    The default regime is the strict one (``0 < x_1 < ... < x_n`` and the
    same for ``y``).  ``Ordering.DISTINCT`` opts into the relaxed setting;
    decompositions then re-check their own nonvanishing conditions.
    """

    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    ordering: Ordering = Ordering.STRICT_POSITIVE

    def __post_init__(self):
        x = tuple(as_exact(v) for v in self.x)
        y = tuple(as_exact(v) for v in self.y)
        ordering = Ordering(self.ordering)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "ordering", ordering)
        if not x:
            raise ValueError("grid must have at least one node")
        if len(x) != len(y):
            raise ValueError(f"|x| = {len(x)} but |y| = {len(y)}")
        _check_ordering(x, ordering, "x")
        _check_ordering(y, ordering, "y")

    @classmethod
    def symmetric(cls, x: Sequence, ordering: Ordering = Ordering.STRICT_POSITIVE) -> "GridParams":
        return cls(tuple(x), tuple(x), ordering)

    @property
    def n(self) -> int:
        return len(self.x)

    def to_dict(self) -> dict:
        return {
            "x": [format_exact(v) for v in self.x],
            "y": [format_exact(v) for v in self.y],
            "ordering": self.ordering.value,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "GridParams":
        return cls(
            tuple(Fraction(v) for v in doc["x"]),
            tuple(Fraction(v) for v in doc["y"]),
            Ordering(doc.get("ordering", Ordering.STRICT_POSITIVE.value)),
        )


def _power_table(p: GridParams, m: int):
    return [[(1 + xi * yj) ** m for yj in p.y] for xi in p.x]


def gen_S(p: GridParams) -> Matrix:
    return Matrix([[1 + xi * yj for yj in p.y] for xi in p.x], "exact")


def gen_S_hadamard_int(p: GridParams, m: int) -> Matrix:
    if isinstance(m, bool) or int(m) != m or m < 0:
        raise ValueError(f"Hadamard exponent must be a nonnegative integer, got {m!r}")
    return Matrix(_power_table(p, int(m)), "exact")


def gen_S_hadamard_real(p: GridParams, r: float) -> Matrix:
    r = checked_float(r)
    rows = []
    for i, xi in enumerate(p.x):
        row = []
        for j, yj in enumerate(p.y):
            base = 1 + xi * yj
            if base <= 0:
                raise ValueError(
                    f"1 + x_{i + 1} y_{j + 1} = {format_exact(base)} is not positive"
                )
            row.append(float(base) ** r)
        rows.append(row)
    return Matrix(rows, "float")


def gen_cauchy(lam: Sequence, mu: Sequence | None = None) -> Matrix:
    lam = [as_exact(v) for v in lam]
    mu = lam if mu is None else [as_exact(v) for v in mu]
    rows = []
    for i, a in enumerate(lam):
        row = []
        for j, b in enumerate(mu):
            if a + b == 0:
                raise ZeroDivisionError(f"lambda_{i + 1} + mu_{j + 1} = 0")
            row.append(1 / (a + b))
        rows.append(row)
    return Matrix(rows, "exact")


def gen_vandermonde(x: Sequence) -> Matrix:
    x = [as_exact(v) for v in x]
    n = len(x)
    # Fraction(0) ** 0 == 1, the usual convention
    return Matrix([[xi**j for j in range(n)] for xi in x], "exact")


def gen_min_matrix(mu: Sequence) -> Matrix:
    mu = [as_exact(v) for v in mu]
    return Matrix([[min(a, b) for b in mu] for a in mu], "exact")


class MeanKind(str, enum.Enum):
    ARITHMETIC_RECIPROCAL = "arithmetic-reciprocal"
    HARMONIC = "harmonic"
    HEINZ_RECIPROCAL = "heinz-reciprocal"
    BINOMIAL = "binomial-reciprocal"
    MIN = "min"
    MAX = "max"
    FLAT = "flat"


@dataclass(frozen=True)
class MeanSpec:
    """A mean family plus its parameter.

    ``nu`` is used by the Heinz family, ``alpha`` by the binomial family.
    ``alpha`` may be a rational or ``±math.inf``.  For ``alpha >= 0`` the
    matrix is ``[1 / B_alpha^r]``; for ``alpha < 0`` it is ``[B_alpha^r]``
    (since ``B_{-a}(a, b) = ab / B_a(a, b)``, this is the orientation with
    positive minors).  ``alpha = 0`` is the geometric mean, ``inf`` is max and
    ``-inf`` is min.  ``MAX`` denotes ``[1 / max^r]``.
    """

    kind: MeanKind
    nu: Fraction | None = None
    alpha: Fraction | float | None = None

    def __post_init__(self):
        kind = MeanKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is MeanKind.HEINZ_RECIPROCAL:
            if self.nu is None:
                raise ValueError("Heinz mean needs nu")
            nu = as_exact(self.nu)
            if not 0 <= nu <= 1:
                raise ValueError(f"nu = {format_exact(nu)} outside [0, 1]")
            object.__setattr__(self, "nu", nu)
        if kind is MeanKind.BINOMIAL:
            if self.alpha is None:
                raise ValueError("binomial mean needs alpha")
            a = self.alpha
            if isinstance(a, float):
                if not math.isinf(a):
                    a = Fraction(a).limit_denominator(10**6) if a != int(a) else Fraction(int(a))
            else:
                a = as_exact(a)
            object.__setattr__(self, "alpha", a)

    def label(self) -> str:
        if self.kind is MeanKind.HEINZ_RECIPROCAL:
            return f"{self.kind.value}(nu={format_exact(self.nu)})"
        if self.kind is MeanKind.BINOMIAL:
            a = self.alpha
            text = ("inf" if a > 0 else "-inf") if isinstance(a, float) else format_exact(a)
            return f"{self.kind.value}(alpha={text})"
        return self.kind.value

    def to_dict(self) -> dict:
        doc = {"kind": self.kind.value}
        if self.nu is not None:
            doc["nu"] = format_exact(self.nu)
        if self.alpha is not None:
            a = self.alpha
            doc["alpha"] = ("inf" if a > 0 else "-inf") if isinstance(a, float) else format_exact(a)
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "MeanSpec":
        alpha = doc.get("alpha")
        if alpha is not None:
            alpha = float(alpha) if alpha in ("inf", "-inf") else Fraction(alpha)
        nu = doc.get("nu")
        return cls(MeanKind(doc["kind"]), None if nu is None else Fraction(nu), alpha)

    # normalized family used by the evaluators: (base kind, parameter)
    def _reduced(self):
        kind = self.kind
        if kind is MeanKind.BINOMIAL:
            a = self.alpha
            if isinstance(a, float):
                return (MeanKind.MAX, None) if a > 0 else (MeanKind.MIN, None)
            if a == 0:
                return MeanKind.HEINZ_RECIPROCAL, Fraction(1, 2)
            return MeanKind.BINOMIAL, a
        return kind, self.nu


def _exact_pow(q: Fraction, e: Fraction) -> Fraction | None:
    """``q ** e`` for rational ``e`` when the result is rational."""
    if e.denominator == 1:
        if q == 0 and e < 0:
            return None
        return q ** e.numerator
    root = rational_root(q, e.denominator)
    if root is None:
        return None
    if root == 0 and e < 0:
        return None
    return root ** e.numerator


def _mean_entry_exact(kind, param, a: Fraction, b: Fraction, r: Fraction) -> Fraction | None:
    if kind is MeanKind.FLAT:
        return Fraction(1)
    if kind is MeanKind.ARITHMETIC_RECIPROCAL:
        return _exact_pow((a + b) / 2, -r)
    if kind is MeanKind.HARMONIC:
        return _exact_pow(2 * a * b / (a + b), r)
    if kind is MeanKind.MIN:
        return _exact_pow(min(a, b), r)
    if kind is MeanKind.MAX:
        return _exact_pow(max(a, b), -r)
    if kind is MeanKind.HEINZ_RECIPROCAL:
        nu = param
        parts = [_exact_pow(a, nu), _exact_pow(b, 1 - nu), _exact_pow(a, 1 - nu), _exact_pow(b, nu)]
        if any(v is None for v in parts):
            return None
        h = (parts[0] * parts[1] + parts[2] * parts[3]) / 2
        return _exact_pow(h, -r)
    if kind is MeanKind.BINOMIAL:
        alpha = param
        pa, pb = _exact_pow(a, alpha), _exact_pow(b, alpha)
        if pa is None or pb is None:
            return None
        m = _exact_pow((pa + pb) / 2, 1 / alpha)
        if m is None:
            return None
        return _exact_pow(m, -r if alpha > 0 else r)
    raise ValueError(kind)


def _mean_entries_float(kind, param, lam: np.ndarray, r: float) -> np.ndarray:
    a, b = np.meshgrid(lam, lam, indexing="ij")
    if kind is MeanKind.FLAT:
        return np.ones_like(a)
    if kind is MeanKind.ARITHMETIC_RECIPROCAL:
        return ((a + b) / 2) ** (-r)
    if kind is MeanKind.HARMONIC:
        return (2 * a * b / (a + b)) ** r
    if kind is MeanKind.MIN:
        return np.minimum(a, b) ** r
    if kind is MeanKind.MAX:
        return np.maximum(a, b) ** (-r)
    if kind is MeanKind.HEINZ_RECIPROCAL:
        nu = float(param)
        h = (a**nu * b ** (1 - nu) + a ** (1 - nu) * b**nu) / 2
        return h ** (-r)
    if kind is MeanKind.BINOMIAL:
        alpha = float(param)
        m = ((a**alpha + b**alpha) / 2) ** (1 / alpha)
        return m ** (-r) if alpha > 0 else m**r
    raise ValueError(kind)


def gen_mean(spec: MeanSpec | MeanKind | str, lam: Sequence, r=1) -> Matrix:
    """Mean matrix ``[f(lambda_i, lambda_j)^{±r}]``.

    An exact exponent (int or Fraction) yields an exact matrix whenever
    every entry is rational; otherwise, and for any float exponent, the
    matrix is computed in binary64.
    """
    if not isinstance(spec, MeanSpec):
        spec = MeanSpec(MeanKind(spec))
    lam_q = tuple(as_exact(v) for v in lam)
    _check_ordering(lam_q, Ordering.STRICT_POSITIVE, "lambda")
    kind, param = spec._reduced()

    if isinstance(r, float):
        r_float = checked_float(r)
    else:
        r_q = as_exact(r)
        entries = []
        for a in lam_q:
            row = []
            for b in lam_q:
                v = _mean_entry_exact(kind, param, a, b, r_q)
                if v is None:
                    break
                row.append(v)
            else:
                entries.append(row)
                continue
            break
        else:
            return Matrix(entries, "exact")
        r_float = float(r_q)

    vals = _mean_entries_float(kind, param, np.array([float(v) for v in lam_q]), r_float)
    return Matrix.from_numpy(vals)
