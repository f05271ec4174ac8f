"""Total positivity / nonnegativity certification by minor enumeration."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .generators import (
    GridParams,
    MeanKind,
    MeanSpec,
    Ordering,
    gen_mean,
    gen_S_hadamard_int,
    gen_S_hadamard_real,
)
from .matrix import Matrix, MinorSpec, bareiss_det, det_exact, integer_scaled, rank_exact
from .scalars import format_exact

__all__ = [
    "Property",
    "Verdict",
    "MinorWitness",
    "PositivityVerdict",
    "ThresholdSample",
    "ThresholdScanReport",
    "MeanCheckRow",
    "DEFAULT_TOL",
    "MAX_ORDER",
    "enumerate_minor_specs",
    "check_tp",
    "check_tn",
    "rank_of_hadamard_power",
    "scan_hadamard_threshold",
    "check_mean_matrices",
    "default_mean_specs",
]

DEFAULT_TOL = 1e-10
MAX_ORDER = 10


class Property(str, enum.Enum):
    TP = "TP"
    TN = "TN"


class Verdict(str, enum.Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    INDETERMINATE = "INDETERMINATE"


@dataclass(frozen=True)
class MinorWitness:
    spec: MinorSpec
    value: Fraction | float
    # "negative", "zero" (exact), or "zero-within-tol" (float band)
    reason: str

    def to_dict(self) -> dict:
        v = self.value
        return {
            **self.spec.to_dict(),
            "value": format_exact(v) if isinstance(v, Fraction) else v,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class PositivityVerdict:
    prop: Property
    k: int
    verdict: Verdict
    mode: str  # "exact" or "float"
    tol: float | None = None
    witness: MinorWitness | None = None
    minors_checked: int = 0
    indeterminate_count: int = 0

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    @property
    def label(self) -> str:
        return f"{self.prop.value}_{self.k}"

    def to_dict(self) -> dict:
        doc = {
            "property": self.label,
            "verdict": self.verdict.value,
            "mode": self.mode,
            "minors_checked": self.minors_checked,
            "indeterminate_count": self.indeterminate_count,
        }
        if self.tol is not None:
            doc["tol"] = self.tol
        if self.witness is not None:
            doc["witness"] = self.witness.to_dict()
        return doc


def enumerate_minor_specs(rows: int, cols: int, k: int) -> Iterator[MinorSpec]:
    """All minors of orders 1..k: by order, then lexicographic rows, then columns."""
    for order in range(1, k + 1):
        for r in itertools.combinations(range(rows), order):
            for c in itertools.combinations(range(cols), order):
                yield MinorSpec(r, c)


def _validate(a: Matrix, k: int, mode: str, max_order: int | None):
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    if not 1 <= k <= min(a.rows, a.cols):
        raise ValueError(f"order k={k} outside 1..{min(a.rows, a.cols)}")
    if mode == "exact" and a.kind != "exact":
        raise TypeError(f"exact mode needs an exact matrix, got {a.kind}")
    if a.kind == "radical":
        raise TypeError("positivity checks do not accept radical matrices")
    limit = MAX_ORDER if max_order is None else max_order
    if max(a.rows, a.cols) > limit:
        raise ValueError(f"matrix of size {a.shape} exceeds the enumeration cap {limit} (pass max_order to override)")


def _exact_signs(a: Matrix, k: int):
    # positive row/column scalings keep every minor's sign, so work on an
    # integer matrix and recover the exact value only for the witness
    ints, _ = integer_scaled(a)
    for spec in enumerate_minor_specs(a.rows, a.cols, k):
        sub = [[ints[i][j] for j in spec.col_indices] for i in spec.row_indices]
        d = bareiss_det(sub)
        yield spec, (d > 0) - (d < 0)


def _exact_value(a: Matrix, spec: MinorSpec) -> Fraction:
    return det_exact(a.submatrix(spec.row_indices, spec.col_indices))


def _float_minors(arr: np.ndarray, k: int, tol: float):
    """Yield (spec, value, sign) with sign in {1, -1, 0}; 0 means within the band."""
    for spec in enumerate_minor_specs(arr.shape[0], arr.shape[1], k):
        sub = arr[np.ix_(spec.row_indices, spec.col_indices)]
        with np.errstate(over="ignore", invalid="ignore"):
            value = float(np.linalg.det(sub)) if spec.order > 1 else float(sub[0, 0])
            scale = float(np.prod(np.max(np.abs(sub), axis=1)))
        if not math.isfinite(value):
            yield spec, value, None
        elif value > tol * scale:
            yield spec, value, 1
        elif value < -tol * scale:
            yield spec, value, -1
        else:
            yield spec, value, 0


def _check(a: Matrix, k: int, mode: str, tol: float, prop: Property, max_order: int | None) -> PositivityVerdict:
    _validate(a, k, mode, max_order)
    checked = 0
    if mode == "exact":
        for spec, sign in _exact_signs(a, k):
            checked += 1
            bad = sign < 0 or (prop is Property.TP and sign == 0)
            if bad:
                reason = "negative" if sign < 0 else "zero"
                w = MinorWitness(spec, _exact_value(a, spec), reason)
                return PositivityVerdict(prop, k, Verdict.FAILS, "exact", None, w, checked)
        return PositivityVerdict(prop, k, Verdict.HOLDS, "exact", None, None, checked)

    arr = a.to_numpy()
    first_bad = None
    first_nonfinite = None
    band = 0
    for spec, value, sign in _float_minors(arr, k, tol):
        checked += 1
        if sign is None:
            first_nonfinite = first_nonfinite or MinorWitness(spec, value, "non-finite")
            continue
        if sign == 0:
            band += 1
        if first_bad is None:
            if sign < 0:
                first_bad = MinorWitness(spec, value, "negative")
            elif sign == 0 and prop is Property.TP:
                first_bad = MinorWitness(spec, value, "zero-within-tol")
    if first_bad is not None:
        verdict, witness = Verdict.FAILS, first_bad
    elif first_nonfinite is not None:
        verdict, witness = Verdict.INDETERMINATE, first_nonfinite
    else:
        verdict, witness = Verdict.HOLDS, None
    return PositivityVerdict(prop, k, verdict, "float", tol, witness, checked, band)


def check_tp(a: Matrix, k: int | None = None, mode: str = "exact", tol: float = DEFAULT_TOL,
             max_order: int | None = None) -> PositivityVerdict:
    """TP_k: every minor of order <= k is positive.

    In float mode a minor counts as positive only above ``tol * scale``
    where ``scale`` is the product of the submatrix's row sup-norms; a minor
    inside the band is reported as a ``zero-within-tol`` witness.
    """
    k = min(a.rows, a.cols) if k is None else k
    return _check(a, k, mode, tol, Property.TP, max_order)


def check_tn(a: Matrix, k: int | None = None, mode: str = "exact", tol: float = DEFAULT_TOL,
             max_order: int | None = None) -> PositivityVerdict:
    """TN_k: every minor of order <= k is nonnegative (>= -tol*scale in float mode)."""
    k = min(a.rows, a.cols) if k is None else k
    return _check(a, k, mode, tol, Property.TN, max_order)


def rank_of_hadamard_power(p: GridParams, m: int) -> int:
    if p.ordering is Ordering.DISTINCT:
        raise ValueError("rank law needs strictly increasing grids")
    if isinstance(m, bool) or int(m) != m or not 0 <= m <= p.n - 2:
        raise ValueError(f"m={m} outside 0..{p.n - 2}")
    return rank_exact(gen_S_hadamard_int(p, int(m)))


@dataclass(frozen=True)
class ThresholdSample:
    r: float
    tp: PositivityVerdict
    tn: PositivityVerdict
    expected_tp: bool
    expected_tn: bool

    @property
    def agrees(self) -> bool:
        return self.tp.holds == self.expected_tp and self.tn.holds == self.expected_tn

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "tp": self.tp.to_dict(),
            "tn": self.tn.to_dict(),
            "expected_tp": self.expected_tp,
            "expected_tn": self.expected_tn,
            "agrees": self.agrees,
        }


@dataclass(frozen=True)
class ThresholdScanReport:
    grid: GridParams
    k: int
    boundary: int
    samples: tuple[ThresholdSample, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "grid": self.grid.to_dict(),
            "k": self.k,
            "boundary": self.boundary,
            "samples": [s.to_dict() for s in self.samples],
        }


def _expected_s_power(r: float, n: int) -> tuple[bool, bool]:
    boundary = n - 2
    integer = float(r).is_integer() and 0 <= r <= boundary
    return r > boundary, r > boundary or integer


def scan_hadamard_threshold(p: GridParams, exponents: Sequence[float], k: int | None = None,
                            tol: float = DEFAULT_TOL) -> ThresholdScanReport:
    """Float TP_k/TN_k verdicts of ``S^{∘r}`` over sampled exponents.

    Each sample is set against the known boundary ``n - 2``: TP exactly
    when ``r > n - 2``, TN when additionally ``r`` is one of ``0..n-2``.
    """
    if p.ordering is not Ordering.STRICT_POSITIVE:
        raise ValueError("threshold scan needs 0 < x_1 < ... < x_n and 0 < y_1 < ... < y_n")
    k = p.n if k is None else k
    samples = []
    for r in sorted(float(v) for v in exponents):
        a = gen_S_hadamard_real(p, r)
        exp_tp, exp_tn = _expected_s_power(r, p.n)
        samples.append(ThresholdSample(r, check_tp(a, k, "float", tol), check_tn(a, k, "float", tol), exp_tp, exp_tn))
    return ThresholdScanReport(p, k, p.n - 2, tuple(samples))


def default_mean_specs(nus=(Fraction(0), Fraction(3, 10), Fraction(1), Fraction(1, 2)),
                       alphas=(Fraction(1, 2), Fraction(1), Fraction(3))) -> list[MeanSpec]:
    specs = [MeanSpec(MeanKind.ARITHMETIC_RECIPROCAL), MeanSpec(MeanKind.HARMONIC)]
    specs += [MeanSpec(MeanKind.HEINZ_RECIPROCAL, nu=nu) for nu in nus]
    specs += [MeanSpec(MeanKind.BINOMIAL, alpha=a) for a in alphas]
    specs += [MeanSpec(MeanKind.BINOMIAL, alpha=-a) for a in alphas]
    specs += [MeanSpec(MeanKind.BINOMIAL, alpha=v) for v in (Fraction(0), math.inf, -math.inf)]
    return specs


def expected_mean_property(spec: MeanSpec) -> Property:
    """TP for the strictly positive families, TN for the rank-deficient ones."""
    if spec.kind in (MeanKind.MIN, MeanKind.MAX, MeanKind.FLAT):
        return Property.TN
    if spec.kind is MeanKind.HEINZ_RECIPROCAL and spec.nu == Fraction(1, 2):
        return Property.TN
    if spec.kind is MeanKind.BINOMIAL and (isinstance(spec.alpha, float) or spec.alpha == 0):
        return Property.TN
    return Property.TP


@dataclass(frozen=True)
class MeanCheckRow:
    spec: MeanSpec
    expected: Property
    tp: PositivityVerdict
    tn: PositivityVerdict

    @property
    def agrees(self) -> bool:
        if self.expected is Property.TP:
            return self.tp.holds
        return self.tn.holds and not self.tp.holds

    def to_dict(self) -> dict:
        return {
            "mean": self.spec.label(),
            "expected": self.expected.value,
            "tp": self.tp.to_dict(),
            "tn": self.tn.to_dict(),
            "agrees": self.agrees,
        }


def check_mean_matrices(lam: Sequence, r, k: int | None = None, specs: Sequence[MeanSpec] | None = None,
                        tol: float = DEFAULT_TOL) -> list[MeanCheckRow]:
    """TP_k / TN_k verdicts for each mean matrix family at exponent ``r > 0``.

    Exact matrices (rational entries) are checked exactly, the rest in
    binary64 with ``tol``.
    """
    if float(r) <= 0:
        raise ValueError("exponent r must be positive")
    specs = default_mean_specs() if specs is None else specs
    rows = []
    for spec in specs:
        a = gen_mean(spec, lam, r)
        kk = a.rows if k is None else k
        mode = "exact" if a.kind == "exact" else "float"
        rows.append(MeanCheckRow(spec, expected_mean_property(spec),
                                 check_tp(a, kk, mode, tol), check_tn(a, kk, mode, tol)))
    return rows
