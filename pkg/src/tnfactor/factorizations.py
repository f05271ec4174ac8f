"""Explicit bidiagonal / LU factorizations as verifiable certificates.

A certificate is an ordered list of factors whose left-to-right product is
claimed to equal a target matrix.  Factors are stored exactly as written in
the closed forms; :func:`verify_certificate` rebuilds the product and
compares it with the target.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .generators import (
    GridParams,
    Ordering,
    gen_min_matrix,
    gen_S,
    gen_S_hadamard_int,
    gen_vandermonde,
)
from .matrix import Matrix, mat_mul
from .scalars import (
    RadicalScalar,
    as_exact,
    format_exact,
    format_scalar,
    parse_exact,
)

__all__ = [
    "Factor",
    "FactorizationCertificate",
    "NevilleIntermediates",
    "NevilleBreakdown",
    "VerificationReport",
    "lu_of_S",
    "lu_certificate",
    "bidiagonal_decomposition_S",
    "neville_intermediates_S",
    "vandermonde_factors",
    "vandermonde_bidiagonal",
    "binomial_diagonal",
    "hadamard_power_decomposition",
    "min_matrix_lu",
    "neville_elimination_generic",
    "verify_certificate",
]

ZERO, ONE = Fraction(0), Fraction(1)

FORMS = ("elem-lower", "elem-upper", "diag", "gen-lower", "gen-upper", "dense")


@dataclass(frozen=True)
class Factor:
    """One factor of a certificate.

    ``elem-lower``/``elem-upper`` use ``index`` (1-based row ``i`` of the
    elementary ``L_i(s)``/``U_i(s)``) and ``value``.  ``diag`` uses
    ``diag``; ``gen-lower``/``gen-upper`` use ``diag`` plus ``off`` (the
    sub- or superdiagonal, length n-1); ``dense`` wraps a whole matrix and
    is only used for display-form certificates.
    """

    form: str
    index: int | None = None
    value: Fraction | None = None
    diag: tuple | None = None
    off: tuple | None = None
    matrix: Matrix | None = None

    def __post_init__(self):
        if self.form not in FORMS:
            raise ValueError(f"unknown factor form {self.form!r}")
        if self.form.startswith("elem") and (self.index is None or self.index < 2):
            raise ValueError("elementary factors need an index i >= 2")

    @classmethod
    def elem_lower(cls, i: int, s) -> "Factor":
        return cls("elem-lower", index=i, value=as_exact(s))

    @classmethod
    def elem_upper(cls, i: int, s) -> "Factor":
        return cls("elem-upper", index=i, value=as_exact(s))

    @classmethod
    def diagonal(cls, d: Sequence) -> "Factor":
        return cls("diag", diag=tuple(as_exact(v) for v in d))

    @classmethod
    def gen_lower(cls, diag: Sequence, sub: Sequence) -> "Factor":
        return cls("gen-lower", diag=tuple(as_exact(v) for v in diag), off=tuple(as_exact(v) for v in sub))

    @classmethod
    def gen_upper(cls, diag: Sequence, sup: Sequence) -> "Factor":
        return cls("gen-upper", diag=tuple(as_exact(v) for v in diag), off=tuple(as_exact(v) for v in sup))

    @classmethod
    def dense(cls, m: Matrix) -> "Factor":
        return cls("dense", matrix=m)

    def size(self) -> int | None:
        if self.diag is not None:
            return len(self.diag)
        if self.matrix is not None:
            return self.matrix.rows
        return None

    def transpose(self) -> "Factor":
        swap = {"elem-lower": "elem-upper", "elem-upper": "elem-lower",
                "gen-lower": "gen-upper", "gen-upper": "gen-lower"}
        if self.form == "diag":
            return self
        if self.form == "dense":
            return Factor.dense(self.matrix.T)
        return Factor(swap[self.form], self.index, self.value, self.diag, self.off)

    def parameters(self) -> list:
        """Every scalar that defines the factor (for sign checks)."""
        if self.form.startswith("elem"):
            return [self.value]
        if self.form == "diag":
            return list(self.diag)
        if self.form == "dense":
            return list(self.matrix.entries())
        return list(self.diag) + list(self.off)

    def materialize(self, n: int) -> Matrix:
        if self.form == "dense":
            if self.matrix.shape != (n, n):
                raise ValueError(f"dense factor is {self.matrix.shape}, expected {(n, n)}")
            return self.matrix
        rows = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        if self.form.startswith("elem"):
            i = self.index
            if i > n:
                raise ValueError(f"elementary index {i} exceeds order {n}")
            if self.form == "elem-lower":
                rows[i - 1][i - 2] = self.value
            else:
                rows[i - 2][i - 1] = self.value
            return Matrix(rows, "exact")
        if len(self.diag) != n:
            raise ValueError(f"factor of order {len(self.diag)} in a certificate of order {n}")
        for k in range(n):
            rows[k][k] = self.diag[k]
        if self.form == "gen-lower":
            for k, v in enumerate(self.off):
                rows[k + 1][k] = v
        elif self.form == "gen-upper":
            for k, v in enumerate(self.off):
                rows[k][k + 1] = v
        return Matrix(rows, "exact")

    def apply_left(self, a: Matrix) -> Matrix:
        """``self @ a`` computed as row operations."""
        if self.form != "elem-lower" and self.form != "elem-upper":
            return mat_mul(self.materialize(a.rows), a)
        rows = a.tolist()
        i = self.index - 1
        if self.form == "elem-lower":
            rows[i] = [u + self.value * v for u, v in zip(rows[i], rows[i - 1])]
        else:
            rows[i - 1] = [u + self.value * v for u, v in zip(rows[i - 1], rows[i])]
        return Matrix(rows, a.kind)

    def apply_right(self, a: Matrix) -> Matrix:
        """``a @ self`` touching only the factor's nonzero pattern."""
        if self.form == "dense" or a.kind != "exact":
            return mat_mul(a, self.materialize(a.cols))
        n = a.cols
        if self.form == "diag":
            d = self.diag
        elif self.form.startswith("elem"):
            d = (ONE,) * n
        else:
            d = self.diag
        if len(d) != n:
            raise ValueError(f"factor of order {len(d)} applied to {a.shape}")
        # (source column, target column, value) for the single off-diagonal band
        if self.form.startswith("elem"):
            if self.index > n:
                raise ValueError(f"elementary index {self.index} exceeds order {n}")
            i = self.index - 1
            band = [(i, i - 1, self.value)] if self.form == "elem-lower" else [(i - 1, i, self.value)]
        elif self.form == "gen-lower":
            band = [(k + 1, k, v) for k, v in enumerate(self.off)]
        elif self.form == "gen-upper":
            band = [(k, k + 1, v) for k, v in enumerate(self.off)]
        else:
            band = []
        out = []
        for row in a.tolist():
            new = [v if dj == 1 else v * dj for v, dj in zip(row, d)]
            for src, dst, s in band:
                if s != 0 and row[src] != 0:
                    new[dst] += row[src] * s
            out.append(new)
        return Matrix(out, "exact")

    def to_dict(self) -> dict:
        if self.form.startswith("elem"):
            return {"form": self.form, "i": self.index, "s": format_exact(self.value)}
        if self.form == "diag":
            return {"form": "diag", "d": [format_exact(v) for v in self.diag]}
        if self.form == "dense":
            return {"form": "dense", "matrix": self.matrix.to_dict()}
        key = "sub" if self.form == "gen-lower" else "super"
        return {"form": self.form, "diag": [format_exact(v) for v in self.diag],
                key: [format_exact(v) for v in self.off]}

    @classmethod
    def from_dict(cls, doc: dict) -> "Factor":
        form = doc["form"]
        if form in ("elem-lower", "elem-upper"):
            return cls(form, index=int(doc["i"]), value=parse_exact(doc["s"]))
        if form == "diag":
            return cls.diagonal([parse_exact(v) for v in doc["d"]])
        if form == "dense":
            return cls.dense(Matrix.from_dict(doc["matrix"]))
        if form == "gen-lower":
            return cls.gen_lower([parse_exact(v) for v in doc["diag"]], [parse_exact(v) for v in doc["sub"]])
        if form == "gen-upper":
            return cls.gen_upper([parse_exact(v) for v in doc["diag"]], [parse_exact(v) for v in doc["super"]])
        raise ValueError(f"unknown factor form {form!r}")


@dataclass(frozen=True)
class FactorizationCertificate:
    """Ordered factors claimed to multiply (left to right) to ``target``.

    ``target`` describes the matrix: ``family`` (``S``, ``S-pow``,
    ``vandermonde``, ``min`` or ``matrix``), the grid, an optional exponent
    and the method that produced the factors.
    """

    target: dict
    n: int
    factors: tuple[Factor, ...]
    product_kind: str = "exact"

    def product(self) -> Matrix:
        acc = Matrix.identity(self.n)
        for f in self.factors:
            acc = f.apply_right(acc)
        return acc

    def parameters(self) -> list:
        return [v for f in self.factors for v in f.parameters()]

    def target_matrix(self) -> Matrix:
        return target_from_description(self.target)

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "n": self.n,
            "product_kind": self.product_kind,
            "factors": [f.to_dict() for f in self.factors],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "FactorizationCertificate":
        return cls(
            target=doc["target"],
            n=int(doc["n"]),
            factors=tuple(Factor.from_dict(f) for f in doc["factors"]),
            product_kind=doc.get("product_kind", "exact"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FactorizationCertificate":
        return cls.from_dict(json.loads(text))


def _grid_target(family: str, p: GridParams, method: str, exponent=None) -> dict:
    doc = {"family": family, "method": method, **p.to_dict()}
    if exponent is not None:
        doc["exponent"] = exponent
    return doc


def target_from_description(t: dict) -> Matrix:
    family = t["family"]
    if family == "matrix":
        return Matrix.from_dict(t["matrix"])
    if family == "vandermonde":
        return gen_vandermonde([parse_exact(v) for v in t["x"]])
    if family == "min":
        return gen_min_matrix([parse_exact(v) for v in t["mu"]])
    p = GridParams.from_dict(t)
    if family == "S":
        return gen_S(p)
    if family == "S-pow":
        return gen_S_hadamard_int(p, int(t["exponent"]))
    raise ValueError(f"unknown target family {family!r}")


# -- validation ---------------------------------------------------------------

def _check_nonvanishing(p: GridParams):
    """Conditions under which the 1 + x y decomposition exists for real nodes."""
    n = p.n
    if n < 2:
        raise ValueError("the decomposition needs n >= 2")
    x, y = p.x, p.y
    for j in range(n):
        if 1 + x[0] * y[j] == 0:
            raise ValueError(f"1 + x_1 y_{j + 1} = 0")
        if 1 + x[j] * y[0] == 0:
            raise ValueError(f"1 + x_{j + 1} y_1 = 0")
    for i in range(1, n):
        if x[i] == x[i - 1]:
            raise ValueError(f"x_{i + 1} - x_{i} = 0")
        if y[i] == y[i - 1]:
            raise ValueError(f"y_{i + 1} - y_{i} = 0")


# -- LU with square roots -----------------------------------------------------

def lu_of_S(p: GridParams) -> tuple[Matrix, Matrix]:
    """Two-column LU factors of ``S`` with radical entries.

    Column 1 of ``L`` and row 1 of ``U`` share the radicand ``1 + x_1 y_1``;
    column 2 and row 2 share ``(x_2 - x_1)(y_2 - y_1)(1 + x_1 y_1)``, so every
    product in ``L @ U`` is rational.
    """
    n = p.n
    if n < 2:
        raise ValueError("LU factors need n >= 2 (they use x_2 and y_2)")
    x, y = p.x, p.y
    c = 1 + x[0] * y[0]
    if c <= 0:
        raise ValueError(f"1 + x_1 y_1 = {format_exact(c)} is not positive")
    dx, dy = x[1] - x[0], y[1] - y[0]
    if dx == 0 or dy == 0:
        raise ValueError("x_2 = x_1 or y_2 = y_1")
    if dx * dy < 0:
        raise ValueError("(x_2 - x_1)(y_2 - y_1) < 0: the second LU column is not real")
    r2 = dx * dy * c
    zero = RadicalScalar(ZERO)
    L = [[zero] * n for _ in range(n)]
    U = [[zero] * n for _ in range(n)]
    for i in range(n):
        L[i][0] = RadicalScalar((1 + y[0] * x[i]) / c, c)
        L[i][1] = RadicalScalar((x[i] - x[0]) / (abs(dx) * c), r2)
        U[0][i] = RadicalScalar((1 + x[0] * y[i]) / c, c)
        U[1][i] = RadicalScalar((y[i] - y[0]) / (abs(dy) * c), r2)
    return Matrix(L, "radical"), Matrix(U, "radical")


def lu_certificate(p: GridParams) -> FactorizationCertificate:
    L, U = lu_of_S(p)
    return FactorizationCertificate(
        target=_grid_target("S", p, "lu"),
        n=p.n,
        factors=(Factor.dense(L), Factor.dense(U)),
        product_kind="radical-display",
    )


# -- elementary bidiagonal decomposition of S ---------------------------------

def _alphas(u, v0):
    # alpha_i = (1 + v_1 u_i) / (1 + v_1 u_{i-1}), i = 2..n (1-based)
    return {i: (1 + v0 * u[i - 1]) / (1 + v0 * u[i - 2]) for i in range(2, len(u) + 1)}


def _betas(u, v0):
    # beta_j for j = 3..n
    out = {}
    for j in range(3, len(u) + 1):
        uj, uj1, uj2 = u[j - 1], u[j - 2], u[j - 3]
        out[j] = (uj - uj1) * (1 + v0 * uj2) / ((uj1 - uj2) * (1 + v0 * uj1))
    return out


def _closed_form_diag(p: GridParams) -> list[Fraction]:
    x, y = p.x, p.y
    c = 1 + x[0] * y[0]
    return [c, (x[1] - x[0]) * (y[1] - y[0]) / c] + [ZERO] * (p.n - 2)


def bidiagonal_decomposition_S(p: GridParams) -> FactorizationCertificate:
    """Elementary bidiagonal decomposition of ``S = [1 + x_i y_j]``.

    Factor order::

        L_n(a_n)..L_2(a_2)  L_n(b_n)..L_3(b_3)  D  U_3(b'_3)..U_n(b'_n)  U_2(a'_2)..U_n(a'_n)
    """
    _check_nonvanishing(p)
    n, x, y = p.n, p.x, p.y
    a, a2 = _alphas(x, y[0]), _alphas(y, x[0])
    b, b2 = _betas(x, y[0]), _betas(y, x[0])
    factors = [Factor.elem_lower(i, a[i]) for i in range(n, 1, -1)]
    factors += [Factor.elem_lower(j, b[j]) for j in range(n, 2, -1)]
    factors.append(Factor.diagonal(_closed_form_diag(p)))
    factors += [Factor.elem_upper(j, b2[j]) for j in range(3, n + 1)]
    factors += [Factor.elem_upper(i, a2[i]) for i in range(2, n + 1)]
    return FactorizationCertificate(_grid_target("S", p, "bidiagonal"), n, tuple(factors))


@dataclass(frozen=True)
class NevilleIntermediates:
    M: Matrix
    M_prime: Matrix
    N: Matrix
    N_prime: Matrix
    Y1: Matrix
    Y2: Matrix
    D: Matrix

    def identities(self, S: Matrix) -> dict[str, bool]:
        return {
            "M N = Y1": mat_mul(self.M, self.N) == self.Y1,
            "M' N' = Y2": mat_mul(self.M_prime, self.N_prime) == self.Y2,
            "Y1 D Y2^T = S": mat_mul(mat_mul(self.Y1, self.D), self.Y2.T) == S,
        }


def _m_matrix(u, v0):
    n = len(u)
    return Matrix([[(1 + v0 * u[i]) / (1 + v0 * u[j]) if i >= j else ZERO for j in range(n)] for i in range(n)])


def _n_matrix(u, v0):
    n = len(u)
    rows = [[ZERO] * n for _ in range(n)]
    rows[0][0] = ONE
    for i in range(1, n):
        for j in range(1, i + 1):
            rows[i][j] = (u[i] - u[i - 1]) * (1 + v0 * u[j - 1]) / ((u[j] - u[j - 1]) * (1 + v0 * u[i - 1]))
    return Matrix(rows)


def _y_matrix(u, v0):
    n = len(u)
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        rows[i][0] = (1 + v0 * u[i]) / (1 + v0 * u[0])
        for j in range(1, i + 1):
            rows[i][j] = (u[i] - u[j - 1]) / (u[j] - u[j - 1])
    return Matrix(rows)


def neville_intermediates_S(p: GridParams) -> NevilleIntermediates:
    """Closed-form triangular intermediates of the bidiagonal decomposition.

    Raises ``ArithmeticError`` if any of the identities fails (it should not).
    """
    _check_nonvanishing(p)
    x, y = p.x, p.y
    out = NevilleIntermediates(
        M=_m_matrix(x, y[0]),
        M_prime=_m_matrix(y, x[0]),
        N=_n_matrix(x, y[0]),
        N_prime=_n_matrix(y, x[0]),
        Y1=_y_matrix(x, y[0]),
        Y2=_y_matrix(y, x[0]),
        D=Matrix.diag(_closed_form_diag(p)),
    )
    failed = [k for k, ok in out.identities(gen_S(p)).items() if not ok]
    if failed:
        raise ArithmeticError(f"closed-form identities failed: {failed}")
    return out


# -- Vandermonde route for Hadamard powers ------------------------------------

def _prod(values) -> Fraction:
    out = ONE
    for v in values:
        out *= v
    return out


def _vandermonde_lower(x, k: int) -> Factor:
    n = len(x)
    X = lambda i: x[i - 1]  # noqa: E731  1-based view
    sub = []
    for i in range(2, n + 1):
        if i < n - k + 1:
            sub.append(ZERO)
        elif i == n - k + 1:
            sub.append(ONE)
        else:
            # empty product (no t) is 1
            sub.append(_prod((X(i) - X(i - 1 - t)) / (X(i - 1) - X(i - 2 - t)) for t in range(0, k - n + i - 1)))
    return Factor.gen_lower([ONE] * n, sub)


def _vandermonde_upper(x, k: int) -> Factor:
    n = len(x)
    X = lambda i: x[i - 1]  # noqa: E731
    diag = [ONE if i <= n - k else X(i) - X(n - k) for i in range(1, n + 1)]
    sup = []
    for i in range(1, n):
        if i < n - k:
            sup.append(ZERO)
        elif i == n - k:
            sup.append(X(1))
        else:
            sup.append(X(k - n + i + 1) * _prod((X(i) - X(i - t)) / (X(i + 1) - X(i + 1 - t)) for t in range(1, k - n + i + 1)))
    return Factor.gen_upper(diag, sup)


def vandermonde_factors(x: Sequence) -> list[Factor]:
    """``[L^(1), ..., L^(n-1), U^(n-1), ..., U^(1)]`` for ``V = [x_i^(j-1)]``."""
    x = tuple(as_exact(v) for v in x)
    if len(set(x)) != len(x):
        raise ValueError("Vandermonde nodes must be distinct")
    n = len(x)
    lowers = [_vandermonde_lower(x, k) for k in range(1, n)]
    uppers = [_vandermonde_upper(x, k) for k in range(n - 1, 0, -1)]
    return lowers + uppers


def vandermonde_bidiagonal(x: Sequence) -> FactorizationCertificate:
    x = tuple(as_exact(v) for v in x)
    factors = vandermonde_factors(x)
    target = {"family": "vandermonde", "method": "vandermonde", "x": [format_exact(v) for v in x]}
    return FactorizationCertificate(target, len(x), tuple(factors))


def binomial_diagonal(m: int, n: int) -> list[Fraction]:
    """``diag(C(m,0), ..., C(m,m), 0, ..., 0)`` of length n, via Pascal's rule."""
    if not 0 <= m <= n - 1:
        raise ValueError(f"need 0 <= m <= n - 1, got m={m}, n={n}")
    row = [1]
    for _ in range(m):
        row = [1] + [row[k - 1] + row[k] for k in range(1, len(row))] + [1]
    return [Fraction(v) for v in row] + [ZERO] * (n - m - 1)


def hadamard_power_decomposition(p: GridParams, m: int) -> FactorizationCertificate:
    """``S^{∘m} = V_x D_m V_y^T`` with both Vandermonde matrices in bidiagonal form."""
    n = p.n
    if n < 2:
        raise ValueError("needs n >= 2")
    if isinstance(m, bool) or int(m) != m or not 1 <= m <= n - 1:
        raise ValueError(f"exponent m={m} outside 1..{n - 1}")
    m = int(m)
    vx = vandermonde_factors(p.x)
    vy = vandermonde_factors(p.y)
    factors = vx + [Factor.diagonal(binomial_diagonal(m, n))] + [f.transpose() for f in reversed(vy)]
    return FactorizationCertificate(_grid_target("S-pow", p, "hadamard-vandermonde", m), n, tuple(factors))


# -- min matrix ---------------------------------------------------------------

def min_matrix_lu(mu: Sequence) -> FactorizationCertificate:
    """``[min(mu_i, mu_j)] = L' U'`` with nonnegative triangular factors."""
    mu = tuple(as_exact(v) for v in mu)
    GridParams(mu, mu, Ordering.STRICT_POSITIVE)  # ordering check
    n = len(mu)
    steps = [mu[0]] + [mu[j] - mu[j - 1] for j in range(1, n)]
    L = Matrix([[steps[j] if i >= j else ZERO for j in range(n)] for i in range(n)])
    U = Matrix([[ONE if i <= j else ZERO for j in range(n)] for i in range(n)])
    target = {"family": "min", "method": "min-lu", "mu": [format_exact(v) for v in mu]}
    return FactorizationCertificate(target, n, (Factor.dense(L), Factor.dense(U)))


# -- generic Neville elimination ----------------------------------------------

class NevilleBreakdown(ValueError):
    """A zero pivot sits above a nonzero entry; Neville elimination would need a row swap."""

    def __init__(self, row: int, col: int, stage: str):
        self.row, self.col, self.stage = row, col, stage
        super().__init__(
            f"Neville elimination breaks down ({stage} pass): zero pivot at row {row - 1}, "
            f"column {col} above nonzero entry in row {row}"
        )


def _neville_rows(a: list[list[Fraction]], stage: str):
    """Eliminate below the diagonal with adjacent-row operations only.

    Returns the multipliers per column (bottom row first) and the reduced
    upper-triangular rows.
    """
    n = len(a)
    a = [list(r) for r in a]
    blocks = []
    for k in range(n - 1):
        block = []
        for i in range(n - 1, k, -1):
            if a[i][k] == 0:
                m = ZERO
            elif a[i - 1][k] == 0:
                raise NevilleBreakdown(i + 1, k + 1, stage)
            else:
                m = a[i][k] / a[i - 1][k]
                a[i] = [u - m * v for u, v in zip(a[i], a[i - 1])]
            block.append((i + 1, m))
        blocks.append(block)
    return blocks, a


def neville_elimination_generic(a: Matrix) -> FactorizationCertificate:
    """Neville elimination without row exchanges.

    Produces ``[lower elementary factors] D [upper elementary factors]``.
    Elementary factors with zero multiplier are omitted.  Raises
    :class:`NevilleBreakdown` when a zero pivot would need a row swap.
    """
    if a.kind != "exact" or not a.is_square:
        raise ValueError("Neville elimination needs a square exact matrix")
    n = a.rows
    lower_blocks, R = _neville_rows(a.tolist(), "row")
    RT = [list(col) for col in zip(*R)]
    upper_blocks, Dm = _neville_rows(RT, "column")
    if any(Dm[i][j] != 0 for i in range(n) for j in range(n) if i != j):
        raise NevilleBreakdown(n, n, "column")
    lowers = [Factor.elem_lower(i, m) for block in lower_blocks for (i, m) in block if m != 0]
    # R^T = (product of L blocks) D, so R = D (reversed transposes)
    uppers = [Factor.elem_upper(i, m) for block in reversed(upper_blocks) for (i, m) in reversed(block) if m != 0]
    target = {"family": "matrix", "method": "neville", "matrix": a.to_dict()}
    factors = lowers + [Factor.diagonal([Dm[i][i] for i in range(n)])] + uppers
    return FactorizationCertificate(target, n, tuple(factors))


# -- verification -------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    status: str  # exact-equal | mismatch | float-equal
    entry: tuple[int, int] | None = None
    expected: str | None = None
    got: str | None = None
    max_abs_deviation: float | None = None
    max_rel_deviation: float | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in ("exact-equal", "float-equal") and all(
            v == "exact-equal" for v in self.details.values() if isinstance(v, str)
        )

    def to_dict(self) -> dict:
        doc = {"status": self.status, "ok": self.ok}
        if self.entry is not None:
            doc.update(entry=list(self.entry), expected=self.expected, got=self.got)
        if self.max_abs_deviation is not None:
            doc["max_abs_deviation"] = self.max_abs_deviation
            doc["max_rel_deviation"] = self.max_rel_deviation
        if self.details:
            doc["details"] = self.details
        return doc


def _first_difference(got: Matrix, want: Matrix):
    for i in range(want.rows):
        for j in range(want.cols):
            if got[i, j] != want[i, j]:
                return (i + 1, j + 1), format_scalar(want[i, j]), format_scalar(got[i, j])
    return None


def _radical_float_product(factors, n):
    import numpy as np

    acc = np.eye(n)
    for f in factors:
        acc = acc @ f.materialize(n).to_numpy()
    return acc


def verify_certificate(cert: FactorizationCertificate, target: Matrix, rel_tol: float = 1e-12) -> VerificationReport:
    """Rebuild the certificate's product and compare it with ``target``.

    Exact certificates must match entrywise.  Display-form (radical) LU
    certificates are compared in binary64 within ``rel_tol`` and, exactly,
    through the squared form ``Y1 D Y2^T`` rebuilt from the grid.
    """
    if target.shape != (cert.n, cert.n):
        return VerificationReport("mismatch", details={"reason": f"target is {target.shape}, certificate has order {cert.n}"})
    if cert.product_kind == "exact":
        got = cert.product()
        diff = _first_difference(got, target)
        if diff is None:
            return VerificationReport("exact-equal")
        (ij, want, have) = diff
        return VerificationReport("mismatch", entry=ij, expected=want, got=have)

    if cert.product_kind != "radical-display":
        raise ValueError(f"unknown product kind {cert.product_kind!r}")
    import numpy as np

    prod = _radical_float_product(cert.factors, cert.n)
    want = target.to_numpy()
    dev = np.abs(prod - want)
    rel = float(np.max(dev / np.maximum(np.abs(want), np.finfo(float).tiny)))
    details = {}
    p = GridParams.from_dict(cert.target)
    inter = neville_intermediates_S(p)
    squared = mat_mul(mat_mul(inter.Y1, inter.D), inter.Y2.T)
    details["squared_form"] = "exact-equal" if squared == target else "mismatch"
    # the displayed factors carry |Y1 sqrt(D)| and |sqrt(D) Y2^T|
    L, U = (f.materialize(cert.n) for f in cert.factors)
    magnitudes = all(
        L[i, k].square() == inter.Y1[i, k] ** 2 * inter.D[k, k]
        and U[k, i].square() == inter.Y2[i, k] ** 2 * inter.D[k, k]
        for i in range(cert.n) for k in range(cert.n)
    )
    details["factors_match_squared_form"] = "exact-equal" if magnitudes else "mismatch"
    try:
        exact = mat_mul(L, U)
        details["radical_product"] = "exact-equal" if exact == target else "mismatch"
    except ArithmeticError:
        details["radical_product"] = "mismatch"
    if rel > rel_tol:
        i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
        return VerificationReport(
            "mismatch", entry=(int(i) + 1, int(j) + 1), expected=format_scalar(target[int(i), int(j)]),
            got=repr(float(prod[i, j])), max_abs_deviation=float(dev.max()), max_rel_deviation=rel, details=details,
        )
    return VerificationReport("float-equal", max_abs_deviation=float(dev.max()), max_rel_deviation=rel, details=details)
