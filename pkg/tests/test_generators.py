import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tnfactor import (
    GridParams,
    Matrix,
    MeanKind,
    MeanSpec,
    Ordering,
    gen_cauchy,
    gen_mean,
    gen_S,
    gen_S_hadamard_int,
    gen_S_hadamard_real,
    gen_vandermonde,
)
from tnfactor.matrix import det_exact

from .strategies import grid_params, increasing_grid


def grid(*x):
    return GridParams.symmetric(x)


class TestGridParams:
    def test_ordering_checked(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            GridParams((1, 3, 2), (1, 2, 3))
        with pytest.raises(ValueError, match="not positive"):
            GridParams((0, 1), (1, 2))
        with pytest.raises(ValueError):
            GridParams((1, 2), (1, 2, 3))
        with pytest.raises(ValueError, match="repeated"):
            GridParams((2, -1, 2), (1, 2, 3), Ordering.DISTINCT)

    def test_relaxed_regimes(self):
        assert GridParams((-1, 0, 2), (-3, 1, 4), Ordering.STRICT).n == 3
        assert GridParams((3, -1), (1, 2), Ordering.DISTINCT).x == (3, -1)

    def test_round_trip(self):
        p = GridParams((F(1, 2), 3), (1, F(7, 2)))
        assert GridParams.from_dict(p.to_dict()) == p


class TestS:
    def test_examples(self):
        assert gen_S(grid(1, 2)) == Matrix([[2, 3], [3, 5]])
        assert gen_S(grid(1, 2, 3)) == Matrix([[2, 3, 4], [3, 5, 7], [4, 7, 10]])
        assert gen_S(GridParams((0,), (5,), Ordering.STRICT)) == Matrix([[1]])

    def test_hadamard_int(self):
        p = grid(1, 2)
        assert gen_S_hadamard_int(p, 0) == Matrix([[1, 1], [1, 1]])
        assert gen_S_hadamard_int(p, 2) == Matrix([[4, 9], [9, 25]])
        assert gen_S_hadamard_int(p, 1) == gen_S(p)
        with pytest.raises(ValueError):
            gen_S_hadamard_int(p, -1)

    def test_hadamard_real(self):
        p = grid(1, 2)
        assert gen_S_hadamard_real(p, 1.0) == gen_S(p).to_float()
        got = gen_S_hadamard_real(p, 0.5).to_numpy()
        np.testing.assert_array_equal(got, [[math.sqrt(2), math.sqrt(3)], [math.sqrt(3), math.sqrt(5)]])
        with pytest.raises(ValueError):
            gen_S_hadamard_real(GridParams((-1,), (2,), Ordering.STRICT), 0.5)

    @settings(max_examples=40, deadline=None)
    @given(grid_params(1, 5), grid_params(1, 5))
    def test_symmetric_iff_proportional_nodes(self, p, q):
        if p.n != q.n:
            return
        mixed = GridParams(p.x, q.y)
        ratio = q.y[0] / p.x[0]
        proportional = all(b == ratio * a for a, b in zip(p.x, q.y))
        assert gen_S(mixed).is_symmetric() == proportional
        assert gen_S(GridParams.symmetric(p.x)).is_symmetric()

    @settings(max_examples=40, deadline=None)
    @given(grid_params(1, 5), st.integers(0, 5))
    def test_hadamard_is_repeated_product(self, p, m):
        acc = Matrix([[1] * p.n for _ in range(p.n)])
        for _ in range(m):
            acc = acc.hadamard(gen_S(p))
        assert gen_S_hadamard_int(p, m) == acc


class TestCauchyVandermonde:
    def test_cauchy(self):
        assert gen_cauchy([1, 2]) == Matrix([[F(1, 2), F(1, 3)], [F(1, 3), F(1, 4)]])
        for n in range(1, 7):
            assert det_exact(gen_cauchy(range(1, n + 1))) > 0
        with pytest.raises(ZeroDivisionError):
            gen_cauchy([1], [-1])

    def test_vandermonde(self):
        assert gen_vandermonde([1, 2]) == Matrix([[1, 1], [1, 2]])
        assert gen_vandermonde([1, 2, 3]) == Matrix([[1, 1, 1], [1, 2, 4], [1, 3, 9]])
        assert gen_vandermonde([0]) == Matrix([[1]])


class TestMeans:
    def test_harmonic(self):
        assert gen_mean(MeanKind.HARMONIC, [1, 2], 1) == Matrix([[1, F(4, 3)], [F(4, 3), 2]])

    def test_heinz_half(self):
        m = gen_mean(MeanSpec(MeanKind.HEINZ_RECIPROCAL, nu=F(1, 2)), [1, 4], 1)
        assert m.kind == "exact"
        assert m == Matrix([[1, F(1, 2)], [F(1, 2), F(1, 4)]])

    def test_min(self):
        assert gen_mean(MeanKind.MIN, [1, 2, 3], 1) == Matrix([[1, 1, 1], [1, 2, 2], [1, 2, 3]])

    def test_flat_and_arithmetic(self):
        assert gen_mean(MeanKind.FLAT, [1, 2], 3) == Matrix([[1, 1], [1, 1]])
        assert gen_mean(MeanKind.ARITHMETIC_RECIPROCAL, [1, 3], 2) == Matrix([[1, F(1, 4)], [F(1, 4), F(1, 9)]])

    def test_float_when_irrational(self):
        m = gen_mean(MeanSpec(MeanKind.BINOMIAL, alpha=F(1, 2)), [1, 2, 3], 1)
        assert m.kind == "float"
        lam = np.array([1.0, 2, 3])
        expected = 1 / ((np.sqrt(lam)[:, None] + np.sqrt(lam)[None, :]) / 2) ** 2
        np.testing.assert_allclose(m.to_numpy(), expected, rtol=1e-14)
        assert gen_mean(MeanKind.HARMONIC, [1, 2], 0.5).kind == "float"

    def test_binomial_conventions(self):
        lam = [1, 2, 5]
        assert gen_mean(MeanSpec(MeanKind.BINOMIAL, alpha=0), lam, 2) == gen_mean(
            MeanSpec(MeanKind.HEINZ_RECIPROCAL, nu=F(1, 2)), lam, 2)
        assert gen_mean(MeanSpec(MeanKind.BINOMIAL, alpha=math.inf), lam, 1) == gen_mean(MeanKind.MAX, lam, 1)
        assert gen_mean(MeanSpec(MeanKind.BINOMIAL, alpha=-math.inf), lam, 1) == gen_mean(MeanKind.MIN, lam, 1)
        # B_1 is the arithmetic mean
        assert gen_mean(MeanSpec(MeanKind.BINOMIAL, alpha=1), lam, 1) == gen_mean(MeanKind.ARITHMETIC_RECIPROCAL, lam, 1)

    def test_negative_alpha_is_product_over_mean(self):
        lam = [1, 2, 3, 4]
        for a in (F(1, 2), F(1), F(3)):
            pos = gen_mean(MeanSpec(MeanKind.BINOMIAL, alpha=a), lam, 1.7).to_numpy()
            neg = gen_mean(MeanSpec(MeanKind.BINOMIAL, alpha=-a), lam, 1.7).to_numpy()
            l = np.array(lam, float)
            np.testing.assert_allclose(neg, np.outer(l, l) ** 1.7 * pos, rtol=1e-13)

    def test_domain(self):
        with pytest.raises(ValueError):
            gen_mean(MeanKind.HARMONIC, [2, 1], 1)
        with pytest.raises(ValueError):
            MeanSpec(MeanKind.HEINZ_RECIPROCAL, nu=F(3, 2))

    @settings(max_examples=40, deadline=None)
    @given(increasing_grid(1, 5), st.integers(1, 3))
    def test_max_reciprocal_is_reversed_min(self, lam, r):
        n = len(lam)
        big = gen_mean(MeanKind.MAX, lam, r)
        rev = [1 / v for v in reversed(lam)]
        small = gen_mean(MeanKind.MIN, rev, r)
        assert all(big[i, j] == small[n - 1 - i, n - 1 - j] for i in range(n) for j in range(n))

    @settings(max_examples=30, deadline=None)
    @given(increasing_grid(1, 4), st.fractions(0, 1, max_denominator=10), st.sampled_from([0.5, 1.0, 2.3]))
    def test_heinz_symmetric_in_nu(self, lam, nu, r):
        a = gen_mean(MeanSpec(MeanKind.HEINZ_RECIPROCAL, nu=nu), lam, r).to_numpy()
        b = gen_mean(MeanSpec(MeanKind.HEINZ_RECIPROCAL, nu=1 - nu), lam, r).to_numpy()
        np.testing.assert_allclose(a, b, rtol=1e-14)
