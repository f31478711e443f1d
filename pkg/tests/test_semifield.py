import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropical_location import semifield as sf
from tropical_location.errors import BottomEntry, BottomPower, DimensionMismatch, InvalidValue, NonSquare

NEG = -math.inf

# Multiples of 1/8 in a modest range add without rounding, so laws hold exactly.
dyadic = st.integers(-800, 800).map(lambda k: k / 8)
elem = st.one_of(dyadic, st.just(NEG))


def naive_product(B, C):
    rows, inner, cols = len(B), len(C), len(C[0])
    out = [[NEG] * cols for _ in range(rows)]
    for i in range(rows):
        for j in range(cols):
            for k in range(inner):
                if B[i][k] != NEG and C[k][j] != NEG:
                    out[i][j] = max(out[i][j], B[i][k] + C[k][j])
    return out


class TestScalars:
    def test_add(self):
        assert sf.trop_add(3, 5) == 5
        assert sf.trop_add(7.25, NEG) == 7.25
        assert sf.trop_add(-2, -2) == -2

    def test_mul(self):
        assert sf.trop_mul(3, 5) == 8
        assert sf.trop_mul(NEG, 7) == NEG
        assert sf.trop_mul(NEG, NEG) == NEG
        assert sf.trop_mul(4.5, sf.ONE) == 4.5

    def test_pow(self):
        assert sf.trop_pow(4, 0.5) == 2
        assert sf.trop_pow(3.5, -1) == -3.5
        assert sf.trop_pow(NEG, 2) == NEG
        assert sf.trop_inv(-1.25) == 1.25

    @pytest.mark.parametrize("alpha", [0, -1, -0.5])
    def test_pow_of_zero_needs_positive_exponent(self, alpha):
        with pytest.raises(BottomPower):
            sf.trop_pow(NEG, alpha)

    @pytest.mark.parametrize("bad", [math.inf, math.nan])
    def test_rejects_inf_and_nan(self, bad):
        with pytest.raises(InvalidValue):
            sf.scalar(bad)
        with pytest.raises(InvalidValue):
            sf.trop_mul(bad, 1)
        with pytest.raises(InvalidValue):
            sf.vector([0, bad])

    @given(elem, elem, elem)
    def test_semifield_laws(self, a, b, c):
        assert sf.trop_add(a, b) == sf.trop_add(b, a)
        assert sf.trop_add(sf.trop_add(a, b), c) == sf.trop_add(a, sf.trop_add(b, c))
        assert sf.trop_add(a, a) == a
        assert sf.trop_mul(a, b) == sf.trop_mul(b, a)
        assert sf.trop_mul(sf.trop_mul(a, b), c) == sf.trop_mul(a, sf.trop_mul(b, c))
        assert sf.trop_mul(a, sf.trop_add(b, c)) == sf.trop_add(sf.trop_mul(a, b), sf.trop_mul(a, c))
        assert sf.trop_add(a, sf.ZERO) == a
        assert sf.trop_mul(a, sf.ONE) == a
        assert not math.isnan(sf.trop_mul(a, b))

    @given(dyadic.filter(lambda v: v != 0))
    def test_multiplicative_inverse(self, a):
        assert sf.trop_mul(a, sf.trop_inv(a)) == sf.ONE

    @given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6), st.floats(0, 4))
    def test_binomial_identity(self, x, y, alpha):
        lhs = sf.trop_pow(sf.trop_add(x, y), alpha)
        rhs = sf.trop_add(sf.trop_pow(x, alpha), sf.trop_pow(y, alpha))
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


class TestVectors:
    def test_conjugate(self):
        np.testing.assert_array_equal(sf.conjugate([1, -2, 0]), [-1, 2, 0])
        np.testing.assert_array_equal(sf.conjugate([0, 0]), [0, 0])

    def test_conjugate_rejects_zero_entries(self):
        with pytest.raises(BottomEntry):
            sf.conjugate([1, NEG])

    @given(st.lists(dyadic, min_size=1, max_size=6))
    def test_conjugate_is_involution(self, xs):
        np.testing.assert_array_equal(sf.conjugate(sf.conjugate(xs)), xs)

    @given(st.lists(st.tuples(dyadic, st.integers(0, 80)), min_size=1, max_size=6))
    def test_conjugate_is_antitone(self, pairs):
        x = [a for a, _ in pairs]
        y = [a + k / 8 for a, k in pairs]
        assert sf.leq(x, y)
        assert sf.leq(sf.conjugate(y), sf.conjugate(x))

    def test_vectors_are_read_only(self):
        v = sf.vector([1.0, 2.0])
        with pytest.raises(ValueError):
            v[0] = 5.0

    def test_partial_order(self):
        assert sf.leq([1, NEG], [1, 0])
        assert not sf.leq([1, 2], [2, 1])


class TestMatrices:
    A = [[0, 1], [2, 0]]

    def test_identity_is_neutral(self):
        I = sf.identity(2)
        np.testing.assert_array_equal(sf.mat_mul(I, self.A), self.A)
        np.testing.assert_array_equal(sf.mat_mul(self.A, I), self.A)

    def test_square_matches_naive_expansion(self):
        expected = naive_product(self.A, self.A)
        assert expected == [[3, 1], [2, 3]]
        np.testing.assert_array_equal(sf.mat_mul(self.A, self.A), expected)

    def test_row_times_column(self):
        a = [1.5, -3.0, 7.0]
        assert sf.mat_mul(sf.conjugate(a), a) == sf.ONE

    def test_matrix_vector_shapes(self):
        assert sf.mat_mul(self.A, [0, 0]).shape == (2,)
        assert sf.mat_mul([0, 0], self.A).shape == (2,)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            sf.mat_mul([[0, 1, 2]], [[0, 1, 2]])
        with pytest.raises(DimensionMismatch):
            sf.mat_add([[0]], [[0, 1]])

    def test_trace_and_powers(self):
        assert sf.mat_trace(self.A) == 0
        assert sf.mat_trace(sf.mat_power(self.A, 2)) == 3
        np.testing.assert_array_equal(sf.mat_power(self.A, 0), sf.identity(2))
        np.testing.assert_array_equal(sf.mat_power(self.A, 3), naive_product(naive_product(self.A, self.A), self.A))

    def test_trace_needs_square(self):
        with pytest.raises(NonSquare):
            sf.mat_trace([[0, 1]])

    def test_scale_and_add(self):
        np.testing.assert_array_equal(sf.mat_scale(2, self.A), [[2, 3], [4, 2]])
        np.testing.assert_array_equal(sf.mat_scale(NEG, self.A), [[NEG, NEG], [NEG, NEG]])
        np.testing.assert_array_equal(sf.mat_add(self.A, [[1, NEG], [NEG, 5]]), [[1, 1], [2, 5]])

    def test_zero_entries_never_produce_nan(self):
        B = [[NEG, NEG], [NEG, 1]]
        out = sf.mat_mul(B, B)
        assert not np.isnan(out).any()
        np.testing.assert_array_equal(out, [[NEG, NEG], [NEG, 2]])

    @settings(max_examples=200)
    @given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.data())
    def test_product_is_associative(self, a, b, c, d, data):
        def mat(r, k):
            return np.array(data.draw(st.lists(st.lists(elem, min_size=k, max_size=k), min_size=r, max_size=r)))

        X, Y, Z = mat(a, b), mat(b, c), mat(c, d)
        np.testing.assert_array_equal(sf.mat_mul(sf.mat_mul(X, Y), Z), sf.mat_mul(X, sf.mat_mul(Y, Z)))
        np.testing.assert_array_equal(sf.mat_mul(X, Y), naive_product(X.tolist(), Y.tolist()))


def test_tolerance_context():
    assert sf.get_eps() == sf.DEFAULT_EPS
    with sf.tolerance(1e-3):
        assert sf.get_eps() == 1e-3
    assert sf.get_eps() == sf.DEFAULT_EPS
    with pytest.raises(ValueError):
        sf.set_eps(-1)
