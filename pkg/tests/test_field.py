import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schurkit.errors import DomainMismatch, NotSquare, SingularMatrix
from schurkit.field import (
    CyclotomicScalar,
    Rat,
    ScalarMatrix,
    cyclotomic_from_text,
    cyclotomic_polynomial,
    embed,
    omega,
    parse_rational,
    scalar_from_json,
    scalar_to_json,
    scalar_to_text,
)


def poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


class TestCyclotomicPolynomials:
    def test_frozen_small_orders(self):
        assert cyclotomic_polynomial(1) == (-1, 1)
        assert cyclotomic_polynomial(3) == (1, 1, 1)
        assert cyclotomic_polynomial(4) == (1, 0, 1)
        assert cyclotomic_polynomial(6) == (1, -1, 1)
        assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_product_over_divisors_is_x_n_minus_1(self, n):
        # independent oracle: multiply the factors back together
        product = [1]
        for d in range(1, n + 1):
            if n % d == 0:
                product = poly_mul_int(product, list(cyclotomic_polynomial(d)))
        expected = [0] * (n + 1)
        expected[0], expected[n] = -1, 1
        assert product == expected

    @pytest.mark.parametrize("n", range(1, 11))
    def test_omega_is_primitive(self, n):
        w = omega(n)
        assert w**n == 1
        for k in range(1, n):
            assert w**k != 1

    @pytest.mark.parametrize("n", range(2, 10))
    def test_geometric_sum_vanishes(self, n):
        total = embed(Rat(0), n)
        for k in range(n):
            total = total + omega(n) ** k
        assert not total


class TestScalarArithmetic:
    def test_rational_examples(self):
        assert Rat(1) / Rat(2, 3) == Rat(3, 2)
        assert Rat(1, 2) + Rat(1, 3) == Rat(5, 6)

    def test_omega_product_order_three(self):
        w = omega(3)
        assert w * w**2 == 1

    def test_inverse_of_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            embed(Rat(0), 3).inverse()

    def test_mixed_orders_rejected(self):
        with pytest.raises(DomainMismatch):
            omega(3) + omega(4)
        with pytest.raises(DomainMismatch):
            omega(3) * omega(5)

    def test_rational_embedding_allowed(self):
        w = omega(4)
        assert (w + Rat(1, 2)) - w == Rat(1, 2)
        assert w * 2 == 2 * w

    @given(
        st.integers(2, 8),
        st.lists(st.fractions(max_denominator=6), min_size=1, max_size=4),
    )
    @settings(max_examples=60, deadline=None)
    def test_inverse_round_trip(self, n, coeffs):
        value = CyclotomicScalar(n, [Rat(c) for c in coeffs])
        if not value:
            return
        assert value * value.inverse() == 1

    @given(st.integers(2, 8), st.lists(st.fractions(max_denominator=5), max_size=4))
    @settings(max_examples=50, deadline=None)
    def test_text_round_trip(self, n, coeffs):
        value = CyclotomicScalar(n, [Rat(c) for c in coeffs])
        assert cyclotomic_from_text(n, scalar_to_text(value)) == value

    def test_json_round_trip(self):
        for s in (Rat(-7, 3), Rat(5), omega(5) + Rat(1, 2), embed(Rat(0), 6)):
            assert scalar_from_json(scalar_to_json(s)) == s

    @given(st.fractions(max_denominator=10**6))
    @settings(max_examples=60, deadline=None)
    def test_rational_parse_print_parse_identity(self, q):
        value = Rat(q)
        assert parse_rational(scalar_to_text(value)) == value
        assert scalar_to_text(parse_rational(scalar_to_text(value))) == scalar_to_text(value)


rational_matrices = st.integers(1, 3).flatmap(
    lambda n: st.lists(
        st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    )
)


class TestScalarMatrix:
    def test_det_examples(self):
        assert ScalarMatrix.from_rows([[1, 2], [3, 4]]).det() == -2
        assert ScalarMatrix.identity(4).det() == 1
        assert ScalarMatrix.from_rows([[1, 1], [1, 1]]).det() == 0

    def test_det_requires_square(self):
        with pytest.raises(NotSquare):
            ScalarMatrix(2, 3, [1] * 6).det()

    def test_rank_examples(self):
        assert ScalarMatrix.identity(3).rank() == 3
        assert ScalarMatrix(2, 4, [0] * 8).rank() == 0
        assert ScalarMatrix.from_rows([[1, 2], [2, 4]]).rank() == 1

    def test_inverse_examples(self):
        assert ScalarMatrix.identity(3).inverse() == ScalarMatrix.identity(3)
        assert ScalarMatrix.from_rows([[2, 0], [0, 4]]).inverse() == ScalarMatrix.from_rows(
            [[Rat(1, 2), 0], [0, Rat(1, 4)]]
        )
        assert ScalarMatrix.from_rows([[1, 1], [0, 1]]).inverse() == ScalarMatrix.from_rows(
            [[1, -1], [0, 1]]
        )

    def test_singular_inverse_raises(self):
        with pytest.raises(SingularMatrix):
            ScalarMatrix.from_rows([[1, 1], [1, 1]]).inverse()

    @given(rational_matrices)
    @settings(max_examples=60, deadline=None)
    def test_rank_transpose_and_inverse_round_trip(self, rows):
        m = ScalarMatrix.from_rows(rows)
        assert m.rank() == m.transpose().rank()
        if m.det():
            n = m.rows
            assert m.mul(m.inverse()) == ScalarMatrix.identity(n)

    def test_cyclotomic_matrix_inverse(self):
        w = omega(5)
        m = ScalarMatrix.from_rows([[w, 1], [Rat(1, 3), w**3]])
        assert m.mul(m.inverse()) == ScalarMatrix.identity(2)

    def test_mixed_order_matrix_rejected(self):
        with pytest.raises(DomainMismatch):
            ScalarMatrix(1, 2, [omega(3), omega(4)])
