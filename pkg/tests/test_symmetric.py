import random

import pytest

from schurkit.errors import (
    LengthMismatch,
    NotContained,
    NotSymmetric,
    WeightMismatch,
)
from schurkit.field import Rat
from schurkit.partitions import Partition, partitions_up_to_weight, staircase
from schurkit.poly import Poly
from schurkit.symmetric import (
    all_distinct,
    distinct_label_family,
    e_in_h_basis,
    e_in_p_basis,
    e_poly,
    elementary_symmetric_formula,
    express_in_e_basis,
    generalized_vandermonde,
    h_poly,
    is_symmetric,
    jacobi_trudi_labels,
    kostka,
    p_poly,
    scaled_staircase_partition,
    scaled_staircase_schur,
    schur_bialternant,
    schur_jt_e,
    schur_jt_h,
    schur_ssyt,
    skew_schur_h,
    symmetrize,
    vandermonde_difference_product,
)

ROUTES = (schur_bialternant, schur_jt_h, schur_jt_e, schur_ssyt)


class TestClassicalBases:
    def test_examples(self):
        x1x2 = Poly.monomial(3, (1, 1, 0))
        x1x3 = Poly.monomial(3, (1, 0, 1))
        x2x3 = Poly.monomial(3, (0, 1, 1))
        assert e_poly(2, 3) == x1x2 + x1x3 + x2x3
        assert e_poly(3, 2).is_zero()
        assert e_poly(0, 4) == Poly.constant(4, 1)
        assert h_poly(2, 2) == Poly(2, {(2, 0): 1, (1, 1): 1, (0, 2): 1})
        assert h_poly(0, 2) == Poly.constant(2, 1)
        assert p_poly(3, 2) == Poly(2, {(3, 0): 1, (0, 3): 1})

    def test_degrees(self):
        for k in range(1, 5):
            assert e_poly(k, 5).is_homogeneous()
            assert h_poly(k, 3).total_degree() == k
            assert p_poly(k, 3).total_degree() == k


class TestGeneralizedVandermonde:
    def test_two_variable_example(self):
        assert generalized_vandermonde((1, 0), 2) == Poly(2, {(1, 0): 1, (0, 1): -1})
        assert generalized_vandermonde((2, 0), 2) == Poly(2, {(2, 0): 1, (0, 2): -1})

    @pytest.mark.parametrize("n", range(2, 6))
    def test_staircase_equals_difference_product(self, n):
        assert generalized_vandermonde(staircase(n), n) == vandermonde_difference_product(n)

    def test_rejects_non_decreasing(self):
        with pytest.raises(ValueError):
            generalized_vandermonde((1, 1), 2)


class TestSchurRoutes:
    def test_column_shape_gives_elementary(self):
        assert schur_bialternant(Partition((1, 1)), 2) == Poly.monomial(2, (1, 1))
        assert schur_jt_h(Partition((1, 1)), 3) == e_poly(2, 3)

    def test_row_shape_gives_homogeneous(self):
        for d in range(1, 4):
            assert schur_bialternant(Partition((d,)), 3) == h_poly(d, 3)

    def test_single_box(self):
        assert schur_jt_h(Partition((1,)), 4) == h_poly(1, 4)
        assert schur_jt_e(Partition((1,)), 4) == e_poly(1, 4)

    def test_hook_shape_two_variables(self):
        expected = Poly(2, {(2, 1): 1, (1, 2): 1})
        assert schur_bialternant(Partition((2, 1)), 2) == expected
        assert schur_ssyt(Partition((2, 1)), 2) == expected

    def test_routes_agree_small(self):
        for parts in [(2,), (1, 1), (2, 1), (3, 1), (2, 2)]:
            lam = Partition(parts)
            for n in range(lam.length, 5):
                values = [route(lam, n) for route in ROUTES]
                assert all(v == values[0] for v in values), (parts, n)

    def test_empty_partition_is_one(self):
        lam = Partition(())
        for route in ROUTES:
            assert route(lam, 3) == Poly.constant(3, 1)

    def test_ssyt_vanishes_when_too_few_variables(self):
        assert schur_ssyt(Partition((1, 1, 1)), 2).is_zero()

    def test_bialternant_needs_enough_variables(self):
        with pytest.raises(LengthMismatch):
            schur_bialternant(Partition((1, 1, 1)), 2)

    def test_symmetry_and_homogeneity(self):
        rng = random.Random(5)
        lam = Partition((3, 1))
        s = schur_jt_h(lam, 4)
        assert s.is_homogeneous()
        assert s.total_degree() == lam.weight
        for _ in range(5):
            perm = list(range(4))
            rng.shuffle(perm)
            assert s.permute_vars(perm) == s


class TestKostka:
    def test_examples(self):
        assert kostka(Partition((1, 1)), (1, 1)) == 1
        assert kostka(Partition((2, 1)), (1, 1, 1)) == 2
        assert kostka(Partition((2,)), (2,)) == 1

    def test_weight_mismatch(self):
        with pytest.raises(WeightMismatch):
            kostka(Partition((2, 1)), (1, 1))

    def test_matches_schur_coefficients(self):
        lam = Partition((2, 1))
        s = schur_ssyt(lam, 3)
        for exps, coeff in s.terms.items():
            assert coeff == kostka(lam, exps)


class TestSkew:
    def test_empty_inner_reduces_to_straight(self):
        for parts in [(2, 1), (3, 2), (2, 2)]:
            lam = Partition(parts)
            assert skew_schur_h(lam, Partition(()), 3) == schur_jt_h(lam, 3)

    def test_examples(self):
        h1 = h_poly(1, 2)
        assert skew_schur_h(Partition((1, 1)), Partition((1,)), 2) == h1
        assert skew_schur_h(Partition((2,)), Partition((1,)), 2) == h1

    def test_not_contained(self):
        with pytest.raises(NotContained):
            skew_schur_h(Partition((2, 1)), Partition((3,)), 3)

    def test_labels(self):
        assert jacobi_trudi_labels(Partition((5, 3)), Partition((1,))) == [
            [4, 6],
            [1, 3],
        ]
        assert jacobi_trudi_labels(Partition((2, 2))) == [[2, 3], [1, 2]]
        assert not all_distinct(jacobi_trudi_labels(Partition((2, 2))))

    def test_distinct_label_family(self):
        lam, mu = distinct_label_family(2, 1)
        assert (lam.parts, mu.parts) == ((5, 3), (1,))
        for l in (2, 3, 4):
            for mu1 in (1, 2):
                lam, mu = distinct_label_family(l, mu1)
                assert lam.contains(mu)
                assert all_distinct(jacobi_trudi_labels(lam, mu))


class TestScaledStaircase:
    @pytest.mark.parametrize("step,n", [(1, 2), (1, 3), (2, 2), (2, 3)])
    def test_matches_bialternant(self, step, n):
        lam = scaled_staircase_partition(step, n)
        assert scaled_staircase_schur(step, n) == schur_bialternant(lam, n)

    def test_smallest_case_closed_form(self):
        expected = Poly(2, {(2, 1): 1, (1, 2): 1})
        assert scaled_staircase_schur(1, 2) == expected
        assert schur_ssyt(Partition((2, 1)), 2) == expected


class TestBasisConversions:
    def test_first_conversions_are_identity(self):
        assert e_in_h_basis(1, 3) == Poly.variable(1, 0)
        assert e_in_p_basis(1, 3) == Poly.variable(1, 0)

    def test_second_conversions(self):
        h1sq_minus_h2 = Poly(2, {(2, 0): 1, (0, 1): -1})
        assert e_in_h_basis(2, 3) == h1sq_minus_h2
        assert e_in_p_basis(2, 3) == Poly(2, {(2, 0): Rat(1, 2), (0, 1): Rat(-1, 2)})

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_substitution_reproduces_elementary(self, k):
        n = 4
        hs = [h_poly(j, n) for j in range(1, k + 1)]
        ps = [p_poly(j, n) for j in range(1, k + 1)]
        assert e_in_h_basis(k, n).compose(hs) == e_poly(k, n)
        assert e_in_p_basis(k, n).compose(ps) == e_poly(k, n)

    def test_express_examples(self):
        assert express_in_e_basis(p_poly(2, 2)) == Poly(2, {(2, 0): 1, (0, 1): -2})
        assert express_in_e_basis(e_poly(2, 3)) == Poly.variable(3, 1)
        assert express_in_e_basis(h_poly(2, 2)) == Poly(2, {(2, 0): 1, (0, 1): -1})

    def test_express_rejects_non_symmetric(self):
        with pytest.raises(NotSymmetric):
            express_in_e_basis(Poly.variable(2, 0))

    def test_express_round_trip_on_symmetrized_inputs(self):
        rng = random.Random(9)
        for _ in range(5):
            n = rng.randint(2, 3)
            terms = {}
            for _ in range(rng.randint(1, 3)):
                exps = tuple(rng.randint(0, 2) for _ in range(n))
                terms[exps] = Rat(rng.randint(-3, 3))
            f = symmetrize(Poly(n, terms))
            if f.is_zero():
                continue
            assert is_symmetric(f)
            g = express_in_e_basis(f)
            assert g.compose([e_poly(j, n) for j in range(1, n + 1)]) == f


class TestElementaryFormula:
    def test_zeroth_is_constant_one(self):
        assert elementary_symmetric_formula(0, 2).expand() == Poly.constant(2, 1)

    @pytest.mark.parametrize("k,n", [(1, 2), (2, 3), (3, 3)])
    def test_expansion_matches(self, k, n):
        f = elementary_symmetric_formula(k, n)
        assert f.expand() == e_poly(k, n)
        assert f.depth() == 3


def test_route_agreement_weight_four():
    for lam in partitions_up_to_weight(4):
        for n in range(max(lam.length, 1), 5):
            if lam.length > n:
                continue
            values = [route(lam, n) for route in ROUTES]
            assert all(v == values[0] for v in values), (lam.parts, n)
