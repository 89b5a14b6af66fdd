import random

import pytest

from schurkit.circuits import (
    Formula,
    const,
    formula_from_poly,
    inp,
    prod_node,
    random_formula,
    sum_node,
)
from schurkit.errors import (
    InvalidWitness,
    NotDivisible,
    NotReducible,
    ReductionMismatch,
)
from schurkit.field import Rat
from schurkit.independence import roots_of_unity_witness
from schurkit.partitions import Partition, staircase
from schurkit.poly import Poly
from schurkit.symmetric import e_poly, generalized_vandermonde, schur_bialternant
from schurkit.transforms import (
    det_poly,
    divide_formula,
    homogeneous_component_formula,
    jacobi_trudi_formula,
    recover_outer_formula,
    reduction_hypothesis_holds,
    schur_to_det_reduce,
    shift_formula,
)


def one_plus_x_product():
    return Formula(
        prod_node(
            [sum_node([const(1), inp(0)]), sum_node([const(1), inp(1)])]
        ),
        2,
    )


class TestHomogeneousExtraction:
    def test_degree_one(self):
        f = one_plus_x_product()
        assert homogeneous_component_formula(f, 1).expand() == Poly(
            2, {(1, 0): 1, (0, 1): 1}
        )

    def test_degree_zero(self):
        f = one_plus_x_product()
        assert homogeneous_component_formula(f, 0).expand() == Poly.constant(2, 1)

    def test_beyond_size_is_zero(self):
        f = one_plus_x_product()
        assert homogeneous_component_formula(f, f.size() + 1).expand().is_zero()

    def test_completeness_and_size_growth(self):
        rng = random.Random(21)
        for _ in range(8):
            f = random_formula(rng, arity=2)
            expansion = f.expand()
            total = Poly.zero(2)
            for d in range(f.size() + 1):
                g = homogeneous_component_formula(f, d)
                component = g.expand()
                assert component.is_homogeneous()
                assert g.size() <= 8 * f.size() ** 2
                assert g.depth() <= f.depth() + 2
                total = total + component
                if d > expansion.total_degree() >= 0:
                    assert component.is_zero()
            assert total == expansion

    def test_caller_degree_bound(self):
        f = one_plus_x_product()
        g = homogeneous_component_formula(f, 1, degree_bound=2)
        assert g.expand() == Poly(2, {(1, 0): 1, (0, 1): 1})
        assert g.size() < homogeneous_component_formula(f, 1).size()


class TestShift:
    def test_square(self):
        f = Formula(prod_node([inp(0), inp(0)]), 1)
        assert shift_formula(f, [1]).expand() == Poly(1, {(2,): 1, (1,): 2, (0,): 1})

    def test_zero_shift_is_identity(self):
        f = one_plus_x_product()
        g = shift_formula(f, [0, 0])
        assert g.expand() == f.expand()
        assert g.size() == f.size()

    def test_product_shift(self):
        f = Formula(prod_node([inp(0), inp(1)]), 2)
        expected = Poly(2, {(1, 1): 1, (1, 0): 1, (0, 1): 1, (0, 0): 1})
        assert shift_formula(f, [1, 1]).expand() == expected


class TestDivideFormula:
    def test_difference_of_squares(self):
        x, y = Poly.variable(2, 0), Poly.variable(2, 1)
        p = formula_from_poly(x * x - y * y)
        r = formula_from_poly(x - y)
        assert divide_formula(p, r, 1).expand() == x + y

    def test_divide_by_one(self):
        p = one_plus_x_product()
        r = Formula(const(1), 2)
        assert divide_formula(p, r, 2).expand() == p.expand()

    def test_bialternant_pair(self):
        lam = Partition((1, 1))
        n = 2
        shifted = tuple(lam.part(j) + staircase(n)[j] for j in range(n))
        p = formula_from_poly(generalized_vandermonde(shifted, n))
        r = formula_from_poly(generalized_vandermonde(staircase(n), n))
        q = divide_formula(p, r, lam.weight)
        assert q.expand() == schur_bialternant(lam, n)

    def test_not_divisible(self):
        x, y = Poly.variable(2, 0), Poly.variable(2, 1)
        with pytest.raises(NotDivisible):
            divide_formula(formula_from_poly(x * x + y), formula_from_poly(x + y), 2)

    def test_product_round_trip(self):
        rng = random.Random(17)
        done = 0
        while done < 6:
            p = random_formula(rng, arity=2, max_depth=3)
            r = random_formula(rng, arity=2, max_depth=2)
            r_poly = r.expand()
            if r_poly.is_zero():
                continue
            product = Formula(prod_node([p.root, r.root]), 2)
            bound = max(p.expand().total_degree(), 0)
            assert divide_formula(product, r, bound, seed=done).expand() == p.expand()
            done += 1


class TestRecoverOuter:
    def setup_method(self):
        self.witness = roots_of_unity_witness(3)
        self.inner = [e_poly(1, 3), e_poly(2, 3)]
        self.e_formulas = {i: formula_from_poly(q) for i, q in enumerate(self.inner)}

    def compose(self, g: Formula) -> Formula:
        return g.substitute(self.e_formulas)

    def test_product_of_two(self):
        g = Formula(prod_node([inp(0), inp(1)]), 2)
        recovered = recover_outer_formula(
            self.compose(g), self.inner, 2, self.witness.point
        )
        assert recovered.expand() == Poly.monomial(2, (1, 1))

    def test_single_variable(self):
        g = Formula(inp(0), 1)
        f = g.substitute({0: formula_from_poly(self.inner[0])})
        recovered = recover_outer_formula(f, [self.inner[0]], 1, self.witness.point)
        assert recovered.expand() == Poly.variable(1, 0)

    def test_quadratic_mix(self):
        g_poly = Poly(2, {(2, 0): 1, (1, 1): 1})
        g = formula_from_poly(g_poly)
        recovered = recover_outer_formula(
            self.compose(g), self.inner, 2, self.witness.point
        )
        assert recovered.expand() == g_poly

    def test_round_trip_random_homogeneous(self):
        rng = random.Random(31)
        for k in (1, 2, 3):
            n = k + 1
            witness = roots_of_unity_witness(n)
            inner = [e_poly(j, n) for j in range(1, k + 1)]
            inner_formulas = {j: formula_from_poly(q) for j, q in enumerate(inner)}
            for _ in range(3):
                degree = rng.randint(1, 3)
                terms = {}
                for _ in range(rng.randint(1, 3)):
                    exps = [0] * k
                    for _ in range(degree):
                        exps[rng.randrange(k)] += 1
                    terms[tuple(exps)] = Rat(rng.randint(-3, 3))
                g_poly = Poly(k, terms)
                if g_poly.is_zero():
                    continue
                f = formula_from_poly(g_poly).substitute(inner_formulas)
                recovered = recover_outer_formula(f, inner, degree, witness.point)
                assert recovered.expand() == g_poly

    def test_bad_witness_rejected(self):
        g = Formula(prod_node([inp(0), inp(1)]), 2)
        with pytest.raises(InvalidWitness):
            recover_outer_formula(
                self.compose(g), self.inner, 2, (Rat(0), Rat(0), Rat(0))
            )

    def test_non_homogeneous_detected(self):
        # e1 + e1*e2 is a composition with a non-homogeneous outer polynomial
        g = Formula(
            sum_node([inp(0), prod_node([inp(0), inp(1)])]),
            2,
        )
        with pytest.raises(ReductionMismatch):
            recover_outer_formula(self.compose(g), self.inner, 2, self.witness.point)


class TestHypothesis:
    def test_examples(self):
        assert reduction_hypothesis_holds(Partition((3, 2)), 5)
        assert not reduction_hypothesis_holds(Partition((2, 2)), 5)
        assert not reduction_hypothesis_holds(Partition((3, 2)), 4)
        assert not reduction_hypothesis_holds(Partition((3, 1)), 6)
        assert reduction_hypothesis_holds(Partition((2,)), 3)
        assert not reduction_hypothesis_holds(Partition(()), 3)


class TestSchurToDet:
    def test_smallest_instance(self):
        lam = Partition((3, 2))
        out, report = schur_to_det_reduce(lam, 5)
        expected = Poly(4, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1})
        assert out.expand() == expected
        assert out.expand() == det_poly(2)
        assert report.depth_increase() == 4
        assert report.size_bound_ok()
        assert [p.name for p in report.passes] == [
            "shift-to-witness",
            "extract-degree-2",
            "substitute-inverse-linear-forms",
            "relabel-to-matrix-layout",
        ]

    def test_rejects_bad_partition(self):
        with pytest.raises(NotReducible):
            schur_to_det_reduce(Partition((2, 2)), 5)

    def test_rejects_wrong_input_formula(self):
        with pytest.raises(ValueError):
            schur_to_det_reduce(Partition((3, 2)), 5, Formula(const(1), 5))

    def test_report_json_shape(self):
        _, report = schur_to_det_reduce(Partition((3, 2)), 5)
        blob = report.to_json()
        assert blob["depth_increase"] == 4
        assert blob["size_bound"]["satisfied"] is True
        assert len(blob["witness"]) == 5
        assert len(blob["passes"]) == 4


def test_jacobi_trudi_formula_expands_to_schur():
    from schurkit.symmetric import schur_jt_h

    for parts, n in [((2, 1), 3), ((3, 2), 5)]:
        lam = Partition(parts)
        assert jacobi_trudi_formula(lam, n).expand() == schur_jt_h(lam, n)
