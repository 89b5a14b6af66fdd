"""Formula rewriting passes.

Every pass here takes a formula and returns a formula whose expansion is a
specified transform of the input's expansion, so each one is directly
checkable by the brute-force expansion oracle:

* homogeneous-component extraction by interpolation over input scalings,
* shifting the inputs by a point,
* division elimination through a truncated geometric series around a
  non-vanishing point of the divisor,
* recovery of the outer polynomial from a formula computing a composition
  g(q_1, ..., q_k) with g homogeneous and the q_i an algebraically
  independent family with a verified common-zero witness,
* the end-to-end pipeline taking a formula for a suitable Schur polynomial
  to a formula for the l x l determinant.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field

from .circuits import (
    Formula,
    const,
    constant_formula,
    inp,
    prod_node,
    sum_node,
    variable_formula,
)
from .errors import (
    ArityMismatch,
    InvalidWitness,
    NoNonvanishingPoint,
    NotReducible,
    ReductionMismatch,
    VerificationFailed,
)
from .field import ONE, Rat, ScalarMatrix, scalar_to_json
from .independence import (
    h_family_witness,
    is_independence_witness,
    jacobian,
    jacobian_at,
)
from .partitions import Partition
from .poly import Poly
from .symmetric import all_distinct, h_poly, jacobi_trudi_labels, schur_jt_h

#: asserted bound: output size <= this constant * input_size^2 * n
REDUCTION_SIZE_CONSTANT = 8


@functools.lru_cache(maxsize=64)
def _inverse_vandermonde(degree: int) -> ScalarMatrix:
    """Inverse of the Vandermonde matrix on the nodes 0, 1, ..., degree."""
    rows = [[Rat(t) ** j for j in range(degree + 1)] for t in range(degree + 1)]
    return ScalarMatrix.from_rows(rows).inverse()


def scale_inputs_formula(f: Formula, alpha) -> Formula:
    """The formula x -> f(alpha * x); wraps each input leaf in a weighted sum."""
    mapping = {
        i: Formula(sum_node([inp(i)], [alpha]), f.arity) for i in range(f.arity)
    }
    return f.substitute(mapping)


def _interpolated_combination(f: Formula, weights) -> Formula:
    copies = [scale_inputs_formula(f, Rat(t)) for t in range(len(weights))]
    return Formula.combine(copies, weights)


def homogeneous_component_formula(
    f: Formula, degree: int, degree_bound: int | None = None
) -> Formula:
    """A formula for the degree-d homogeneous component of f.

    Interpolation over input scalings: f(t*x) is a polynomial in t whose
    t^d coefficient is the wanted component, so an exact inverse-Vandermonde
    combination of the scaled copies at t = 0..D isolates it.  D defaults to
    the formula size, which always bounds the degree; callers that know the
    true degree should pass it for a much smaller formula.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    bound = f.size() if degree_bound is None else degree_bound
    if degree > bound:
        return constant_formula(f.arity, 0)
    weights = _inverse_vandermonde(bound).row(degree)
    return _interpolated_combination(f, weights)


def low_degree_truncation_formula(
    f: Formula, degree: int, degree_bound: int | None = None
) -> Formula:
    """A formula for the sum of the homogeneous components of f of degree <= d.

    Same interpolation as single-component extraction, with the weight rows
    for degrees 0..d summed into one combination, so the scaled copies are
    shared instead of being rebuilt per component.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    bound = f.size() if degree_bound is None else degree_bound
    inv = _inverse_vandermonde(bound)
    top = min(degree, bound)
    weights = [
        sum((inv.entry(d, t) for d in range(top + 1)), Rat(0))
        for t in range(bound + 1)
    ]
    return _interpolated_combination(f, weights)


def shift_formula(f: Formula, point) -> Formula:
    """The formula x -> f(point + x); one affine leaf per shifted input."""
    if len(point) != f.arity:
        raise ArityMismatch(f"point length {len(point)} vs arity {f.arity}")
    mapping = {}
    for i, a in enumerate(point):
        if a:
            mapping[i] = Formula(sum_node([inp(i), const(a)], [ONE, ONE]), f.arity)
    if not mapping:
        return f
    return f.substitute(mapping)


def _nonvanishing_point(r: Formula, seed: int, attempts: int = 128) -> tuple:
    """A grid point where the formula evaluates to something non-zero.

    Samples the grid {0, ..., 2*size}^arity in a seeded pseudorandom order;
    by Schwartz-Zippel a non-zero polynomial of degree <= size vanishes on
    only a tiny fraction of it.
    """
    bound = 2 * r.size()
    rng = random.Random(seed)
    for _ in range(attempts):
        point = tuple(Rat(rng.randint(0, bound)) for _ in range(r.arity))
        if r.eval(point):
            return point
    raise NoNonvanishingPoint(
        f"divisor vanished on {attempts} grid samples; check the degree setup"
    )


def divide_formula(
    p: Formula, r: Formula, degree_bound: int, seed: int = 0
) -> Formula:
    """A division-free formula for the exact quotient expand(p) / expand(r).

    Divisibility is checked by expansion (raising NotDivisible otherwise).
    The construction shifts both formulas to a point where r is non-zero,
    multiplies p by a truncated geometric series for 1/r there, extracts the
    components of degree <= degree_bound, and shifts back.
    """
    if p.arity != r.arity:
        raise ArityMismatch(f"arity {p.arity} vs {r.arity}")
    arity = p.arity
    p_poly = p.expand()
    r_poly = r.expand()
    if r_poly.is_zero():
        raise ZeroDivisionError("division by a formula computing zero")
    quotient = p_poly.divide_exact(r_poly)
    if quotient.is_zero():
        return constant_formula(arity, 0)
    if degree_bound < quotient.total_degree():
        raise ValueError(
            f"degree bound {degree_bound} below quotient degree {quotient.total_degree()}"
        )
    a = _nonvanishing_point(r, seed)
    r0 = r.eval(a)
    p1 = shift_formula(p, a)
    r1 = shift_formula(r, a)
    # s computes 1 - r1/r0, which has zero constant term
    s = sum_node([const(1), r1.root], [ONE, -(ONE / r0)])
    geom_children = [const(1)] + [
        prod_node([s] * i) if i > 1 else s for i in range(1, degree_bound + 1)
    ]
    candidate = Formula(
        prod_node([p1.root, sum_node(geom_children), const(ONE / r0)]), arity
    )
    cand_degree = p_poly.total_degree() + degree_bound * max(r_poly.total_degree(), 0)
    truncated = low_degree_truncation_formula(
        candidate, degree_bound, degree_bound=cand_degree
    )
    return shift_formula(truncated, tuple(-x for x in a))


# ---------------------------------------------------------------------------
# recovering the outer polynomial of a composition
# ---------------------------------------------------------------------------

def _independent_columns(matrix: ScalarMatrix, want: int) -> list[int]:
    """Greedy leftmost selection of `want` linearly independent columns."""
    selected: list[int] = []
    for j in range(matrix.cols):
        candidate = selected + [j]
        sub = ScalarMatrix(
            matrix.rows,
            len(candidate),
            [matrix.entry(i, c) for i in range(matrix.rows) for c in candidate],
        )
        if sub.rank() == len(candidate):
            selected = candidate
            if len(selected) == want:
                return selected
    raise VerificationFailed(
        f"matrix rank below {want}; witness rank check should have caught this"
    )


def _recover_traced(f, inner, degree, point, verify):
    inner = list(inner)
    k = len(inner)
    arity = f.arity
    for q in inner:
        if q.arity != arity:
            raise ArityMismatch("inner polynomials disagree with formula arity")
    if not is_independence_witness(inner, point):
        raise InvalidWitness(
            "the supplied point is not a common zero with full Jacobian rank"
        )
    expanded = f.expand()
    trace = []

    shifted = shift_formula(f, point)
    trace.append(("shift-to-witness", shifted))

    bound = max(expanded.total_degree(), degree, 0)
    extracted = homogeneous_component_formula(shifted, degree, degree_bound=bound)
    trace.append((f"extract-degree-{degree}", extracted))

    u = jacobian_at(jacobian(inner), point)
    cols = _independent_columns(u, k)
    u_sub = ScalarMatrix(k, k, [u.entry(i, c) for i in range(k) for c in cols])
    v = u_sub.inverse()
    mapping = {}
    for m, c in enumerate(cols):
        row = v.row(m)
        children = [inp(i) for i in range(k) if row[i]]
        weights = [w for w in row if w]
        mapping[c] = Formula(sum_node(children, weights), k)
    # unselected inputs become zero, wrapped in a gate so that this pass adds
    # the same depth on every leaf and the total depth increase stays one
    # input-independent constant
    zero_form = Formula(sum_node([const(0)]), k)
    for j in range(arity):
        if j not in mapping:
            mapping[j] = zero_form
    result = extracted.substitute(mapping, arity=k)
    trace.append(("substitute-inverse-linear-forms", result))

    if verify:
        recovered = result.expand()
        if recovered.compose(inner) != expanded:
            raise ReductionMismatch(
                "composing the recovered polynomial with the inner family does "
                "not reproduce the input; the input was not a homogeneous "
                "composition of this family"
            )
    return result, trace


def recover_outer_formula(
    f: Formula, inner, degree: int, point, verify: bool = True
) -> Formula:
    """Given a formula for g(q_1..q_k) with g homogeneous of the stated degree,
    build a formula for g itself.

    `inner` is the algebraically independent family (q_i) and `point` a
    common zero at which their Jacobian attains full rank (obtainable from
    `schurkit.independence`).  The pipeline shifts to the witness, extracts
    the degree-d component (which equals g applied to the Jacobian's linear
    forms), and undoes those linear forms through an exact matrix inverse.

    When `verify` is set, the result is expanded and re-composed with the
    inner family; a mismatch (e.g. a non-homogeneous g) raises
    ReductionMismatch.
    """
    result, _ = _recover_traced(f, inner, degree, point, verify)
    return result


# ---------------------------------------------------------------------------
# the Schur-to-determinant pipeline
# ---------------------------------------------------------------------------

def reduction_hypothesis_holds(lam: Partition, n: int) -> bool:
    """Gap condition making every h-determinant entry distinct and in range.

    Requires consecutive parts to differ by at least l(lam) - 1, the last
    part to be at least l(lam), and n >= lam_1 + l(lam); then the entry
    indices all lie in [1, n-1] and are pairwise distinct.
    """
    ell = lam.length
    if ell == 0:
        return False
    for i in range(ell - 1):
        if lam.part(i) < lam.part(i + 1) + (ell - 1):
            return False
    if lam.part(ell - 1) < ell:
        return False
    return n >= lam.part(0) + ell


@dataclass(frozen=True)
class PassRecord:
    name: str
    size: int
    depth: int


@dataclass(frozen=True)
class ReductionReport:
    """Sizes, depths and the witness used, pass by pass."""

    input_size: int
    input_depth: int
    output_size: int
    output_depth: int
    witness: tuple
    passes: tuple[PassRecord, ...] = field(default_factory=tuple)
    size_constant: int = REDUCTION_SIZE_CONSTANT
    variables: int = 0

    def depth_increase(self) -> int:
        return self.output_depth - self.input_depth

    def size_bound_ok(self) -> bool:
        return (
            self.output_size
            <= self.size_constant * self.input_size**2 * max(self.variables, 1)
        )

    def to_json(self) -> dict:
        return {
            "input": {"size": self.input_size, "depth": self.input_depth},
            "output": {"size": self.output_size, "depth": self.output_depth},
            "depth_increase": self.depth_increase(),
            "witness": [scalar_to_json(x) for x in self.witness],
            "passes": [
                {"name": p.name, "size": p.size, "depth": p.depth}
                for p in self.passes
            ],
            "size_bound": {
                "constant": self.size_constant,
                "variables": self.variables,
                "satisfied": self.size_bound_ok(),
            },
        }


def jacobi_trudi_formula(lam: Partition, n: int) -> Formula:
    """A formula for s_lambda from the h-determinant, expanded over permutations.

    Each h_m entry is built by the first-variable recursion
    h_m(x_i..x_n) = x_i * h_{m-1}(x_i..x_n) + h_m(x_{i+1}..x_n), with
    recurring subtrees physically shared.  The object still denotes the
    unfolded tree (size and depth count occurrences); sharing only keeps
    construction and expansion at desk scale.
    """
    ell = lam.length
    if ell == 0:
        return constant_formula(n, 1)
    labels = jacobi_trudi_labels(lam)
    leaf = [inp(i) for i in range(n)]
    one = const(1)
    states: dict[tuple[int, int], object] = {}

    def h_state(i: int, m: int):
        node = states.get((i, m))
        if node is None:
            if m == 0:
                node = one
            elif i == n - 1:
                node = prod_node([leaf[i]] * m) if m > 1 else leaf[i]
            else:
                node = sum_node(
                    [prod_node([leaf[i], h_state(i, m - 1)]), h_state(i + 1, m)]
                )
            states[(i, m)] = node
        return node

    children = []
    weights = []
    for sigma in itertools.permutations(range(ell)):
        idx = [labels[i][sigma[i]] for i in range(ell)]
        if any(m < 0 for m in idx):
            continue
        sign = 1
        for i in range(ell):
            for j in range(i + 1, ell):
                if sigma[i] > sigma[j]:
                    sign = -sign
        children.append(prod_node([h_state(0, m) for m in idx]))
        weights.append(Rat(sign))
    return Formula(sum_node(children, weights), n)


def schur_to_det_reduce(
    lam: Partition, n: int, f: Formula | None = None
) -> tuple[Formula, ReductionReport]:
    """Turn a formula for a qualifying s_lambda into one for the l x l determinant.

    The h-determinant entries of such a lambda are distinct h_m with
    1 <= m <= n-1, so s_lambda is a composition of the determinant (as the
    outer homogeneous polynomial, degree l) with a subfamily of the
    h-polynomials, which carry a root-of-unity witness.  Recovering the outer
    polynomial and relabeling its variables to the matrix layout yields the
    determinant formula.  Output variables are row-major: z_{i,j} is variable
    (i-1)*l + (j-1).
    """
    if not reduction_hypothesis_holds(lam, n):
        raise NotReducible(f"lambda={lam} with n={n} fails the gap hypothesis")
    ell = lam.length
    labels = jacobi_trudi_labels(lam)
    flat = [m for row in labels for m in row]
    if not all_distinct(labels) or min(flat) < 1 or max(flat) > n - 1:
        raise VerificationFailed("hypothesis holds but labels are out of range")
    if f is None:
        f = jacobi_trudi_formula(lam, n)
    if f.expand() != schur_jt_h(lam, n):
        raise ValueError("input formula does not compute the Schur polynomial")

    witness = h_family_witness(n)
    sorted_labels = sorted(flat)
    inner = tuple(h_poly(m, n) for m in sorted_labels)
    recovered, trace = _recover_traced(f, inner, ell, witness.point, verify=True)

    k = ell * ell
    position = {labels[i][j]: i * ell + j for i in range(ell) for j in range(ell)}
    mapping = {
        t: variable_formula(k, position[m]) for t, m in enumerate(sorted_labels)
    }
    output = recovered.substitute(mapping, arity=k)
    trace.append(("relabel-to-matrix-layout", output))

    passes = tuple(
        PassRecord(name=name, size=g.size(), depth=g.depth()) for name, g in trace
    )
    report = ReductionReport(
        input_size=f.size(),
        input_depth=f.depth(),
        output_size=output.size(),
        output_depth=output.depth(),
        witness=witness.point,
        passes=passes,
        variables=n,
    )
    if not report.size_bound_ok():
        raise VerificationFailed(
            f"output size {report.output_size} violates the recorded bound"
        )
    return output, report


def det_poly(ell: int) -> Poly:
    """The l x l determinant on row-major variables, as a polynomial."""
    arity = ell * ell
    out = Poly.zero(arity)
    for sigma in itertools.permutations(range(ell)):
        sign = 1
        for i in range(ell):
            for j in range(i + 1, ell):
                if sigma[i] > sigma[j]:
                    sign = -sign
        exps = [0] * arity
        for i in range(ell):
            exps[i * ell + sigma[i]] += 1
        out = out + Poly.monomial(arity, exps, sign)
    return out
