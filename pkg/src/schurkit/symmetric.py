"""Symmetric polynomial families, built by every route we can cross-check.

The Schur polynomial for a partition is constructed four independent ways:

* bialternant: the ratio of two generalized Vandermonde determinants,
* a determinant in the complete homogeneous basis (h),
* a determinant in the elementary basis (e) over the conjugate partition,
* the tableau generating function (column-strict fillings / Kostka counts).

Exact equality of the four expansions is the package's core sanity battery.
Also here: skew determinants, the closed form for the scaled-staircase
family, conversions between the e/h/p bases through truncated generating
series, expression of any symmetric polynomial over the elementary basis,
and an interpolation-based small formula for the elementary polynomials.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .circuits import Formula, const, inp, prod_node, sum_node
from .errors import (
    LengthMismatch,
    NotContained,
    NotSymmetric,
    WeightMismatch,
)
from .field import ONE, Rat, ScalarMatrix, solve_exact
from .partitions import Partition, partitions_of, staircase
from .poly import Poly


# ---------------------------------------------------------------------------
# the three classical bases
# ---------------------------------------------------------------------------

def e_poly(k: int, n: int) -> Poly:
    """Elementary symmetric polynomial: sum of all squarefree degree-k monomials."""
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    if k == 0:
        return Poly.constant(n, 1)
    if k > n:
        return Poly.zero(n)
    terms = {}
    for subset in itertools.combinations(range(n), k):
        exps = [0] * n
        for i in subset:
            exps[i] = 1
        terms[tuple(exps)] = ONE
    return Poly._raw(n, terms)


def h_poly(k: int, n: int) -> Poly:
    """Complete homogeneous symmetric polynomial: all degree-k monomials."""
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    if k == 0:
        return Poly.constant(n, 1)
    terms = {}
    for combo in itertools.combinations_with_replacement(range(n), k):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        terms[tuple(exps)] = ONE
    return Poly._raw(n, terms)


def p_poly(k: int, n: int) -> Poly:
    """Power sum: x1^k + ... + xn^k."""
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    if k == 0:
        return Poly.constant(n, n)
    terms = {}
    for i in range(n):
        exps = [0] * n
        exps[i] = k
        terms[tuple(exps)] = ONE
    return Poly._raw(n, terms)


# ---------------------------------------------------------------------------
# determinant expansion over polynomial entries
# ---------------------------------------------------------------------------

def det_poly_matrix(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a matrix of polynomials by cofactor recursion.

    Memoizes minors on column subsets, so the work is O(2^m) polynomial
    multiplications instead of m!.  Rows must be non-empty.
    """
    m = len(rows)
    if m == 0:
        raise ValueError("empty matrix needs an explicit arity; handle at call site")
    arity = rows[0][0].arity
    zero = Poly.zero(arity)
    memo: dict[tuple[int, ...], Poly] = {(): Poly.constant(arity, 1)}

    def minor(cols: tuple[int, ...]) -> Poly:
        got = memo.get(cols)
        if got is not None:
            return got
        row = rows[m - len(cols)]
        acc = zero
        for pos, j in enumerate(cols):
            entry = row[j]
            if entry.is_zero():
                continue
            sub = minor(cols[:pos] + cols[pos + 1 :])
            if sub.is_zero():
                continue
            term = entry * sub
            acc = acc + term if pos % 2 == 0 else acc - term
        memo[cols] = acc
        return acc

    return minor(tuple(range(m)))


# ---------------------------------------------------------------------------
# generalized Vandermonde determinants and the bialternant route
# ---------------------------------------------------------------------------

def _check_exponent_vector(exps: Sequence[int], n: int):
    if len(exps) != n:
        raise LengthMismatch(f"{len(exps)} exponents for {n} variables")
    for a, b in zip(exps, exps[1:]):
        if a <= b:
            raise ValueError(f"exponents must strictly decrease: {tuple(exps)}")
    if exps[-1] < 0:
        raise ValueError("exponents must be non-negative")


def generalized_vandermonde(exps: Sequence[int], n: int) -> Poly:
    """det(x_i^{mu_j}) for a strictly decreasing exponent vector mu."""
    exps = tuple(exps)
    _check_exponent_vector(exps, n)
    rows = []
    for i in range(n):
        row = []
        for mu in exps:
            e = [0] * n
            e[i] = mu
            row.append(Poly.monomial(n, e))
        rows.append(row)
    return det_poly_matrix(rows)


def vandermonde_difference_product(n: int) -> Poly:
    """prod over i < j of (x_i - x_j); equals the staircase determinant."""
    out = Poly.constant(n, 1)
    for i in range(n):
        for j in range(i + 1, n):
            out = out * (Poly.variable(n, i) - Poly.variable(n, j))
    return out


def schur_bialternant(lam: Partition, n: int) -> Poly:
    """Schur polynomial as the exact ratio of alternants.

    The staircase determinant always divides the shifted one, so the division
    below never fails on valid input.
    """
    if lam.length > n:
        raise LengthMismatch(
            f"partition has {lam.length} parts but only {n} variables"
        )
    delta = staircase(n)
    shifted = tuple(lam.part(j) + delta[j] for j in range(n))
    numerator = generalized_vandermonde(shifted, n)
    denominator = generalized_vandermonde(delta, n)
    return numerator.divide_exact(denominator)


# ---------------------------------------------------------------------------
# determinant routes in the h and e bases
# ---------------------------------------------------------------------------

def _basis_entry(index: int, n: int, basis) -> Poly:
    if index < 0:
        return Poly.zero(n)
    return basis(index, n)


def schur_jt_h(lam: Partition, n: int) -> Poly:
    """Schur polynomial as det(h_{lam_i - i + j}) of size l(lam)."""
    ell = lam.length
    if ell == 0:
        return Poly.constant(n, 1)
    cache: dict[int, Poly] = {}

    def h(index: int) -> Poly:
        if index not in cache:
            cache[index] = _basis_entry(index, n, h_poly)
        return cache[index]

    rows = [
        [h(lam.part(i) - (i + 1) + (j + 1)) for j in range(ell)] for i in range(ell)
    ]
    return det_poly_matrix(rows)


def schur_jt_e(lam: Partition, n: int) -> Poly:
    """Schur polynomial as det(e_{lam'_i - i + j}) over the conjugate partition."""
    conj = lam.conjugate()
    m = conj.length
    if m == 0:
        return Poly.constant(n, 1)
    cache: dict[int, Poly] = {}

    def e(index: int) -> Poly:
        if index not in cache:
            cache[index] = _basis_entry(index, n, e_poly)
        return cache[index]

    rows = [
        [e(conj.part(i) - (i + 1) + (j + 1)) for j in range(m)] for i in range(m)
    ]
    return det_poly_matrix(rows)


# ---------------------------------------------------------------------------
# tableau route
# ---------------------------------------------------------------------------

def _iter_ssyt_contents(parts: tuple[int, ...], n: int):
    """Yield the content vector of every column-strict filling with entries <= n.

    Rows weakly increase left to right, columns strictly increase top to
    bottom.  Cells are filled row-major; the constraint set is local, so a
    simple DFS suffices at desk scale.
    """
    cells = [(r, c) for r, row_len in enumerate(parts) for c in range(row_len)]
    total = len(cells)
    grid = [[0] * row_len for row_len in parts]
    content = [0] * n

    def fill(pos: int):
        if pos == total:
            yield tuple(content)
            return
        r, c = cells[pos]
        low = grid[r][c - 1] if c > 0 else 1
        if r > 0:
            low = max(low, grid[r - 1][c] + 1)
        for v in range(low, n + 1):
            grid[r][c] = v
            content[v - 1] += 1
            yield from fill(pos + 1)
            content[v - 1] -= 1
        grid[r][c] = 0

    yield from fill(0)


def schur_ssyt(lam: Partition, n: int) -> Poly:
    """Schur polynomial as the generating function of column-strict tableaux."""
    if n < 1:
        raise ValueError("need n >= 1")
    if lam.length > n:
        return Poly.zero(n)
    counts: dict[tuple[int, ...], int] = {}
    for content in _iter_ssyt_contents(lam.parts, n):
        counts[content] = counts.get(content, 0) + 1
    return Poly(n, {exps: Rat(c) for exps, c in counts.items()})


def kostka(lam: Partition, content: Sequence[int]) -> int:
    """Number of column-strict fillings of shape lam with the given content."""
    content = tuple(content)
    if any(c < 0 for c in content):
        raise ValueError("content entries must be non-negative")
    if sum(content) != lam.weight:
        raise WeightMismatch(
            f"content weight {sum(content)} != partition weight {lam.weight}"
        )
    if lam.length == 0:
        return 1
    m = len(content)
    if lam.length > m:
        return 0
    remaining = list(content)
    cells = [(r, c) for r, row_len in enumerate(lam.parts) for c in range(row_len)]
    grid = [[0] * row_len for row_len in lam.parts]
    total = len(cells)

    def fill(pos: int) -> int:
        if pos == total:
            return 1
        r, c = cells[pos]
        low = grid[r][c - 1] if c > 0 else 1
        if r > 0:
            low = max(low, grid[r - 1][c] + 1)
        found = 0
        for v in range(low, m + 1):
            if remaining[v - 1] == 0:
                continue
            grid[r][c] = v
            remaining[v - 1] -= 1
            found += fill(pos + 1)
            remaining[v - 1] += 1
        grid[r][c] = 0
        return found

    return fill(0)


# ---------------------------------------------------------------------------
# skew determinants
# ---------------------------------------------------------------------------

def jacobi_trudi_labels(lam: Partition, mu: Partition | None = None) -> list[list[int]]:
    """The matrix of h-indices lam_i - mu_j - i + j (mu padded with zeros)."""
    mu = mu or Partition(())
    ell = lam.length
    return [
        [lam.part(i) - mu.part(j) - (i + 1) + (j + 1) for j in range(ell)]
        for i in range(ell)
    ]


def all_distinct(labels: Sequence[Sequence[int]]) -> bool:
    flat = [v for row in labels for v in row]
    return len(flat) == len(set(flat))


def skew_schur_h(lam: Partition, mu: Partition, n: int) -> Poly:
    """Skew Schur polynomial det(h_{lam_i - mu_j - i + j}) in n variables."""
    if not lam.contains(mu):
        raise NotContained(f"{mu} does not fit inside {lam}")
    ell = lam.length
    if ell == 0:
        return Poly.constant(n, 1)
    labels = jacobi_trudi_labels(lam, mu)
    cache: dict[int, Poly] = {}

    def h(index: int) -> Poly:
        if index not in cache:
            cache[index] = _basis_entry(index, n, h_poly)
        return cache[index]

    rows = [[h(labels[i][j]) for j in range(ell)] for i in range(ell)]
    return det_poly_matrix(rows)


def distinct_label_family(l: int, mu1: int) -> tuple[Partition, Partition]:
    """The skew family whose h-determinant provably has all-distinct entries.

    Outer parts are lam_i = (l - i + 1) * l + mu1 (1-based i); the inner
    partition repeats mu1 except for a final mu1 - 1.
    """
    if l < 2 or mu1 < 1:
        raise ValueError("need l >= 2 and mu1 >= 1")
    lam = Partition(tuple((l - i) * l + mu1 for i in range(l)))
    mu = Partition(tuple([mu1] * (l - 1) + [mu1 - 1]))
    return lam, mu


# ---------------------------------------------------------------------------
# the scaled-staircase closed form
# ---------------------------------------------------------------------------

def scaled_staircase_partition(step: int, n: int) -> Partition:
    """(n*step, (n-1)*step, ..., step): an arithmetic progression with gap step."""
    if step < 1 or n < 1:
        raise ValueError("need step >= 1 and n >= 1")
    return Partition(tuple(step * i for i in range(n, 0, -1)))


def scaled_staircase_schur(step: int, n: int) -> Poly:
    """Closed form for the Schur polynomial of the scaled staircase.

    Equals (prod_i x_i^step) * prod_{i<j}(x_j^{step+1} - x_i^{step+1})
    divided exactly by prod_{i<j}(x_j - x_i), which matches the bialternant
    route for the partition (n*step, ..., 2*step, step).
    """
    if step < 1 or n < 2:
        raise ValueError("need step >= 1 and n >= 2")
    numerator = Poly.monomial(n, (step,) * n)
    denominator = Poly.constant(n, 1)
    for i in range(n):
        for j in range(i + 1, n):
            xi = Poly.variable(n, i)
            xj = Poly.variable(n, j)
            numerator = numerator * (xj ** (step + 1) - xi ** (step + 1))
            denominator = denominator * (xj - xi)
    return numerator.divide_exact(denominator)


# ---------------------------------------------------------------------------
# basis conversions via truncated generating series
# ---------------------------------------------------------------------------

def e_in_h_basis(k: int, n: int) -> Poly:
    """e_k written as a polynomial in formal variables h_1..h_k.

    Obtained from the inverse of the alternating h-series: the generating
    series of the e's is the reciprocal of the h-series at -t.  Substituting
    actual h-polynomials for the formal variables reproduces e_k exactly.
    """
    from .poly import TruncatedSeries

    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    coeffs = [Poly.constant(k, 1)]
    for j in range(1, k + 1):
        sign = ONE if j % 2 == 0 else -ONE
        coeffs.append(Poly.variable(k, j - 1) * sign)
    series = TruncatedSeries(k, k, coeffs)
    return series.inverse().term(k)


def e_in_p_basis(k: int, n: int) -> Poly:
    """e_k written as a polynomial in formal variables p_1..p_k.

    Uses the exponential of the antiderivative of the power-sum series at -t,
    truncated at degree k.
    """
    from .poly import TruncatedSeries

    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    # coefficient of t^(m-1) is (-1)^(m-1) * p_m; integrate, then exponentiate
    coeffs = []
    for m in range(1, k + 1):
        sign = ONE if (m - 1) % 2 == 0 else -ONE
        coeffs.append(Poly.variable(k, m - 1) * sign)
    series = TruncatedSeries(k, k, coeffs)
    return series.integrate().exp().term(k)


def is_symmetric(p: Poly) -> bool:
    """Invariance under adjacent transpositions (which generate all of S_n)."""
    n = p.arity
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        if p.permute_vars(perm) != p:
            return False
    return True


def symmetrize(p: Poly) -> Poly:
    """Sum of p over all variable permutations."""
    out = Poly.zero(p.arity)
    for perm in itertools.permutations(range(p.arity)):
        out = out + p.permute_vars(perm)
    return out


def express_in_e_basis(f: Poly) -> Poly:
    """The unique polynomial g with g(e_1, ..., e_n) = f, for symmetric f.

    Solved degree by degree by exact linear algebra against the products
    e_kappa over partitions kappa of each degree with parts at most n, which
    form a basis of the homogeneous symmetric polynomials of that degree.
    The result lives over formal variables e_1..e_n.
    """
    n = f.arity
    if not is_symmetric(f):
        raise NotSymmetric("input is not invariant under variable permutations")
    result = Poly.zero(n)
    e_cache = {j: e_poly(j, n) for j in range(1, n + 1)}
    for d, component in f.homogeneous_components().items():
        if d == 0:
            result = result + Poly.constant(n, component.constant_term())
            continue
        kappas = [k for k in partitions_of(d, max_part=n)]
        basis = []
        for kappa in kappas:
            prod = Poly.constant(n, 1)
            for part in kappa:
                prod = prod * e_cache[part]
            basis.append(prod)
        monomials = sorted(
            {e for b in basis for e in b.terms} | set(component.terms)
        )
        rows = [[b.terms.get(mono, Rat(0)) for b in basis] for mono in monomials]
        rhs = [component.terms.get(mono, Rat(0)) for mono in monomials]
        solution = solve_exact(rows, rhs)
        if solution is None:
            raise NotSymmetric("no expression over the elementary basis exists")
        for kappa, coeff in zip(kappas, solution):
            if coeff:
                exps = [0] * n
                for part in kappa:
                    exps[part - 1] += 1
                result = result + Poly.monomial(n, exps, coeff)
    return result


# ---------------------------------------------------------------------------
# interpolation formula for the elementary polynomials
# ---------------------------------------------------------------------------

def elementary_symmetric_formula(k: int, n: int) -> Formula:
    """A depth-3-style formula for e_k(x_1..x_n) by interpolation.

    Expands prod_i (1 + a*x_i) at n+1 distinct rational values of a and takes
    the exact inverse-Vandermonde combination that isolates the coefficient
    of a^k, which is e_k.
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    nodes = [Rat(t) for t in range(n + 1)]
    vander = ScalarMatrix.from_rows([[a**j for j in range(n + 1)] for a in nodes])
    weights = vander.inverse().row(k)
    children = []
    for a in nodes:
        factors = [
            sum_node([const(1), inp(i)], [ONE, a]) for i in range(n)
        ]
        children.append(prod_node(factors))
    return Formula(sum_node(children, weights), n)
