"""Jacobians, algebraic-independence testing, and common-zero witnesses.

A family q_1..q_k is algebraically independent over characteristic zero iff
its Jacobian has symbolic rank k.  The transformation passes additionally
need a *witness*: a point where every q_i vanishes while the Jacobian still
attains its symbolic rank.  For the elementary, complete homogeneous and
power-sum families the witness is the vector of n-th roots of unity, so the
verification runs in an exact cyclotomic field.  Witnesses are always checked
by explicit re-evaluation, never trusted from their construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ArityMismatch, GridExhausted, InvalidWitness, VerificationFailed
from .field import Rat, ScalarMatrix, bareiss_rank, omega
from .poly import Poly
from .symmetric import e_poly, h_poly, p_poly


@dataclass(frozen=True)
class CommonZeroWitness:
    """A verified common zero at which the Jacobian attains its symbolic rank."""

    point: tuple
    polys: tuple[Poly, ...]
    rank: int


def jacobian(polys: list[Poly] | tuple[Poly, ...]) -> list[list[Poly]]:
    """The k x n matrix of first partials, row i = gradient of polys[i]."""
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polynomial")
    arity = polys[0].arity
    for q in polys:
        if q.arity != arity:
            raise ArityMismatch("polynomials disagree on arity")
    return [[q.derivative(j) for j in range(arity)] for q in polys]


def jacobian_at(jac: list[list[Poly]], point) -> ScalarMatrix:
    rows = len(jac)
    cols = len(jac[0])
    return ScalarMatrix(
        rows, cols, [jac[i][j].eval(point) for i in range(rows) for j in range(cols)]
    )


def _minor_degree_bound(jac: list[list[Poly]]) -> int:
    """Degree bound for any maximal minor: sum over rows of the max entry degree."""
    total = 0
    for row in jac:
        total += max((p.total_degree() for p in row if not p.is_zero()), default=0)
    return max(total, 1)


def symbolic_rank(jac: list[list[Poly]], seed: int = 0, trials: int = 20) -> int:
    """Rank of the Jacobian over the rational function field.

    Evaluates at seeded random grid points (the grid is large enough that by
    Schwartz-Zippel an undershoot is vanishingly unlikely), stopping early
    once the structural maximum is reached; small instances are additionally
    confirmed by exact fraction-free elimination over the polynomial entries.
    """
    k = len(jac)
    n = len(jac[0])
    max_rank = min(k, n)
    bound = 2 * _minor_degree_bound(jac)
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        point = [Rat(rng.randint(0, bound)) for _ in range(n)]
        best = max(best, jacobian_at(jac, point).rank())
        if best == max_rank:
            break
    if k * n <= 16:
        exact = bareiss_rank([list(row) for row in jac])
        if exact < best:
            raise VerificationFailed(
                "exact elimination disagrees with evaluated rank; arithmetic bug"
            )
        return exact
    return best


def is_independence_witness(polys, point, seed: int = 0) -> bool:
    """True iff every poly vanishes at the point and the Jacobian rank there
    equals its symbolic rank."""
    polys = list(polys)
    if any(q.eval(point) != 0 for q in polys):
        return False
    jac = jacobian(polys)
    return jacobian_at(jac, point).rank() == symbolic_rank(jac, seed=seed)


def roots_of_unity_point(n: int) -> tuple:
    """(1, w, w^2, ..., w^(n-1)) with w a primitive n-th root of unity."""
    w = omega(n)
    return tuple(w**i for i in range(n))


def _family_witness(n: int, family, name: str) -> CommonZeroWitness:
    if n < 2:
        raise ValueError("need n >= 2")
    point = roots_of_unity_point(n)
    polys = tuple(family(k, n) for k in range(1, n))
    for k, q in enumerate(polys, start=1):
        if q.eval(point) != 0:
            raise VerificationFailed(
                f"{name}_{k} does not vanish at the root-of-unity point for n={n}"
            )
    top = family(n, n).eval(point)
    if not top:
        raise VerificationFailed(
            f"{name}_{n} unexpectedly vanishes at the root-of-unity point for n={n}"
        )
    rank = jacobian_at(jacobian(list(polys)), point).rank()
    if rank != n - 1:
        raise VerificationFailed(
            f"Jacobian rank {rank} != {n - 1} at the root-of-unity point for n={n}"
        )
    return CommonZeroWitness(point=point, polys=polys, rank=rank)


def roots_of_unity_witness(n: int) -> CommonZeroWitness:
    """Verified witness for the elementary family e_1..e_(n-1) on n variables.

    The point is the full set of n-th roots of unity: they are the roots of
    z^n - 1, whose non-extreme coefficients all vanish, so every e_k with
    k < n is zero there; distinctness of the coordinates keeps the Jacobian
    at full rank.
    """
    return _family_witness(n, e_poly, "e")


def h_family_witness(n: int) -> CommonZeroWitness:
    """Verified witness for h_1..h_(n-1); same point as the elementary family."""
    return _family_witness(n, h_poly, "h")


def p_family_witness(n: int) -> CommonZeroWitness:
    """Verified witness for p_1..p_(n-1); same point as the elementary family."""
    return _family_witness(n, p_poly, "p")


def shifted_witness(polys, seed: int = 0, attempts: int = 128):
    """Shifts a_i and a point c making {q_i - a_i} vanish at c with full rank.

    Samples c from a grid larger than the degree of the Jacobian determinant
    (Schwartz-Zippel), keeps the first point where the Jacobian is
    non-singular, and sets a_i = q_i(c).  Raises GridExhausted if the seeded
    sampling budget runs out, which for an algebraically independent family
    is overwhelmingly unlikely.
    """
    polys = list(polys)
    jac = jacobian(polys)
    k = len(polys)
    if symbolic_rank(jac, seed=seed) != k:
        raise InvalidWitness("polynomials are not algebraically independent")
    bound = 2 * _minor_degree_bound(jac)
    rng = random.Random(seed)
    n = polys[0].arity
    for _ in range(attempts):
        c = tuple(Rat(rng.randint(0, bound)) for _ in range(n))
        if jacobian_at(jac, c).rank() == k:
            shifts = tuple(q.eval(c) for q in polys)
            return shifts, c
    raise GridExhausted(f"no non-singular point found in {attempts} samples")
