import math
import random
from fractions import Fraction
from functools import reduce
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smanifold.exact_linalg import (
    IntMatrix,
    canonical_base,
    hermite_normal_form,
    rank,
    rational_kernel,
    smith_normal_form,
    solve_mod_lattice,
)


# --- independent oracles ----------------------------------------------------

def laplace_det(rows):
    if not rows:
        return 1
    return sum((-1) ** j * rows[0][j] * laplace_det([r[:j] + r[j + 1:] for r in rows[1:]])
               for j in range(len(rows)) if rows[0][j])


def minor_gcd_divisors(rows):
    """d_k = g_k / g_{k-1}, with g_k the gcd of all k x k minors."""
    m, n = len(rows), len(rows[0])
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in combinations(range(m), k):
            for ci in combinations(range(n), k):
                g = math.gcd(g, laplace_det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def brute_force_solutions(rows, n):
    """All x in (1/L)Z^n / Z^n with A x integral, by substitution; L = |product of divisors|."""
    divs = minor_gcd_divisors(rows)
    L = reduce(lambda a, b: a * b, divs, 1)
    sols = set()
    for ks in product(range(L), repeat=n):
        x = [Fraction(k, L) for k in ks]
        if all(sum(a * xi for a, xi in zip(r, x)).denominator == 1 for r in rows):
            sols.add(tuple(x))
    return sols


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


# --- Smith normal form ------------------------------------------------------

def test_snf_identity():
    snf = smith_normal_form(IntMatrix.identity(2))
    assert snf.D == IntMatrix.identity(2)
    assert snf.U == IntMatrix.identity(2) and snf.V == IntMatrix.identity(2)


@pytest.mark.parametrize("rows,expected", [
    ([[2, 0], [0, 3]], (1, 6)),
    ([[-2, 0], [0, -2]], (2, 2)),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], (2, 6, 12)),
])
def test_snf_divisors_match_minor_gcd(rows, expected):
    assert tuple(minor_gcd_divisors(rows)) == expected
    assert smith_normal_form(IntMatrix.from_rows(rows)).divisors == expected


def _check_snf(rows):
    M = IntMatrix.from_rows(rows)
    snf = smith_normal_form(M)
    assert snf.U @ M @ snf.V == snf.D
    assert abs(snf.U.det()) == 1 and abs(snf.V.det()) == 1
    m, n = M.shape
    for i in range(m):
        for j in range(n):
            if i != j or i >= snf.rank:
                assert snf.D[i, j] == 0
    d = snf.divisors
    assert all(x > 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
    return snf


def test_snf_round_trip_1000_random():
    rng = random.Random(12345)
    for _ in range(1000):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        _check_snf([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_divisors_property(rows):
    snf = _check_snf(rows)
    assert list(snf.divisors) == minor_gcd_divisors(rows)
    assert snf.rank == rank(IntMatrix.from_rows(rows))


def test_snf_is_deterministic():
    M = IntMatrix.from_rows([[4, 6], [6, 9], [2, 3]])
    assert smith_normal_form(M) == smith_normal_form(M)


def test_big_entries_do_not_overflow():
    big = 10 ** 30
    snf = _check_snf([[big, 1], [1, 0]])
    assert snf.divisors == (1, 1)


# --- kernels and HNF ----------------------------------------------------------

def test_kernel_examples():
    assert rational_kernel(IntMatrix.from_rows([[-2, 0], [0, 0]])) == [(0, 1)]
    assert rational_kernel(IntMatrix.from_rows([[2, 1], [1, 1]])) == []
    ker = rational_kernel(IntMatrix.from_rows([[1, 1, 0]]))
    assert len(ker) == 2
    for v in ker:
        assert v[0] + v[1] == 0
    assert rank(IntMatrix.from_rows(ker)) == 2


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_property(rows):
    A = IntMatrix.from_rows(rows)
    ker = rational_kernel(A)
    assert len(ker) == A.ncols - rank(A)
    for v in ker:
        assert all(x == 0 for x in A @ v)
        assert math.gcd(*v) == 1


def test_hnf_shape():
    h = hermite_normal_form([(2, 4), (1, 3)], 2)
    assert h == ((1, 1), (0, 2))


# --- lattice congruences ------------------------------------------------------

def test_solve_minus_two_identity():
    sol = solve_mod_lattice(IntMatrix.from_rows([[-2, 0], [0, -2]]))
    half = Fraction(1, 2)
    assert set(sol.points()) == {(0, 0), (0, half), (half, 0), (half, half)}


def test_solve_zero_matrix_is_whole_torus():
    sol = solve_mod_lattice(IntMatrix.zeros(2, 2))
    assert len(sol.components) == 1
    comp = sol.components[0]
    assert comp.base == (0, 0) and comp.directions == ((1, 0), (0, 1))


def test_solve_cat_map():
    sol = solve_mod_lattice(IntMatrix.from_rows([[1, 1], [1, 0]]))
    assert sol.points() == [(0, 0)]


def test_solve_circles():
    sol = solve_mod_lattice(IntMatrix.from_rows([[-2, 0], [0, 0]]))
    assert [c.base for c in sol.components] == [(0, 0), (Fraction(1, 2), 0)]
    assert all(c.directions == ((0, 1),) for c in sol.components)


def test_solve_matches_brute_force_random_2x2():
    rng = random.Random(99)
    checked = 0
    while checked < 60:
        rows = [[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)]
        if laplace_det(rows) == 0:
            continue
        sol = solve_mod_lattice(IntMatrix.from_rows(rows))
        assert sol.is_finite
        pts = set(sol.points())
        assert pts == brute_force_solutions(rows, 2)
        assert len(pts) == abs(laplace_det(rows))
        checked += 1


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=3))
def test_solution_set_invariants(rows):
    A = IntMatrix.from_rows(rows)
    sol = solve_mod_lattice(A)
    bases = [c.base for c in sol.components]
    assert len(set(bases)) == len(bases)
    for c in sol.components:
        assert all(0 <= x < 1 for x in c.base)
        assert all(v.denominator == 1 for v in A @ c.base)
        for d in c.directions:
            assert all(x == 0 for x in A @ d)
        if c.directions:
            assert rank(IntMatrix.from_rows(c.directions)) == len(c.directions)
            # canonical representative is stable
            assert canonical_base(c.base, c.directions) == c.base
    if rank(A) == 3:
        snf = smith_normal_form(A)
        assert len(sol.components) == math.prod(snf.divisors)


def test_canonical_base_identifies_coset_members():
    dirs = ((1, 1),)
    a = canonical_base((Fraction(1, 3), Fraction(0)), dirs)
    b = canonical_base((Fraction(1, 3) + Fraction(2, 7), Fraction(2, 7)), dirs)
    assert a == b


def test_unimodular_inverse():
    M = IntMatrix.from_rows([[2, 1], [1, 1]])
    assert M @ M.inverse() == IntMatrix.identity(2)
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[2, 0], [0, 1]]).inverse()
