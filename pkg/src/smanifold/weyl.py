"""Root systems, Weyl orbits and polar classes in a Cartan subalgebra.

A point ``X`` of the Cartan subalgebra stands for the generalized flag
manifold ``Ad(G)X``.  Its maximal antipodal sets are Weyl orbits ``W X``; the
polars at ``X`` are indexed by orbit points modulo the stabilizer subgroup
``W_X``, which is generated by reflections in the roots orthogonal to ``X``.

Realizations are rational so all arithmetic is exact:

* ``A_n``: the sum-zero hyperplane of ``Q^{n+1}``;
* ``B_n``, ``C_n``, ``D_n``: ``Q^n``;
* ``G_2``: the sum-zero plane of ``Q^3``;
* ``F_4``, ``E_6``, ``E_7``, ``E_8``: ``Q^rank`` in the simple-root basis, with
  the bilinear form read off the symmetrized Cartan matrix.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ZeroPoint

Vec = tuple[Fraction, ...]


def _vec(xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def cartan_matrix(kind: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix ``a_ij = 2 (α_i, α_j) / (α_i, α_i)`` in Bourbaki numbering."""
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j], a[j][i] = aij, aji

    if kind == "A":
        for i in range(rank - 1):
            link(i, i + 1)
    elif kind == "B":
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 2, rank - 1, -1, -2)
    elif kind == "C":
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 2, rank - 1, -2, -1)
    elif kind == "D":
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 3, rank - 1)
    elif kind == "G":
        link(0, 1, -3, -1)
    elif kind == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif kind == "E":
        # 1-3-4-5-6-7-8 with 2 attached to 4
        link(0, 2)
        link(1, 3)
        for i in range(2, rank - 1):
            link(i, i + 1)
    else:
        raise ValueError(f"unknown root system type {kind!r}")
    return tuple(tuple(r) for r in a)


_VALID_RANKS = {
    "A": range(1, 100), "B": range(2, 100), "C": range(3, 100), "D": range(4, 100),
    "G": (2,), "F": (4,), "E": (6, 7, 8),
}


@dataclass(frozen=True)
class RootSystem:
    """Simple roots in a rational realization together with its bilinear form."""

    kind: str
    rank: int
    simple_roots: tuple[Vec, ...]
    gram: tuple[Vec, ...]  # bilinear form on the ambient space

    def __post_init__(self):
        expected = cartan_matrix(self.kind, self.rank)
        if self.cartan() != expected:
            raise ValueError(f"realization does not match the Cartan matrix of {self.label}")
        if _rank(self.simple_roots) != self.rank:
            raise ValueError("simple roots are linearly dependent")

    @property
    def label(self) -> str:
        return f"{self.kind}{self.rank}"

    @property
    def ambient_dimension(self) -> int:
        return len(self.gram)

    @cached_property
    def _euclidean(self) -> bool:
        n = len(self.gram)
        return all(self.gram[i][j] == (i == j) for i in range(n) for j in range(n))

    def inner(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        if self._euclidean:
            return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))
        return sum((u[i] * g * v[j] for i, row in enumerate(self.gram) if u[i] for j, g in enumerate(row) if g and v[j]),
                   Fraction(0))

    def coroot_pairing(self, v: Sequence[Fraction], alpha: Sequence[Fraction]) -> Fraction:
        """``<v, α^∨> = 2 (v, α) / (α, α)``."""
        return 2 * self.inner(v, alpha) / self.inner(alpha, alpha)

    def cartan(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for ai in self.simple_roots:
            row = []
            for aj in self.simple_roots:
                c = self.coroot_pairing(aj, ai)
                if c.denominator != 1:
                    raise ValueError("non-integral Cartan entry")
                row.append(int(c))
            out.append(tuple(row))
        return tuple(out)

    def in_cartan_subalgebra(self, v: Sequence[Fraction]) -> bool:
        if self.kind in ("A", "G"):
            return sum(v) == 0
        return True


def _rank(vectors: Sequence[Vec]) -> int:
    rows = [list(v) for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c] / rows[r][c]
            rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def _unit(i: int, n: int, scale=1) -> Vec:
    return tuple(Fraction(scale if j == i else 0) for j in range(n))


def _euclid(n: int) -> tuple[Vec, ...]:
    return tuple(_unit(i, n) for i in range(n))


def root_system(kind: str, rank: int) -> RootSystem:
    kind = kind.upper()
    if kind not in _VALID_RANKS or rank not in _VALID_RANKS[kind]:
        raise ValueError(f"unsupported root system {kind}{rank}")
    if kind == "A":
        n = rank + 1
        simple = [tuple(Fraction(1 if j == i else -1 if j == i + 1 else 0) for j in range(n)) for i in range(rank)]
        return RootSystem(kind, rank, tuple(simple), _euclid(n))
    if kind in "BCD":
        n = rank
        simple = [tuple(Fraction(1 if j == i else -1 if j == i + 1 else 0) for j in range(n)) for i in range(n - 1)]
        if kind == "B":
            simple.append(_unit(n - 1, n))
        elif kind == "C":
            simple.append(_unit(n - 1, n, 2))
        else:
            simple.append(tuple(Fraction(1 if j >= n - 2 else 0) for j in range(n)))
        return RootSystem(kind, rank, tuple(simple), _euclid(n))
    if kind == "G":
        return RootSystem(kind, 2, (_vec([1, -1, 0]), _vec([-2, 1, 1])), _euclid(3))
    # F4 and E-types: simple-root basis with (α_i, α_j) = a_ij (α_i, α_i) / 2
    a = cartan_matrix(kind, rank)
    lengths = [2, 2, 1, 1] if kind == "F" else [2] * rank
    gram = tuple(tuple(Fraction(a[i][j] * lengths[i], 2) for j in range(rank)) for i in range(rank))
    if any(gram[i][j] != gram[j][i] for i in range(rank) for j in range(rank)):
        raise AssertionError("symmetrized Cartan matrix is not symmetric")
    return RootSystem(kind, rank, tuple(_unit(i, rank) for i in range(rank)), gram)


def weyl_group_order(kind: str, rank: int) -> int:
    kind = kind.upper()
    if kind == "A":
        return math.factorial(rank + 1)
    if kind in ("B", "C"):
        return 2 ** rank * math.factorial(rank)
    if kind == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    return {("G", 2): 12, ("F", 4): 1152, ("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600}[(kind, rank)]


def reflect(rs: RootSystem, alpha: Vec, v: Vec) -> Vec:
    c = rs.coroot_pairing(v, alpha)
    return tuple(x - c * a for x, a in zip(v, alpha))


def simple_reflection(rs: RootSystem, i: int, v: Sequence) -> Vec:
    """``s_i(v) = v - <v, α_i^∨> α_i``."""
    if not 0 <= i < rs.rank:
        raise IndexError(f"simple reflection index {i} out of range for {rs.label}")
    return reflect(rs, rs.simple_roots[i], _vec(v))


def _orbit(rs: RootSystem, reflections: Sequence[Vec], seed: Vec) -> list[Vec]:
    seen = {seed}
    queue = deque([seed])
    while queue:
        v = queue.popleft()
        for a in reflections:
            w = reflect(rs, a, v)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return sorted(seen)


@dataclass(frozen=True)
class WeylOrbit:
    points: tuple[Vec, ...]
    seed: Vec
    reflections: tuple[Vec, ...]

    def __len__(self) -> int:
        return len(self.points)


def weyl_orbit(rs: RootSystem, X: Sequence) -> WeylOrbit:
    """``W X`` by breadth-first closure under the simple reflections, sorted."""
    X = _vec(X)
    return WeylOrbit(tuple(_orbit(rs, rs.simple_roots, X)), X, rs.simple_roots)


def all_roots(rs: RootSystem) -> list[Vec]:
    """The full root system: the Weyl orbit of the simple roots."""
    return list(_roots(rs))


@lru_cache(maxsize=32)
def _roots(rs: RootSystem) -> tuple[Vec, ...]:
    out: set[Vec] = set()
    for a in rs.simple_roots:
        if a not in out:
            out.update(_orbit(rs, rs.simple_roots, a))
    return tuple(sorted(out))


def _simple_coefficients(rs: RootSystem, v: Vec) -> Vec:
    # solve v = sum c_i α_i through the Gram system (α_i, v) = sum c_j (α_i, α_j)
    n = rs.rank
    m = [[rs.inner(a, b) for b in rs.simple_roots] + [rs.inner(a, v)] for a in rs.simple_roots]
    for c in range(n):
        p = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[p] = m[p], m[c]
        m[c] = [x / m[c][c] for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return tuple(r[n] for r in m)


def fundamental_weight(rs: RootSystem, i: int) -> Vec:
    """``ϖ_i`` in the span of the simple roots with ``<ϖ_i, α_j^∨> = δ_ij``."""
    n = rs.rank
    # Σ_k c_k (α_k, α_j) = δ_ij (α_j, α_j) / 2
    m = [[rs.inner(rs.simple_roots[k], rs.simple_roots[j]) for k in range(n)]
         + [rs.inner(rs.simple_roots[j], rs.simple_roots[j]) / 2 if j == i else Fraction(0)] for j in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        m[c] = [x / m[c][c] for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    coeffs = [row[n] for row in m]
    return tuple(sum((c * a[d] for c, a in zip(coeffs, rs.simple_roots)), Fraction(0))
                 for d in range(rs.ambient_dimension))


def positive_roots(rs: RootSystem) -> list[Vec]:
    return list(_positive(rs))


@lru_cache(maxsize=32)
def _positive(rs: RootSystem) -> tuple[Vec, ...]:
    return tuple(a for a in _roots(rs) if all(c >= 0 for c in _simple_coefficients(rs, a)))


def _is_positive(rs: RootSystem, a: Vec) -> bool:
    return a in _positive_set(rs)


@lru_cache(maxsize=32)
def _positive_set(rs: RootSystem) -> frozenset[Vec]:
    return frozenset(_positive(rs))


@dataclass(frozen=True)
class Subsystem:
    """Roots of ``rs`` orthogonal to a point, with a chosen simple system."""

    roots: tuple[Vec, ...]
    simple_roots: tuple[Vec, ...]
    type_label: str
    weyl_order: int

    def to_json(self) -> dict:
        return {
            "type": self.type_label,
            "root_count": len(self.roots),
            "simple_roots": [[str(c) for c in a] for a in self.simple_roots],
            "weyl_order": self.weyl_order,
        }


def _identify(rs: RootSystem, simple: Sequence[Vec], roots: Sequence[Vec]) -> str:
    """Dynkin label (e.g. ``"A1+A1"``, ``"B2"``) of the system with the given simple roots."""
    if not simple:
        return "0"
    n = len(simple)
    adj = {i: [j for j in range(n) if j != i and rs.inner(simple[i], simple[j]) != 0] for i in range(n)}
    seen, parts = set(), []
    for i in range(n):
        if i in seen:
            continue
        comp, stack = [], [i]
        seen.add(i)
        while stack:
            k = stack.pop()
            comp.append(k)
            for j in adj[k]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        r = len(comp)
        span = [simple[k] for k in comp]
        comp_roots = [a for a in roots if _rank(span + [a]) == r]
        N = len(comp_roots)
        lengths = [rs.inner(simple[k], simple[k]) for k in comp]
        if len(set(lengths)) == 1:
            if N == r * (r + 1):
                parts.append(f"A{r}")
            elif r >= 4 and N == 2 * r * (r - 1):
                parts.append(f"D{r}")
            else:
                parts.append({72: "E6", 126: "E7", 240: "E8"}.get(N, f"?{r}:{N}"))
        else:
            if r == 2:
                parts.append("B2" if N == 8 else "G2" if N == 12 else f"?{r}:{N}")
            elif N == 48 and r == 4:
                parts.append("F4")
            else:
                n_long = lengths.count(max(lengths))
                parts.append(f"B{r}" if n_long == r - 1 else f"C{r}")
    return "+".join(sorted(parts, key=lambda s: (s[0], int(s[1:]) if s[1:].isdigit() else 0)))


def stabilizer_subsystem(rs: RootSystem, X: Sequence) -> Subsystem:
    """``Δ_X = {α : (α, X) = 0}`` with simple roots, type label and ``|W_X|``.

    ``|W_X|`` is counted directly as the size of the ``W_X``-orbit of a point
    that is regular for ``Δ_X`` (the sum of its positive roots).
    """
    X = _vec(X)
    pos = [a for a in positive_roots(rs) if rs.inner(a, X) == 0]
    pos_set = set(pos)
    simple = []
    for a in pos:
        decomposable = any(
            tuple(x - y for x, y in zip(a, b)) in pos_set for b in pos if b != a
        )
        if not decomposable:
            simple.append(a)
    roots = tuple(sorted(pos + [tuple(-c for c in a) for a in pos]))
    if simple:
        rho = tuple(sum(cs) for cs in zip(*pos))
        order = len(_orbit(rs, simple, rho))
    else:
        order = 1
    return Subsystem(roots, tuple(simple), _identify(rs, simple, roots), order)


def flag_antipodal_number(rs: RootSystem, X: Sequence) -> int:
    """``|W X|``, cross-checked against ``|W| / |W_X|``."""
    X = _vec(X)
    if all(c == 0 for c in X):
        raise ZeroPoint("X = 0: the adjoint orbit is a point, not a flag manifold")
    n = len(weyl_orbit(rs, X))
    stab = stabilizer_subsystem(rs, X)
    expected = weyl_group_order(rs.kind, rs.rank) // stab.weyl_order
    if n != expected:
        raise AssertionError(f"orbit-stabilizer mismatch: |WX| = {n}, |W|/|W_X| = {expected}")
    return n


@dataclass(frozen=True)
class PolarClass:
    points: tuple[Vec, ...]
    contains_base: bool
    stabilizer_type: str  # type of the roots of Δ_X fixing the class points

    @property
    def is_pole(self) -> bool:
        return len(self.points) == 1

    def to_json(self) -> dict:
        return {
            "points": [[str(c) for c in p] for p in self.points],
            "size": len(self.points),
            "pole": self.is_pole,
            "trivial": self.contains_base,
            "isotropy_type": self.stabilizer_type,
        }


def polar_classes(rs: RootSystem, X: Sequence) -> list[PolarClass]:
    """Partition of ``W X`` into ``W_X``-orbits; the class ``{X}`` comes first.

    Two orbit points lie in the same polar ``Ad(G_X)(wX)`` exactly when
    ``W_X`` relates them.  ``stabilizer_type`` records the type of the roots
    of ``Δ_X`` orthogonal to the class's points (the isotropy of the polar as
    a flag manifold of ``G_X``).
    """
    X = _vec(X)
    if all(c == 0 for c in X):
        raise ZeroPoint("X = 0: the adjoint orbit is a point")
    orbit = weyl_orbit(rs, X).points
    stab = stabilizer_subsystem(rs, X)
    remaining = set(orbit)
    classes = []
    for p in orbit:
        if p not in remaining:
            continue
        cls = tuple(_orbit(rs, stab.simple_roots, p))
        remaining.difference_update(cls)
        iso = [a for a in stab.roots if rs.inner(a, p) == 0]
        iso_pos = [a for a in iso if _is_positive(rs, a)]
        iso_set = set(iso_pos)
        iso_simple = [a for a in iso_pos
                      if not any(tuple(x - y for x, y in zip(a, b)) in iso_set for b in iso_pos if b != a)]
        classes.append(PolarClass(cls, X in cls, _identify(rs, iso_simple, iso)))
    classes.sort(key=lambda c: (not c.contains_base, c.points))
    return classes


def parse_point(items: Sequence) -> Vec:
    """Rationals given as numbers or ``"p/q"`` strings."""
    return tuple(Fraction(str(x)) for x in items)


# ---------------------------------------------------------------------------
# type A matrix model


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _inv(a):
    n = len(a)
    m = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        p = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[p] = m[p], m[c]
        m[c] = [x / m[c][c] for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [r[n:] for r in m]


def commutator(a, b):
    ab, ba = _matmul(a, b), _matmul(b, a)
    return [[x - y for x, y in zip(r, s)] for r, s in zip(ab, ba)]


def diag(v):
    n = len(v)
    return [[Fraction(v[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def rational_test_conjugators(n: int) -> list[tuple[str, list[list[Fraction]]]]:
    """Non-permutation rational invertible matrices: 3-4-5 rotations and shears in each plane."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            rot = diag([1] * n)
            rot[i][i], rot[i][j], rot[j][i], rot[j][j] = Fraction(3, 5), Fraction(-4, 5), Fraction(4, 5), Fraction(3, 5)
            out.append((f"rotation({i + 1},{j + 1})", rot))
            shear = diag([1] * n)
            shear[i][j] = Fraction(1)
            out.append((f"shear({i + 1},{j + 1})", shear))
    return out


@dataclass
class CommutationReport:
    n: int
    X: Vec
    regular: bool
    permuted_diagonals: int
    permutations_commute: bool
    conjugates_tested: int
    conjugates_failing_to_commute: int
    diagonal_conjugates_are_permutations: bool
    orbit_matches_weyl: bool

    @property
    def passed(self) -> bool:
        ok = self.permutations_commute and self.diagonal_conjugates_are_permutations and self.orbit_matches_weyl
        if self.regular:
            ok = ok and self.conjugates_failing_to_commute == self.conjugates_tested
        return ok

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["X"] = [str(c) for c in self.X]
        d["passed"] = self.passed
        return d


def typeA_commutation_check(n: int, X: Sequence) -> CommutationReport:
    """Matrix-level check, in ``su(n)`` diagonal coordinates, that the orbit points
    commuting with ``X`` on the diagonal are the permutations of ``X``."""
    from itertools import permutations

    if not 2 <= n <= 6:
        raise ValueError("n must be between 2 and 6")
    X = _vec(X)
    if len(X) != n or sum(X) != 0:
        raise ValueError("X must have n entries summing to zero")
    D = diag(X)
    perms = sorted(set(permutations(X)))
    zero = [[0] * n for _ in range(n)]
    perm_ok = all(commutator(D, diag(p)) == zero for p in perms)
    regular = len(set(X)) == n
    tested = failing = 0
    diag_ok = True
    for _, P in rational_test_conjugators(n):
        Y = _matmul(_matmul(P, D), _inv(P))
        tested += 1
        if commutator(D, Y) != zero:
            failing += 1
        if all(Y[i][j] == 0 for i in range(n) for j in range(n) if i != j):
            diag_ok = diag_ok and tuple(Y[i][i] for i in range(n)) in perms
    weyl = weyl_orbit(root_system("A", n - 1), X)
    return CommutationReport(
        n=n,
        X=X,
        regular=regular,
        permuted_diagonals=len(perms),
        permutations_commute=perm_ok,
        conjugates_tested=tested,
        conjugates_failing_to_commute=failing,
        diagonal_conjugates_are_permutations=diag_ok,
        orbit_matches_weyl=set(weyl.points) == set(perms),
    )
