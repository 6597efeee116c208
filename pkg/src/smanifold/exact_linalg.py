"""Exact integer/rational linear algebra.

Everything here works on Python ints and :class:`fractions.Fraction`, so there
is no overflow and no rounding.  The central pieces are the Smith normal form
and :func:`solve_mod_lattice`, which enumerates the points ``x`` of the torus
``R^n / Z^n`` with ``A x`` integral.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

RationalVector = tuple[Fraction, ...]
IntVector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major.

    ``ncols`` is stored explicitly so that matrices with no rows keep their
    shape.
    """

    entries: tuple[tuple[int, ...], ...]
    ncols: int = field(default=-1)

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in row) for row in self.entries)
        ncols = self.ncols
        if ncols < 0:
            ncols = len(rows[0]) if rows else 0
        if any(len(row) != ncols for row in rows):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ncols: int = -1) -> "IntMatrix":
        return cls(tuple(tuple(r) for r in rows), ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls(tuple((0,) * n for _ in range(m)), n)

    @classmethod
    def vstack(cls, blocks: Sequence["IntMatrix"], ncols: int) -> "IntMatrix":
        rows: list[tuple[int, ...]] = []
        for b in blocks:
            if b.ncols != ncols:
                raise ValueError("column count mismatch in vstack")
            rows.extend(b.entries)
        return cls(tuple(rows), ncols)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> IntVector:
        return self.entries[i]

    def column(self, j: int) -> IntVector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(self.column(j) for j in range(self.ncols)), self.nrows)

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
            self.ncols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-a for a in r) for r in self.entries), self.ncols)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(c * a for a in r) for r in self.entries), self.ncols)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.column(j) for j in range(other.ncols)]
            return IntMatrix(
                tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.entries),
                other.ncols,
            )
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * v for a, v in zip(r, vec)), 0 * vec[0] if vec else 0) for r in self.entries)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        a = [list(r) for r in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.is_square() and abs(self.det()) == 1

    def inverse(self) -> "IntMatrix":
        """Inverse of a unimodular matrix (raises ``ValueError`` otherwise)."""
        return _unimodular_inverse(self)

    def __str__(self) -> str:
        return str(self.to_list())


@lru_cache(maxsize=4096)
def _unimodular_inverse(M: IntMatrix) -> IntMatrix:
    if not M.is_unimodular():
        raise ValueError("matrix is not unimodular")
    return IntMatrix(tuple(tuple(int(x) for x in r) for r in rational_inverse(M)), M.ncols)


def rational_inverse(M: IntMatrix) -> list[list[Fraction]]:
    n = M.nrows
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M.entries)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


def rank(M: IntMatrix) -> int:
    """Rank over Q."""
    a = [[Fraction(x) for x in r] for r in M.entries]
    r = 0
    for c in range(M.ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def mod1(x: Fraction) -> Fraction:
    return x - math.floor(x)


def reduce_mod1(v: Iterable) -> RationalVector:
    return tuple(mod1(Fraction(x)) for x in v)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    rank: int

    @property
    def divisors(self) -> tuple[int, ...]:
        """Nonzero elementary divisors ``d_1 | d_2 | ... | d_rank``."""
        return tuple(self.D[i, i] for i in range(self.rank))


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for r in a:
        r[i], r[j] = r[j], r[i]


def _add_row(a, dst, src, q):
    # row_dst += q * row_src
    if q:
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]


def _add_col(a, dst, src, q):
    if q:
        for r in a:
            r[dst] += q * r[src]


def smith_normal_form(M: IntMatrix) -> SnfDecomposition:
    """Smith normal form with unimodular transforms.

    Pivots are chosen as the entry of least absolute value, ties broken by
    (row, column), so the output is deterministic.

    >>> snf = smith_normal_form(IntMatrix(((2, 0), (0, 3))))
    >>> snf.divisors
    (1, 6)
    """
    m, n = M.shape
    a = [list(r) for r in M.entries]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def move_to_pivot(t, i, j):
        if i != t:
            _swap_rows(a, t, i)
            _swap_rows(u, t, i)
        if j != t:
            _swap_cols(a, t, j)
            _swap_cols(v, t, j)

    t = 0
    while t < min(m, n):
        cands = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not cands:
            break
        _, i, j = min(cands)
        move_to_pivot(t, i, j)
        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // p
                _add_row(a, i, t, -q)
                _add_row(u, i, t, -q)
            for j in range(t + 1, n):
                q = a[t][j] // p
                _add_col(a, j, t, -q)
                _add_col(v, j, t, -q)
            rest = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
            rest += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
            if rest:
                _, i, j = min(rest)
                move_to_pivot(t, i, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            # pull the offending row into row t; the column sweep then shrinks the pivot
            _add_row(a, t, bad[0], 1)
            _add_row(u, t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return SnfDecomposition(
        U=IntMatrix.from_rows(u, m),
        D=IntMatrix.from_rows(a, n),
        V=IntMatrix.from_rows(v, n),
        rank=t,
    )


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> tuple[IntVector, ...]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows: echelon shape, positive pivots, and entries above
    each pivot reduced into ``[0, pivot)``.
    """
    a = [list(r) for r in rows]
    r = 0
    for c in range(ncols):
        if r >= len(a):
            break
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(a[i][c]), i))
            _swap_rows(a, r, i0)
            clean = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    _add_row(a, i, r, -(a[i][c] // a[r][c]))
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            _add_row(a, i, r, -(a[i][c] // a[r][c]))
        r += 1
    return tuple(tuple(row) for row in a[:r])


def rational_kernel(A: IntMatrix) -> list[IntVector]:
    """Primitive integer basis of ``ker_Q(A)`` in Hermite normal form.

    The basis spans the saturated lattice ``ker(A) ∩ Z^n``; it is empty iff
    ``A`` has full column rank.
    """
    n = A.ncols
    if A.nrows == 0:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    snf = smith_normal_form(A)
    basis = [snf.V.column(j) for j in range(snf.rank, n)]
    return list(hermite_normal_form(basis, n))


def adapted_basis(directions: Sequence[IntVector], n: int) -> tuple[IntMatrix, IntMatrix]:
    """Unimodular ``W`` (and its inverse) sending a saturated lattice onto the
    first ``k`` coordinate axes.

    ``W @ d`` has zeros past position ``k`` for every direction ``d``, and the
    first ``k`` columns of ``W^{-1}`` are a basis of the lattice.
    """
    k = len(directions)
    if k == 0:
        eye = IntMatrix.identity(n)
        return eye, eye
    snf = smith_normal_form(IntMatrix.from_rows(directions, n))
    if snf.rank != k or any(d != 1 for d in snf.divisors):
        raise ValueError("direction lattice is not saturated (or not independent)")
    W = snf.V.transpose()
    return W, W.inverse()


def canonical_base(base: Sequence, directions: Sequence[IntVector]) -> RationalVector:
    """Canonical representative in ``[0,1)^n`` of the coset ``base + span(directions)``
    in the torus ``R^n/Z^n``."""
    n = len(base)
    b = reduce_mod1(base)
    k = len(directions)
    if k == 0:
        return b
    W, Winv = adapted_basis(directions, n)
    wb = W @ b
    q = (Fraction(0),) * k + tuple(mod1(x) for x in wb[k:])
    return reduce_mod1(Winv @ q)


# ---------------------------------------------------------------------------
# Lattice congruence solver


@dataclass(frozen=True)
class LatticeComponent:
    base: RationalVector
    directions: tuple[IntVector, ...]

    @property
    def dimension(self) -> int:
        return len(self.directions)


@dataclass(frozen=True)
class LatticeSolutionSet:
    """All ``x in R^n/Z^n`` with ``A x in Z^m``, as disjoint affine subtori."""

    n: int
    components: tuple[LatticeComponent, ...]

    @property
    def is_finite(self) -> bool:
        return all(c.dimension == 0 for c in self.components)

    def points(self) -> list[RationalVector]:
        if not self.is_finite:
            raise ValueError("solution set is not finite")
        return [c.base for c in self.components]


def solve_mod_lattice(A: IntMatrix) -> LatticeSolutionSet:
    """Solve ``A x ≡ 0 (mod Z^m)`` on the torus ``R^n/Z^n``.

    With ``U A V = D`` and ``x = V z`` the condition becomes ``d_i z_i ∈ Z``
    for ``i < rank`` with the remaining ``z_i`` free, so the solutions form
    ``d_1 ... d_rank`` translates of one subtorus.
    """
    n = A.ncols
    if A.nrows == 0 or all(x == 0 for r in A.entries for x in r):
        dirs = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return LatticeSolutionSet(n, (LatticeComponent((Fraction(0),) * n, dirs),))
    snf = smith_normal_form(A)
    r = snf.rank
    dirs = hermite_normal_form([snf.V.column(j) for j in range(r, n)], n)
    comps = set()
    for ks in product(*(range(d) for d in snf.divisors)):
        z = tuple(Fraction(k, d) for k, d in zip(ks, snf.divisors)) + (Fraction(0),) * (n - r)
        comps.add(canonical_base(snf.V @ z, dirs))
    return LatticeSolutionSet(n, tuple(LatticeComponent(b, dirs) for b in sorted(comps)))
