"""Generalized s-structures on the torus ``T^n = R^n / Z^n``.

A subgroup ``Γ`` of ``GL(n, Z)`` acts at each point ``x`` by the affine map
``y -> γ(y - x) + x``.  Fixed-point sets of these maps are solutions of
``(γ - I)(y - x) ∈ Z^n``, which :func:`~smanifold.exact_linalg.solve_mod_lattice`
enumerates exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence, Union

from .errors import NotAbelian, NotInvariant, NotIsolated
from .exact_linalg import (
    IntMatrix,
    IntVector,
    adapted_basis,
    canonical_base,
    rank,
    reduce_mod1,
    solve_mod_lattice,
)

DEFAULT_WORD_BOUND = 8

Letter = Union[int, tuple[int, int]]
Word = Sequence[Letter]


# ---------------------------------------------------------------------------
# points and maps


@dataclass(frozen=True, order=True)
class TorusPoint:
    """A point of ``T^n`` with exact coordinates reduced into ``[0, 1)``."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", reduce_mod1(self.coords))

    @classmethod
    def of(cls, *coords) -> "TorusPoint":
        return cls(tuple(Fraction(c) for c in coords))

    @classmethod
    def origin(cls, n: int) -> "TorusPoint":
        return cls((Fraction(0),) * n)

    @classmethod
    def parse(cls, text: str) -> "TorusPoint":
        """Parse ``"1/2,1/3"`` (parentheses optional)."""
        text = text.strip().strip("()[]")
        if not text:
            return cls(())
        return cls(tuple(Fraction(p.strip()) for p in text.split(",")))

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def __add__(self, other: "TorusPoint") -> "TorusPoint":
        return TorusPoint(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "TorusPoint") -> "TorusPoint":
        return TorusPoint(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "TorusPoint":
        return TorusPoint(tuple(-a for a in self.coords))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]


@dataclass(frozen=True)
class AffineSymmetry:
    """The torus map ``y -> linear @ y + translation`` (translation mod ``Z^n``)."""

    linear: IntMatrix
    translation: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.linear.is_unimodular():
            raise ValueError("linear part must be unimodular")
        object.__setattr__(self, "translation", reduce_mod1(self.translation))

    def __call__(self, p: TorusPoint) -> TorusPoint:
        return TorusPoint(tuple(a + b for a, b in zip(self.linear @ p.coords, self.translation)))

    def __matmul__(self, other: "AffineSymmetry") -> "AffineSymmetry":
        """Composition ``self ∘ other``."""
        t = self.linear @ other.translation
        return AffineSymmetry(
            self.linear @ other.linear, tuple(a + b for a, b in zip(t, self.translation))
        )

    def inverse(self) -> "AffineSymmetry":
        inv = self.linear.inverse()
        return AffineSymmetry(inv, tuple(-a for a in inv @ self.translation))

    def is_identity(self) -> bool:
        n = self.linear.nrows
        return self.linear == IntMatrix.identity(n) and all(t == 0 for t in self.translation)


@dataclass(frozen=True)
class AffineSubtorus:
    """``base + span_R(directions)`` mod ``Z^n``; directions are in Hermite normal form."""

    base: TorusPoint
    directions: tuple[IntVector, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "base", TorusPoint(canonical_base(self.base.coords, self.directions))
        )

    @property
    def dimension(self) -> int:
        return len(self.directions)

    @property
    def ambient_dimension(self) -> int:
        return self.base.dimension

    @property
    def is_pole(self) -> bool:
        return not self.directions

    def contains(self, p: TorusPoint) -> bool:
        return canonical_base(p.coords, self.directions) == self.base.coords

    def translate(self, v: TorusPoint) -> "AffineSubtorus":
        return AffineSubtorus(self.base + v, self.directions)

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "directions": [list(d) for d in self.directions],
            "dimension": self.dimension,
            "pole": self.is_pole,
        }


# ---------------------------------------------------------------------------
# structures


@dataclass(frozen=True)
class TorusSStructure:
    """``Γ ⊂ GL(n, Z)`` given by generators, acting on ``T^n``.

    ``gamma_generators`` is the abstract group ``Γ`` (as matrices of the
    structure the torus was cut from).  It is ``None`` for a structure built
    directly, in which case ``Γ`` is the matrix group itself.  Restrictions to
    polars keep the parent's ``Γ`` so effectiveness can be judged.
    """

    dimension: int
    generators: tuple[IntMatrix, ...]
    name: str = ""
    catalog_id: Optional[str] = None
    gamma_generators: Optional[tuple[IntMatrix, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        gens = tuple(g if isinstance(g, IntMatrix) else IntMatrix.from_rows(g, self.dimension) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        for i, g in enumerate(gens):
            if g.shape != (self.dimension, self.dimension):
                raise ValueError(f"generator {i} has shape {g.shape}, expected {self.dimension}x{self.dimension}")
            if not g.is_unimodular():
                raise ValueError(f"generator {i} is not unimodular: {g}")

    @classmethod
    def from_json(cls, doc: dict) -> "TorusSStructure":
        n = int(doc["dimension"])
        gens = tuple(IntMatrix.from_rows(g, n) for g in doc["generators"])
        return cls(n, gens, name=doc.get("name", ""))

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "generators": [g.to_list() for g in self.generators],
            "name": self.name,
        }

    @property
    def identity(self) -> IntMatrix:
        return IntMatrix.identity(self.dimension)

    def word_matrix(self, word: Word) -> IntMatrix:
        """Product of the generators named by ``word``.

        A letter is a generator index ``i`` or a pair ``(i, ±1)``; the product
        is read left to right, so ``[0, 1]`` is ``g0 @ g1``.
        """
        m = self.identity
        for letter in word:
            i, e = (letter, 1) if isinstance(letter, int) else letter
            if not 0 <= i < len(self.generators):
                raise IndexError(f"generator index {i} out of range")
            g = self.generators[i]
            if e == -1:
                g = g.inverse()
            elif e != 1:
                raise ValueError(f"exponent must be ±1, got {e}")
            m = m @ g
        return m

    def stacked_system(self) -> IntMatrix:
        """``[γ_1 - I; ...; γ_k - I]``; fixed by all of Γ iff fixed by each generator."""
        eye = self.identity
        return IntMatrix.vstack([g - eye for g in self.generators], self.dimension)

    def is_abelian(self) -> bool:
        return all(a @ b == b @ a for a in self.generators for b in self.generators)


def _m(rows) -> IntMatrix:
    return IntMatrix.from_rows(rows, 2)


CATALOG: dict[str, TorusSStructure] = {
    "torus-1": TorusSStructure(2, (_m([[-1, 0], [0, -1]]),), "Z2: -I", "torus-1"),
    "torus-2": TorusSStructure(2, (_m([[-1, 0], [0, 1]]), _m([[1, 0], [0, -1]])), "Z2xZ2: axis reflections", "torus-2"),
    "torus-3": TorusSStructure(2, (_m([[0, 1], [1, 0]]), _m([[0, -1], [-1, 0]])), "Z2xZ2: diagonal reflections", "torus-3"),
    "torus-4": TorusSStructure(2, (_m([[-1, 0], [0, 1]]), _m([[0, 1], [1, 0]])), "D4", "torus-4"),
    "torus-5": TorusSStructure(2, (_m([[-1, -1], [1, 0]]),), "Z3", "torus-5"),
    "torus-6": TorusSStructure(2, (_m([[0, -1], [1, 0]]),), "Z4", "torus-6"),
    "torus-7": TorusSStructure(2, (_m([[0, -1], [1, 1]]),), "Z6", "torus-7"),
    "torus-8": TorusSStructure(2, (_m([[2, 1], [1, 1]]),), "Z: Arnold's cat map", "torus-8"),
}


def enumerate_group(generators: Sequence[IntMatrix], n: int, bound: int = DEFAULT_WORD_BOUND):
    """Breadth-first enumeration of ``<generators>`` by word length.

    Returns ``(elements, closed)``; ``closed`` is true when the ball of radius
    ``bound`` already is the whole group.
    """
    letters = list(generators) + [g.inverse() for g in generators]
    eye = IntMatrix.identity(n)
    seen = {eye: None}
    frontier = [eye]
    for _ in range(bound):
        nxt = []
        for a in frontier:
            for g in letters:
                b = a @ g
                if b not in seen:
                    seen[b] = None
                    nxt.append(b)
        frontier = nxt
        if not frontier:
            return list(seen), True
    grows = any(a @ g not in seen for a in frontier for g in letters)
    return list(seen), not grows


# ---------------------------------------------------------------------------
# symmetric transformations


def symmetry(structure: TorusSStructure, gamma_word: Word, x: TorusPoint) -> AffineSymmetry:
    """``φ_x(γ)``: the map ``y -> γ y + (I - γ) x``."""
    g = structure.word_matrix(gamma_word)
    return symmetry_of_matrix(g, x)


def symmetry_of_matrix(g: IntMatrix, x: TorusPoint) -> AffineSymmetry:
    n = g.nrows
    shift = (IntMatrix.identity(n) - g) @ x.coords if n else ()
    return AffineSymmetry(g, shift)


@dataclass(frozen=True)
class _SymbolicAffine:
    # translation = px @ x + py @ y for symbolic base points x, y
    linear: IntMatrix
    px: IntMatrix
    py: IntMatrix

    def __matmul__(self, o: "_SymbolicAffine") -> "_SymbolicAffine":
        return _SymbolicAffine(
            self.linear @ o.linear, self.linear @ o.px + self.px, self.linear @ o.py + self.py
        )

    def inverse(self) -> "_SymbolicAffine":
        inv = self.linear.inverse()
        return _SymbolicAffine(inv, -(inv @ self.px), -(inv @ self.py))


def condition3_symbolic(gamma: IntMatrix, delta: IntMatrix) -> bool:
    """Check ``φ_x(γ) φ_y(δ) φ_x(γ)^{-1} = φ_{φ_x(γ)(y)}(γδγ^{-1})`` for all x, y.

    Translations are integer-linear in the base points; two such maps agree
    mod ``Z^n`` for every real ``x, y`` only if the coefficient matrices are
    equal, so the comparison is exact.
    """
    n = gamma.nrows
    eye, zero = IntMatrix.identity(n), IntMatrix.zeros(n, n)
    phi_x_g = _SymbolicAffine(gamma, eye - gamma, zero)
    phi_y_d = _SymbolicAffine(delta, zero, eye - delta)
    lhs = phi_x_g @ phi_y_d @ phi_x_g.inverse()
    c = gamma @ delta @ gamma.inverse()
    # base point p = γ y + (I - γ) x
    rhs = _SymbolicAffine(c, (eye - c) @ (eye - gamma), (eye - c) @ gamma)
    return lhs == rhs


def condition3_at(structure: TorusSStructure, x: TorusPoint, y: TorusPoint, gamma: Word, delta: Word) -> bool:
    """Concrete (non-symbolic) check of the conjugation law at given points."""
    g = structure.word_matrix(gamma)
    d = structure.word_matrix(delta)
    gx = symmetry_of_matrix(g, x)
    lhs = gx @ symmetry_of_matrix(d, y) @ gx.inverse()
    rhs = symmetry_of_matrix(g @ d @ g.inverse(), gx(y))
    return lhs == rhs


# ---------------------------------------------------------------------------
# axioms


@dataclass
class AxiomReport:
    condition1: str
    condition2: bool
    condition2_witness: dict
    condition3: bool
    condition3_counterexample: Optional[dict]
    effective: Union[bool, str]
    effective_witness: Optional[dict]
    group_order: Optional[int]
    abelian: bool

    @property
    def passed(self) -> bool:
        return self.condition2 and self.condition3

    def to_json(self) -> dict:
        return {
            "condition1": self.condition1,
            "condition2": self.condition2,
            "condition2_witness": self.condition2_witness,
            "condition3": self.condition3,
            "condition3_counterexample": self.condition3_counterexample,
            "effective": self.effective,
            "effective_witness": self.effective_witness,
            "group_order": self.group_order,
            "abelian": self.abelian,
        }


def is_isolated(structure: TorusSStructure) -> bool:
    """True iff ``o`` is isolated in ``F(φ_o(Γ))``.

    Translation carries ``φ_o`` to ``φ_x``, so this settles every point.
    """
    n = structure.dimension
    if n == 0:
        return True
    return rank(structure.stacked_system()) == n


def _effectiveness(structure: TorusSStructure, bound: int):
    if structure.gamma_generators is None:
        # the linear part of φ_x(γ) is γ itself, so φ_x is injective
        return True, None
    pairs = list(zip(structure.gamma_generators, structure.generators))
    if not pairs:
        return True, None
    letters = pairs + [(a.inverse(), b.inverse()) for a, b in pairs]
    na, nb = pairs[0][0].nrows, structure.dimension
    start = (IntMatrix.identity(na), IntMatrix.identity(nb))
    seen = {start[0]: start[1]}
    frontier = [start]
    for _ in range(bound):
        nxt = []
        for a, b in frontier:
            for ga, gb in letters:
                pa, pb = a @ ga, b @ gb
                if pa not in seen:
                    seen[pa] = pb
                    nxt.append((pa, pb))
        frontier = nxt
        if not frontier:
            break
    by_image: dict[IntMatrix, IntMatrix] = {}
    for a, b in seen.items():
        if b in by_image:
            return False, {"gamma_1": by_image[b].to_list(), "gamma_2": a.to_list(), "same_map": b.to_list()}
        by_image[b] = a
    if frontier and any(a @ ga not in seen for a, _ in frontier for ga, _ in letters):
        return "undetermined at bound", {"word_bound": bound}
    return True, None


def check_axioms(structure: TorusSStructure, word_bound: int = DEFAULT_WORD_BOUND) -> AxiomReport:
    """Verify the generalized s-structure conditions.

    Condition (3) is checked symbolically for every ordered pair of
    generators; both sides are homomorphic in each argument, so generator
    pairs cover all of ``Γ``.
    """
    n = structure.dimension
    bad = None
    gens = structure.generators
    for i, g in enumerate(gens):
        for j, d in enumerate(gens):
            if not condition3_symbolic(g, d):
                bad = {"gamma": i, "delta": j}
                break
        if bad:
            break
    iso = is_isolated(structure)
    comp = polars(structure, TorusPoint.origin(n)) if n else None
    if comp is None:
        witness = {"fixed_set_at_origin": "single point"}
    else:
        trivial = comp.components[comp.trivial_index]
        witness = {
            "component_through_origin_dimension": trivial.dimension,
            "component_directions": [list(d) for d in trivial.directions],
            "fixed_components_at_origin": len(comp.components),
        }
    effective, eff_witness = _effectiveness(structure, word_bound)
    gamma = structure.gamma_generators if structure.gamma_generators is not None else gens
    elements, closed = enumerate_group(gamma, gamma[0].nrows if gamma else n, word_bound)
    return AxiomReport(
        condition1="vacuously satisfied: affine maps are smooth",
        condition2=iso,
        condition2_witness=witness,
        condition3=bad is None,
        condition3_counterexample=bad,
        effective=effective,
        effective_witness=eff_witness,
        group_order=len(elements) if closed else None,
        abelian=structure.is_abelian(),
    )


# ---------------------------------------------------------------------------
# polars


@dataclass(frozen=True)
class PolarDecomposition:
    base: TorusPoint
    components: tuple[AffineSubtorus, ...]
    trivial_index: int

    @property
    def poles(self) -> list[AffineSubtorus]:
        return [c for c in self.components if c.is_pole]

    @property
    def is_finite_set(self) -> bool:
        return all(c.is_pole for c in self.components)

    def points(self) -> list[TorusPoint]:
        return [c.base for c in self.components if c.is_pole]

    def to_json(self) -> dict:
        return {
            "base_point": self.base.to_json(),
            "components": [c.to_json() for c in self.components],
            "trivial_index": self.trivial_index,
            "pole_count": len(self.poles),
        }


def _decompose(A: IntMatrix, x: TorusPoint) -> PolarDecomposition:
    sol = solve_mod_lattice(A)
    comps = sorted(
        (AffineSubtorus(TorusPoint(c.base), c.directions).translate(x) for c in sol.components),
        key=lambda c: c.base.coords,
    )
    trivial = [i for i, c in enumerate(comps) if c.contains(x)]
    assert len(trivial) == 1
    return PolarDecomposition(x, tuple(comps), trivial[0])


def gamma_polars(structure: TorusSStructure, x: TorusPoint, gamma_word: Word) -> PolarDecomposition:
    """Connected components of ``F(φ_x(γ), T^n)``."""
    g = structure.word_matrix(gamma_word)
    return _decompose(g - structure.identity, x)


def polars(structure: TorusSStructure, x: TorusPoint) -> PolarDecomposition:
    """Connected components of ``F(φ_x(Γ), T^n)``."""
    if structure.dimension == 0:
        return PolarDecomposition(x, (AffineSubtorus(x),), 0)
    return _decompose(structure.stacked_system(), x)


# ---------------------------------------------------------------------------
# antipodal sets


def is_antipodal_pair(structure: TorusSStructure, x: TorusPoint, y: TorusPoint) -> bool:
    """``φ_x(γ)(y) = y`` and ``φ_y(γ)(x) = x`` for every generator ``γ``."""
    return all(
        symmetry_of_matrix(g, x)(y) == y and symmetry_of_matrix(g, y)(x) == x
        for g in structure.generators
    )


def antipodal_subgroup(structure: TorusSStructure) -> list[TorusPoint]:
    """The finite subgroup ``D = {d : (γ - I) d ∈ Z^n for all γ}``.

    Antipodality of ``x, y`` only depends on ``y - x``, and every maximal
    antipodal set is a coset ``x + D``.
    """
    if not is_isolated(structure):
        raise NotIsolated(
            "the common fixed set of Γ at o is not discrete (the stacked system "
            "[γ_i - I] has rank < n), so antipodal sets are infinite"
        )
    return polars(structure, TorusPoint.origin(structure.dimension)).points()


def antipodal_number(structure: TorusSStructure) -> int:
    return len(antipodal_subgroup(structure))


def maximal_antipodal_set(structure: TorusSStructure, x: TorusPoint) -> list[TorusPoint]:
    """The (great) maximal antipodal set through ``x``, i.e. ``x + D``."""
    return sorted(x + d for d in antipodal_subgroup(structure))


# ---------------------------------------------------------------------------
# Γ-family of quandles


def star(structure: TorusSStructure, x: TorusPoint, gamma: IntMatrix, y: TorusPoint) -> TorusPoint:
    """``x *^γ y = φ_y(γ^{-1})(x)``."""
    return symmetry_of_matrix(gamma.inverse(), y)(x)


def rational_grid(n: int, max_denominator: int) -> list[TorusPoint]:
    """Points whose coordinates all have reduced denominator ``<= max_denominator``."""
    fracs = sorted({Fraction(p, q) for q in range(1, max_denominator + 1) for p in range(q)})
    return [TorusPoint(c) for c in product(fracs, repeat=n)]


def group_ball(structure: TorusSStructure, word_bound: int) -> list[IntMatrix]:
    return enumerate_group(structure.generators, structure.dimension, word_bound)[0]


@dataclass
class GQReport:
    gq1: bool = True
    gq2: bool = True
    gq3: bool = True
    counterexample: Optional[dict] = None
    checks: int = 0

    @property
    def passed(self) -> bool:
        return self.gq1 and self.gq2 and self.gq3

    def to_json(self) -> dict:
        return {
            "GQ1": self.gq1,
            "GQ2": self.gq2,
            "GQ3": self.gq3,
            "counterexample": self.counterexample,
            "checks": self.checks,
        }


def verify_gq(
    structure: TorusSStructure,
    points: Sequence[TorusPoint],
    triples: Iterable[tuple[TorusPoint, TorusPoint, TorusPoint]],
    word_bound: int = 3,
) -> GQReport:
    """Check GQ1-GQ3 for ``*^γ`` with γ ranging over words of length ``<= word_bound``.

    Words are deduplicated by their matrix; ``*^γ`` only depends on the matrix.
    GQ1 is checked on ``points``, GQ2 and GQ3 on the given triples.
    """
    rep = GQReport()
    elems = group_ball(structure, word_bound)
    eye = structure.identity
    for g in elems:
        for p in points:
            rep.checks += 1
            if star(structure, p, g, p) != p:
                rep.gq1 = False
                rep.counterexample = rep.counterexample or {"axiom": "GQ1", "x": str(p), "gamma": g.to_list()}
    triples = list(triples)
    for x, y, z in triples:
        rep.checks += 1
        if star(structure, x, eye, y) != x:
            rep.gq2 = False
            rep.counterexample = rep.counterexample or {"axiom": "GQ2 (identity)", "x": str(x), "y": str(y)}
        for g in elems:
            xg_y = star(structure, x, g, y)
            yg_z = None
            for h in elems:
                rep.checks += 2
                if star(structure, x, g @ h, y) != star(structure, xg_y, h, y):
                    rep.gq2 = False
                    rep.counterexample = rep.counterexample or {
                        "axiom": "GQ2", "x": str(x), "y": str(y), "g": g.to_list(), "h": h.to_list()}
                lhs = star(structure, xg_y, h, z)
                conj = h.inverse() @ g @ h
                rhs = star(structure, star(structure, x, h, z), conj, star(structure, y, h, z))
                if lhs != rhs:
                    rep.gq3 = False
                    rep.counterexample = rep.counterexample or {
                        "axiom": "GQ3", "x": str(x), "y": str(y), "z": str(z),
                        "g": g.to_list(), "h": h.to_list()}
    return rep


# ---------------------------------------------------------------------------
# subspaces and the inequality


def restrict_to_component(structure: TorusSStructure, component: AffineSubtorus) -> TorusSStructure:
    """The induced structure on a polar (or γ-polar) component, as a structure on ``T^k``.

    Coordinates are chosen so the component's direction lattice becomes the
    first ``k`` axes and its canonical base point becomes the origin.
    """
    if not structure.is_abelian():
        raise NotAbelian("restriction to polars requires an abelian symmetry group")
    n, k = structure.dimension, component.dimension
    W, Winv = adapted_basis(component.directions, n)
    induced = []
    for i, g in enumerate(structure.generators):
        conj = W @ g @ Winv
        if any(conj[r, c] for r in range(k, n) for c in range(k)):
            raise NotInvariant(f"generator {i} does not preserve the component's direction lattice")
        induced.append(IntMatrix.from_rows([conj.row(r)[:k] for r in range(k)], k))
    gamma = structure.gamma_generators if structure.gamma_generators is not None else structure.generators
    return TorusSStructure(
        k,
        tuple(induced),
        name=f"{structure.name or 'structure'} restricted to {component.base}+<{k}>",
        gamma_generators=gamma,
    )


def component_chart(component: AffineSubtorus):
    """The map ``T^k -> T^n`` identifying the restricted structure's torus with the component."""
    n, k = component.ambient_dimension, component.dimension
    _, Winv = adapted_basis(component.directions, n)

    def chart(t: TorusPoint) -> TorusPoint:
        lifted = Winv @ (tuple(t.coords) + (Fraction(0),) * (n - k))
        return component.base + TorusPoint(lifted)

    return chart


@dataclass
class InequalityTerm:
    component: AffineSubtorus
    antipodal_number: int
    effective: Union[bool, str]

    def to_json(self) -> dict:
        return {
            "component": self.component.to_json(),
            "antipodal_number": self.antipodal_number,
            "restricted_effective": self.effective,
        }


@dataclass
class InequalityReport:
    base: TorusPoint
    antipodal_number: int
    polar_terms: list[InequalityTerm]
    gamma_variants: list[dict]

    @property
    def polar_sum(self) -> int:
        return sum(t.antipodal_number for t in self.polar_terms)

    @property
    def polar_holds(self) -> bool:
        return self.antipodal_number <= self.polar_sum

    @property
    def passed(self) -> bool:
        return self.polar_holds and all(v["holds"] for v in self.gamma_variants)

    def to_json(self) -> dict:
        return {
            "base_point": self.base.to_json(),
            "antipodal_number": self.antipodal_number,
            "polars": {
                "terms": [t.to_json() for t in self.polar_terms],
                "sum": self.polar_sum,
                "holds": self.polar_holds,
            },
            "gamma_polars": self.gamma_variants,
        }


def _terms(structure: TorusSStructure, decomp: PolarDecomposition, word_bound: int) -> list[InequalityTerm]:
    out = []
    for comp in decomp.components:
        sub = restrict_to_component(structure, comp)
        eff, _ = _effectiveness(sub, word_bound)
        out.append(InequalityTerm(comp, antipodal_number(sub), eff))
    return out


def verify_inequality(
    structure: TorusSStructure,
    x: Optional[TorusPoint] = None,
    gamma_words: Optional[Sequence[Word]] = None,
    word_bound: int = DEFAULT_WORD_BOUND,
) -> InequalityReport:
    """Compare ``#_Γ(M)`` with the sum of antipodal numbers of the polars at ``x``.

    The γ-polar variant is evaluated for every word in ``gamma_words``
    (default: each generator).  ``x`` defaults to the origin; on the torus
    every point lies in a great antipodal set.
    """
    if not structure.is_abelian():
        raise NotAbelian("the inequality is only established for abelian Γ")
    n = structure.dimension
    x = x or TorusPoint.origin(n)
    total = antipodal_number(structure)
    terms = _terms(structure, polars(structure, x), word_bound)
    if gamma_words is None:
        gamma_words = [[i] for i in range(len(structure.generators))]
    variants = []
    for w in gamma_words:
        gterms = _terms(structure, gamma_polars(structure, x, w), word_bound)
        s = sum(t.antipodal_number for t in gterms)
        variants.append({
            "word": [list(l) if isinstance(l, tuple) else l for l in w],
            "gamma": structure.word_matrix(w).to_list(),
            "terms": [t.to_json() for t in gterms],
            "sum": s,
            "holds": total <= s,
        })
    return InequalityReport(x, total, terms, variants)
