from fractions import Fraction as F
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smanifold import weyl as wy
from smanifold.errors import ZeroPoint


def vec(*xs):
    return tuple(F(x) for x in xs)


# --- oracles ------------------------------------------------------------------

def perm_orbit(X):
    return set(permutations(X))


def signed_perm_orbit(X, even_signs=False):
    out = set()
    for p in permutations(X):
        for signs in product((1, -1), repeat=len(X)):
            if even_signs and signs.count(-1) % 2:
                continue
            out.add(tuple(s * x for s, x in zip(signs, p)))
    return out


def block_permutation_classes(X):
    """Type-A polar oracle: W_X permutes positions within blocks where X is constant."""
    blocks = {}
    for i, x in enumerate(X):
        blocks.setdefault(x, []).append(i)
    classes = []
    seen = set()
    for p in sorted(set(permutations(X))):
        if p in seen:
            continue
        cls = {p}
        frontier = [p]
        while frontier:
            q = frontier.pop()
            for idx in blocks.values():
                for a in idx:
                    for b in idx:
                        r = list(q)
                        r[a], r[b] = r[b], r[a]
                        r = tuple(r)
                        if r not in cls:
                            cls.add(r)
                            frontier.append(r)
        seen |= cls
        classes.append(frozenset(cls))
    return set(classes)


sum_zero = st.integers(2, 4).flatmap(
    lambda n: st.lists(st.integers(-3, 3), min_size=n - 1, max_size=n - 1).map(lambda v: tuple(v) + (-sum(v),))
)


# --- root systems -------------------------------------------------------------

@pytest.mark.parametrize("kind,rank,count", [
    ("A", 1, 2), ("A", 3, 12), ("B", 2, 8), ("B", 3, 18), ("C", 3, 18), ("D", 4, 24),
    ("G", 2, 12), ("F", 4, 48), ("E", 6, 72), ("E", 7, 126), ("E", 8, 240),
])
def test_root_counts(kind, rank, count):
    rs = wy.root_system(kind, rank)
    assert len(wy.all_roots(rs)) == count
    assert len(wy.positive_roots(rs)) == count // 2


def test_cartan_conventions():
    assert wy.root_system("B", 2).cartan() == ((2, -1), (-2, 2))
    assert wy.root_system("G", 2).cartan() == ((2, -3), (-1, 2))
    assert wy.root_system("C", 3).cartan()[2] == (0, -1, 2)


def test_bad_realization_rejected():
    with pytest.raises(ValueError):
        # these are D2 roots, not B2
        wy.RootSystem("B", 2, (vec(1, -1), vec(1, 1)), ((F(1), F(0)), (F(0), F(1))))
    with pytest.raises(ValueError):
        wy.root_system("E", 5)


# --- reflections and orbits ---------------------------------------------------

def test_simple_reflection_examples():
    a1 = wy.root_system("A", 1)
    assert wy.simple_reflection(a1, 0, (1, 0)) == vec(0, 1)
    assert wy.simple_reflection(a1, 0, (0, 0)) == vec(0, 0)
    with pytest.raises(IndexError):
        wy.simple_reflection(a1, 1, (1, 0))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2)]), st.data())
def test_reflection_is_involution(system, data):
    rs = wy.root_system(*system)
    v = tuple(F(data.draw(st.integers(-5, 5)), data.draw(st.integers(1, 4))) for _ in range(rs.ambient_dimension))
    for i in range(rs.rank):
        assert wy.simple_reflection(rs, i, wy.simple_reflection(rs, i, v)) == v


@settings(max_examples=40, deadline=None)
@given(sum_zero)
def test_type_a_orbit_is_permutations(X):
    rs = wy.root_system("A", len(X) - 1)
    assert set(wy.weyl_orbit(rs, X).points) == {vec(*p) for p in perm_orbit(X)}


@pytest.mark.parametrize("X", [(2, 1, 0), (1, 1, 0), (1, 0, 0)])
def test_type_b_orbit_is_signed_permutations(X):
    orb = wy.weyl_orbit(wy.root_system("B", 3), X)
    assert set(orb.points) == {vec(*p) for p in signed_perm_orbit(X)}


def test_type_d_orbit_is_even_signed_permutations():
    X = (3, 2, 1, 1)
    orb = wy.weyl_orbit(wy.root_system("D", 4), X)
    assert set(orb.points) == {vec(*p) for p in signed_perm_orbit(X, even_signs=True)}


def test_orbit_examples():
    a2 = wy.root_system("A", 2)
    assert len(wy.weyl_orbit(a2, (2, 0, -2))) == 6
    assert len(wy.weyl_orbit(a2, (2, -1, -1))) == 3
    assert wy.weyl_orbit(a2, (0, 0, 0)).points == (vec(0, 0, 0),)


@pytest.mark.parametrize("system", [("A", 2), ("B", 2), ("G", 2), ("C", 3), ("F", 4)])
def test_orbit_invariants(system):
    rs = wy.root_system(*system)
    X = wy.fundamental_weight(rs, rs.rank - 1)
    orb = wy.weyl_orbit(rs, X)
    pts = set(orb.points)
    assert X in pts and len(pts) == len(orb.points)
    assert list(orb.points) == sorted(orb.points)
    for p in orb.points:
        for i in range(rs.rank):
            assert wy.simple_reflection(rs, i, p) in pts
    assert wy.weyl_group_order(*system) % len(orb) == 0


# --- stabilizers and antipodal numbers ----------------------------------------

def test_stabilizer_examples():
    a2 = wy.root_system("A", 2)
    reg = wy.stabilizer_subsystem(a2, (2, 0, -2))
    assert reg.roots == () and reg.weyl_order == 1
    fw = wy.stabilizer_subsystem(a2, (2, -1, -1))
    assert fw.type_label == "A1" and fw.weyl_order == 2
    zero = wy.stabilizer_subsystem(a2, (0, 0, 0))
    assert set(zero.roots) == set(wy.all_roots(a2)) and zero.weyl_order == 6
    assert wy.stabilizer_subsystem(wy.root_system("A", 3), (1, 1, -1, -1)).type_label == "A1+A1"


# low-rank coincidences use the usual names: C2 = B2, D3 = A3, B1 = A1
@pytest.mark.parametrize("system,X,label", [
    (("B", 3), (1, 0, 0), "B2"),
    (("C", 3), (1, 0, 0), "B2"),
    (("B", 3), (1, 1, 0), "A1+A1"),
    (("B", 4), (1, 1, 0, 0), "A1+B2"),
    (("D", 4), (1, 0, 0, 0), "A3"),
    (("G", 2), (1, 0, -1), "A1"),
])
def test_stabilizer_types(system, X, label):
    assert wy.stabilizer_subsystem(wy.root_system(*system), X).type_label == label


@pytest.mark.parametrize("system,n", [(("A", 2), 6), (("B", 2), 8), (("G", 2), 12), (("C", 3), 48)])
def test_regular_antipodal_numbers(system, n):
    rs = wy.root_system(*system)
    X = tuple(sum(cs) for cs in zip(*wy.positive_roots(rs)))
    assert wy.flag_antipodal_number(rs, X) == n == wy.weyl_group_order(*system)


def test_zero_point_rejected():
    with pytest.raises(ZeroPoint):
        wy.flag_antipodal_number(wy.root_system("A", 2), (0, 0, 0))
    with pytest.raises(ZeroPoint):
        wy.polar_classes(wy.root_system("A", 2), (0, 0, 0))


@pytest.mark.parametrize("kind,rank", [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3),
                                       ("C", 3), ("D", 4), ("G", 2), ("F", 4)])
def test_orbit_stabilizer_all_fundamental_weights(kind, rank):
    rs = wy.root_system(kind, rank)
    for i in range(rank):
        X = wy.fundamental_weight(rs, i)
        orb = len(wy.weyl_orbit(rs, X))
        assert orb * wy.stabilizer_subsystem(rs, X).weyl_order == wy.weyl_group_order(kind, rank)


def test_weyl_group_orders():
    assert [wy.weyl_group_order("A", n) for n in (1, 2, 3)] == [2, 6, 24]
    assert wy.weyl_group_order("B", 3) == wy.weyl_group_order("C", 3) == 48
    assert wy.weyl_group_order("D", 4) == 192
    assert wy.weyl_group_order("F", 4) == 1152


def test_exceptional_sanity_orbits():
    e6 = wy.root_system("E", 6)
    assert wy.flag_antipodal_number(e6, wy.fundamental_weight(e6, 0)) == 27
    f4 = wy.root_system("F", 4)
    assert wy.flag_antipodal_number(f4, wy.fundamental_weight(f4, 0)) == 24


# --- polar classes ------------------------------------------------------------

def test_polar_classes_examples():
    a2 = wy.root_system("A", 2)
    reg = wy.polar_classes(a2, (2, 0, -2))
    assert len(reg) == 6 and all(c.is_pole for c in reg)
    assert reg[0].contains_base and reg[0].points == (vec(2, 0, -2),)
    fw = wy.polar_classes(a2, (2, -1, -1))
    assert [len(c.points) for c in fw] == [1, 2]
    assert fw[0].points == (vec(2, -1, -1),) and fw[0].contains_base


@pytest.mark.parametrize("X", [
    (1, -1), (1, 0, -1), (2, -1, -1), (1, 1, -2), (3, 1, -1, -3), (1, 1, -1, -1),
    (3, -1, -1, -1), (2, 0, 0, -2), (1, 1, 1, -3),
])
def test_polar_classes_agree_with_block_oracle(X):
    rs = wy.root_system("A", len(X) - 1)
    classes = wy.polar_classes(rs, X)
    got = {frozenset(c.points) for c in classes}
    want = {frozenset(vec(*p) for p in cls) for cls in block_permutation_classes(X)}
    assert got == want
    assert sum(len(c.points) for c in classes) == len(wy.weyl_orbit(rs, X))
    assert sum(c.contains_base for c in classes) == 1


@settings(max_examples=30, deadline=None)
@given(sum_zero)
def test_polar_class_oracle_property(X):
    if not any(X):
        return
    rs = wy.root_system("A", len(X) - 1)
    got = {frozenset(c.points) for c in wy.polar_classes(rs, X)}
    want = {frozenset(vec(*p) for p in cls) for cls in block_permutation_classes(X)}
    assert got == want


# --- type-A matrices ----------------------------------------------------------

def test_commutation_examples():
    rep = wy.typeA_commutation_check(3, (1, 0, -1))
    assert rep.permuted_diagonals == 6 and rep.permutations_commute
    assert rep.conjugates_failing_to_commute == rep.conjugates_tested
    assert rep.passed
    assert wy.typeA_commutation_check(3, (1, 1, -2)).permuted_diagonals == 3


def test_rotation_commutator_is_nonzero():
    D = wy.diag(vec(1, 0, -1))
    name, R = wy.rational_test_conjugators(3)[0]
    assert name == "rotation(1,2)"
    Y = wy._matmul(wy._matmul(R, D), wy._inv(R))
    assert any(any(x != 0 for x in row) for row in wy.commutator(D, Y))


def test_commutation_bad_input():
    with pytest.raises(ValueError):
        wy.typeA_commutation_check(3, (1, 1, 1))
    with pytest.raises(ValueError):
        wy.typeA_commutation_check(7, (1, -1, 0, 0, 0, 0, 0))
