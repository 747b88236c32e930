from fractions import Fraction
import itertools

import pytest
from hypothesis import given, strategies as st

from seshadri.catalog import builtin
from seshadri.lattice import (
    DivisorClass,
    IntersectionLattice,
    LatticeError,
    arithmetic_genus,
    blowup_extend,
    check_signature,
    diagonalize,
    find_curve_class,
    hodge_filter,
    intersect,
    is_nef_against,
)

P2 = IntersectionLattice([[1]])
CUBIC = builtin("cubic").lattice
H_CUBIC = DivisorClass([3, -1, -1, -1, -1, -1, -1])


def test_intersect_examples():
    assert intersect(P2, DivisorClass([1]), DivisorClass([2])) == 2
    assert intersect(CUBIC, H_CUBIC, H_CUBIC) == 3
    scroll = IntersectionLattice([[3, 1], [1, 0]])
    H, F = DivisorClass([1, 0]), DivisorClass([0, 1])
    assert (intersect(scroll, H, H), intersect(scroll, H, F), intersect(scroll, F, F)) == (3, 1, 0)


def test_intersect_dimension_mismatch():
    with pytest.raises(LatticeError):
        intersect(P2, DivisorClass([1, 0]), DivisorClass([1]))


def test_non_symmetric_rejected():
    with pytest.raises(LatticeError):
        IntersectionLattice([[1, 2], [0, -1]])


@pytest.mark.parametrize(
    "gram, ok",
    [([[1]], True), ([[1, 0, 0], [0, -1, 0], [0, 0, -1]], True), ([[1, 0], [0, 1]], False),
     ([[0, 1], [1, 0]], True), ([[0, 0], [0, -1]], False), ([[-1]], False), ([[0, 1, 0], [1, 0, 0], [0, 0, -2]], True)],
)
def test_signature(gram, ok):
    assert bool(check_signature(IntersectionLattice(gram))) is ok


def _det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n, det = len(m), Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k]), None)
        if p is None:
            return Fraction(0)
        if p != k:
            m[k], m[p] = m[p], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return det


@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_diagonalization_preserves_determinant(entries):
    # every congruence step used has determinant +-1, so det(G) is the diagonal product
    a, b, c, d, e, f = entries
    g = [[a, b, c], [b, d, e], [c, e, f]]
    diag = diagonalize(g)
    prod = Fraction(1)
    for x in diag:
        prod *= x
    assert prod == _det(g)


@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_signature_agrees_with_principal_minors(entries):
    # oracle: for a non-degenerate form, #negatives = sign changes in the leading-minor sequence
    # (Jacobi), valid when all leading minors are non-zero
    a, b, c, d, e, f = entries
    g = [[a, b, c], [b, d, e], [c, e, f]]
    minors = [Fraction(1), _det([[a]]), _det([[a, b], [b, d]]), _det(g)]
    if any(m == 0 for m in minors):
        return
    changes = sum(1 for x, y in zip(minors, minors[1:]) if (x > 0) != (y > 0))
    sig = check_signature(IntersectionLattice(g))
    assert sig.negative == changes
    assert sig.positive == 3 - changes


def test_hodge_filter_examples():
    assert hodge_filter(3, 3, 3) and 3 * 3 == 3 * 3
    assert not hodge_filter(1, 1, 2)
    assert hodge_filter(1, 1, 1)


@pytest.mark.parametrize("name", ["P2", "cubic", "scroll(3)", "scroll(6)"])
@given(data=st.data())
def test_hodge_holds_for_every_class(name, data):
    s = builtin(name)
    C = DivisorClass(data.draw(st.lists(st.integers(-6, 6), min_size=s.lattice.rank, max_size=s.lattice.rank)))
    assert hodge_filter(s.L2, intersect(s.lattice, s.L, C), intersect(s.lattice, C, C))


def test_blowup_p2_six_points():
    ext = blowup_extend(P2, DivisorClass([-3]), 6)
    assert ext.extended.gram == tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(7)) for i in range(7))
    assert ext.canonical == DivisorClass([-3, 1, 1, 1, 1, 1, 1])
    assert check_signature(ext.extended).positive == 1 and check_signature(ext.extended).negative == 6


def test_blowup_invariants():
    ext = blowup_extend(CUBIC, -H_CUBIC, 2)
    E1, E2 = ext.exceptionals
    assert intersect(ext.extended, E1, E1) == -1
    assert intersect(ext.extended, E1, E2) == 0
    assert intersect(ext.extended, E1, ext.lift(H_CUBIC)) == 0
    assert intersect(ext.extended, ext.lift(H_CUBIC), ext.lift(H_CUBIC)) == 3
    assert check_signature(ext.extended)


@given(st.lists(st.integers(-5, 5), min_size=7, max_size=7), st.lists(st.integers(-5, 5), min_size=7, max_size=7), st.integers(1, 4))
def test_blowup_preserves_products(a, b, r):
    ext = blowup_extend(CUBIC, None, r)
    A, B = DivisorClass(a), DivisorClass(b)
    assert intersect(ext.extended, ext.lift(A), ext.lift(B)) == intersect(CUBIC, A, B)


def test_blowup_rejects_bad_base():
    with pytest.raises(LatticeError):
        blowup_extend(IntersectionLattice([[1, 0], [0, 1]]), None, 1)


def test_nef_examples():
    ext = blowup_extend(P2, DivisorClass([-3]), 2)
    H = ext.lift(DivisorClass([1]))
    E1, E2 = ext.exceptionals
    line = H - E1 - E2
    D = 2 * H - E1 - E2
    # products 0, 1, 1 and D^2 = 2, computed by hand
    assert [intersect(ext.extended, D, c) for c in (line, E1, E2)] == [0, 1, 1]
    res = is_nef_against([line, E1, E2], D, ext.extended)
    assert res.partial_nef and res.partial and res.label == "PartialNef"
    bad = is_nef_against([line, E1, E2], H - E1 - E2, ext.extended)
    assert not bad.partial_nef and bad.violator == line and bad.partial
    assert is_nef_against([line], DivisorClass([0, 0, 0]), ext.extended).partial_nef


def test_genus_examples():
    K = DivisorClass([-3])
    assert arithmetic_genus(DivisorClass([1]), K, P2) == 0
    assert arithmetic_genus(DivisorClass([3]), K, P2) == 1
    assert arithmetic_genus(H_CUBIC, -H_CUBIC, CUBIC) == 1


def test_find_curve_class_exhaustive_vs_box():
    # oracle: brute-force box search on the scroll lattice, where Hodge bounds the box
    s = builtin("scroll(4)")
    for d in range(1, 6):
        for c in range(-2, 5):
            found = find_curve_class(s.lattice, s.L, d, c)
            box = [
                DivisorClass([a, b])
                for a in range(-12, 13)
                for b in range(-12, 13)
                if intersect(s.lattice, s.L, DivisorClass([a, b])) == d
                and intersect(s.lattice, DivisorClass([a, b]), DivisorClass([a, b])) >= c
            ]
            assert (found is None) == (not box), (d, c)


def test_find_curve_class_cubic_vs_box():
    cubic = builtin("cubic")
    for d in range(1, 4):
        for c in range(-1, 4):
            found = find_curve_class(cubic.lattice, cubic.L, d, c)
            # Hodge gives |e_i| small for these degrees; a box of radius 3 is ample
            hit = False
            for coords in itertools.product(range(0, 4), *[range(-3, 2)] * 6):
                C = DivisorClass(coords)
                if intersect(CUBIC, H_CUBIC, C) == d and intersect(CUBIC, C, C) >= c:
                    hit = True
                    break
            assert (found is not None) == hit, (d, c)
            if found is not None:
                assert intersect(CUBIC, H_CUBIC, found) == d and intersect(CUBIC, found, found) >= c
