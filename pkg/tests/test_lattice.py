"""Tests for integer lattices, discriminant forms, and vector enumeration."""

from fractions import Fraction
from math import isqrt, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kummerlab.lattice import (
    IntLattice,
    IsometryMatrix,
    LatticeError,
    char_poly,
    discriminant_group,
    enumerate_norm_vectors,
    forms_negate_match,
    invariant_factors,
    orthogonal_complement,
    smith_normal_form,
)
from kummerlab.scalars import gens

A2 = IntLattice(((-2, 1), (1, -2)), "A2")
HYPER = IntLattice(((0, 1), (1, 0)), "U")
T_GRAM = ((0, 3, 0), (3, 6, -3), (0, -3, 6))


# ---------------------------------------------------------------------------
# construction and basic invariants
# ---------------------------------------------------------------------------


def test_lattice_validation():
    with pytest.raises(LatticeError, match="symmetric"):
        IntLattice(((0, 1), (2, 0)))
    with pytest.raises(LatticeError, match="square"):
        IntLattice(((0, 1),))
    with pytest.raises(TypeError):
        IntLattice(((Fraction(1, 2),),))


def test_basic_invariants():
    assert A2.rank == 2
    assert A2.det() == 3
    assert A2.nondegenerate()
    assert A2.is_even()
    assert A2.norm((1, 1)) == -2
    assert A2.inner((1, 0), (0, 1)) == 1
    odd = IntLattice(((1, 0), (0, 2)))
    assert not odd.is_even()
    empty = IntLattice(())
    assert empty.rank == 0 and empty.det() == 1 and empty.nondegenerate()


def test_signatures():
    assert A2.signature() == (0, 2, 0)
    assert A2.is_negative_definite()
    assert HYPER.signature() == (1, 1, 0)
    assert not HYPER.is_negative_definite()
    assert IntLattice(((2, 0), (0, 3))).signature() == (2, 0, 0)
    assert IntLattice(((2, 0, 0), (0, -3, 0), (0, 0, 0))).signature() == (1, 1, 1)
    assert IntLattice(T_GRAM).signature() == (2, 1, 0)


@st.composite
def _small_symmetric(draw):
    n = draw(st.integers(1, 4))
    vals = {}
    for i in range(n):
        for j in range(i, n):
            vals[(i, j)] = draw(st.integers(-5, 5))
    return tuple(
        tuple(vals[(min(i, j), max(i, j))] for j in range(n)) for i in range(n)
    )


@st.composite
def _unimodular(draw, n):
    # product of elementary shears and coordinate swaps
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, 6))):
        i = draw(st.integers(0, n - 1))
        j = draw(st.integers(0, n - 1))
        if i == j:
            continue
        c = draw(st.integers(-2, 2))
        for t in range(n):
            m[t][i] += c * m[t][j]
    return m


@given(_small_symmetric(), st.data())
@settings(deadline=None)
def test_signature_is_congruence_invariant(gram, data):
    lat = IntLattice(gram)
    u = data.draw(_unimodular(len(gram)))
    n = len(gram)
    moved = tuple(
        tuple(
            sum(u[a][i] * gram[a][b] * u[b][j] for a in range(n) for b in range(n))
            for j in range(n)
        )
        for i in range(n)
    )
    assert IntLattice(moved).signature() == lat.signature()


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def test_smith_identity():
    d, u, v = smith_normal_form(((1, 0), (0, 1)))
    assert d == ((1, 0), (0, 1))


def test_smith_a2():
    d, u, v = smith_normal_form(A2.gram)
    assert (d[0][0], d[1][1]) == (1, 3)
    assert invariant_factors(A2.gram) == (3,)
    assert invariant_factors(((1, 0), (0, 1))) == ()


@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.data(),
)
@settings(deadline=None)
def test_smith_properties(m, n, data):
    rows = [
        [data.draw(st.integers(-9, 9)) for _ in range(n)] for _ in range(m)
    ]
    d, u, v = smith_normal_form(rows)
    # shape, diagonality, nonnegativity, divisibility
    diag = [d[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            if i != j:
                assert d[i][j] == 0
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        if a:
            assert b % a == 0
        else:
            assert b == 0
    # the product U*M*V = D is re-verified inside smith_normal_form


# ---------------------------------------------------------------------------
# discriminant groups
# ---------------------------------------------------------------------------


def test_disc_group_a2():
    d = discriminant_group(A2)
    assert d.invariant_factors == (3,)
    assert d.order() == 3
    (g,) = d.generator_lifts
    assert d.quadratic == (Fraction(4, 3),)
    assert d.order_of(g) == 3
    assert d.class_coordinates((1, 0)) == (0,)
    assert d.subgroup_order([g]) == 3
    assert d.subgroup_order([(1, 0)]) == 1


def test_disc_group_rejects_degenerate():
    with pytest.raises(LatticeError, match="degenerate"):
        discriminant_group(IntLattice(((1, 1), (1, 1))))


def test_disc_group_rejects_non_dual_vector():
    d = discriminant_group(A2)
    with pytest.raises(LatticeError, match="dual"):
        d.class_coordinates((Fraction(1, 2), 0))


def test_disc_group_unimodular_is_trivial():
    d = discriminant_group(HYPER)
    assert d.invariant_factors == ()
    assert d.order() == 1


def test_disc_group_odd_lattice_flagged():
    d = discriminant_group(IntLattice(((3,),)))
    assert not d.even
    assert d.invariant_factors == (3,)


def test_disc_group_rank_three_with_order_fifty_four():
    lat = IntLattice(T_GRAM, "T")
    assert lat.det() == -54
    assert lat.is_even()
    d = discriminant_group(lat)
    assert d.invariant_factors == (3, 3, 6)
    assert d.order() == 54
    # the three published dual generators: orders 3, 3, 6, generating it all
    g1 = (Fraction(2, 3), 0, 0)
    g2 = (0, 0, Fraction(1, 3))
    g3 = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 6))
    assert [d.order_of(g) for g in (g1, g2, g3)] == [3, 3, 6]
    assert d.subgroup_order([g1, g2, g3]) == 54
    assert d.subgroup_order([g1, g2]) == 9
    assert d.subgroup_order([]) == 1


@given(_small_symmetric())
@settings(deadline=None)
def test_disc_group_order_equals_determinant(gram):
    lat = IntLattice(gram)
    if lat.det() == 0:
        return
    d = discriminant_group(lat)
    assert d.order() == abs(lat.det())
    assert prod(d.invariant_factors, start=1) == abs(lat.det())
    for g, n in zip(d.generator_lifts, d.invariant_factors):
        assert d.order_of(g) == n
    if d.generator_lifts:
        assert d.subgroup_order(d.generator_lifts) == d.order()


# ---------------------------------------------------------------------------
# torsion form comparison
# ---------------------------------------------------------------------------


def test_negate_match_rejects_mismatched_factors():
    with pytest.raises(LatticeError, match="mismatched"):
        forms_negate_match(
            discriminant_group(A2),
            discriminant_group(IntLattice(((0, 2), (2, 0)))),
            [(1, 0)],
        )


def test_negate_match_rejects_odd_lattices():
    d_odd = discriminant_group(IntLattice(((3,),)))
    d_a2 = discriminant_group(A2)
    with pytest.raises(LatticeError, match="even"):
        forms_negate_match(d_a2, d_odd, [(1,)])


def test_negate_match_rejects_order_violations():
    d = discriminant_group(IntLattice(T_GRAM))
    with pytest.raises(LatticeError, match="orders"):
        # sending an order-3 generator to an order-6 class
        forms_negate_match(d, d, [(0, 0, 1), (0, 1, 0), (1, 0, 0)])


def test_negate_match_a2_with_itself_is_false():
    # q(g) = 4/3 on both sides and 4/3 + 4/3 is not in 2Z
    d = discriminant_group(A2)
    assert forms_negate_match(d, d, [(1,)]) is False
    # but A2 against A2 rescaled by -1 negates
    neg = discriminant_group(IntLattice(((2, -1), (-1, 2))))
    assert forms_negate_match(d, neg, [(1,)]) is True


def test_negate_match_two_torsion_forms():
    # all form values 2-torsion: q = 0, b = 1/2, so q = -q and b = -b
    du = discriminant_group(IntLattice(((0, 2), (2, 0))))
    assert du.quadratic == (0, 0)
    assert forms_negate_match(du, du, [(1, 0), (0, 1)]) is True


# ---------------------------------------------------------------------------
# orthogonal complements
# ---------------------------------------------------------------------------


def test_complement_in_a2():
    emb = orthogonal_complement(A2, [(1, 0)])
    assert emb.lattice.gram == ((-6,),)
    assert emb.basis == ((1, 2),)


def test_complement_is_saturated():
    emb = orthogonal_complement(HYPER, [(1, 1)])
    # the complement of (1,1) in the hyperbolic plane is spanned by
    # the primitive vector (1,-1), not a proper multiple of it
    assert emb.basis in (((1, -1),), ((-1, 1),))
    assert emb.lattice.gram == ((-2,),)


def test_complement_edge_cases():
    whole = orthogonal_complement(A2, [])
    assert whole.lattice.gram == A2.gram
    zero = orthogonal_complement(A2, [(1, 0), (0, 1)])
    assert zero.lattice.rank == 0
    with pytest.raises(LatticeError, match="length"):
        orthogonal_complement(A2, [(1, 0, 0)])


def test_complement_vectors_are_orthogonal():
    lat = IntLattice(((2, 1, 0), (1, 2, 1), (0, 1, 4)))
    emb = orthogonal_complement(lat, [(1, 0, 0)])
    for b in emb.basis:
        assert lat.inner((1, 0, 0), b) == 0
    assert emb.lattice.rank == 2


# ---------------------------------------------------------------------------
# vector enumeration
# ---------------------------------------------------------------------------


def test_enumerate_roots_of_a2():
    got = enumerate_norm_vectors(A2, -2)
    assert got == [(-1, -1), (-1, 0), (0, -1), (0, 1), (1, 0), (1, 1)]


def test_enumerate_even_lattice_odd_norm_is_empty():
    assert enumerate_norm_vectors(A2, -1) == []
    assert enumerate_norm_vectors(A2, -3) == []


def test_enumerate_trivial_cases():
    assert enumerate_norm_vectors(A2, 0) == [(0, 0)]
    assert enumerate_norm_vectors(A2, 5) == []


def test_enumerate_rejects_indefinite():
    with pytest.raises(LatticeError, match="definite"):
        enumerate_norm_vectors(HYPER, -2)
    with pytest.raises(LatticeError, match="definite"):
        enumerate_norm_vectors(IntLattice(((2,),)), -2)


def test_enumerate_coset():
    s = (Fraction(1, 3), Fraction(2, 3))
    got = enumerate_norm_vectors(A2, Fraction(-2, 3), s)
    assert got == [(-1, -1), (0, -1), (0, 0)]
    for v in got:
        w = [Fraction(v[i]) + s[i] for i in range(2)]
        assert A2.inner(w, w) == Fraction(-2, 3)
    # norms outside the coset's class modulo 2Z find nothing
    assert enumerate_norm_vectors(A2, -2, s) == []


def _brute_norm_vectors(gram, norm, offset):
    """Box search, complete for strictly diagonally dominant -gram."""
    n = len(gram)
    t = -Fraction(norm)
    if t < 0:
        return []
    s = offset or tuple(Fraction(0) for _ in range(n))
    margins = []
    for i in range(n):
        m = -gram[i][i] - sum(abs(gram[i][j]) for j in range(n) if j != i)
        assert m >= 1
        margins.append(m)
    ranges = []
    for i in range(n):
        b = t / margins[i]
        r = isqrt(b.numerator // b.denominator) + 1
        centre = -s[i]
        lo = centre.numerator // centre.denominator - r - 1
        ranges.append(range(lo, lo + 2 * r + 3))
    out = []

    def rec(i, acc):
        if i == n:
            w = [Fraction(acc[j]) + s[j] for j in range(n)]
            total = sum(
                w[a] * gram[a][b] * w[b] for a in range(n) for b in range(n)
            )
            if total == norm:
                out.append(tuple(acc))
            return
        for x in ranges[i]:
            rec(i + 1, acc + [x])

    rec(0, [])
    return sorted(out)


@st.composite
def _dominant_lattice(draw):
    n = draw(st.integers(1, 3))
    off = {}
    for i in range(n):
        for j in range(i + 1, n):
            off[(i, j)] = draw(st.integers(-2, 2))
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                total = sum(
                    abs(off[(min(i, k), max(i, k))]) for k in range(n) if k != i
                )
                row.append(-(total + draw(st.integers(1, 3))))
            else:
                row.append(off[(min(i, j), max(i, j))])
        rows.append(tuple(row))
    return IntLattice(tuple(rows))


@given(
    _dominant_lattice(),
    st.integers(-12, 0),
    st.booleans(),
    st.data(),
)
@settings(deadline=None, max_examples=60)
def test_enumerate_agrees_with_box_search(lat, norm, with_offset, data):
    n = lat.rank
    offset = None
    if with_offset:
        offset = tuple(
            Fraction(
                data.draw(st.integers(-3, 3)), data.draw(st.integers(1, 3))
            )
            for _ in range(n)
        )
        if not any(offset):
            offset = None
    got = enumerate_norm_vectors(lat, norm, offset)
    want = _brute_norm_vectors(lat.gram, norm, offset)
    assert got == want


@given(_dominant_lattice(), st.data())
@settings(deadline=None, max_examples=40)
def test_enumerate_coset_rational_norms(lat, data):
    n = lat.rank
    offset = tuple(Fraction(data.draw(st.integers(-2, 2)), 3) for _ in range(n))
    w = list(offset)
    base = sum(w[a] * lat.gram[a][b] * w[b] for a in range(n) for b in range(n))
    norm = base - 2 * data.draw(st.integers(0, 2))
    got = enumerate_norm_vectors(lat, norm, offset)
    want = _brute_norm_vectors(lat.gram, norm, offset)
    assert got == want
    assert (tuple([0] * n)) in got or norm != base


# ---------------------------------------------------------------------------
# characteristic polynomials and isometries
# ---------------------------------------------------------------------------


def test_char_poly_identity():
    (tv,) = gens(("T",))
    assert char_poly(((1, 0, 0), (0, 1, 0), (0, 0, 1))) == (tv - 1) ** 3


def test_char_poly_companion():
    (tv,) = gens(("T",))
    # companion matrix of T^2 + T + 1
    assert char_poly(((0, -1), (1, -1))) == tv * tv + tv + 1
    with pytest.raises(LatticeError, match="square"):
        char_poly(((1, 2, 3), (4, 5, 6)))


def test_isometry_matrix():
    rot = IsometryMatrix(((0, -1), (1, -1)), A2)
    (tv,) = gens(("T",))
    assert rot.char_poly() == tv * tv + tv + 1
    # the rotation has order three
    m = rot.m
    sq = tuple(
        tuple(sum(m[i][k] * m[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )
    cube = tuple(
        tuple(sum(sq[i][k] * m[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )
    assert cube == ((1, 0), (0, 1))
    with pytest.raises(LatticeError, match="preserve"):
        IsometryMatrix(((1, 1), (0, 1)), A2)
    assert A2.is_isometry(((0, -1), (1, -1)))
    assert not A2.is_isometry(((1, 1), (0, 1)))
