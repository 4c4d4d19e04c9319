from fractions import Fraction

import pytest

from kummerlab.plane import (
    PLANE_VARS,
    SAMPLE_LAMBDAS,
    AlignedPoints,
    ConfigurationError,
    PlaneCurve,
    PlaneError,
    ProjPoint,
    aligned_extra_points,
    collinear,
    configuration_check,
    conic_is_smooth,
    conics_in_index_order,
    cusp_tangent_lines,
    cuspidal_sextic,
    excluded_parameter,
    find_conics,
    incidence,
    inflection_lines,
    linear_factor_power,
    linear_system,
    linear_system_dimension,
    line_through,
    load_conics,
    load_cusps,
    load_quartics,
    multiplicity_at,
    nine_point_cubic,
    pairwise_intersection_census,
    proportional,
    sextic_triples,
    standard_inflection_points,
    tangent_cone,
)
from kummerlab.scalars import OMEGA, EisensteinScalar, gens, poly_from_text

W = OMEGA
W2 = OMEGA * OMEGA

# the twelve points cut out pairwise by the conics, and the conic pair
# (0-based positions in index order) meeting at each of them
SPECIAL_PAIRS = {
    (0, 1): (1, 1, 1),
    (0, 11): (W, W2, 1),
    (1, 11): (W2, W, 1),
    (2, 6): (1, 0, 0),
    (2, 10): (0, 1, 0),
    (3, 7): (W2, 1, 1),
    (3, 8): (1, W2, 1),
    (4, 5): (W, 1, 1),
    (4, 9): (1, W, 1),
    (5, 9): (W2, W2, 1),
    (6, 10): (0, 0, 1),
    (7, 8): (W, W, 1),
}


@pytest.fixture(scope="module")
def cusps():
    return load_cusps()


@pytest.fixture(scope="module")
def conics():
    return load_conics()


@pytest.fixture(scope="module")
def quartics():
    return load_quartics()


@pytest.fixture(scope="module")
def tangents(cusps):
    return cusp_tangent_lines(cusps)


# ---- parameter domain and points --------------------------------------------


def test_excluded_parameter():
    assert excluded_parameter(0)
    assert excluded_parameter(1)
    assert excluded_parameter(W)
    assert excluded_parameter(W2)
    assert not excluded_parameter(2)
    assert not excluded_parameter(-1)
    assert not excluded_parameter(Fraction(1, 2))


def test_proj_point_normalization_and_equality():
    p = ProjPoint((2, 4, 6))
    q = ProjPoint((1, 2, 3))
    assert p == q
    assert hash(p) == hash(q)
    assert p.text() == "(1 : 2 : 3)"
    r = ProjPoint((0, 5, 10))
    assert r == ProjPoint((0, 1, 2))
    with pytest.raises(ValueError):
        ProjPoint((0, 0, 0))


def test_proj_point_specialize_checks_parameter(cusps):
    p = cusps[0]
    assert p.specialize(2) == ProjPoint((2, 1, 1))
    with pytest.raises(PlaneError):
        p.specialize(1)
    with pytest.raises(PlaneError):
        p.specialize(W)


def test_collinear():
    assert collinear(ProjPoint((1, 0, 0)), ProjPoint((0, 1, 0)), ProjPoint((1, 1, 0)))
    assert not collinear(
        ProjPoint((1, 0, 0)), ProjPoint((0, 1, 0)), ProjPoint((0, 0, 1))
    )


def test_cusp_coordinates(cusps):
    assert len(cusps) == 9
    assert cusps[0].specialize(3) == ProjPoint((3, 1, 1))
    assert cusps[1].specialize(3) == ProjPoint((1, 3, 1))
    assert cusps[3].specialize(2) == ProjPoint((2, W, W2))
    assert cusps[8].specialize(2) == ProjPoint((W2, W, 2))


# ---- the two-fold points of the sextic ---------------------------------------


def test_sextic_has_double_points_at_all_nine(cusps):
    sext = cuspidal_sextic()
    assert sext.degree == 6
    for p in cusps:
        assert multiplicity_at(sext, p) == 2


def test_sextic_tangent_cone_is_a_squared_line(cusps, tangents):
    sext = cuspidal_sextic()
    for p, line in zip(cusps, tangents):
        cone = tangent_cone(sext, p)
        lin = tangent_cone(line, p)
        assert cone.multiplicity == 2
        assert lin.multiplicity == 1
        assert proportional(cone.form, lin.form * lin.form)
        assert proportional(cone.repeated_part, lin.form)


def test_first_three_tangent_lines(tangents):
    assert tangents[0].text() == "y - z"
    assert tangents[1].text() == "x - z"
    assert tangents[2].text() == "x - y"


def test_tangent_cone_requires_incidence():
    sext = cuspidal_sextic()
    with pytest.raises(PlaneError):
        tangent_cone(sext, ProjPoint((1, 2, 3)))
    assert multiplicity_at(sext, ProjPoint((1, 2, 3))) == 0


def test_specialized_sextic_keeps_its_double_points(cusps):
    sext = cuspidal_sextic().specialize(2)
    for p in cusps:
        assert multiplicity_at(sext, p.specialize(2)) == 2
    with pytest.raises(PlaneError):
        cuspidal_sextic().specialize(W)


# ---- linear systems -----------------------------------------------------------


def test_line_through_two_points(cusps):
    line = line_through(cusps[0], cusps[1])
    assert line.degree == 1
    assert line.contains(cusps[0]) and line.contains(cusps[1])
    basis = linear_system(1, [(cusps[0], 1), (cusps[1], 1)])
    assert basis == [line]


def test_unique_cubic_through_the_nine_points(cusps):
    basis = linear_system(3, [(p, 1) for p in cusps])
    assert len(basis) == 1
    assert basis[0] == nine_point_cubic()
    for p in cusps:
        assert incidence(p, basis[0])


def test_quartics_through_the_nine_points_form_a_5_space(cusps):
    basis = linear_system(4, [(p, 1) for p in cusps])
    assert len(basis) == 6


def test_conic_through_six_points(cusps, conics):
    rec = conics_in_index_order(conics)[2]
    assert sorted(rec.indices) == [1, 2, 4, 5, 7, 8]
    pts = [(cusps[i - 1], 1) for i in sorted(rec.indices)]
    basis = linear_system(2, pts)
    assert basis == [rec.curve]
    x, y, z, lam = gens(PLANE_VARS)
    assert rec.curve == PlaneCurve(x * y - lam * z * z)


def test_each_quartic_is_pinned_by_its_multiplicities(cusps, quartics):
    for k in range(1, 10):
        conds = [(p, 3 if j == k else 1) for j, p in enumerate(cusps, start=1)]
        basis = linear_system(4, conds)
        assert len(basis) == 1
        assert basis[0] == quartics[k - 1]


def test_quartic_tangent_cone_contains_the_tangent_line_twice(
    cusps, quartics, tangents
):
    for p, q, line in zip(cusps, quartics, tangents):
        cone = tangent_cone(q, p)
        assert cone.multiplicity == 3
        lin = tangent_cone(line, p).form
        power, rest = linear_factor_power(cone.form, lin)
        assert power == 2
        assert not proportional(rest, lin)


def test_degree_seven_system_is_a_pencil(cusps):
    conds = [(cusps[0], 4)] + [(p, 2) for p in cusps[1:]]
    cert = linear_system_dimension(7, conds)
    assert cert.dimension == 2
    assert cert.specialized_dimensions == (2, 2, 2)


def test_degree_six_system_needs_witnesses(cusps):
    conds = [(p, 2) for p in cusps]
    cubic = nine_point_cubic()
    square = PlaneCurve(cubic.poly * cubic.poly)
    cert = linear_system_dimension(
        6, conds, witnesses=(cuspidal_sextic(), square)
    )
    assert cert.dimension == 2
    with pytest.raises(PlaneError):
        linear_system_dimension(6, conds)


# ---- the twelve conics ---------------------------------------------------------


def test_find_conics_recovers_the_fixture(cusps, conics):
    records = find_conics(cusps)
    assert len(records) == 12
    found = conics_in_index_order(records)
    fixture = conics_in_index_order(conics)
    for a, b in zip(found, fixture):
        assert a.indices == b.indices
        assert a.curve == b.curve


def test_find_conics_rejects_collinear_points():
    pts = [
        ProjPoint((1, 0, 0)),
        ProjPoint((0, 1, 0)),
        ProjPoint((1, 1, 0)),
        ProjPoint((0, 0, 1)),
        ProjPoint((1, 1, 1)),
        ProjPoint((1, 2, 3)),
    ]
    with pytest.raises(PlaneError, match="collinear"):
        find_conics(pts)


def test_conics_are_smooth_and_cover_evenly(cusps, conics):
    for rec in conics:
        assert conic_is_smooth(rec.curve)
        assert len(rec.indices) == 6
    cfg = configuration_check(cusps, [rec.curve for rec in conics])
    assert cfg.text() == "(9_8, 12_6)"


def test_conics_through_one_point_form_a_self_dual_configuration(cusps, conics):
    through = [rec.curve for rec in conics if 1 in rec.indices]
    assert len(through) == 8
    cfg = configuration_check(cusps[1:], through)
    assert cfg.text() == "(8_5, 8_5)"


def test_configuration_check_names_the_offender(cusps, conics):
    curves = [rec.curve for rec in conics][:3]
    with pytest.raises(ConfigurationError):
        configuration_check(cusps, curves)


# ---- pairwise intersections ----------------------------------------------------


def test_conic_census_discovers_the_twelve_points(cusps, conics):
    curves = [rec.curve for rec in conics]
    census = pairwise_intersection_census(curves, 2, seed_points=cusps)
    assert census.multiplicity_profile() == {8: 9, 2: 12}
    assert census.residual_double_points == 0
    extras = census.extra_points([p.specialize(2) for p in cusps])
    assert set(extras) == {ProjPoint(c) for c in SPECIAL_PAIRS.values()}
    assert set(extras.values()) == {2}


def test_special_pairs_share_three_points_each(cusps, conics):
    curves = [rec.curve for rec in conics]
    census = pairwise_intersection_census(curves, 2, seed_points=cusps)
    by_pair = {(rec.i, rec.j): rec for rec in census.pairs}
    cusp_vals = [p.specialize(2) for p in cusps]
    for (i, j), rec in by_pair.items():
        shared = conics[i].indices & conics[j].indices
        assert len(rec.points) == 4
        assert rec.residual == 0
        pts = {p for p, _ in rec.points}
        if (i, j) in SPECIAL_PAIRS:
            assert len(shared) == 3
            expected = {cusp_vals[k - 1] for k in shared}
            expected.add(ProjPoint(SPECIAL_PAIRS[(i, j)]))
            assert pts == expected
        else:
            assert len(shared) == 4
            assert pts == {cusp_vals[k - 1] for k in shared}


def test_census_requires_seed_points(conics):
    curves = [rec.curve for rec in conics]
    with pytest.raises(PlaneError, match="seed"):
        pairwise_intersection_census(curves, 2)


def test_census_rejects_tangent_conics():
    x, y, z, lam = gens(PLANE_VARS)
    f = PlaneCurve(x * y - z * z)
    g = PlaneCurve(x * x + x * y - z * z)
    seed = ProjPoint((0, 1, 0))
    with pytest.raises(PlaneError, match="tangent"):
        pairwise_intersection_census([f, g], 2, seed_points=[seed])


def test_census_rejects_a_tangent_line():
    x, y, z, lam = gens(PLANE_VARS)
    conic = PlaneCurve(x * y - z * z)
    line = PlaneCurve(y)
    with pytest.raises(PlaneError, match="tangent"):
        pairwise_intersection_census([line, conic], 2)


def test_census_counts_conjugate_pairs_without_coordinates():
    x, y, z, lam = gens(PLANE_VARS)
    conic = PlaneCurve(x * x + y * y - 2 * z * z)
    line = PlaneCurve(z)
    census = pairwise_intersection_census([line, conic], 2)
    assert census.named == {}
    assert census.residual_double_points == 2
    assert census.multiplicity_profile() == {2: 2}


def test_full_arrangement_census(cusps, conics, tangents):
    curves = [rec.curve for rec in conics] + list(tangents)
    for lam in (2, 3):
        census = pairwise_intersection_census(curves, lam, seed_points=cusps)
        assert census.multiplicity_profile() == {9: 9, 5: 12, 2: 72}


# ---- collinearity of the extra points ------------------------------------------


def test_aligned_extra_points_all_nine(cusps, conics, tangents):
    for k in range(1, 10):
        al = aligned_extra_points(conics, cusps, k, 2)
        assert isinstance(al, AlignedPoints)
        assert len(al.points) == 4
        assert al.line == tangents[k - 1]


def test_aligned_extra_points_for_the_first_point(cusps, conics):
    al = aligned_extra_points(conics, cusps, 1, 2)
    assert set(al.points) == {
        ProjPoint((1, 1, 1)),
        ProjPoint((1, 0, 0)),
        ProjPoint((W, 1, 1)),
        ProjPoint((W2, 1, 1)),
    }
    assert al.line.text() == "y - z"


# ---- partitions and reference configurations ------------------------------------


def test_sextic_triples_partition_is_unique(conics):
    parts = sextic_triples(conics)
    assert parts == [((0, 1, 11), (2, 6, 10), (3, 7, 8), (4, 5, 9))]


def test_triple_members_pair_up_at_special_points(conics):
    (part,) = sextic_triples(conics)
    for triple in part:
        for a in triple:
            for b in triple:
                if a < b:
                    assert (a, b) in SPECIAL_PAIRS


def test_inflection_configuration():
    pts = standard_inflection_points()
    lines = inflection_lines()
    assert len(pts) == 9
    assert len(lines) == 12
    cfg = configuration_check(pts, lines)
    assert cfg.text() == "(9_4, 12_3)"


def test_twelve_points_against_tangent_lines(tangents):
    pts = [ProjPoint(c) for c in SPECIAL_PAIRS.values()]
    lines = [
        t if t.is_specialized() else t.specialize(2) for t in tangents
    ]
    cfg = configuration_check(pts, lines)
    assert cfg.text() == "(12_3, 9_4)"


# ---- curve plumbing -------------------------------------------------------------


def test_curve_text_round_trip():
    sext = cuspidal_sextic()
    again = PlaneCurve(poly_from_text(sext.text(), PLANE_VARS))
    assert again == sext


def test_proportional_and_factor_power():
    x, y, z, lam = gens(PLANE_VARS)
    assert proportional(x + y, 2 * x + 2 * y)
    assert not proportional(x + y, x - y)
    power, rest = linear_factor_power((x + y) * (x + y) * (x - y), x + y)
    assert power == 2
    assert proportional(rest, x - y)


def test_linear_system_rejects_bad_degree(cusps):
    with pytest.raises(PlaneError):
        linear_system(0, [(cusps[0], 1)])
