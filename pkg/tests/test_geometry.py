from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from kphi_utilities.kphi_complex import from_facets, skeleton
from kphi_utilities.kphi_errors import (DegenerateConfigurationError, NotACycleError, NotDisjointError,
                                        PreconditionError)
from kphi_utilities.kphi_gadgets import GadgetParams, build_F
from kphi_utilities.kphi_geometry import (PLCycle, RationalCoordMap, affine_dependence, certify_coords,
                                          check_extension_parity, lk2, moment_coords, moment_crossing_oracle,
                                          pair_crossing, seeded_coords, simplices_intersect, sphere_crossing_counts,
                                          to_fraction, van_kampen_number)
from kphi_utilities.kphi_verify import complete_graph, full_simplex, path_graph, triangle_pair

CROSSING = ([(0, 0), (2, 2)], [(0, 2), (2, 0)])
APART = ([(0, 0), (2, 2)], [(3, 0), (5, 1)])


def transform(points, matrix, shift):
    (a, b), (c, d) = matrix
    return [(a * x + b * y + shift[0], c * x + d * y + shift[1]) for x, y in points]


def test_segments_cross():
    assert pair_crossing(*CROSSING) == 1
    assert pair_crossing(*APART) == 0


def test_point_in_segment():
    assert pair_crossing([(0,), (2,)], [(1,)]) == 1
    assert pair_crossing([(0,), (2,)], [(3,)]) == 0


def test_triangle_and_segment_in_R3():
    triangle = [(0, 0, 0), (4, 0, 0), (0, 4, 0)]
    assert pair_crossing(triangle, [(1, 1, -1), (1, 1, 1)]) == 1
    assert pair_crossing(triangle, [(5, 5, -1), (5, 5, 1)]) == 0


def test_crossing_is_symmetric():
    sigma, tau = CROSSING
    assert pair_crossing(tau, sigma) == pair_crossing(sigma, tau)


def test_zero_coefficient_is_degenerate():
    with pytest.raises(DegenerateConfigurationError):
        pair_crossing([(0, 0), (2, 0)], [(1, 0), (1, 1)])


def test_rank_deficiency_is_degenerate():
    with pytest.raises(DegenerateConfigurationError):
        pair_crossing([(0, 0), (1, 0)], [(2, 0), (3, 0)])


def test_wrong_point_count():
    with pytest.raises(PreconditionError):
        pair_crossing([(0, 0), (1, 0)], [(2, 0)])


def test_floats_rejected():
    with pytest.raises(PreconditionError):
        to_fraction(0.5)
    assert to_fraction('1/3') == Fraction(1, 3)


@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4), st.integers(-50, 50), st.integers(-50, 50))
def test_crossing_affine_invariant(entries, dx, dy):
    a, b, c, d = entries
    assume(a * d - b * c != 0)
    matrix = ((a, b), (c, d))
    for sigma, tau in (CROSSING, APART):
        moved = pair_crossing(transform(sigma, matrix, (dx, dy)), transform(tau, matrix, (dx, dy)))
        assert moved == pair_crossing(sigma, tau)


def test_affine_dependence_sums_to_zero():
    points = [(Fraction(0), Fraction(0)), (Fraction(2), Fraction(2)), (Fraction(0), Fraction(2)), (Fraction(2), Fraction(0))]
    coeffs = affine_dependence(points)
    assert sum(coeffs) == 0
    for i in range(2):
        assert sum(c * p[i] for c, p in zip(coeffs, points)) == 0


def test_moment_coords(K5):
    coords = moment_coords(K5, 3)
    assert coords[1] == (2, 4, 8)
    assert coords.certificate.method == 'moment'


def test_moment_coords_errors(K5):
    with pytest.raises(DegenerateConfigurationError):
        moment_coords(K5, 2, params=[1, 2, 3, 4, 4])
    with pytest.raises(PreconditionError):
        moment_coords(K5, 0)


def test_certify_K5(K5):
    assert certify_coords(K5, moment_coords(K5, 2)) == 15 + 30


def test_certify_rejects_collinear(K5):
    coords = RationalCoordMap.from_points([(0, 0), (1, 0), (2, 0), (0, 1), (5, 7)])
    with pytest.raises(DegenerateConfigurationError):
        certify_coords(K5, coords)


def test_seeded_coords_reproducible(K5):
    first = seeded_coords(K5, 2, seed=11)
    second = seeded_coords(K5, 2, seed=11)
    assert first.points == second.points
    assert first.certificate.seed == 11
    assert first.certificate.sub_seed is not None
    assert first.certificate.pairs_checked == 45


def test_seeded_coords_errors(K5):
    with pytest.raises(PreconditionError):
        seeded_coords(K5, 0, seed=0)
    with pytest.raises(PreconditionError):
        seeded_coords(K5, 2, seed=-1)


def test_K5_moment(K5):
    result = van_kampen_number(K5, 2, moment_coords(K5, 2))
    assert result.v == 1
    assert result.crossings == 5
    assert result.pairs_checked == 15
    assert len(result.ledger) == 5


def test_dimension_mismatch(K5):
    with pytest.raises(PreconditionError):
        van_kampen_number(K5, 3, moment_coords(K5, 2))


@pytest.mark.parametrize('k, ell', [(2, 1), (3, 1), (4, 2)])
def test_F_moment(k, ell):
    params = GadgetParams(k, ell)
    F = build_F(params)
    assert van_kampen_number(F, params.d, moment_coords(F, params.d)).v == 1


@pytest.mark.parametrize('k, ell', [(2, 1), (4, 2)])
@pytest.mark.parametrize('seed', range(5))
def test_F_seeded(k, ell, seed):
    params = GadgetParams(k, ell)
    F = build_F(params)
    assert van_kampen_number(F, params.d, seeded_coords(F, params.d, seed)).v == 1


@pytest.mark.parametrize('seed', range(20))
def test_map_independence(K5, F21, seed):
    assert van_kampen_number(K5, 2, seeded_coords(K5, 2, seed)).v == van_kampen_number(K5, 2, moment_coords(K5, 2)).v
    assert van_kampen_number(F21, 4, seeded_coords(F21, 4, seed)).v == 1


@pytest.mark.parametrize('seed', range(20))
def test_map_independence_F31(F31, seed):
    assert van_kampen_number(F31, 5, seeded_coords(F31, 5, seed)).v == 1


@pytest.mark.parametrize('K, d', [
    (complete_graph(5), 2),
    (complete_graph(4), 2),
    (complete_graph(6), 3),
    (path_graph(3), 1),
    (skeleton(full_simplex(6), 2), 4),
    (build_F(GadgetParams(2, 1)), 4),
    (build_F(GadgetParams(3, 1)), 5),
])
def test_oracle_matches_geometry(K, d):
    assert moment_crossing_oracle(K, d) == van_kampen_number(K, d, moment_coords(K, d)).v


def test_van_kampen_flores_complex():
    K = skeleton(full_simplex(6), 2)
    assert van_kampen_number(K, 4, moment_coords(K, 4)).v == 1
    assert check_extension_parity(K, 4).holds


@pytest.mark.parametrize('k, ell', [(2, 1), (3, 1), (4, 2)])
def test_parity_holds_for_F(k, ell):
    params = GadgetParams(k, ell)
    assert check_extension_parity(build_F(params), params.d).holds


def test_parity_holds_for_K5(K5):
    report = check_extension_parity(K5, 2)
    assert report.holds
    assert report.witness is None


def test_parity_fails_for_path(path3):
    report = check_extension_parity(path3, 1)
    assert not report.holds
    w = report.witness
    assert (w.sigma, w.tau) == ((0,), (1,))
    assert (w.sigma_extensions, w.tau_extensions) == (0, 1)


def test_parity_needs_positive_dimension(K5):
    with pytest.raises(PreconditionError):
        check_extension_parity(K5, 0)


def test_simplices_intersect():
    triangle = [(0, 0), (4, 0), (0, 4)]
    assert simplices_intersect(triangle, [(1, 1)])
    assert simplices_intersect(triangle, [(4, 0), (6, 6)])
    assert not simplices_intersect(triangle, [(5, 5), (6, 1)])
    assert simplices_intersect(triangle, [(-1, 1), (1, 1)])


def test_linked_triangles():
    _, A, B = triangle_pair()
    assert lk2(A, B).value == 1
    assert lk2(B, A).value == 1


def test_unlinked_triangles():
    _, A, B = triangle_pair((100, 0, 0))
    assert lk2(A, B).value == 0
    assert lk2(B, A).value == 0


def test_degenerate_apex_is_redrawn():
    _, A, B = triangle_pair()
    result = lk2(A, B, apex=(2, 0, 0))
    assert result.value == 1
    assert result.attempts >= 2


def test_explicit_apex_is_used():
    _, A, B = triangle_pair()
    result = lk2(A, B, apex=('1/3', '1/7', 11))
    assert result.attempts == 1
    assert result.apex == (Fraction(1, 3), Fraction(1, 7), Fraction(11))


def test_intersecting_cycles():
    _, A, B = triangle_pair((Fraction(1, 2), 1, 0))
    with pytest.raises(NotDisjointError):
        lk2(A, B)


def test_linking_dimension_check():
    K = from_facets(['a', 'b', 'c'], [(0, 1), (1, 2), (0, 2)], {'A': [(0, 1), (1, 2), (0, 2)]})
    coords = RationalCoordMap.from_points([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    A = PLCycle.from_mark(K, 'A', coords)
    with pytest.raises(PreconditionError):
        lk2(A, A)


def test_open_path_is_not_a_cycle(path3):
    coords = RationalCoordMap.from_points([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(NotACycleError):
        PLCycle(((0, 1), (1, 2)), coords)
    with pytest.raises(NotACycleError):
        PLCycle(((0,),), coords)


def test_moment_linking_of_K6():
    K = complete_graph(6)
    alternating = from_facets(K.labels_of(tuple(range(6))), K.facets,
                              {'A': [(0, 2), (2, 4), (0, 4)], 'B': [(1, 3), (3, 5), (1, 5)],
                               'C': [(0, 1), (1, 2), (0, 2)], 'D': [(3, 4), (4, 5), (3, 5)]})
    coords = moment_coords(alternating, 3)
    assert lk2(PLCycle.from_mark(alternating, 'A', coords), PLCycle.from_mark(alternating, 'B', coords)).value == 1
    assert lk2(PLCycle.from_mark(alternating, 'C', coords), PLCycle.from_mark(alternating, 'D', coords)).value == 0


@settings(max_examples=5, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_sphere_crossings_match_linking(seed, F21):
    coords = moment_coords(F21, 4)
    result = van_kampen_number(F21, 4, coords)
    counts = sphere_crossing_counts(result, F21)
    assert sorted(counts) == [1, 2, 3]
    for j, count in counts.items():
        A = PLCycle.from_mark(F21, f'dsigma_{j}', coords)
        B = PLCycle.from_mark(F21, f'S_{j}', coords)
        assert lk2(A, B, seed=seed).value == count % 2
