"""
Built-in fixture suites behind `kphi verify`. Every check returns a dict with keys suite, name,
passed and detail, so the suites run without external fixture files.
"""
import logging
from fractions import Fraction
from itertools import combinations, product

from .kphi_cnf import PHI_NEG, CnfFormula, brute_force_sat, conflict_pairs, normalize, parse_dimacs, write_dimacs
from .kphi_complex import from_facets, skeleton, subcomplex
from .kphi_delprod import check_free_involution, deleted_product
from .kphi_errors import KphiError
from .kphi_gadgets import (GadgetParams, build_F, build_gadget, build_phi_neg, build_reduction, build_torus,
                           check_gadget_marks, reduction_face_count, sigma_vertices, torus_mark_intersection)
from .kphi_geometry import (PLCycle, RationalCoordMap, check_extension_parity, lk2, moment_coords,
                            moment_crossing_oracle, seeded_coords, van_kampen_number)
from .kphi_gf2 import simplicial_betti

logger = logging.getLogger(__name__)

SUITES = ('gadgets', 'torus', 'vk', 'cnf', 'reduction', 'delprod', 'linking')

TWO_CONFLICT = CnfFormula.from_ints(3, [[1, 2, 3], [-1, 2, -3]])
FULL_3CNF = CnfFormula.from_ints(3, [[a * 1, b * 2, c * 3] for a, b, c in product((1, -1), repeat=3)])

LINKED_TRIANGLES = [(2, 0, 0), (-1, 2, 0), (-1, -2, 0), (0, 0, 2), (0, 0, -2), (5, 1, 1)]


def complete_graph(n):
    return from_facets([str(i) for i in range(n)], combinations(range(n), 2), name=f'K{n}')


def full_simplex(m, name=None):
    return from_facets([str(i) for i in range(m + 1)], [range(m + 1)], name=name or f'simplex{m}')


def simplex_boundary(m):
    """Boundary of the m-simplex."""
    return skeleton(full_simplex(m), m - 1)


def path_graph(n):
    return from_facets([chr(ord('u') + i) for i in range(n)], [(i, i + 1) for i in range(n - 1)], name=f'path{n}')


def triangle_pair(translate=(0, 0, 0)):
    """Two triangle boundaries in R^3, the second translated; linked when translate is 0."""
    K = from_facets([f'a{i}' for i in range(3)] + [f'b{i}' for i in range(3)],
                    [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)],
                    {'A': [(0, 1), (1, 2), (0, 2)], 'B': [(3, 4), (4, 5), (3, 5)]}, name='triangles')
    points = [p if i < 3 else tuple(x + dx for x, dx in zip(p, translate)) for i, p in enumerate(LINKED_TRIANGLES)]
    coords = RationalCoordMap.from_points(points)
    return K, PLCycle.from_mark(K, 'A', coords), PLCycle.from_mark(K, 'B', coords)


def _check(suite, name, fn):
    try:
        passed, detail = fn()
    except KphiError as err:
        passed, detail = False, f'{type(err).__name__}: {err}'
    logger.info('%s/%s: %s', suite, name, 'pass' if passed else 'FAIL')
    return {'suite': suite, 'name': name, 'passed': bool(passed), 'detail': detail}


def _expect(value, expected):
    return value == expected, f'got {value}, expected {expected}'


def gadgets_suite():
    p21, p42 = GadgetParams(2, 1), GadgetParams(4, 2)
    F21 = build_F(p21)
    checks = [
        ('F(2,1) f-vector', lambda: _expect(F21.f_vector, [7, 21, 35])),
        ('G(2,1) width 3 f-vector', lambda: _expect(build_gadget(p21, 3).f_vector, [7, 21, 32])),
        ('G(2,1) width 1 f-vector', lambda: _expect(build_gadget(p21, 1).f_vector, [7, 21, 34])),
        ('S_j of F(2,1) are 2-spheres',
         lambda: _expect([simplicial_betti(subcomplex(F21, f'S_{j}')) for j in (1, 2, 3)], [[1, 0, 1]] * 3)),
        ('S_j of F(4,2) are 4-spheres',
         lambda: _expect([simplicial_betti(subcomplex(build_F(p42), f'S_{j}')) for j in (1, 2, 3)],
                         [[1, 0, 0, 0, 1]] * 3)),
        ('sigma_j maximal in F(2,1)',
         lambda: _expect(all(sigma_vertices(p21, j) in F21.facets for j in (1, 2, 3)), True)),
        ('F(2,1) marks', lambda: _expect(all(check_gadget_marks(F21, p21).values()), True)),
        ('G(2,1) marks', lambda: _expect(all(check_gadget_marks(build_gadget(p21, 3), p21).values()), True)),
    ]
    return [_check('gadgets', name, fn) for name, fn in checks]


def torus_suite():
    T1 = build_torus(1)
    checks = [
        ('T(1) f-vector', lambda: _expect(T1.f_vector, [9, 27, 18])),
        ('T(1) betti', lambda: _expect(simplicial_betti(T1), [1, 2, 1])),
        ('T(1) meridian and parallel meet in one vertex', lambda: _expect(torus_mark_intersection(T1), [(0,)])),
        ('T(2) betti', lambda: _expect(simplicial_betti(build_torus(2)), [1, 0, 2, 0, 1])),
    ]
    return [_check('torus', name, fn) for name, fn in checks]


def vk_suite(seeds=range(5)):
    F21 = build_F(GadgetParams(2, 1))
    F31 = build_F(GadgetParams(3, 1))
    K5 = complete_graph(5)

    def vk_moment(K, d):
        return van_kampen_number(K, d, moment_coords(K, d)).v

    def vk_seeded(K, d):
        return [van_kampen_number(K, d, seeded_coords(K, d, seed)).v for seed in seeds]

    def oracle_agrees():
        fixtures = [(F21, 4), (F31, 5), (K5, 2), (complete_graph(4), 2), (path_graph(3), 1),
                    (skeleton(full_simplex(6), 2), 4), (simplex_boundary(3), 2)]
        values = [(vk_moment(K, d), moment_crossing_oracle(K, d)) for K, d in fixtures]
        return all(a == b for a, b in values), f'geometric vs oracle: {values}'

    def path_witness():
        report = check_extension_parity(path_graph(3), 1)
        w = report.witness
        return (not report.holds and w is not None and (w.sigma_extensions, w.tau_extensions) == (0, 1),
                f'holds={report.holds}, witness={w}')

    checks = [
        ('v(F(2,1)) moment', lambda: _expect(vk_moment(F21, 4), 1)),
        ('v(F(3,1)) moment', lambda: _expect(vk_moment(F31, 5), 1)),
        ('v(F(2,1)) seeded', lambda: _expect(vk_seeded(F21, 4), [1] * len(seeds))),
        ('v(K5) moment', lambda: _expect(vk_moment(K5, 2), 1)),
        ('v(K5) seeded', lambda: _expect(vk_seeded(K5, 2), [1] * len(seeds))),
        ('parity F(2,1) d=4', lambda: _expect(check_extension_parity(F21, 4).holds, True)),
        ('parity F(3,1) d=5', lambda: _expect(check_extension_parity(F31, 5).holds, True)),
        ('parity K5 d=2', lambda: _expect(check_extension_parity(K5, 2).holds, True)),
        ('parity path d=1 fails', path_witness),
        ('moment oracle', oracle_agrees),
    ]
    return [_check('vk', name, fn) for name, fn in checks]


def cnf_suite():
    tautology = CnfFormula.from_ints(2, [[1, -1, 2], [2]])

    def round_trip():
        phi = FULL_3CNF
        return parse_dimacs(write_dimacs(phi, ['round trip'])) == phi, 'parse(write(phi)) == phi'

    checks = [
        ('phi_neg UNSAT', lambda: _expect(brute_force_sat(PHI_NEG).verdict, 'UNSAT')),
        ('full 3-variable formula UNSAT', lambda: _expect(brute_force_sat(FULL_3CNF).verdict, 'UNSAT')),
        ('two-conflict formula SAT', lambda: _expect(brute_force_sat(TWO_CONFLICT).verdict, 'SAT')),
        ('DIMACS round trip', round_trip),
        ('tautological clause removed', lambda: _expect(normalize(tautology).to_ints(), [[2]])),
        ('two-conflict formula has 2 conflicts', lambda: _expect(len(conflict_pairs(TWO_CONFLICT)), 2)),
    ]
    return [_check('cnf', name, fn) for name, fn in checks]


def reduction_suite():
    params = GadgetParams(2, 1)

    def phi_neg_marks():
        K = build_phi_neg(params)
        (pair,) = conflict_pairs(PHI_NEG)
        same_a = K.marked_faces(f'g{pair.q[0]}/dsigma_{pair.q[1]}') == K.marked_faces(f't{pair.tag}/a')
        same_b = K.marked_faces(f'g{pair.r[0]}/dsigma_{pair.r[1]}') == K.marked_faces(f't{pair.tag}/b')
        return same_a and same_b, f'meridian glued: {same_a}, parallel glued: {same_b}'

    def inclusion_exclusion():
        K = build_reduction(TWO_CONFLICT, params)
        return _expect(len(K), reduction_face_count(TWO_CONFLICT, params))

    checks = [
        ('K(phi_neg) f-vector', lambda: _expect(build_phi_neg(params).f_vector, [17, 63, 86])),
        ('K(phi_neg) dimension', lambda: _expect(build_phi_neg(params).dim, 2)),
        ('K(phi_neg) glued marks coincide', phi_neg_marks),
        ('two-conflict face count', lambda: _expect(len(build_reduction(TWO_CONFLICT, params)), 205)),
        ('inclusion-exclusion face count', inclusion_exclusion),
    ]
    return [_check('reduction', name, fn) for name, fn in checks]


def delprod_suite():
    two_points = from_facets(['a', 'b'], [], name='two points')

    def involution_free():
        reports = [check_free_involution(deleted_product(K))
                   for K in (simplex_boundary(2), simplex_boundary(3), two_points, complete_graph(4))]
        return all(r.free and r.commutes_with_boundary for r in reports), f'{len(reports)} fixtures'

    checks = [
        ('boundary of triangle: 12 cells', lambda: _expect(deleted_product(simplex_boundary(2)).n_cells, 12)),
        ('boundary of triangle: betti', lambda: _expect(deleted_product(simplex_boundary(2)).betti(), [1, 1])),
        ('boundary of tetrahedron: betti', lambda: _expect(deleted_product(simplex_boundary(3)).betti(), [1, 0, 1])),
        ('two points: betti', lambda: _expect(deleted_product(two_points).betti(), [2])),
        ('free involution', involution_free),
    ]
    return [_check('delprod', name, fn) for name, fn in checks]


def linking_suite():
    def value(translate, swap=False):
        _, A, B = triangle_pair(translate)
        return (lk2(B, A) if swap else lk2(A, B)).value

    far = (100, 0, 0)
    checks = [
        ('linked triangles', lambda: _expect(value((0, 0, 0)), 1)),
        ('translated triangles', lambda: _expect(value(far), 0)),
        ('symmetry, linked', lambda: _expect(value((0, 0, 0), swap=True), 1)),
        ('symmetry, translated', lambda: _expect(value(far, swap=True), 0)),
        ('rational apex', lambda: _expect(lk2(*triangle_pair()[1:], apex=(Fraction(1, 3), Fraction(1, 7), 11)).value, 1)),
    ]
    return [_check('linking', name, fn) for name, fn in checks]


_RUNNERS = {
    'gadgets': gadgets_suite,
    'torus': torus_suite,
    'vk': vk_suite,
    'cnf': cnf_suite,
    'reduction': reduction_suite,
    'delprod': delprod_suite,
    'linking': linking_suite,
}


def run_suite(suite='all'):
    """
    Run one fixture suite, or every suite for 'all'.

    Returns
    -------
    list[dict]
    """
    names = SUITES if suite == 'all' else (suite,)
    results = []
    for name in names:
        results.extend(_RUNNERS[name]())
    return results
