import pytest

from kphi_utilities.kphi_complex import from_facets
from kphi_utilities.kphi_gadgets import GadgetParams, build_F, build_torus
from kphi_utilities.kphi_verify import complete_graph, path_graph, simplex_boundary


@pytest.fixture(scope='session')
def params21():
    return GadgetParams(2, 1)


@pytest.fixture(scope='session')
def F21(params21):
    return build_F(params21)


@pytest.fixture(scope='session')
def T1():
    return build_torus(1)


@pytest.fixture
def K5():
    return complete_graph(5)


@pytest.fixture
def path3():
    return path_graph(3)


@pytest.fixture
def triangle_boundary():
    return simplex_boundary(2)


@pytest.fixture
def tetrahedron_boundary():
    return simplex_boundary(3)


@pytest.fixture
def full_triangle():
    return from_facets(['a', 'b', 'c'], [(0, 1, 2)], name='triangle')


@pytest.fixture
def octahedron():
    """Boundary of the cross-polytope: a 2-sphere on 6 vertices."""
    facets = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    return from_facets([str(i) for i in range(6)], facets, name='octahedron')


DIMACS_PHI_NEG = 'c x1 and not x1\np cnf 1 2\n1 0\n-1 0\n'

DIMACS_TWO_CONFLICT = 'p cnf 3 2\n1 2 3 0\n-1 2 -3 0\n'


@pytest.fixture
def phi_neg_file(tmp_path):
    path = tmp_path / 'phi_neg.cnf'
    path.write_text(DIMACS_PHI_NEG)
    return str(path)


@pytest.fixture
def two_conflict_file(tmp_path):
    path = tmp_path / 'two_conflict.cnf'
    path.write_text(DIMACS_TWO_CONFLICT)
    return str(path)


@pytest.fixture(scope='session')
def F31():
    return build_F(GadgetParams(3, 1))
