"""
Gadget complexes: the auxiliary complex F, clause gadgets G, the staircase torus, and the reduction K(Phi).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, List

from .kphi_cnf import CnfFormula, PHI_NEG, conflict_pairs, normalize
from .kphi_complex import (Identification, SimplicialComplex, boundary_faces, closure, disjoint_union, from_facets,
                           glue, relabel, remove_open_simplices, subcomplex)
from .kphi_errors import InvariantError, PreconditionError
from .kphi_gf2 import boundary_complex, betti_mod2

logger = logging.getLogger(__name__)

P_VERTEX = 0


@dataclass(frozen=True)
class GadgetParams:
    """
    Parameters (k, ell) with 0 <= ell < k and k >= 2; the ambient dimension is d = k + ell + 1.
    """
    k: int
    ell: int

    def __post_init__(self):
        if self.k < 2:
            raise PreconditionError(f'k must be at least 2, got {self.k}')
        if not 0 <= self.ell < self.k:
            raise PreconditionError(f'need 0 <= ell < k, got k={self.k}, ell={self.ell}')

    @property
    def d(self) -> int:
        return self.k + self.ell + 1

    @property
    def max_width(self) -> int:
        """Number of simplices sigma_j that exist: min(3, ell + 2)."""
        return min(3, self.ell + 2)

    @property
    def theorem_regime(self) -> bool:
        """k = 2 ell, so that d = 3k/2 + 1."""
        return self.k == 2 * self.ell

    def check_theorem_regime(self) -> bool:
        if not self.theorem_regime:
            logger.warning('k=%d, ell=%d is outside the regime k = 2*ell (d = 3k/2 + 1)', self.k, self.ell)
        return self.theorem_regime


def sigma_vertices(params: GadgetParams, j: int):
    """Vertex ids of sigma_j: p together with [ell + 2] minus j."""
    if not 1 <= j <= params.max_width:
        raise PreconditionError(f'sigma_{j} does not exist for ell={params.ell}')
    return (P_VERTEX,) + tuple(i for i in range(1, params.ell + 3) if i != j)


def build_F(params: GadgetParams) -> SimplicialComplex:
    """
    Complete k-skeleton on [k + ell + 3] plus every simplex of dimension at most ell + 1 containing p.

    Vertex 0 is p; vertex i is the numeric vertex i. Marks: sigma_j, dsigma_j (its boundary) and
    S_j (k-simplices on [k + ell + 3] missing sigma_j) for j <= min(3, ell + 2), and p.

    Parameters
    ----------
    params : GadgetParams

    Returns
    -------
    SimplicialComplex
    """
    k, ell = params.k, params.ell
    numeric = range(1, k + ell + 4)
    facets = list(combinations(numeric, k + 1))
    facets.extend((P_VERTEX,) + c for c in combinations(numeric, ell + 1))

    marks = {'p': [(P_VERTEX,)]}
    for j in range(1, params.max_width + 1):
        sigma = sigma_vertices(params, j)
        outside = [v for v in numeric if v not in sigma]
        marks[f'sigma_{j}'] = [sigma]
        marks[f'dsigma_{j}'] = boundary_faces(sigma)
        marks[f'S_{j}'] = list(combinations(outside, k + 1))

    labels = ['p'] + [str(i) for i in numeric]
    F = from_facets(labels, facets, marks, name=f'F({k},{ell})')
    logger.debug('built %s with f-vector %s', F.name, F.f_vector)
    return F


def build_gadget(params: GadgetParams, width=3) -> SimplicialComplex:
    """
    Clause gadget: F with the open simplices sigma_1, ..., sigma_width removed.
    """
    if not 1 <= width <= params.max_width:
        raise PreconditionError(f'gadget width must be in 1..{params.max_width}, got {width}')
    F = build_F(params)
    removed = [sigma_vertices(params, j) for j in range(1, width + 1)]
    facet_set = set(F.facets)
    for j, sigma in enumerate(removed, start=1):
        if sigma not in facet_set:
            raise InvariantError(f'sigma_{j} is not maximal in {F.name}')
    return remove_open_simplices(F, removed, name=f'G({params.k},{params.ell};{width})')


def torus_vertex(ell: int, u: int, v: int) -> int:
    return u * (ell + 2) + v


def build_torus(ell: int) -> SimplicialComplex:
    """
    Staircase triangulation of the product of two copies of the boundary of the (ell+1)-simplex.

    Vertex (u, v) has id u*(ell+2) + v and label 'x{u}y{v}'. For each pair of ell-faces A, B the
    product A x B is cut into the C(2 ell, ell) monotone lattice paths from (min A, min B) to
    (max A, max B). Marks: a = boundary x {0}, b = {0} x boundary, meeting in the single vertex (0, 0).

    Parameters
    ----------
    ell : int, at least 1

    Returns
    -------
    SimplicialComplex
    """
    if ell < 1:
        raise PreconditionError(f'torus needs ell >= 1, got {ell}')
    n = ell + 2
    sphere = list(combinations(range(n), ell + 1))

    facets = []
    for A in sphere:
        for B in sphere:
            for ups in combinations(range(2 * ell), ell):
                i = j = 0
                chain = [torus_vertex(ell, A[0], B[0])]
                for step in range(2 * ell):
                    if step in ups:
                        j += 1
                    else:
                        i += 1
                    chain.append(torus_vertex(ell, A[i], B[j]))
                facets.append(tuple(chain))

    marks = {
        'a': [tuple(torus_vertex(ell, u, 0) for u in A) for A in sphere],
        'b': [tuple(torus_vertex(ell, 0, v) for v in B) for B in sphere],
    }
    labels = [f'x{u}y{v}' for u in range(n) for v in range(n)]
    T = from_facets(labels, facets, marks, name=f'T({ell})')
    expected = n * n * comb(2 * ell, ell)
    if len(T.faces(2 * ell)) != expected:
        raise InvariantError(f'staircase torus has {len(T.faces(2 * ell))} top cells, expected {expected}')
    return T


def build_reduction(phi: CnfFormula, params: GadgetParams, name='') -> SimplicialComplex:
    """
    The complex K(phi): one gadget per clause, one torus per conflict pair, glued along the spheres.

    Parameters
    ----------
    phi : CnfFormula
        Normalized formula (see cnf.normalize).
    params : GadgetParams
    name : str, optional

    Returns
    -------
    SimplicialComplex
        Gadget s carries the label and mark prefix 'g{s}/'; the torus of conflict (q, r) carries
        't{q1}.{q2}-{r1}.{r2}/'. For each conflict, dsigma of q is glued to a and dsigma of r to b,
        by the ascending-order bijection.
    """
    pairs = conflict_pairs(phi)
    widths = phi.widths
    if pairs and params.ell < 1:
        raise PreconditionError('formulas with conflicts need ell >= 1 for the torus')
    for pair in pairs:
        for clause, position in (pair.q, pair.r):
            if position > widths[clause - 1]:
                raise PreconditionError(f'conflict {pair.tag} references sigma_{position} beyond clause width')

    parts = [relabel(build_gadget(params, width), f'g{s}/') for s, width in enumerate(widths, start=1)]
    torus = build_torus(params.ell) if pairs else None
    idents = []
    for pair in pairs:
        parts.append(relabel(torus, f't{pair.tag}/'))
        tor = len(parts) - 1
        idents.append(Identification.canonical(parts, pair.q[0] - 1, f'g{pair.q[0]}/dsigma_{pair.q[1]}',
                                               tor, f't{pair.tag}/a'))
        idents.append(Identification.canonical(parts, pair.r[0] - 1, f'g{pair.r[0]}/dsigma_{pair.r[1]}',
                                               tor, f't{pair.tag}/b'))

    K = glue(parts, idents, name=name or f'K(k={params.k},ell={params.ell})')
    logger.info('reduction: t=%d clauses, %d conflicts, f-vector %s', phi.t, len(pairs), K.f_vector)
    return K


def reduction_face_count(phi: CnfFormula, params: GadgetParams) -> int:
    """
    Face count of K(phi) by inclusion-exclusion, without gluing.

    Each torus loses its meridian and parallel (which share one vertex) into the two gadgets,
    and the cone vertices of gadgets joined by a chain of tori collapse to one vertex per
    connected component.
    """
    pairs = conflict_pairs(phi)
    sizes = {w: len(build_gadget(params, w)) for w in set(phi.widths)}
    total = sum(sizes[w] for w in phi.widths)
    if not pairs:
        return total

    T = build_torus(params.ell)
    glued = len(T.marked_faces('a') | T.marked_faces('b'))
    total += len(pairs) * (len(T) - glued)

    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for pair in pairs:
        parent[find(pair.q[0])] = find(pair.r[0])
    touched = {s for pair in pairs for s in (pair.q[0], pair.r[0])}
    components = len({find(s) for s in touched})
    return total - (len(touched) - components)


def build_phi_neg(params: GadgetParams) -> SimplicialComplex:
    """K(x1 & ~x1): two width-1 gadgets joined by a single torus."""
    return build_reduction(PHI_NEG, params, name=f'K_neg({params.k},{params.d})')


def reduction_from_cnf(phi: CnfFormula, params: GadgetParams) -> SimplicialComplex:
    return build_reduction(normalize(phi), params)


def add_isolated_simplex(K: SimplicialComplex, m: int, prefix='iso/') -> SimplicialComplex:
    """
    Disjoint union of K with a full m-simplex; does not change almost embeddability in R^d for d >= m.
    """
    if m < 0:
        raise PreconditionError(f'simplex dimension must be non-negative, got {m}')
    simplex = from_facets([f'{prefix}{i}' for i in range(m + 1)], [list(range(m + 1))])
    return disjoint_union([K, simplex], name=K.name)


def is_k_sphere_boundary(K: SimplicialComplex, mark: str, k: int) -> bool:
    """True when the mark is the full boundary of a (k+1)-simplex."""
    vertices = K.marked_vertices(mark)
    expected = set(closure(combinations(sorted(vertices), k + 1)))
    return len(vertices) == k + 2 and K.marked_faces(mark) == expected


def check_gadget_marks(K: SimplicialComplex, params: GadgetParams) -> Dict[str, bool]:
    """
    Verify the defining property of each gadget mark present in K (an F or a G, unprefixed).

    Returns
    -------
    dict[str, bool]
        sigma_j: an (ell+1)-simplex containing p, or its boundary once removed;
        S_j: boundary of a (k+1)-simplex with mod-2 Betti numbers of the k-sphere;
        dsigma_j: boundary of an (ell+1)-simplex.
    """
    report = {}
    sphere_betti = [1] + [0] * (params.k - 1) + [1]
    for j in range(1, params.max_width + 1):
        sigma = sigma_vertices(params, j)
        if f'sigma_{j}' in K.marked:
            faces = K.marked_faces(f'sigma_{j}')
            report[f'sigma_{j}'] = P_VERTEX in sigma and len(sigma) == params.ell + 2 and (
                sigma in faces or faces == closure(boundary_faces(sigma)))
        if f'dsigma_{j}' in K.marked:
            report[f'dsigma_{j}'] = is_k_sphere_boundary(K, f'dsigma_{j}', params.ell)
        if f'S_{j}' in K.marked:
            S = subcomplex(K, f'S_{j}')
            report[f'S_{j}'] = (is_k_sphere_boundary(K, f'S_{j}', params.k)
                                and betti_mod2(boundary_complex(S)) == sphere_betti)
    return report


def torus_mark_intersection(T: SimplicialComplex, a='a', b='b') -> List:
    """Faces common to the meridian and parallel marks."""
    return sorted(T.marked_faces(a) & T.marked_faces(b))
