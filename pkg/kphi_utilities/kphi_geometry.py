"""
Exact rational realizations of complexes in R^d: general-position certificates, transversal crossings of
simplex pairs, the van Kampen number, the extension-parity condition that makes it map independent,
and mod-2 linking numbers of PL cycles.

All arithmetic is exact (fractions.Fraction); floats are rejected on input.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .kphi_complex import Simplex, SimplicialComplex, boundary_faces, disjoint_simplex_pairs, vertex_mask
from .kphi_config import DEFAULT_APEX_BOX, DEFAULT_APEX_RETRIES, DEFAULT_SEEDED_BOX, DEFAULT_SEED_RETRIES
from .kphi_errors import (DegenerateConfigurationError, InvariantError, NotACycleError, NotDisjointError,
                          PreconditionError)

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, ...]


def to_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise PreconditionError(f'floating point coordinate {x!r}; use integers, Fractions or "p/q" strings')
    try:
        return Fraction(x)
    except (TypeError, ValueError) as err:
        raise PreconditionError(f'not a rational number: {x!r}') from err


def to_point(coords) -> Point:
    return tuple(to_fraction(x) for x in coords)


def format_point(point: Point) -> List[str]:
    return [str(x) for x in point]


@dataclass(frozen=True)
class GenericityCertificate:
    """
    How a realization was produced and how much of it was verified.

    method is 'moment', 'seeded' or 'explicit'; sub_seed is the attempt that passed validation.
    """
    method: str
    seed: Optional[int] = None
    sub_seed: Optional[int] = None
    pairs_checked: int = 0
    parameters: Tuple[int, ...] = ()


@dataclass(frozen=True)
class RationalCoordMap:
    """Linear-on-vertices map: vertex id i goes to points[i] in R^d."""
    d: int
    points: Tuple[Point, ...]
    certificate: GenericityCertificate = field(default_factory=lambda: GenericityCertificate('explicit'))

    def __post_init__(self):
        for i, p in enumerate(self.points):
            if len(p) != self.d:
                raise PreconditionError(f'point {i} has dimension {len(p)}, expected {self.d}')

    @classmethod
    def from_points(cls, points: Sequence[Sequence], certificate=None) -> 'RationalCoordMap':
        converted = tuple(to_point(p) for p in points)
        if not converted:
            raise PreconditionError('no points given')
        return cls(len(converted[0]), converted, certificate or GenericityCertificate('explicit'))

    def __getitem__(self, vertex_id: int) -> Point:
        return self.points[vertex_id]

    def simplex_points(self, simplex: Simplex) -> List[Point]:
        return [self.points[v] for v in simplex]


def _rref(rows):
    """Reduced row echelon form over the rationals. Returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    n_cols = len(m[0]) if m else 0
    r = 0
    for c in range(n_cols):
        if r == len(m):
            break
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def _homogeneous_rows(points: Sequence[Point]):
    d = len(points[0])
    rows = [[p[i] for p in points] for i in range(d)]
    rows.append([Fraction(1)] * len(points))
    return rows


def affine_rank(points: Sequence[Point]) -> int:
    """Rank of the points as homogeneous vectors (p, 1): number of affinely independent points."""
    return len(_rref(_homogeneous_rows(points))[1])


def is_affinely_independent(points: Sequence[Point]) -> bool:
    return affine_rank(points) == len(points)


def affine_dependence(points: Sequence[Point]) -> List[Fraction]:
    """
    The affine dependence sum c_i (p_i, 1) = 0 of points spanning a one-dimensional kernel,
    scaled so the last free coefficient is 1.

    Raises
    ------
    DegenerateConfigurationError
        The dependence is not unique up to scale.
    """
    m, pivots = _rref(_homogeneous_rows(points))
    if len(pivots) != len(points) - 1:
        raise DegenerateConfigurationError(f'{len(points)} points have affine rank {len(pivots)}, expected {len(points) - 1}')
    free = next(c for c in range(len(points)) if c not in pivots)
    coeffs = [Fraction(0)] * len(points)
    coeffs[free] = Fraction(1)
    for r, c in enumerate(pivots):
        coeffs[c] = -m[r][free]
    return coeffs


def pair_crossing(sigma_pts: Sequence[Point], tau_pts: Sequence[Point]) -> int:
    """
    1 when the open simplices spanned by the two point sets meet, else 0.

    The combined d + 2 points must carry a unique affine dependence with every coefficient nonzero.
    The barycentric coordinates of the common point, if any, are the dependence coefficients
    normalized on each side, so the simplices cross exactly when all sigma coefficients share one
    sign and all tau coefficients the other.

    Raises
    ------
    DegenerateConfigurationError
        Zero coefficient or rank deficiency; the configuration needs re-certification.
    """
    sigma_pts = [to_point(p) for p in sigma_pts]
    tau_pts = [to_point(p) for p in tau_pts]
    d = len(sigma_pts[0]) if sigma_pts else len(tau_pts[0])
    if len(sigma_pts) + len(tau_pts) != d + 2:
        raise PreconditionError(f'pair_crossing needs d + 2 = {d + 2} points, got {len(sigma_pts) + len(tau_pts)}')
    coeffs = affine_dependence(sigma_pts + tau_pts)
    if any(c == 0 for c in coeffs):
        raise DegenerateConfigurationError('affine dependence has a zero coefficient')
    a, b = coeffs[:len(sigma_pts)], coeffs[len(sigma_pts):]
    positive = all(c > 0 for c in a) and all(c < 0 for c in b)
    negative = all(c < 0 for c in a) and all(c > 0 for c in b)
    return int(positive or negative)


def simplices_intersect(p_pts: Sequence[Point], q_pts: Sequence[Point]) -> bool:
    """
    Exact test whether the closed simplices (convex hulls) of two point sets meet.

    Searches basic feasible solutions of sum l_i p_i = sum m_j q_j, sum l = sum m = 1, l, m >= 0:
    the feasible set is nonempty exactly when some support with linearly independent columns has a
    unique nonnegative solution.
    """
    p_pts = [to_point(p) for p in p_pts]
    q_pts = [to_point(q) for q in q_pts]
    d = len(p_pts[0])
    for a in range(1, len(p_pts) + 1):
        for P in combinations(p_pts, a):
            for b in range(1, len(q_pts) + 1):
                for Q in combinations(q_pts, b):
                    rows = [[p[i] for p in P] + [-q[i] for q in Q] + [Fraction(0)] for i in range(d)]
                    rows.append([Fraction(1)] * a + [Fraction(0)] * b + [Fraction(1)])
                    rows.append([Fraction(0)] * a + [Fraction(1)] * b + [Fraction(1)])
                    m, pivots = _rref(rows)
                    if a + b in pivots or len(pivots) != a + b:
                        continue
                    if all(m[r][-1] >= 0 for r in range(len(pivots))):
                        return True
    return False


def moment_coords(K: SimplicialComplex, d: int, params: Optional[Sequence[int]] = None) -> RationalCoordMap:
    """
    Vertex i goes to (t, t^2, ..., t^d) with t = i + 1, or t = params[i] when given.

    Any d + 1 points with distinct parameters are affinely independent (Vandermonde), so every
    affine dependence among d + 2 of them has all coefficients nonzero.
    """
    if d < 1:
        raise PreconditionError(f'ambient dimension must be at least 1, got {d}')
    params = list(range(1, len(K.vertices) + 1)) if params is None else [int(t) for t in params]
    if len(params) != len(K.vertices):
        raise PreconditionError(f'{len(params)} moment parameters for {len(K.vertices)} vertices')
    if len(set(params)) != len(params):
        raise DegenerateConfigurationError('moment curve parameters must be distinct')
    points = tuple(tuple(Fraction(t) ** e for e in range(1, d + 1)) for t in params)
    return RationalCoordMap(d, points, GenericityCertificate('moment', parameters=tuple(params)))


def relevant_pairs(K: SimplicialComplex, total: int):
    """Unordered disjoint face pairs whose dimensions sum to total, smaller dimension first."""
    for s in range(max(0, total - K.dim), total // 2 + 1):
        yield from disjoint_simplex_pairs(K, s, total - s)


def certify_coords(K: SimplicialComplex, coords: RationalCoordMap) -> int:
    """
    Check general position on every disjoint pair with dim sigma + dim tau in {d - 1, d}.

    Returns
    -------
    int
        Number of pairs checked.

    Raises
    ------
    DegenerateConfigurationError
        On the first failing pair.
    """
    d = coords.d
    checked = 0
    for total in (d - 1, d):
        if total < 0:
            continue
        for sigma, tau in relevant_pairs(K, total):
            pts = coords.simplex_points(sigma) + coords.simplex_points(tau)
            if total == d:
                if any(c == 0 for c in affine_dependence(pts)):
                    raise DegenerateConfigurationError(f'pair {sigma}, {tau}: zero dependence coefficient')
            elif not is_affinely_independent(pts):
                raise DegenerateConfigurationError(f'pair {sigma}, {tau}: affinely dependent')
            checked += 1
    return checked


def seeded_coords(K: SimplicialComplex, d: int, seed: int, retries=DEFAULT_SEED_RETRIES, box=DEFAULT_SEEDED_BOX) -> RationalCoordMap:
    """
    Pseudorandom integer realization, validated by certify_coords.

    Attempt a draws from numpy.random.default_rng([seed, a]) in the box [-box*(a+1), box*(a+1)]^d;
    the first attempt that certifies is returned, its index recorded as sub_seed.

    Parameters
    ----------
    K : SimplicialComplex
    d : int, at least 1
    seed : int, non-negative
    retries : int
    box : int

    Returns
    -------
    RationalCoordMap
    """
    if d < 1:
        raise PreconditionError(f'invalid ambient dimension {d}')
    if seed < 0:
        raise PreconditionError(f'seed must be non-negative, got {seed}')
    n = len(K.vertices)
    for attempt in range(retries):
        rng = np.random.default_rng([seed, attempt])
        half = box * (attempt + 1)
        raw = rng.integers(-half, half + 1, size=(n, d))
        points = tuple(tuple(Fraction(int(x)) for x in row) for row in raw)
        coords = RationalCoordMap(d, points)
        try:
            checked = certify_coords(K, coords)
        except DegenerateConfigurationError as err:
            logger.info('seed %d attempt %d rejected: %s', seed, attempt, err)
            continue
        return RationalCoordMap(d, points, GenericityCertificate('seeded', seed, attempt, checked))
    raise InvariantError(f'no generic realization of {K.name or "complex"} in R^{d} after {retries} attempts')


@dataclass(frozen=True)
class VanKampenResult:
    v: int
    pairs_checked: int
    crossings: int
    ledger: Tuple[Tuple[Simplex, Simplex], ...]
    certificate: GenericityCertificate

    @property
    def seed(self):
        return self.certificate.seed


def van_kampen_number(K: SimplicialComplex, d: int, coords: RationalCoordMap) -> VanKampenResult:
    """
    Parity of transversal crossings between images of disjoint simplices with dim sigma + dim tau = d.

    Parameters
    ----------
    K : SimplicialComplex
    d : int
    coords : RationalCoordMap
        Generic for K in R^d.

    Returns
    -------
    VanKampenResult
        ledger lists every crossing pair; its length mod 2 is v.
    """
    if coords.d != d:
        raise PreconditionError(f'realization lives in R^{coords.d}, not R^{d}')
    ledger = []
    checked = 0
    for sigma, tau in relevant_pairs(K, d):
        checked += 1
        if pair_crossing(coords.simplex_points(sigma), coords.simplex_points(tau)):
            ledger.append((sigma, tau))
    result = VanKampenResult(len(ledger) % 2, checked, len(ledger), tuple(ledger), coords.certificate)
    logger.debug('v=%d with %d crossings over %d pairs', result.v, result.crossings, checked)
    return result


def _alternates(sigma: Simplex, tau: Simplex) -> bool:
    tagged = sorted([(v, 0) for v in sigma] + [(v, 1) for v in tau])
    return all(x[1] != y[1] for x, y in zip(tagged, tagged[1:]))


def moment_crossing_oracle(K: SimplicialComplex, d: int) -> int:
    """
    van Kampen number on the moment curve, computed combinatorially: a pair crosses exactly when
    its vertices strictly alternate in vertex-id order.
    """
    return sum(_alternates(sigma, tau) for sigma, tau in relevant_pairs(K, d)) % 2


@dataclass(frozen=True)
class ParityWitness:
    sigma: Simplex
    tau: Simplex
    sigma_extensions: int
    tau_extensions: int


@dataclass(frozen=True)
class ParityReport:
    holds: bool
    pairs_checked: int
    witness: Optional[ParityWitness] = None


def check_extension_parity(K: SimplicialComplex, d: int) -> ParityReport:
    """
    For every disjoint pair with dim sigma + dim tau = d - 1, compare the parity of the number of
    (dim sigma + 1)-faces containing sigma and missing tau with the same count for tau.
    When all parities agree the van Kampen number does not depend on the generic map.

    Returns
    -------
    ParityReport
        On failure, witness holds the first offending pair and both counts.
    """
    if d < 1:
        raise PreconditionError(f'ambient dimension must be at least 1, got {d}')
    cofaces: Dict[Simplex, List[int]] = {}
    for i in range(1, K.dim + 1):
        for f in K.faces(i):
            mask = vertex_mask(f)
            for g in boundary_faces(f):
                cofaces.setdefault(g, []).append(mask)

    checked = 0
    for sigma, tau in relevant_pairs(K, d - 1):
        checked += 1
        ms, mt = vertex_mask(sigma), vertex_mask(tau)
        nu = sum(1 for m in cofaces.get(sigma, ()) if not m & mt)
        mu = sum(1 for m in cofaces.get(tau, ()) if not m & ms)
        if nu % 2 != mu % 2:
            return ParityReport(False, checked, ParityWitness(sigma, tau, nu, mu))
    return ParityReport(True, checked)


@dataclass(frozen=True)
class PLCycle:
    """
    Mod-2 cycle given by its top faces (every codimension-1 face lies in an even number of them),
    realized by coords.
    """
    faces: Tuple[Simplex, ...]
    coords: RationalCoordMap

    def __post_init__(self):
        if not self.faces:
            raise NotACycleError('empty cycle')
        if len({len(f) for f in self.faces}) != 1:
            raise NotACycleError('cycle faces must all have the same dimension')
        if len(self.faces[0]) == 1:
            if len(self.faces) % 2:
                raise NotACycleError('a 0-cycle needs an even number of points')
            return
        counts: Dict[Simplex, int] = {}
        for f in self.faces:
            for g in boundary_faces(f):
                counts[g] = counts.get(g, 0) + 1
        odd = [g for g, c in counts.items() if c % 2]
        if odd:
            raise NotACycleError(f'face {odd[0]} lies in an odd number of top faces')

    @classmethod
    def from_mark(cls, K: SimplicialComplex, mark: str, coords: RationalCoordMap) -> 'PLCycle':
        if mark not in K.marked:
            raise PreconditionError(f"no marked subcomplex named '{mark}'")
        return cls(tuple(K.marked[mark]), coords)

    @property
    def dim(self) -> int:
        return len(self.faces[0]) - 1

    def face_points(self):
        return [self.coords.simplex_points(f) for f in self.faces]


@dataclass(frozen=True)
class Lk2Result:
    value: int
    apex: Point
    attempts: int


def _draw_apex(d, seed, attempt, box):
    rng = np.random.default_rng([seed, attempt])
    half = box * (attempt + 1)
    return tuple(Fraction(int(x)) for x in rng.integers(-half, half + 1, size=d))


def lk2(A: PLCycle, B: PLCycle, apex=None, seed=0, retries=DEFAULT_APEX_RETRIES, box=DEFAULT_APEX_BOX) -> Lk2Result:
    """
    Mod-2 linking number: parity of crossings between the cone apex * A and the top faces of B.

    Parameters
    ----------
    A, B : PLCycle
        dim A + dim B = d - 1 and disjoint images.
    apex : sequence of rationals, optional
        First apex to try; otherwise (and after a degenerate attempt) apexes are drawn from
        numpy.random.default_rng([seed, attempt]).
    seed : int
    retries : int
    box : int

    Returns
    -------
    Lk2Result
        With the apex actually used.
    """
    d = A.coords.d
    if B.coords.d != d:
        raise PreconditionError(f'cycles live in R^{A.coords.d} and R^{B.coords.d}')
    if A.dim + B.dim != d - 1:
        raise PreconditionError(f'dim A + dim B = {A.dim + B.dim}, need d - 1 = {d - 1}')

    a_faces, b_faces = A.face_points(), B.face_points()
    for alpha in a_faces:
        for beta in b_faces:
            if simplices_intersect(alpha, beta):
                raise NotDisjointError('images of the two cycles intersect')

    for attempt in range(retries):
        point = to_point(apex) if attempt == 0 and apex is not None else _draw_apex(d, seed, attempt, box)
        if len(point) != d:
            raise PreconditionError(f'apex has dimension {len(point)}, expected {d}')
        try:
            total = sum(pair_crossing([point] + alpha, beta) for alpha in a_faces for beta in b_faces)
        except DegenerateConfigurationError as err:
            logger.info('apex %s degenerate (%s), re-drawing', format_point(point), err)
            continue
        return Lk2Result(total % 2, point, attempt + 1)
    raise DegenerateConfigurationError(f'no generic cone apex found in {retries} attempts')


def sphere_crossing_counts(result: VanKampenResult, K: SimplicialComplex, prefix='') -> Dict[int, int]:
    """
    Per j, the number of ledger crossings between sigma_j and a face of S_j.

    Parameters
    ----------
    result : VanKampenResult
    K : SimplicialComplex
        Complex carrying sigma_j and S_j marks (e.g. F), with optional mark prefix.
    prefix : str

    Returns
    -------
    dict[int, int]
    """
    counts = {}
    for j in range(1, 4):
        if f'{prefix}sigma_{j}' not in K.marked or f'{prefix}S_{j}' not in K.marked:
            continue
        (sigma,) = K.marked[f'{prefix}sigma_{j}']
        sphere = K.marked_faces(f'{prefix}S_{j}')
        counts[j] = sum(1 for a, b in result.ledger if (a == sigma and b in sphere) or (b == sigma and a in sphere))
    return counts
