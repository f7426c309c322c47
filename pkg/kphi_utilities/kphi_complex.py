"""
Finite abstract simplicial complexes: construction, queries, skeletons, disjoint simplex pairs and quotient gluing.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .kphi_errors import GlueError, InvariantError, PreconditionError

logger = logging.getLogger(__name__)

Simplex = Tuple[int, ...]


@dataclass(frozen=True)
class Vertex:
    id: int
    label: str


@dataclass(frozen=True)
class Identification:
    """
    Vertex bijection between the marked subcomplex `left_mark` of part `left` and the marked
    subcomplex `right_mark` of part `right`. Pairs are (vertex id in left part, vertex id in right part).
    """
    left: int
    left_mark: str
    right: int
    right_mark: str
    pairs: Tuple[Tuple[int, int], ...]

    @classmethod
    def canonical(cls, parts, left, left_mark, right, right_mark):
        """
        Ascending-order bijection between the vertex sets of two marks.

        Parameters
        ----------
        parts : list[SimplicialComplex]
        left, right : int
            Indices into parts.
        left_mark, right_mark : str

        Returns
        -------
        Identification
        """
        lv = sorted(parts[left].marked_vertices(left_mark))
        rv = sorted(parts[right].marked_vertices(right_mark))
        if len(lv) != len(rv):
            raise GlueError(f"marks '{left_mark}' and '{right_mark}' have {len(lv)} and {len(rv)} vertices")
        return cls(left, left_mark, right, right_mark, tuple(zip(lv, rv)))


def make_simplex(vertices: Iterable[int]) -> Simplex:
    """Sorted vertex tuple; rejects empty input and repeated vertices."""
    vertices = list(vertices)
    simplex = tuple(sorted(int(v) for v in vertices))
    if not simplex:
        raise PreconditionError('empty simplex')
    if len(set(simplex)) != len(simplex):
        raise PreconditionError(f'duplicate vertex in simplex {vertices}')
    return simplex


def subfaces(simplex: Simplex):
    """All nonempty subsets of simplex, itself included."""
    for size in range(1, len(simplex) + 1):
        yield from combinations(simplex, size)


def boundary_faces(simplex: Simplex) -> List[Simplex]:
    """Codimension-1 faces; empty for a vertex."""
    if len(simplex) == 1:
        return []
    return [simplex[:i] + simplex[i + 1:] for i in range(len(simplex))]


def closure(simplices: Iterable[Simplex]) -> set:
    """
    Downward closure of a collection of simplices.

    Parameters
    ----------
    simplices : iterable[Simplex]
        Sorted vertex tuples.

    Returns
    -------
    faces : set[Simplex]
        Every nonempty face of every input simplex.
    """
    faces = set()
    for s in simplices:
        faces.update(subfaces(s))
    return faces


def maximal_simplices(simplices: Iterable[Simplex]) -> List[Simplex]:
    """
    Inclusion-maximal members of simplices, in lexicographic order. Equal inputs collapse.
    """
    covered = set()
    maximal = []
    for s in sorted(set(simplices), key=len, reverse=True):
        if s in covered:
            continue
        maximal.append(s)
        covered.update(subfaces(s))
    return sorted(maximal)


def vertex_mask(simplex: Simplex) -> int:
    """
    Vertex set as a bit mask, bit v set for vertex v.

    Parameters
    ----------
    simplex : Simplex

    Returns
    -------
    int
        Two simplices are disjoint exactly when their masks AND to zero.
    """
    mask = 0
    for v in simplex:
        mask |= 1 << v
    return mask


class SimplicialComplex:
    """
    Finite abstract simplicial complex stored by its facets.

    Instances are immutable after construction; build them with from_facets, skeleton,
    remove_open_simplices, relabel or glue rather than calling the constructor directly.

    Attributes
    ----------
    name : str
    vertices : tuple[Vertex]
        Vertex i has id i.
    facets : tuple[Simplex]
        Inclusion-maximal faces, lexicographically sorted.
    marked : dict[str, tuple[Simplex]]
        Named subcomplexes, each stored by its own maximal faces.
    """

    def __init__(self, vertices: Sequence[Vertex], facets: Iterable[Simplex], marked=None, name=''):
        self.name = name
        self.vertices = tuple(vertices)
        self.facets = tuple(sorted(facets))
        faces = closure(self.facets)
        self._faces = frozenset(faces)

        top = max((len(f) for f in self.facets), default=0)
        by_dim = [[] for _ in range(top)]
        for f in faces:
            by_dim[len(f) - 1].append(f)
        self.faces_by_dim = tuple(tuple(sorted(fs)) for fs in by_dim)
        self._index = {f: i for fs in self.faces_by_dim for i, f in enumerate(fs)}
        self._labels = {v.label: v.id for v in self.vertices}

        self.marked = {}
        for mark, simplices in (marked or {}).items():
            self.marked[mark] = tuple(maximal_simplices(simplices))

    def __repr__(self):
        return f'SimplicialComplex(name={self.name!r}, f_vector={self.f_vector})'

    def __contains__(self, simplex):
        return tuple(simplex) in self._faces

    def __len__(self):
        return len(self._faces)

    @property
    def dim(self) -> int:
        return len(self.faces_by_dim) - 1

    @property
    def f_vector(self) -> List[int]:
        return [len(fs) for fs in self.faces_by_dim]

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * n for i, n in enumerate(self.f_vector))

    @property
    def face_set(self) -> frozenset:
        return self._faces

    def faces(self, dim: int) -> Tuple[Simplex, ...]:
        if dim < 0 or dim > self.dim:
            return ()
        return self.faces_by_dim[dim]

    def face_index(self, simplex: Simplex) -> int:
        """Position of simplex inside faces(dim simplex)."""
        return self._index[tuple(simplex)]

    def label(self, vertex_id: int) -> str:
        return self.vertices[vertex_id].label

    def vertex_id(self, label: str) -> int:
        return self._labels[label]

    def labels_of(self, simplex: Simplex) -> Tuple[str, ...]:
        return tuple(self.vertices[v].label for v in simplex)

    def marked_faces(self, mark: str) -> set:
        """Face set of the named subcomplex."""
        if mark not in self.marked:
            raise PreconditionError(f"no marked subcomplex named '{mark}'")
        return closure(self.marked[mark])

    def marked_vertices(self, mark: str) -> set:
        return {f[0] for f in self.marked_faces(mark) if len(f) == 1}


def _restrict_marks(marked, face_set) -> Dict[str, List[Simplex]]:
    restricted = {}
    for mark, simplices in marked.items():
        restricted[mark] = maximal_simplices(f for f in closure(simplices) if f in face_set)
    return restricted


def from_facets(vertex_labels: Sequence[str], facets: Iterable[Iterable[int]], marked=None, name='') -> SimplicialComplex:
    """
    Downward closure of a list of facets.

    Parameters
    ----------
    vertex_labels : list[str]
        Label of vertex i at position i. Labels must be unique.
    facets : list[list[int]]
        Vertex id lists. Non-maximal entries are absorbed. Vertices that appear in no facet
        become isolated vertices.
    marked : dict[str, list[list[int]]], optional
        Named subcomplexes, given by simplices that must be faces of the result.
    name : str, optional

    Returns
    -------
    SimplicialComplex
    """
    labels = [str(label) for label in vertex_labels]
    seen = set()
    for label in labels:
        if label in seen:
            raise PreconditionError(f"duplicate vertex label '{label}'")
        seen.add(label)
    n = len(labels)

    simplices = []
    for facet in facets:
        simplex = make_simplex(facet)
        if simplex[0] < 0 or simplex[-1] >= n:
            raise PreconditionError(f'unknown vertex id in facet {list(facet)}')
        simplices.append(simplex)

    used = {v for s in simplices for v in s}
    simplices.extend((v,) for v in range(n) if v not in used)
    maximal = maximal_simplices(simplices)
    faces = closure(maximal)

    marks = {}
    for mark, mark_simplices in (marked or {}).items():
        checked = [make_simplex(s) for s in mark_simplices]
        missing = [s for s in checked if s not in faces]
        if missing:
            raise PreconditionError(f"marked simplex {list(missing[0])} of '{mark}' is not a face")
        marks[mark] = checked

    vertices = [Vertex(i, label) for i, label in enumerate(labels)]
    return SimplicialComplex(vertices, maximal, marks, name)


def f_vector(K: SimplicialComplex) -> List[int]:
    """
    Number of faces in each dimension.

    Parameters
    ----------
    K : SimplicialComplex

    Returns
    -------
    list[int]
        Entry i counts the i-dimensional faces; empty for the empty complex.
    """
    return K.f_vector


def skeleton(K: SimplicialComplex, m: int) -> SimplicialComplex:
    """
    All faces of dimension at most m. Marks are restricted to the surviving faces.
    """
    if m < 0:
        raise PreconditionError(f'skeleton dimension must be non-negative, got {m}')
    if m >= K.dim:
        return K
    facets = []
    for f in K.facets:
        if len(f) <= m + 1:
            facets.append(f)
        else:
            facets.extend(combinations(f, m + 1))
    maximal = maximal_simplices(facets)
    marks = _restrict_marks(K.marked, closure(maximal))
    return SimplicialComplex(K.vertices, maximal, marks, K.name)


def disjoint_simplex_pairs(K: SimplicialComplex, s: int, t: int) -> List[Tuple[Simplex, Simplex]]:
    """
    Unordered pairs of vertex-disjoint faces of dimensions s and t.

    Parameters
    ----------
    K : SimplicialComplex
    s, t : int

    Returns
    -------
    list[tuple[Simplex, Simplex]]
        First entry has dimension s. When s == t each pair appears once, in lexicographic order.
    """
    if s < 0 or t < 0:
        raise PreconditionError('dimensions must be non-negative')
    first = [(f, vertex_mask(f)) for f in K.faces(s)]
    if s == t:
        return [(a, b) for (a, ma), (b, mb) in combinations(first, 2) if not ma & mb]
    second = [(f, vertex_mask(f)) for f in K.faces(t)]
    return [(a, b) for (a, ma), (b, mb) in product(first, second) if not ma & mb]


def relabel(K: SimplicialComplex, prefix: str, name: Optional[str] = None) -> SimplicialComplex:
    """Prefix every vertex label and mark name."""
    vertices = [Vertex(v.id, prefix + v.label) for v in K.vertices]
    marks = {prefix + mark: simplices for mark, simplices in K.marked.items()}
    return SimplicialComplex(vertices, K.facets, marks, K.name if name is None else name)


def subcomplex(K: SimplicialComplex, mark: str) -> SimplicialComplex:
    """
    The named subcomplex as a complex of its own, vertices renumbered densely (labels kept).
    """
    faces = K.marked_faces(mark)
    old_ids = sorted({v for f in faces for v in f})
    new_id = {v: i for i, v in enumerate(old_ids)}
    vertices = [Vertex(i, K.label(v)) for i, v in enumerate(old_ids)]
    facets = [tuple(new_id[v] for v in f) for f in K.marked[mark]]
    return SimplicialComplex(vertices, facets, {}, f'{K.name}:{mark}' if K.name else mark)


def remove_open_simplices(K: SimplicialComplex, simplices: Iterable[Simplex], name=None) -> SimplicialComplex:
    """
    Remove open simplices, keeping their boundaries. Each removed simplex must be a facet of K.
    """
    removed = {make_simplex(s) for s in simplices}
    facet_set = set(K.facets)
    for s in removed:
        if s not in facet_set:
            raise InvariantError(f'simplex {list(s)} is not maximal; removing it would not leave a complex')
    facets = [f for f in K.facets if f not in removed]
    for s in removed:
        facets.extend(boundary_faces(s))
    maximal = maximal_simplices(facets)
    marks = _restrict_marks(K.marked, closure(maximal))
    return SimplicialComplex(K.vertices, maximal, marks, K.name if name is None else name)


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _check_isomorphism(parts, ident: Identification):
    for index in (ident.left, ident.right):
        if not 0 <= index < len(parts):
            raise GlueError(f'identification references missing part {index}')
    left, right = parts[ident.left], parts[ident.right]
    mapping = dict(ident.pairs)
    if len(mapping) != len(ident.pairs) or len(set(mapping.values())) != len(mapping):
        raise GlueError(f"identification '{ident.left_mark}' ~ '{ident.right_mark}' is not a bijection")
    if set(mapping) != left.marked_vertices(ident.left_mark):
        raise GlueError(f"identification does not cover the vertices of '{ident.left_mark}'")
    if set(mapping.values()) != right.marked_vertices(ident.right_mark):
        raise GlueError(f"identification does not cover the vertices of '{ident.right_mark}'")
    image = {tuple(sorted(mapping[v] for v in f)) for f in left.marked_faces(ident.left_mark)}
    if image != right.marked_faces(ident.right_mark):
        raise GlueError(f"identification '{ident.left_mark}' ~ '{ident.right_mark}' is not a simplicial isomorphism")


def glue(parts: Sequence[SimplicialComplex], idents: Sequence[Identification], name='') -> SimplicialComplex:
    """
    Quotient of the disjoint union of parts under the transitive closure of the identifications.

    Parameters
    ----------
    parts : list[SimplicialComplex]
        Vertex labels should already be distinct across parts (see relabel).
    idents : list[Identification]
    name : str, optional

    Returns
    -------
    SimplicialComplex
        The representative of each vertex class is its smallest id in the disjoint union; quotient
        ids follow representative order. A quotient vertex label joins the sorted member labels
        with '='. Equal faces coming from different parts merge; marks are carried over, with
        equal names merged by union.
    """
    for ident in idents:
        _check_isomorphism(parts, ident)

    offsets = []
    total = 0
    for part in parts:
        offsets.append(total)
        total += len(part.vertices)

    parent = list(range(total))
    for ident in idents:
        for a, b in ident.pairs:
            ra = _find(parent, offsets[ident.left] + a)
            rb = _find(parent, offsets[ident.right] + b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    members = {}
    for g in range(total):
        members.setdefault(_find(parent, g), []).append(g)
    reps = sorted(members)
    new_id = {}
    for i, rep in enumerate(reps):
        for g in members[rep]:
            new_id[g] = i

    all_labels = [v.label for part in parts for v in part.vertices]
    vertices = []
    for i, rep in enumerate(reps):
        atoms = sorted({atom for g in members[rep] for atom in all_labels[g].split('=')})
        vertices.append(Vertex(i, '='.join(atoms)))
    if len({v.label for v in vertices}) != len(vertices):
        raise GlueError('glued complex would contain duplicate vertex labels; relabel the parts first')

    facets = []
    marks = {}
    for p, (part, offset) in enumerate(zip(parts, offsets)):
        images = set()
        for face in part.face_set:
            image = tuple(sorted(new_id[offset + v] for v in face))
            if len(set(image)) < len(image):
                labels = part.labels_of(face)
                raise GlueError(f'simplex {list(labels)} of part {p} would acquire a repeated vertex')
            images.add(image)
        if len(images) != len(part.face_set):
            raise GlueError(f'two distinct faces of part {p} would collapse to the same vertex set')
        facets.extend(tuple(sorted(new_id[offset + v] for v in f)) for f in part.facets)
        for mark, simplices in part.marked.items():
            marks.setdefault(mark, []).extend(tuple(sorted(new_id[offset + v] for v in s)) for s in simplices)

    K = SimplicialComplex(vertices, maximal_simplices(facets), marks, name)
    logger.debug('glued %d parts with %d identifications into %s', len(parts), len(idents), K.f_vector)
    return K


def disjoint_union(parts: Sequence[SimplicialComplex], name='') -> SimplicialComplex:
    return glue(parts, [], name=name)
