"""
Linear algebra over GF(2) on bit-packed matrices, and mod-2 homology of chain complexes.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np

from .kphi_config import max_workers
from .kphi_errors import BoundaryError, InvariantError
from .kphi_complex import SimplicialComplex, boundary_faces

logger = logging.getLogger(__name__)

WORD = 64
_ONE = np.uint64(1)
_SHIFTS = np.arange(WORD, dtype=np.uint64)


def _n_words(cols):
    return (cols + WORD - 1) // WORD


@dataclass(frozen=True, eq=False)
class Gf2Matrix:
    """
    Matrix over GF(2). Row r is packed little-endian into bits[r], 64 columns per uint64 word.
    """
    rows: int
    cols: int
    bits: np.ndarray

    def __post_init__(self):
        if self.bits.dtype != np.uint64 or self.bits.shape != (self.rows, _n_words(self.cols)):
            raise InvariantError(f'bit storage {self.bits.shape} does not match a {self.rows}x{self.cols} matrix')

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, np.zeros((rows, _n_words(cols)), dtype=np.uint64))

    @classmethod
    def from_dense(cls, array):
        """
        Pack a 2d integer or boolean array, reduced mod 2.
        """
        dense = (np.asarray(array).astype(np.int64) % 2).astype(np.uint64)
        if dense.ndim != 2:
            raise InvariantError('Gf2Matrix.from_dense expects a 2d array')
        rows, cols = dense.shape
        words = _n_words(cols)
        padded = np.zeros((rows, words * WORD), dtype=np.uint64)
        padded[:, :cols] = dense
        bits = np.bitwise_or.reduce(padded.reshape(rows, words, WORD) << _SHIFTS, axis=2)
        return cls(rows, cols, np.ascontiguousarray(bits, dtype=np.uint64))

    @classmethod
    def from_entries(cls, rows, cols, entries: Iterable[Tuple[int, int]]):
        """Matrix with ones exactly at the given (row, col) positions."""
        matrix = cls.zeros(rows, cols)
        entries = np.asarray(list(entries), dtype=np.int64).reshape(-1, 2)
        if len(entries):
            r, c = entries[:, 0], entries[:, 1]
            np.bitwise_or.at(matrix.bits, (r, c // WORD), _ONE << (c % WORD).astype(np.uint64))
        return matrix

    @property
    def shape(self):
        return (self.rows, self.cols)

    def to_dense(self) -> np.ndarray:
        cols = np.arange(self.cols)
        dense = (self.bits[:, cols // WORD] >> (cols % WORD).astype(np.uint64)) & _ONE
        return dense.astype(np.uint8)

    def transpose(self) -> 'Gf2Matrix':
        return Gf2Matrix.from_dense(self.to_dense().T)

    @property
    def T(self):
        return self.transpose()

    def is_zero(self) -> bool:
        return not self.bits.any()

    def __matmul__(self, other: 'Gf2Matrix') -> 'Gf2Matrix':
        if self.cols != other.rows:
            raise InvariantError(f'cannot multiply {self.shape} by {other.shape}')
        out = Gf2Matrix.zeros(self.rows, other.cols)
        dense = self.to_dense()
        for r in range(self.rows):
            idx = np.flatnonzero(dense[r])
            if idx.size:
                out.bits[r] = np.bitwise_xor.reduce(other.bits[idx], axis=0)
        return out

    def __eq__(self, other):
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.bits, other.bits)

    def __repr__(self):
        return f'Gf2Matrix({self.rows}x{self.cols})'


def rank_gf2(M: Gf2Matrix) -> int:
    """
    Rank over GF(2) by row reduction with word-level XOR; first nonzero row is the pivot.
    """
    work = M.bits.copy()
    rank = 0
    for col in range(M.cols):
        if rank == M.rows:
            break
        w = col // WORD
        mask = _ONE << np.uint64(col % WORD)
        hits = np.flatnonzero(work[rank:, w] & mask)
        if hits.size == 0:
            continue
        pivot = rank + hits[0]
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        below = rank + 1 + np.flatnonzero(work[rank + 1:, w] & mask)
        if below.size:
            work[below] ^= work[rank]
        rank += 1
    return rank


@dataclass(frozen=True)
class ChainComplexZ2:
    """
    Graded chain complex over GF(2).

    Attributes
    ----------
    sizes : tuple[int]
        Basis sizes n_0, ..., n_top.
    boundaries : tuple[Gf2Matrix]
        boundaries[i - 1] is the boundary map from dimension i to dimension i - 1, of shape (n_{i-1}, n_i).
    """
    sizes: Tuple[int, ...]
    boundaries: Tuple[Gf2Matrix, ...]

    def __post_init__(self):
        if len(self.boundaries) != max(0, len(self.sizes) - 1):
            raise InvariantError(f'{len(self.sizes)} graded pieces need {len(self.sizes) - 1} boundary maps')
        for i, d in enumerate(self.boundaries, start=1):
            if d.shape != (self.sizes[i - 1], self.sizes[i]):
                raise InvariantError(f'boundary map {i} has shape {d.shape}, expected {(self.sizes[i - 1], self.sizes[i])}')

    @property
    def top(self) -> int:
        return len(self.sizes) - 1

    def boundary(self, i: int) -> Gf2Matrix:
        return self.boundaries[i - 1]

    def check(self):
        """Raise BoundaryError unless every composite of consecutive boundary maps vanishes."""
        for i in range(2, self.top + 1):
            if not (self.boundary(i - 1) @ self.boundary(i)).is_zero():
                raise BoundaryError(f'boundary maps {i - 1} and {i} do not compose to zero')


def chain_complex(cells_by_dim: Sequence[Sequence], boundary: Callable[[object], Iterable]) -> ChainComplexZ2:
    """
    Chain complex of a cell complex given its cells per dimension and a codimension-1 boundary rule.

    Parameters
    ----------
    cells_by_dim : list[list[cell]]
        Basis order in each dimension.
    boundary : callable
        boundary(cell) yields the cells of one lower dimension in its mod-2 boundary.

    Returns
    -------
    ChainComplexZ2
    """
    sizes = tuple(len(cells) for cells in cells_by_dim)
    maps = []
    for i in range(1, len(cells_by_dim)):
        index = {cell: r for r, cell in enumerate(cells_by_dim[i - 1])}
        entries = [(index[face], col) for col, cell in enumerate(cells_by_dim[i]) for face in boundary(cell)]
        maps.append(Gf2Matrix.from_entries(sizes[i - 1], sizes[i], entries))
    return ChainComplexZ2(sizes, tuple(maps))


def boundary_complex(K: SimplicialComplex) -> ChainComplexZ2:
    """
    Simplicial chain complex of K over GF(2), bases in the complex's face order.
    """
    return chain_complex(K.faces_by_dim, boundary_faces)


def betti_mod2(C: ChainComplexZ2, workers=None) -> List[int]:
    """
    Mod-2 Betti numbers b_i = n_i - rank d_i - rank d_{i+1}.

    Parameters
    ----------
    C : ChainComplexZ2
    workers : int, optional
        Threads used to rank independent boundary maps. Default from KPHI_MAX_WORKERS.

    Returns
    -------
    list[int]
    """
    C.check()
    workers = max_workers() if workers is None else workers
    if workers > 1 and len(C.boundaries) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            ranks = list(pool.map(rank_gf2, C.boundaries))
    else:
        ranks = [rank_gf2(d) for d in C.boundaries]
    ranks = [0] + ranks + [0]
    betti = [n - ranks[i] - ranks[i + 1] for i, n in enumerate(C.sizes)]
    logger.debug('betti numbers %s from sizes %s', betti, C.sizes)
    return betti


def simplicial_betti(K: SimplicialComplex) -> List[int]:
    return betti_mod2(boundary_complex(K))
