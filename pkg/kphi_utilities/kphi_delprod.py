"""
Simplicial deleted product: the cell complex of ordered pairs of disjoint simplices, with the
factor-exchange involution.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .kphi_complex import Simplex, SimplicialComplex, boundary_faces, vertex_mask
from .kphi_errors import FixedCellError, InvariantError
from .kphi_gf2 import ChainComplexZ2, betti_mod2, chain_complex

logger = logging.getLogger(__name__)


class ProductCell(NamedTuple):
    first: Simplex
    second: Simplex

    @property
    def dim(self) -> int:
        return len(self.first) + len(self.second) - 2

    def swapped(self) -> 'ProductCell':
        return ProductCell(self.second, self.first)


def product_boundary(cell: ProductCell) -> List[ProductCell]:
    """Mod-2 boundary: codimension-1 faces of either factor, terms with an empty factor omitted."""
    return ([ProductCell(f, cell.second) for f in boundary_faces(cell.first)]
            + [ProductCell(cell.first, f) for f in boundary_faces(cell.second)])


class DeletedProductComplex:
    """
    Cells sigma x tau over ordered pairs of disjoint faces of a source complex, graded by
    dim sigma + dim tau.

    Attributes
    ----------
    source : SimplicialComplex
    cells_by_dim : tuple[tuple[ProductCell]]
    max_dim : int or None
        Dimension cap used during enumeration, if any.
    """

    def __init__(self, source: SimplicialComplex, cells_by_dim: Sequence[Sequence[ProductCell]], max_dim=None):
        self.source = source
        self.cells_by_dim = tuple(tuple(ProductCell(*c) for c in cells) for cells in cells_by_dim)
        self.max_dim = max_dim
        self._chain = None

    def __repr__(self):
        return f'DeletedProductComplex(source={self.source.name!r}, cells={self.cell_counts})'

    @property
    def cell_counts(self) -> List[int]:
        return [len(cells) for cells in self.cells_by_dim]

    @property
    def n_cells(self) -> int:
        return sum(self.cell_counts)

    @property
    def cells(self):
        return {cell for cells in self.cells_by_dim for cell in cells}

    @property
    def chain_complex(self) -> ChainComplexZ2:
        if self._chain is None:
            self._chain = chain_complex(self.cells_by_dim, product_boundary)
        return self._chain

    @property
    def truncated(self) -> bool:
        """True when max_dim cut off cells that the full deleted product has."""
        return self.max_dim is not None and self.max_dim < 2 * self.source.dim

    def betti(self) -> List[int]:
        """
        Mod-2 Betti numbers.

        Returns
        -------
        list[int]
            b_0, b_1, ... of the full deleted product. A truncated enumeration only determines
            b_0..b_{max_dim-1}, so the list stops there.
        """
        betti = betti_mod2(self.chain_complex)
        return betti[:self.max_dim] if self.truncated else betti


def deleted_product(K: SimplicialComplex, max_dim: Optional[int] = None) -> DeletedProductComplex:
    """
    All ordered pairs of disjoint nonempty faces of K.

    Parameters
    ----------
    K : SimplicialComplex
    max_dim : int, optional
        Skip cells above this dimension. Lower cells are unaffected, so the result is the
        max_dim-skeleton of the full deleted product.

    Returns
    -------
    DeletedProductComplex
        Cells in each dimension ordered by (dim sigma, sigma, tau).
    """
    top = 2 * K.dim if max_dim is None else min(max_dim, 2 * K.dim)
    faces = [[(f, vertex_mask(f)) for f in K.faces(i)] for i in range(K.dim + 1)]
    buckets = [[] for _ in range(top + 1)] if top >= 0 else []
    for a in range(K.dim + 1):
        for b in range(K.dim + 1):
            if a + b > top:
                continue
            bucket = buckets[a + b]
            for sigma, ms in faces[a]:
                bucket.extend(ProductCell(sigma, tau) for tau, mt in faces[b] if not ms & mt)
    while buckets and not buckets[-1]:
        buckets.pop()
    cells_by_dim = [sorted(bucket, key=lambda c: (len(c.first), c.first, c.second)) for bucket in buckets]
    D = DeletedProductComplex(K, cells_by_dim, max_dim)
    logger.debug('deleted product of %s: cells per dimension %s', K.name, D.cell_counts)
    return D


@dataclass(frozen=True)
class InvolutionReport:
    free: bool
    orbits: int
    orbits_per_dim: Tuple[int, ...]
    commutes_with_boundary: bool


def check_free_involution(D: DeletedProductComplex) -> InvolutionReport:
    """
    Check that (sigma, tau) -> (tau, sigma) is a fixed-point-free cell bijection commuting with the boundary.

    Raises
    ------
    FixedCellError
        A cell is its own image.
    InvariantError
        The swap is not a bijection of cells or does not commute with the boundary.
    """
    perms = []
    for n, cells in enumerate(D.cells_by_dim):
        index = {cell: i for i, cell in enumerate(cells)}
        perm = np.empty(len(cells), dtype=np.int64)
        for i, cell in enumerate(cells):
            image = cell.swapped()
            if image == cell:
                raise FixedCellError(f'cell {tuple(cell)} is fixed by the exchange involution')
            if image not in index:
                raise InvariantError(f'swap of cell {tuple(cell)} is not a cell of dimension {n}')
            perm[i] = index[image]
        perms.append(perm)

    for n in range(1, len(perms)):
        dense = D.chain_complex.boundary(n).to_dense()
        if not np.array_equal(dense[np.ix_(perms[n - 1], perms[n])], dense):
            raise InvariantError(f'exchange involution does not commute with boundary map {n}')

    orbits = tuple(len(cells) // 2 for cells in D.cells_by_dim)
    return InvolutionReport(True, sum(orbits), orbits, True)
