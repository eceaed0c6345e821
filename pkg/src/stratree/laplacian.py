"""Sparse assembly of tree Laplacians and their Dirichlet restrictions.

The Laplacian has the vertex degree on the diagonal and -1 on every tree
edge.  A Dirichlet Laplacian on a vertex subset is the principal submatrix
of the full Laplacian: diagonal entries keep the full-tree degree, so edges
leaving the subset still contribute (zero boundary condition outside).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np

from .tree import RootedTree, TreeIndex


@dataclass(frozen=True)
class SparseSymMatrix:
    """Symmetric matrix in compressed-row layout (both triangles stored).

    Diagonal entries are stored explicitly even when zero, so every row is
    nonempty and matvec can use reduceat without special cases.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    data: np.ndarray

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for i in range(self.n):
            lo, hi = self.indptr[i], self.indptr[i + 1]
            a[i, self.indices[lo:hi]] = self.data[lo:hi]
        return a

    def row_sums(self) -> np.ndarray:
        return np.add.reduceat(self.data, self.indptr[:-1])

    def norm_inf(self) -> float:
        return float(np.max(np.add.reduceat(np.abs(self.data), self.indptr[:-1])))

    def to_matrix_market(self, stream: IO[str]) -> None:
        """Write the lower triangle in Matrix Market symmetric coordinate form."""
        entries = []
        for i in range(self.n):
            lo, hi = self.indptr[i], self.indptr[i + 1]
            for j, val in zip(self.indices[lo:hi], self.data[lo:hi]):
                if j <= i:
                    entries.append((i + 1, j + 1, val))
        stream.write("%%MatrixMarket matrix coordinate real symmetric\n")
        stream.write(f"{self.n} {self.n} {len(entries)}\n")
        for i, j, val in entries:
            stream.write(f"{i} {j} {val:.17g}\n")


def _build_csr(n: int, diag: Sequence[int], edges: Sequence[tuple[int, int]]) -> SparseSymMatrix:
    rows: list[list[tuple[int, float]]] = [[(i, float(diag[i]))] for i in range(n)]
    for u, v in edges:
        rows[u].append((v, -1.0))
        rows[v].append((u, -1.0))
    indptr = np.zeros(n + 1, dtype=np.int64)
    cols: list[int] = []
    vals: list[float] = []
    for i, row in enumerate(rows):
        row.sort()
        cols.extend(j for j, _ in row)
        vals.extend(x for _, x in row)
        indptr[i + 1] = len(cols)
    return SparseSymMatrix(n, indptr, np.asarray(cols, dtype=np.int64), np.asarray(vals))


def _edges_of(tree: RootedTree | TreeIndex) -> tuple[int, list[tuple[int, int]]]:
    if isinstance(tree, TreeIndex):
        edges = [
            (p, v)
            for v in range(tree.n)
            if (p := tree.parent_of(v)) is not None
        ]
        return tree.n, edges
    return tree.n, tree.edges()


def assemble(tree: RootedTree | TreeIndex) -> SparseSymMatrix:
    """Laplacian of a tree: degree diagonal, -1 on edges.  Row sums are 0."""
    n, edges = _edges_of(tree)
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return _build_csr(n, deg, edges)


def assemble_dirichlet(tree: RootedTree | TreeIndex, omega: Sequence[int]) -> SparseSymMatrix:
    """Principal submatrix of the Laplacian on the vertex subset ``omega``.

    Diagonal entries keep the full-tree degree; only edges with both ends
    in omega appear off the diagonal.
    """
    n, edges = _edges_of(tree)
    omega = sorted(set(int(v) for v in omega))
    if not omega:
        raise ValueError("omega must be nonempty")
    if omega[0] < 0 or omega[-1] >= n:
        raise IndexError(f"omega contains vertices outside [0, {n})")
    pos = {v: i for i, v in enumerate(omega)}
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    sub_edges = [
        (pos[u], pos[v]) for u, v in edges if u in pos and v in pos
    ]
    return _build_csr(len(omega), [deg[v] for v in omega], sub_edges)


def matvec(m: SparseSymMatrix, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (m.n,):
        raise ValueError(f"vector of length {x.shape} against matrix of size {m.n}")
    return np.add.reduceat(m.data * x[m.indices], m.indptr[:-1])
