"""Spectrum and eigenbasis of symmetric-tree Laplacians via the stratified
level recurrence.

A Laplacian eigenfunction that is constant on each level of a (sub)tree is
determined by one value per level, and those values satisfy a three-term
recurrence.  Writing the recurrence as a small tridiagonal matrix per
subtree root level, and balancing it to symmetric form by a diagonal
similarity, turns the full eigenproblem on |V| vertices into k tiny
tridiagonal solves.  Eigenfunctions that vanish at a subtree root are
recovered by transporting a stratified Dirichlet eigenfunction between
sibling subtrees and taking differences, which yields exactly
n(l0) - n(l0-1) independent vectors per recurrence eigenvalue at level l0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigen import TriDiag, tridiag_eigen, tridiag_eigenvalues
from .laplacian import SparseSymMatrix, assemble, matvec
from .tree import CapacityError, SymmetricTreeSpec, TreeIndex, build_index

DEFAULT_BASIS_CAP = 100_000


@dataclass(frozen=True)
class SpectralLine:
    """One eigenvalue of the full Laplacian with multiplicity and provenance.

    ``origin_level`` is the root level of the subtree whose level recurrence
    produced the value; ``position`` is its rank within that recurrence's
    ordered spectrum.  Multiplicity is exact (a Python int, possibly huge).
    """

    value: float
    multiplicity: int
    origin_level: int
    position: int


@dataclass(frozen=True)
class LevelRecurrence:
    """Nonsymmetric tridiagonal form of the stratified eigen-equation.

    Row l holds d(l) on the diagonal, -c(l) above and -1 below: applying
    the Laplacian to a level-constant function reads off these weights.
    """

    diag: np.ndarray
    sup: np.ndarray  # superdiagonal, -c(l)
    sub: np.ndarray  # subdiagonal, all -1

    @property
    def m(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        a = np.diag(self.diag)
        if self.m > 1:
            idx = np.arange(self.m - 1)
            a[idx, idx + 1] = self.sup
            a[idx + 1, idx] = self.sub
        return a


def build_recurrence(spec: SymmetricTreeSpec, root_level: int) -> LevelRecurrence:
    """Level recurrence for the subtree rooted at ``root_level``.

    At level 0 the root has no parent (degree c(0)); at deeper root levels
    the parent edge contributes, matching the Dirichlet diagonal c(l)+1.
    """
    k = spec.levels
    if not 0 <= root_level <= k - 1:
        raise IndexError(f"root level {root_level} out of range for {k} levels")
    m = k - root_level
    # the full-tree degree already counts the parent edge for levels >= 1,
    # which is exactly the Dirichlet diagonal on a deeper subtree
    diag = np.array([float(spec.degree(root_level + j)) for j in range(m)])
    sup = -np.asarray(spec.children[root_level:], dtype=float)
    sub = -np.ones(max(m - 1, 0))
    return LevelRecurrence(diag, sup, sub)


def balance(rec: LevelRecurrence) -> TriDiag:
    """Diagonal similarity to symmetric form: off-diagonals become sqrt(c)."""
    off = np.sqrt(rec.sup * rec.sub)
    return TriDiag(rec.diag.copy(), off)


def unbalance_vector(rec: LevelRecurrence, w: np.ndarray) -> np.ndarray:
    """Pull a balanced-form eigenvector back to level-recurrence coordinates.

    The similarity diagonal is (-1)^j sqrt(relative population of level j
    within the subtree); relative rather than absolute populations differ
    only by a global scalar and avoid huge square roots on deep trees.
    """
    m = rec.m
    g = np.empty(m)
    rel = 1.0
    for j in range(m):
        g[j] = ((-1) ** j) * w[j] / math.sqrt(rel)
        if j < m - 1:
            rel *= -rec.sup[j]
    if g[0] < 0:
        g = -g
    return g


def stratified_levels(spec: SymmetricTreeSpec, root_level: int, want_vectors: bool = False):
    """Eigenvalues (and per-level eigenvectors) of the stratified recurrence."""
    rec = build_recurrence(spec, root_level)
    t = balance(rec)
    if not want_vectors:
        return tridiag_eigenvalues(t)
    vals, vecs = tridiag_eigen(t, want_vectors=True)
    gs = [unbalance_vector(rec, vecs[:, i]) for i in range(rec.m)]
    return vals, gs


def decompose_spectrum(spec: SymmetricTreeSpec, jobs: int = 1) -> list[SpectralLine]:
    """Complete Laplacian spectrum of a symmetric tree, never materialized.

    One tridiagonal solve per subtree root level; the level-l0 solve
    contributes each of its k-l0 simple eigenvalues with multiplicity
    n(l0)-n(l0-1) (1 at the root).  Levels with c(l0-1)=1 contribute
    nothing and are skipped.  Total multiplicity is exactly |V|.
    The per-level solves are independent; ``jobs`` > 1 runs them in a
    thread pool.
    """
    pops = spec.populations()
    levels = [
        l0
        for l0 in range(spec.levels)
        if l0 == 0 or pops[l0] - pops[l0 - 1] > 0
    ]
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            solved = list(pool.map(lambda l0: stratified_levels(spec, l0), levels))
    else:
        solved = [stratified_levels(spec, l0) for l0 in levels]
    lines: list[SpectralLine] = []
    for l0, vals in zip(levels, solved):
        mult = 1 if l0 == 0 else pops[l0] - pops[l0 - 1]
        for pos, lam in enumerate(vals):
            lines.append(SpectralLine(float(lam), mult, l0, pos))
    lines.sort(key=lambda s: (s.value, s.origin_level))
    return lines


def counting_identity(spec: SymmetricTreeSpec) -> tuple[int, int]:
    """Both sides of the eigenfunction count, in exact integer arithmetic.

    lhs = sum over levels of (levels below) * (population jump) + k, which
    telescopes to the vertex count.
    """
    pops = spec.populations()
    k = spec.levels
    lhs = sum((k - i) * (pops[i] - pops[i - 1]) for i in range(1, k)) + k
    return lhs, sum(pops)


def expanded_spectrum(lines: list[SpectralLine]) -> np.ndarray:
    """Eigenvalues repeated by multiplicity, sorted ascending."""
    out = np.concatenate([np.full(s.multiplicity, s.value) for s in lines])
    out.sort()
    return out


def stratified_lift(index: TreeIndex, v: int, g: np.ndarray) -> np.ndarray:
    """Extend per-level values on the subtree at v to a full-tree vector.

    Zero outside the subtree; constant on each subtree level.  A stratified
    eigenfunction cannot vanish at its root, so g[0]=0 is rejected.
    """
    g = np.asarray(g, dtype=float)
    ranges = index.subtree_ranges(v)
    if len(g) != len(ranges):
        raise ValueError(f"need {len(ranges)} level values, got {len(g)}")
    if g[0] == 0.0:
        raise ValueError("a stratified eigenfunction cannot vanish at the subtree root")
    f = np.zeros(index.n)
    for val, r in zip(g, ranges):
        f[r.start : r.stop] = val
    return f


def antisym_lift(index: TreeIndex, v: int, f: np.ndarray) -> list[np.ndarray]:
    """Difference of a subtree eigenfunction with its sibling transports.

    For each sibling subtree of v, copy f there (the subtrees are
    isomorphic by construction, and identically indexed up to an offset per
    level) and subtract.  Each result vanishes at the common parent and on
    the rest of the tree, so it solves the full eigen-equation with the
    same eigenvalue; the |siblings| results are linearly independent.
    """
    parent = index.parent_of(v)
    if parent is None:
        raise ValueError("antisymmetric lift needs a non-root vertex")
    if f[v] == 0.0:
        raise ValueError("lift requires a nonzero value at the subtree root")
    ranges = index.subtree_ranges(v)
    out = []
    for sib in index.children_of(parent):
        if sib == v:
            continue
        shift = sib - v
        fp = f.copy()
        for r in ranges:
            # sibling subtrees occupy identically-sized contiguous blocks
            # at every level, a fixed per-level offset apart
            off = shift * len(r)
            fp[r.start + off : r.stop + off] -= f[r.start : r.stop]
        out.append(fp)
    return out


def symmetrize(index: TreeIndex, v: int, f: np.ndarray) -> np.ndarray:
    """Average f over relabelings of v's children (orbit-average projection).

    Equal to the full group average but computed as the mean over the
    child-subtree transports, level by level.
    """
    children = index.children_of(v)
    c = len(children)
    if c == 0:
        return np.asarray(f, dtype=float).copy()
    out = np.asarray(f, dtype=float).copy()
    for depth, r in enumerate(index.subtree_ranges(v)):
        if depth == 0:
            continue
        block = out[r.start : r.stop].reshape(c, -1)
        out[r.start : r.stop] = np.broadcast_to(
            block.mean(axis=0), block.shape
        ).reshape(-1)
    return out


@dataclass(frozen=True)
class EigenBasis:
    """Complete eigenbasis of the full Laplacian with residual certificates.

    ``vectors`` has one eigenvector per row, sorted by (eigenvalue,
    origin level).  ``construction`` says whether a vector is a whole-tree
    stratified lift or an antisymmetrized sibling difference.
    """

    values: np.ndarray
    vectors: np.ndarray
    origin_levels: np.ndarray
    construction: list[str]
    residuals: np.ndarray

    @property
    def n(self) -> int:
        return len(self.values)

    def full_rank(self, threshold: float = 1e-8) -> bool:
        """Modified Gram-Schmidt with a pivot threshold on residual norms."""
        q = self.vectors.astype(float).copy()
        q /= np.linalg.norm(q, axis=1, keepdims=True)
        for i in range(self.n):
            v = q[i]
            if i > 0:
                v = v - q[:i].T @ (q[:i] @ v)
                # one reorthogonalization pass keeps the pivot test honest
                v = v - q[:i].T @ (q[:i] @ v)
            nv = np.linalg.norm(v)
            if nv <= threshold:
                return False
            q[i] = v / nv
        return True


def full_eigenbasis(spec: SymmetricTreeSpec, basis_cap: int = DEFAULT_BASIS_CAP) -> EigenBasis:
    """All |V| eigenpairs of the full Laplacian, residual-certified.

    Whole-tree stratified lifts cover the root level; for every deeper
    level l0 the stratified Dirichlet eigenfunctions of one representative
    subtree are antisymmetrized across each of the n(l0-1) sibling groups.
    """
    n = spec.vertex_count()
    if n > basis_cap:
        raise CapacityError(f"basis of size {n} exceeds the cap of {basis_cap}")
    index = build_index(spec)
    lap = assemble(index)
    pops = index.populations

    entries: list[tuple[float, int, str, np.ndarray]] = []

    vals, gs = stratified_levels(spec, 0, want_vectors=True)
    for lam, g in zip(vals, gs):
        entries.append((float(lam), 0, "stratified", stratified_lift(index, 0, g)))

    for l0 in range(1, spec.levels):
        if pops[l0] - pops[l0 - 1] == 0:
            continue
        vals, gs = stratified_levels(spec, l0, want_vectors=True)
        for parent in range(index.offsets[l0 - 1], index.offsets[l0]):
            v = index.children_of(parent)[0]
            for lam, g in zip(vals, gs):
                f = stratified_lift(index, v, g)
                for fp in antisym_lift(index, v, f):
                    entries.append((float(lam), l0, "antisym", fp))

    assert len(entries) == n, f"built {len(entries)} vectors for |V|={n}"
    entries.sort(key=lambda e: (e[0], e[1]))
    values = np.array([e[0] for e in entries])
    vectors = np.array([e[3] for e in entries])
    residuals = np.array(
        [
            float(np.max(np.abs(matvec(lap, e[3]) - e[0] * e[3])))
            for e in entries
        ]
    )
    return EigenBasis(
        values,
        vectors,
        np.array([e[1] for e in entries]),
        [e[2] for e in entries],
        residuals,
    )
