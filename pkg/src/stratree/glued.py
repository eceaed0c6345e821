"""Spectrum of two symmetric trees identified at the root.

Levels are signed: the left tree occupies levels 0..k1-1, the right tree
-1..-(k2-1).  Eigenfunctions that vanish at the shared root restrict to
root-vanishing eigenfunctions of one side and are counted by that side's
deeper-level decomposition; the remaining k1+k2-1 eigenfunctions are
stratified over signed levels and solve one tridiagonal recurrence whose
root row couples to both sides.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decompose import SpectralLine, decompose_spectrum
from .eigen import TriDiag, tridiag_eigenvalues
from .tree import GluedTreeSpec


@dataclass(frozen=True)
class GluedSpectralLine:
    """One eigenvalue of the glued tree with multiplicity and origin.

    ``origin_side`` is "left" or "right" for root-vanishing families
    (with ``origin_level`` the positive level of the producing subtree on
    that side) and "stratified" for the signed-level recurrence (level 0).
    """

    value: float
    multiplicity: int
    origin_side: str
    origin_level: int
    position: int


def glued_stratified_matrix(spec: GluedTreeSpec) -> TriDiag:
    """Balanced signed-level recurrence of the glued tree.

    Rows run from the deepest right level -(k2-1) up to the deepest left
    level k1-1.  The root row has degree c_left(0)+c_right(0); each
    off-diagonal balances to sqrt(c) of the level nearer the root on its
    side.
    """
    k1, k2 = spec.left.levels, spec.right.levels
    m = k1 + k2 - 1
    diag = np.empty(m)
    off = np.empty(max(m - 1, 0))
    root_row = k2 - 1  # row index of signed level 0

    def side_degree(children: tuple[int, ...], depth: int) -> float:
        # depth >= 1 on a side with k levels: interior c(depth)+1, leaf 1
        k = len(children) + 1
        return 1.0 if depth == k - 1 else children[depth] + 1.0

    root_deg = (spec.left.children[0] if k1 > 1 else 0) + (
        spec.right.children[0] if k2 > 1 else 0
    )
    for row in range(m):
        level = row - root_row
        if level == 0:
            diag[row] = float(root_deg)
        elif level > 0:
            diag[row] = side_degree(spec.left.children, level)
        else:
            diag[row] = side_degree(spec.right.children, -level)
    for row in range(m - 1):
        level = row - root_row  # coupling between |level| nearer root and next
        if level >= 0:
            off[row] = np.sqrt(spec.left.children[level])
        else:
            off[row] = np.sqrt(spec.right.children[-level - 1])
    return TriDiag(diag, off)


def glued_spectrum(spec: GluedTreeSpec) -> list[GluedSpectralLine]:
    """Complete spectrum of the glued tree with exact multiplicities.

    Union of each side's deeper-level (root-vanishing) spectral lines and
    the simple eigenvalues of the signed-level recurrence; total
    multiplicity is |V_left| + |V_right| - 1 exactly.
    """
    lines: list[GluedSpectralLine] = []
    for side, side_spec in (("left", spec.left), ("right", spec.right)):
        for s in decompose_spectrum(side_spec):
            if s.origin_level >= 1:
                lines.append(
                    GluedSpectralLine(s.value, s.multiplicity, side, s.origin_level, s.position)
                )
    for pos, lam in enumerate(tridiag_eigenvalues(glued_stratified_matrix(spec))):
        lines.append(GluedSpectralLine(float(lam), 1, "stratified", 0, pos))
    lines.sort(key=lambda s: (s.value, s.origin_side))
    return lines


def expanded_glued_spectrum(lines: list[GluedSpectralLine]) -> np.ndarray:
    out = np.concatenate([np.full(s.multiplicity, s.value) for s in lines])
    out.sort()
    return out
