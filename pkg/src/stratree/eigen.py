"""Eigensolvers: Sturm-sequence bisection for symmetric tridiagonals, and a
dense symmetric solver used as the brute-force oracle.

The tridiagonal path is self-contained (bisection on Sturm counts plus
inverse iteration with Rayleigh refinement) because the matrices it targets
are tiny and their Sturm counts are also exercised directly by the test
suite.  The dense oracle wraps LAPACK through numpy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tree import CapacityError

DEFAULT_ORACLE_CAP = 2000

_BISECT_STEPS = 90


@dataclass(frozen=True)
class TriDiag:
    """Symmetric tridiagonal matrix: diagonal ``diag``, off-diagonal ``off``."""

    diag: np.ndarray
    off: np.ndarray

    def __post_init__(self):
        d = np.atleast_1d(np.asarray(self.diag, dtype=float))
        e = np.atleast_1d(np.asarray(self.off, dtype=float)) if np.size(self.off) else np.zeros(0)
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "off", e)
        if d.ndim != 1 or e.ndim != 1 or len(e) != max(len(d) - 1, 0):
            raise ValueError("need m diagonal and m-1 off-diagonal entries")

    @property
    def m(self) -> int:
        return len(self.diag)

    def norm_inf(self) -> float:
        m = self.m
        if m == 1:
            return abs(float(self.diag[0]))
        rows = np.abs(self.diag).copy()
        rows[:-1] += np.abs(self.off)
        rows[1:] += np.abs(self.off)
        return float(rows.max())

    def to_dense(self) -> np.ndarray:
        a = np.diag(self.diag)
        if self.m > 1:
            idx = np.arange(self.m - 1)
            a[idx, idx + 1] = self.off
            a[idx + 1, idx] = self.off
        return a

    def matvec(self, x: np.ndarray) -> np.ndarray:
        y = self.diag * x
        if self.m > 1:
            y[:-1] += self.off * x[1:]
            y[1:] += self.off * x[:-1]
        return y


def sturm_count(t: TriDiag, x) -> np.ndarray | int:
    """Number of eigenvalues of ``t`` strictly below each probe in ``x``.

    Vectorized over probes: one pass of the Sturm recurrence per matrix row.
    """
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    tiny = np.finfo(float).tiny
    q = t.diag[0] - xs
    q = np.where(q == 0.0, -tiny, q)  # zero pivots count as sign changes
    count = (q < 0).astype(np.int64)
    with np.errstate(over="ignore", divide="ignore"):
        for i in range(1, t.m):
            q = (t.diag[i] - xs) - t.off[i - 1] ** 2 / q
            q = np.where(q == 0.0, -tiny, q)
            count += q < 0
    if np.isscalar(x) or np.ndim(x) == 0:
        return int(count[0])
    return count


def _bisect_eigenvalues(t: TriDiag) -> np.ndarray:
    m = t.m
    radius = np.zeros(m)
    if m > 1:
        radius[:-1] += np.abs(t.off)
        radius[1:] += np.abs(t.off)
    lo = np.full(m, float(np.min(t.diag - radius)))
    hi = np.full(m, float(np.max(t.diag + radius)))
    if np.all(lo == hi):
        return lo
    targets = np.arange(m)
    tol = 2 * np.finfo(float).eps * max(float(np.max(hi - lo)), 1.0)
    for _ in range(_BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        too_high = sturm_count(t, mid) > targets
        hi = np.where(too_high, mid, hi)
        lo = np.where(too_high, lo, mid)
        if np.all(hi - lo <= tol):
            break
    return 0.5 * (lo + hi)


def _inverse_iteration(t: TriDiag, lam: float, prior: list[np.ndarray]) -> tuple[float, np.ndarray]:
    """One eigenpair by inverse iteration, refined by Rayleigh quotients."""
    m = t.m
    if m == 1:
        return float(t.diag[0]), np.ones(1)
    dense = t.to_dense()
    scale = max(t.norm_inf(), 1.0)
    shift = lam
    rng = np.random.default_rng(12345 + m)
    v = np.ones(m) + 1e-3 * rng.standard_normal(m)
    v /= np.linalg.norm(v)
    best_res, best = np.inf, v
    for _ in range(12):
        a = dense - shift * np.eye(m)
        try:
            w = np.linalg.solve(a, v)
        except np.linalg.LinAlgError:
            shift += 1e-13 * scale
            continue
        nw = np.linalg.norm(w)
        if not np.isfinite(nw) or nw == 0.0:
            shift += 1e-13 * scale
            continue
        v = w / nw
        # deflate against already-accepted vectors of nearby eigenvalues
        for lam_p, vp in prior:
            if abs(lam_p - lam) <= 1e-8 * scale:
                v -= (vp @ v) * vp
        nv = np.linalg.norm(v)
        if nv < 1e-8:
            v = rng.standard_normal(m)
            v /= np.linalg.norm(v)
            continue
        v /= nv
        rq = float(v @ t.matvec(v))
        res = float(np.linalg.norm(t.matvec(v) - rq * v))
        if res < best_res:
            best_res, best, lam = res, v, rq
        if res <= 1e-14 * scale:
            break
        shift = rq
    return lam, best


def tridiag_eigen(t: TriDiag, want_vectors: bool = False):
    """Full spectrum of a symmetric tridiagonal, nondecreasing.

    Returns the eigenvalue array, or ``(values, vectors)`` with orthonormal
    eigenvector columns when ``want_vectors`` is set.  With nonzero
    off-diagonals the eigenvalues are simple and returned strictly sorted.
    """
    vals = _bisect_eigenvalues(t)
    if not want_vectors:
        return vals
    vecs = np.zeros((t.m, t.m))
    refined = np.empty(t.m)
    prior: list[tuple[float, np.ndarray]] = []
    for i, lam in enumerate(vals):
        lam_i, v = _inverse_iteration(t, float(lam), prior)
        refined[i] = lam_i
        vecs[:, i] = v
        prior.append((lam_i, v))
    order = np.argsort(refined, kind="stable")
    return refined[order], vecs[:, order]


def tridiag_eigenvalues(t: TriDiag) -> np.ndarray:
    return tridiag_eigen(t, want_vectors=False)


@dataclass(frozen=True)
class DenseSym:
    """Dense symmetric matrix, the oracle-side representation."""

    a: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("square matrix required")
        object.__setattr__(self, "a", 0.5 * (a + a.T))

    @property
    def n(self) -> int:
        return self.a.shape[0]


def _purify_degenerate(a: np.ndarray, vals: np.ndarray, vecs: np.ndarray, tol: float) -> np.ndarray:
    """Sharpen eigenvectors of repeated eigenvalues by inverse iteration.

    When a degenerate cluster sits close (but outside ``tol``) to another
    eigenvalue, LAPACK vectors bleed across the small gap by roughly
    eps/gap, which pollutes coordinates that vanish in exact arithmetic.
    One shifted solve per cluster amplifies the cluster space and kills
    that bleed; QR restores orthonormality within the cluster.
    """
    n = len(vals)
    scale = max(float(np.max(np.abs(vals))), 1.0)
    start = 0
    for i in range(1, n + 1):
        if i < n and vals[i] - vals[i - 1] <= tol:
            continue
        size = i - start
        if size > 1:
            lam = float(np.mean(vals[start:i])) + 1e-12 * scale
            try:
                w = np.linalg.solve(a - lam * np.eye(n), vecs[:, start:i])
                q, _ = np.linalg.qr(w)
                vecs[:, start:i] = _avoid_fuzzy_zeros(q, seed=n * 1000 + start)
            except np.linalg.LinAlgError:
                pass
        start = i
    return vecs


def _avoid_fuzzy_zeros(q: np.ndarray, seed: int) -> np.ndarray:
    """Rotate an eigenspace basis away from ambiguous near-zero entries.

    Entries of a degenerate-cluster basis are either exact zeros of the
    whole eigenspace (~1e-16 after purification) or genuine values; a
    genuine value that lands near the downstream zero threshold would be
    misclassified.  Any orthogonal recombination spans the same
    eigenspace, so retry random rotations until every entry is clearly
    zero or clearly not.
    """
    rng = np.random.default_rng(seed)
    best, best_bad = q, np.inf
    for _ in range(10):
        rel = np.abs(q) / np.max(np.abs(q), axis=0)
        bad = int(np.sum((rel > 1e-13) & (rel < 1e-6)))
        if bad < best_bad:
            best, best_bad = q, bad
        if bad == 0:
            return q
        rot, _ = np.linalg.qr(rng.standard_normal((q.shape[1], q.shape[1])))
        q = q @ rot
    return best


def dense_eigen(m: DenseSym | np.ndarray, cap: int = DEFAULT_ORACLE_CAP, cluster_tol: float = 1e-8):
    """Brute-force eigendecomposition, refused above the size cap.

    Returns nondecreasing eigenvalues and an orthonormal eigenvector matrix
    (columns); eigenvectors of clustered eigenvalues are refined so they
    span the cluster eigenspace to working precision.
    """
    if not isinstance(m, DenseSym):
        m = DenseSym(np.asarray(m))
    if m.n > cap:
        raise CapacityError(f"dense solve of size {m.n} exceeds the cap of {cap}")
    vals, vecs = np.linalg.eigh(m.a)
    vecs = _purify_degenerate(m.a, vals, vecs, cluster_tol)
    return vals, vecs
