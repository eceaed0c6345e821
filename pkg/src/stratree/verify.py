"""Cross-checks of the fast decomposition against the brute-force oracle.

Every check here pits two independent routes against each other: the
tridiagonal decomposition versus a dense eigensolve of the assembled
Laplacian, the constructed eigenbasis versus its residuals and rank, and
the nodal-domain theorems versus sign counts on oracle eigenpairs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decompose import (
    counting_identity,
    decompose_spectrum,
    expanded_spectrum,
    full_eigenbasis,
)
from .eigen import DEFAULT_ORACLE_CAP, dense_eigen
from .glued import expanded_glued_spectrum, glued_spectrum
from .laplacian import assemble
from .nodal import courant_check, zero_free_check
from .tree import (
    GluedTreeSpec,
    RootedTree,
    SymmetricTreeSpec,
    build_index,
    realize_glued,
)

SPECTRUM_TOL = 1e-8
RESIDUAL_TOL = 1e-9
RANK_THRESHOLD = 1e-8


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_deviation: float
    detail: str = ""


def check_spectrum_oracle(
    spec: SymmetricTreeSpec, tol: float = SPECTRUM_TOL, oracle_cap: int = DEFAULT_ORACLE_CAP
) -> CheckResult:
    """Multiplicity-expanded decomposition versus dense eigenvalues."""
    fast = expanded_spectrum(decompose_spectrum(spec))
    lap = assemble(build_index(spec))
    vals, _ = dense_eigen(lap.to_dense(), cap=oracle_cap)
    dev = float(np.max(np.abs(fast - vals))) if len(vals) else 0.0
    return CheckResult("spectrum_oracle", dev <= tol, dev)


def check_counting(spec: SymmetricTreeSpec) -> CheckResult:
    lhs, total = counting_identity(spec)
    return CheckResult("counting_identity", lhs == total, float(abs(lhs - total)))


def check_eigenbasis(spec: SymmetricTreeSpec, basis_cap: int = 100_000) -> CheckResult:
    """Residual certificates plus full rank of the constructed basis."""
    basis = full_eigenbasis(spec, basis_cap=basis_cap)
    scales = np.max(np.abs(basis.vectors), axis=1)
    rel = float(np.max(basis.residuals / scales)) if basis.n else 0.0
    ok = rel <= RESIDUAL_TOL and basis.n == spec.vertex_count() and basis.full_rank(RANK_THRESHOLD)
    return CheckResult("eigenbasis_certificate", ok, rel)


def check_nodal(
    spec: SymmetricTreeSpec, oracle_cap: int = DEFAULT_ORACLE_CAP
) -> tuple[CheckResult, CheckResult]:
    """Courant bound and zero-free equality on all oracle eigenpairs."""
    index = build_index(spec)
    tree = RootedTree.from_index(index)
    vals, vecs = dense_eigen(assemble(index).to_dense(), cap=oracle_cap)
    courant = courant_check(tree, vals, vecs)
    zf = zero_free_check(tree, vals, vecs)
    c_ok = all(r.passed for r in courant)
    z_ok = all(r.passed for r in zf if r.checked)
    return (
        CheckResult("courant_bound", c_ok, 0.0 if c_ok else 1.0),
        CheckResult("zero_free_equality", z_ok, 0.0 if z_ok else 1.0),
    )


def check_multiplicity_bound(
    spec: SymmetricTreeSpec, tol: float = SPECTRUM_TOL, oracle_cap: int = DEFAULT_ORACLE_CAP
) -> CheckResult:
    """Oracle multiplicity of each deep-level eigenvalue meets the
    population-difference lower bound."""
    lap = assemble(build_index(spec))
    vals, _ = dense_eigen(lap.to_dense(), cap=oracle_cap)
    worst = 0.0
    ok = True
    for s in decompose_spectrum(spec):
        if s.origin_level < 1:
            continue
        mult = int(np.sum(np.abs(vals - s.value) <= tol))
        if mult < s.multiplicity:
            ok = False
            worst = max(worst, float(s.multiplicity - mult))
    return CheckResult("multiplicity_lower_bound", ok, worst)


def check_glued_oracle(
    spec: GluedTreeSpec, tol: float = SPECTRUM_TOL, oracle_cap: int = DEFAULT_ORACLE_CAP
) -> CheckResult:
    fast = expanded_glued_spectrum(glued_spectrum(spec))
    tree = realize_glued(spec)
    vals, _ = dense_eigen(assemble(tree).to_dense(), cap=oracle_cap)
    dev = float(np.max(np.abs(fast - vals))) if len(vals) else 0.0
    return CheckResult("glued_spectrum_oracle", dev <= tol, dev)


def run_all_checks(
    spec: SymmetricTreeSpec | GluedTreeSpec,
    tol: float = SPECTRUM_TOL,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    basis_cap: int = 100_000,
) -> list[CheckResult]:
    """The full verification battery for one spec."""
    if isinstance(spec, GluedTreeSpec):
        glued = check_glued_oracle(spec, tol, oracle_cap)
        left_count = counting_identity(spec.left)
        right_count = counting_identity(spec.right)
        count_ok = left_count[0] == left_count[1] and right_count[0] == right_count[1]
        return [glued, CheckResult("counting_identity", count_ok, 0.0)]
    results = [
        check_spectrum_oracle(spec, tol, oracle_cap),
        check_counting(spec),
        check_eigenbasis(spec, basis_cap),
    ]
    results.extend(check_nodal(spec, oracle_cap))
    results.append(check_multiplicity_bound(spec, tol, oracle_cap))
    return results
