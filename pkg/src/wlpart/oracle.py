"""Slow, independent reference computations.

These exist to validate the fast paths and are deliberately written with no
shared code: partition objectives by exhaustive enumeration (toy sizes), and
a full dense eigendecomposition by cyclic Jacobi rotations (no LAPACK).  The
oracle ships with the package so acceptance checks can rerun anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import DoublyWeightedGraph, GraphError, Partition

__all__ = [
    "ExhaustiveResult",
    "brute_min_wcut",
    "brute_min_ncut",
    "dense_eig_reference",
    "MAX_BRUTE_N",
    "MAX_JACOBI_N",
]

MAX_BRUTE_N = 14
MAX_JACOBI_N = 300


@dataclass(frozen=True)
class ExhaustiveResult:
    """Best partition found, its objective value, and how many candidates
    were evaluated."""

    partition: Partition
    value: float
    candidates: int


def _surjective_assignments(n: int, k: int):
    """All assignments of n items to exactly k nonempty blocks, one per
    equivalence class under label permutation (restricted growth strings)."""
    a = np.zeros(n, dtype=np.int64)

    def rec(i: int, mx: int):
        if i == n:
            if mx == k - 1:
                yield a
            return
        top = min(mx + 1, k - 1)
        for label in range(top + 1):
            new_mx = mx if label <= mx else label
            # prune branches that can no longer reach k labels
            if (k - 1 - new_mx) <= (n - i - 1):
                a[i] = label
                yield from rec(i + 1, new_mx)

    if k >= 1 and n >= k:
        yield from rec(1, 0)


def _brute_minimize(g: DoublyWeightedGraph, k: int, denominators: np.ndarray) -> ExhaustiveResult:
    if g.n > MAX_BRUTE_N:
        raise GraphError(f"exhaustive search is limited to n <= {MAX_BRUTE_N}")
    if not (1 <= k <= g.n):
        raise GraphError(f"k must lie in 1..{g.n}")
    src = g.row_index()
    dst = g.indices
    w = g.weights
    best_val = np.inf
    best = None
    count = 0
    for lab in _surjective_assignments(g.n, k):
        count += 1
        crossing = lab[src] != lab[dst]
        boundary = np.bincount(lab[src][crossing], weights=w[crossing], minlength=k)
        denom = np.bincount(lab, weights=denominators, minlength=k)
        if np.any(denom == 0):
            continue  # objective undefined for this candidate
        val = float((boundary / denom).sum())
        if val < best_val:
            best_val = val
            best = lab.copy()
    if best is None:
        raise GraphError("no candidate partition has well-defined block volumes")
    return ExhaustiveResult(Partition(best, k), best_val, count)


def brute_min_wcut(g: DoublyWeightedGraph, k: int) -> ExhaustiveResult:
    """Exact minimum of the vertex-weight-normalized cut over all partitions
    into exactly k nonempty blocks."""
    return _brute_minimize(g, k, np.asarray(g.vertex_weights))


def brute_min_ncut(g: DoublyWeightedGraph, k: int) -> ExhaustiveResult:
    """Exact minimum of the degree-normalized cut over all partitions into
    exactly k nonempty blocks."""
    return _brute_minimize(g, k, np.asarray(g.degrees))


def dense_eig_reference(matrix, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Full spectrum of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, eigenvectors as columns).  Deterministic,
    no randomness, no LAPACK: this is the independent cross-check for the
    production eigensolver.  Limited to n <= 300.
    """
    a = np.array(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    n = a.shape[0]
    if n > MAX_JACOBI_N:
        raise ValueError(f"reference eigensolver is limited to n <= {MAX_JACOBI_N}")
    scale = float(np.linalg.norm(a))
    if float(np.abs(a - a.T).max(initial=0.0)) > 1e-12 * max(1.0, scale):
        raise ValueError("matrix is not symmetric")
    a = (a + a.T) / 2.0
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v

    def offdiag_norm():
        # computed from the off-diagonal entries themselves; the classic
        # "total minus diagonal" shortcut cancels catastrophically near
        # convergence and stalls the sweep loop
        b = a.copy()
        np.fill_diagonal(b, 0.0)
        return float(np.linalg.norm(b))

    tol = max(n, 4) * 1e-15 * max(scale, 1e-300)
    skip = 1e-20 * max(scale, 1e-300)
    for _ in range(max_sweeps):
        if offdiag_norm() <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                a[p, q] = a[q, p] = 0.0  # exact by the rotation's construction
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
    if offdiag_norm() > tol:
        raise RuntimeError(f"Jacobi sweeps did not converge in {max_sweeps} sweeps")

    order = np.argsort(a.diagonal(), kind="stable")
    return a.diagonal()[order].copy(), v[:, order]
