"""Smallest eigenpairs of the weighted Laplacian.

Two paths behind one call: a dense direct solve up to ``DENSE_CUTOFF``
vertices, and for larger operators a seeded Lanczos iteration with full
reorthogonalization.  The iterative path runs on the shifted operator
B = sigma*I - L_M (sigma = Gershgorin upper bound) so the wanted smallest
eigenvalues of L_M become the dominant ones of B, locks converged Ritz pairs,
and restarts from fresh random vectors in the orthogonal complement — the
restarts are what recover multiple eigenvalues (e.g. one zero per connected
component), which a single Krylov sequence cannot see.

Convergence: explicit residuals ||L x - lambda x|| <= tol * max(1, sigma).
Everything is deterministic for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import GraphError
from .laplacian import WeightedLaplacian

__all__ = ["SpectralEmbedding", "EigenSolverError", "smallest_k",
           "DENSE_CUTOFF", "RESTARTS_PER_PAIR"]

DENSE_CUTOFF = 1024
RESTARTS_PER_PAIR = 50


@dataclass(frozen=True)
class SpectralEmbedding:
    """Eigenvalues (ascending) and the matching orthonormal eigenvector
    columns."""

    eigenvalues: np.ndarray
    vectors: np.ndarray

    @property
    def k(self) -> int:
        return self.eigenvalues.size


class EigenSolverError(RuntimeError):
    """Iteration budget exhausted; ``residuals`` holds the best per-pair
    residual norms seen."""

    def __init__(self, message: str, residuals=None):
        super().__init__(message)
        self.residuals = residuals


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    # deterministic orientation: largest-magnitude entry of each column >= 0
    for col in range(vectors.shape[1]):
        lead = int(np.argmax(np.abs(vectors[:, col])))
        if vectors[lead, col] < 0:
            vectors[:, col] = -vectors[:, col]
    return vectors


def smallest_k(lap: WeightedLaplacian, k: int, seed: int = 0,
               dense_cutoff: int = DENSE_CUTOFF, tol: float = 1e-8) -> SpectralEmbedding:
    """k smallest eigenpairs of L_M.

    Dense direct solve for n <= dense_cutoff, Lanczos beyond.  Raises
    GraphError for k outside 1..n and EigenSolverError when the iterative
    path exhausts its restart budget without meeting the residual tolerance.
    """
    n = lap.n
    if not (1 <= k <= n):
        raise GraphError(f"k must lie in 1..{n}, got {k}")
    if n <= dense_cutoff:
        vals, vecs = np.linalg.eigh(lap.dense())
        return SpectralEmbedding(vals[:k].copy(), _fix_signs(vecs[:, :k].copy()))
    return _lanczos_smallest(lap, k, seed, tol)


# ------------------------------------------------------------- Lanczos path


def _orthogonalize(w: np.ndarray, basis: np.ndarray) -> np.ndarray:
    if basis.shape[1]:
        w = w - basis @ (basis.T @ w)
    return w


def _lanczos_cycle(bmv, locked: np.ndarray, m_cap: int, rng, n: int):
    """Grow one reorthogonalized Krylov basis in the complement of `locked`;
    return Ritz values (descending) and Ritz vectors."""
    q = _orthogonalize(rng.standard_normal(n), locked)
    norm_q = np.linalg.norm(q)
    if norm_q < 1e-12:
        return np.empty(0), np.empty((n, 0))
    basis = np.zeros((n, m_cap))
    basis[:, 0] = q / norm_q
    alphas: list[float] = []
    betas: list[float] = []
    j = 0
    while True:
        w = bmv(basis[:, j])
        alphas.append(float(basis[:, j] @ w))
        w = w - alphas[-1] * basis[:, j]
        if j > 0:
            w = w - betas[-1] * basis[:, j - 1]
        for _ in range(2):  # full reorthogonalization, two passes
            w = _orthogonalize(w, locked)
            w = _orthogonalize(w, basis[:, :j + 1])
        beta = float(np.linalg.norm(w))
        j += 1
        if j == m_cap or beta < 1e-12:
            break
        betas.append(beta)
        basis[:, j] = w / beta
    t = np.diag(alphas)
    if betas:
        t += np.diag(betas, 1) + np.diag(betas, -1)
    theta, s = np.linalg.eigh(t)
    order = np.argsort(theta)[::-1]
    return theta[order], basis[:, :j] @ s[:, order]


def _lanczos_smallest(lap: WeightedLaplacian, k: int, seed: int,
                      tol: float) -> SpectralEmbedding:
    n = lap.n
    rng = np.random.default_rng(seed)
    sigma = lap.gershgorin_upper()
    tol_abs = tol * max(1.0, sigma)

    def bmv(x):
        return sigma * x - lap.matvec(x)

    locked = np.zeros((n, 0))
    locked_theta: list[float] = []
    budget = RESTARTS_PER_PAIR * k
    restarts = 0
    m_cap = min(n, max(4 * k + 80, 120))
    last_residuals: list[float] = []

    def spend_restart(stage: str):
        nonlocal restarts
        restarts += 1
        if restarts > budget:
            raise EigenSolverError(
                f"{stage}: no convergence within {budget} restarts "
                f"(locked {len(locked_theta)}/{k} pairs)",
                residuals=last_residuals)

    def lock(vec: np.ndarray, theta_val: float) -> bool:
        nonlocal locked
        vec = _orthogonalize(vec, locked)
        norm_vec = float(np.linalg.norm(vec))
        if norm_vec < 0.5:  # numerically dependent on the locked space
            return False
        locked = np.hstack([locked, (vec / norm_vec)[:, None]])
        locked_theta.append(float(theta_val))
        return True

    # Phase 1: lock converged Ritz pairs, largest shifted eigenvalue first.
    while len(locked_theta) < k:
        spend_restart("locking")
        theta, y = _lanczos_cycle(bmv, locked, m_cap, rng, n)
        last_residuals = []
        progressed = False
        for i in range(theta.size):
            resid = float(np.linalg.norm(bmv(y[:, i]) - theta[i] * y[:, i]))
            last_residuals.append(resid)
            if resid > tol_abs:
                break  # only a converged prefix is trustworthy
            progressed |= lock(y[:, i], theta[i])
            if len(locked_theta) == k:
                break
        if not progressed:
            m_cap = min(n, int(m_cap * 3 // 2) + 10)  # try a longer recurrence

    # Phase 2: verify no larger shifted eigenvalue hides in the complement
    # (this is what catches multiple eigenvalues missed by one Krylov run).
    while True:
        spend_restart("verification")
        theta, y = _lanczos_cycle(bmv, locked, m_cap, rng, n)
        if theta.size == 0 or theta[0] <= min(locked_theta) + tol_abs:
            break  # complement holds nothing better: done
        resid = float(np.linalg.norm(bmv(y[:, 0]) - theta[0] * y[:, 0]))
        last_residuals = [resid]
        if resid <= tol_abs:
            drop = int(np.argmin(locked_theta))
            locked = np.delete(locked, drop, axis=1)
            del locked_theta[drop]
            lock(y[:, 0], theta[0])
        else:
            m_cap = min(n, int(m_cap * 3 // 2) + 10)

    lam = sigma - np.asarray(locked_theta)
    order = np.argsort(lam, kind="stable")
    return SpectralEmbedding(lam[order], _fix_signs(locked[:, order]))
