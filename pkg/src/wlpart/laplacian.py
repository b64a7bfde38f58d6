"""The vertex-weighted graph Laplacian L_M = M^{-1/2} (D - W) M^{-1/2}.

Entrywise: off-diagonal (i, j) is -W_ij / sqrt(m_i m_j), diagonal (i, i) is
(d_i - W_ii) / m_i, so self-loops cancel and never change the operator.
M = I recovers the combinatorial Laplacian D - W; M = D recovers the
normalized Laplacian I - D^{-1/2} W D^{-1/2}.

Convention note: the Rayleigh quotient pairs with the M-weighted inner
product <f, g> = sum_x f(x) g(x) m_x, and its numerator is the edge energy

    E(f) = 1/2 * sum_{x,y} W_xy (f(x) - f(y))^2

with each undirected edge counted once (the ordered double sum halved).
Under this convention E(1_C) = Cut(C, complement) exactly, which makes
rayleigh(indicator of C) = Cut(C, C-bar) / mvol(C); a per-endpoint gradient
sum would double-count every edge.  The equality is pinned by tests against
the exhaustive cut oracle.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .graph import DoublyWeightedGraph, GraphError

__all__ = ["WeightedLaplacian", "build", "rayleigh", "DENSE_LIMIT"]

DENSE_LIMIT = 4096


class WeightedLaplacian:
    """Sparse symmetric PSD operator for a doubly-weighted graph.

    Stored as the graph's CSR adjacency plus precomputed m^{-1/2}; matvecs
    never materialize the matrix.  ``dense()`` is available up to
    DENSE_LIMIT vertices for direct eigensolves and tests.
    """

    __slots__ = ("graph", "n", "inv_sqrt_m", "diag", "_off")

    def __init__(self, graph: DoublyWeightedGraph):
        self.graph = graph
        n = self.n = graph.n
        self.inv_sqrt_m = 1.0 / np.sqrt(graph.vertex_weights)
        row = graph.row_index()
        off = row != graph.indices
        # diagonal as the off-diagonal row sum over m: equals (d_i - W_ii)/m_i
        # without the cancelling subtraction, and makes self-loop invariance
        # exact rather than up-to-rounding
        off_rows = row[off]
        off_deg = np.bincount(off_rows, weights=graph.weights[off], minlength=n)
        self.diag = off_deg / graph.vertex_weights
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(off_rows, minlength=n), out=indptr[1:])
        self._off = sp.csr_matrix(
            (graph.weights[off], graph.indices[off], indptr), shape=(n, n))

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """L_M @ x without materializing the matrix."""
        x = np.asarray(x, dtype=np.float64)
        return self.diag * x - self.inv_sqrt_m * (self._off @ (self.inv_sqrt_m * x))

    def dense(self) -> np.ndarray:
        """Entrywise materialization (n <= DENSE_LIMIT)."""
        if self.n > DENSE_LIMIT:
            raise GraphError(
                f"dense materialization limited to n <= {DENSE_LIMIT}, got {self.n}")
        g = self.graph
        row = g.row_index()
        out = np.zeros((self.n, self.n))
        off = row != g.indices
        src, dst = row[off], g.indices[off]
        # s_i * s_j first: commutative, so the (i, j) and (j, i) entries are
        # bit-identical and the materialization is exactly symmetric
        out[src, dst] = -g.weights[off] * (self.inv_sqrt_m[src] * self.inv_sqrt_m[dst])
        out[np.arange(self.n), np.arange(self.n)] = self.diag
        return out

    def gershgorin_upper(self) -> float:
        """Upper bound for the largest eigenvalue from Gershgorin discs."""
        g = self.graph
        row = g.row_index()
        off = row != g.indices
        src, dst = row[off], g.indices[off]
        radius = np.zeros(self.n)
        np.add.at(radius, src,
                  g.weights[off] * (self.inv_sqrt_m[src] * self.inv_sqrt_m[dst]))
        return float((self.diag + radius).max(initial=0.0))


def build(g: DoublyWeightedGraph) -> WeightedLaplacian:
    """Weighted Laplacian of g (M from g.vertex_weights, D from its degrees)."""
    return WeightedLaplacian(g)


def rayleigh(lap: WeightedLaplacian, f) -> float:
    """Rayleigh quotient of f: edge energy over the M-weighted squared norm.

    Numerator counts each undirected edge once (see module docstring); the
    denominator is <f, f> = sum_x f(x)^2 m_x.  Zero f is rejected.
    """
    f = np.asarray(f, dtype=np.float64)
    g = lap.graph
    if f.shape != (g.n,):
        raise GraphError(f"f must have shape ({g.n},)")
    denom = float((f * f * g.vertex_weights).sum())
    if denom == 0.0:
        raise GraphError("rayleigh quotient of the zero function")
    diff = f[g.row_index()] - f[g.indices]
    num = 0.5 * float((g.weights * diff * diff).sum())
    return num / denom
