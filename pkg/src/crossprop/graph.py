"""Adaptive affinity-graph construction with closed-form row updates.

Each graph row solves, over a probability simplex, the problem

    min_s  sum_j cost[j] * s[j] + lam * sum_j s[j]**2
    s.t.   sum_j s[j] = mass,  s >= 0,

where ``lam`` is pinned so that the solution keeps exactly ``k`` nonzero
entries: with block costs sorted ascending as ``a[0] <= a[1] <= ...``,

    lam = (k * a[k] - sum(a[:k])) / (2 * mass).

Substituting this multiplier back into the KKT conditions gives the direct
formula implemented by :func:`_block_weights`; no iterative optimization is
involved.  Rows fall into two regimes:

* Target rows spend their whole unit mass over all other samples.
* Source rows are split: a ``delta`` share goes to same-class source
  neighbours (cross-class source pairs are excluded outright, which keeps
  the source part of the graph exactly block-diagonal by class) and the
  remaining ``1 - delta`` share to target neighbours.

Graphs are stored row-wise as ``(columns, weights)`` pairs; a dense matrix is
materialized only for Laplacian assembly and inspection.
"""

import sys
from dataclasses import dataclass

import numpy as np

from .exceptions import ShapeError
from .linalg import pairwise_sq_dists

DEGENERATE_DENOM = 1e-12


@dataclass
class AffinityGraph:
    """Row-stochastic affinity graph in sparse row storage.

    ``rows[i]`` is a ``(columns, weights)`` pair with strictly positive
    weights summing to one.  ``structured`` records whether source rows were
    built with the class-block / ``delta`` split.
    """

    rows: list
    n_samples: int
    n_source: int
    k: int
    delta: float
    structured: bool

    def toarray(self):
        """Dense ``(n, n)`` matrix of the stored rows."""
        S = np.zeros((self.n_samples, self.n_samples))
        for i, (cols, weights) in enumerate(self.rows):
            S[i, cols] = weights
        return S


def affinity_cost(Z, F, beta, source_labels=None):
    """Pairwise cost matrix combining feature and soft-label distances.

    Parameters
    ----------
    Z : ndarray of shape (d, n)
        Current sample representation, columns as samples.
    F : ndarray of shape (n, C) or None
        Current soft labels; when ``None`` the label term is omitted.
    beta : float
        Weight of the soft-label distance term.
    source_labels : ndarray of shape (n_s,), optional
        When given, entries between source samples of different classes are
        masked to ``+inf`` (the block-diagonal constraint).

    Returns
    -------
    A : ndarray of shape (n, n)
        ``A[i, j] = ||Z[:,i] - Z[:,j]||^2 + beta * ||F[i] - F[j]||^2`` with
        an ``+inf`` diagonal and ``+inf`` on masked pairs.
    """
    Z = np.asarray(Z, dtype=float)
    n = Z.shape[1]
    if F is not None and np.asarray(F).shape[0] != n:
        raise ShapeError("soft labels must have one row per sample")
    if source_labels is not None and np.asarray(source_labels).size > n:
        raise ShapeError("more source labels than samples")
    A = pairwise_sq_dists(Z)
    if F is not None and beta != 0.0:
        A = A + beta * pairwise_sq_dists(np.asarray(F, dtype=float).T)
    if source_labels is not None:
        source_labels = np.asarray(source_labels, dtype=int)
        n_s = source_labels.size
        cross = source_labels[:, None] != source_labels[None, :]
        A[:n_s, :n_s][cross] = np.inf
    np.fill_diagonal(A, np.inf)
    return A


def _block_weights(costs, k):
    """Unit-mass weights over one candidate block.

    ``costs`` holds the finite costs of the candidates.  In the generic case
    (``len(costs) > k``) the closed form above yields at most ``k`` nonzero
    weights.  Small blocks (``len(costs) <= k``) keep every candidate with
    uniform weight, and a degenerate denominator (the ``k + 1`` nearest
    costs all equal) falls back to uniform weight on the ``k`` nearest,
    ties resolved by ascending candidate position.
    """
    q = costs.size
    if q == 0:
        return costs.copy()
    if q == 1:
        return np.ones(1)
    if k >= q:
        return np.full(q, 1.0 / q)
    order = np.argsort(costs, kind="stable")
    ranked = costs[order]
    boundary = ranked[k]
    denom = k * boundary - ranked[:k].sum()
    if denom <= DEGENERATE_DENOM:
        w = np.zeros(q)
        w[order[:k]] = 1.0 / k
        return w
    return np.maximum((boundary - costs) / denom, 0.0)


def block_multiplier(costs, k, mass):
    """Implicit quadratic multiplier of one block's row subproblem.

    Returns the ``lam`` under which :func:`_block_weights` is the exact
    minimizer.  Blocks handled by a uniform fallback carry no quadratic
    charge (``lam = 0``).
    """
    q = costs.size
    if q <= 1 or k >= q:
        return 0.0
    ranked = np.sort(costs, kind="stable")
    denom = k * ranked[k] - ranked[:k].sum()
    if denom <= DEGENERATE_DENOM:
        return 0.0
    return denom / (2.0 * mass)


def _collect(cols, weights):
    keep = weights > 0.0
    return cols[keep], weights[keep]


def update_target_rows(A, k, n_source):
    """Closed-form rows for the target samples.

    Each target row spends unit mass over all other samples (source and
    target alike) with at most ``k`` nonzero weights.

    Returns
    -------
    rows : list of (columns, weights) pairs, one per target sample.
    """
    n = A.shape[0]
    rows = []
    for i in range(n_source, n):
        cands = np.flatnonzero(np.isfinite(A[i]))
        weights = _block_weights(A[i, cands], k)
        rows.append(_collect(cands, weights))
    return rows


def update_source_rows(A, k, delta, source_labels):
    """Closed-form rows for the source samples.

    The same-class source block receives mass ``delta`` with at most
    ``min(k, class_size - 1)`` neighbours (the class block excludes the
    sample itself); the target block receives mass ``1 - delta`` with at
    most ``k`` neighbours.  A source sample whose class has no other member
    puts its entire mass on the target block, keeping the row stochastic.

    Returns
    -------
    rows : list of (columns, weights) pairs, one per source sample.
    """
    n = A.shape[0]
    n_s = np.asarray(source_labels).size
    target_cols = np.arange(n_s, n)
    rows = []
    for i in range(n_s):
        src_cands = np.flatnonzero(np.isfinite(A[i, :n_s]))
        src_weights = _block_weights(A[i, src_cands], k)
        tgt_weights = _block_weights(A[i, target_cols], k)
        src_mass = delta if src_cands.size else 0.0
        cols = np.concatenate([src_cands, target_cols])
        weights = np.concatenate(
            [src_mass * src_weights, (1.0 - src_mass) * tgt_weights]
        )
        rows.append(_collect(cols, weights))
    return rows


def build_graph(A, k, delta, source_labels, structured=True):
    """Assemble an :class:`AffinityGraph` from a cost matrix.

    With ``structured=True`` source rows use the class-block / ``delta``
    split and target rows the plain update.  With ``structured=False`` every
    row is treated like a target row (unit mass over all finite candidates).
    """
    n = A.shape[0]
    n_s = np.asarray(source_labels).size if source_labels is not None else 0
    if structured:
        rows = update_source_rows(A, k, delta, source_labels)
        rows += update_target_rows(A, k, n_s)
    else:
        rows = update_target_rows(A, k, 0)
    return AffinityGraph(
        rows=rows,
        n_samples=n,
        n_source=n_s,
        k=k,
        delta=delta,
        structured=structured,
    )


def init_graph(X, k, delta, source_labels, structured=True):
    """Initial graph built from raw-feature distances only (no label term)."""
    A = affinity_cost(X, None, 0.0, source_labels if structured else None)
    return build_graph(A, k, delta, source_labels, structured=structured)


def gaussian_knn_graph(Z, k, n_source, width=1.0):
    """Fixed k-nearest-neighbour graph with Gaussian kernel weights.

    Weights are ``exp(-dist^2 / (2 * width^2))`` over each sample's ``k``
    nearest neighbours, normalized to unit row sums.  This is the
    predefined-similarity alternative to the self-learned graph.
    """
    D = pairwise_sq_dists(Z)
    np.fill_diagonal(D, np.inf)
    n = D.shape[0]
    k_eff = min(k, n - 1)
    rows = []
    for i in range(n):
        cols = np.argsort(D[i], kind="stable")[:k_eff]
        cols = np.sort(cols)
        weights = np.exp(-D[i, cols] / (2.0 * width**2))
        total = weights.sum()
        if total <= 0.0:
            weights = np.full(cols.size, 1.0 / cols.size)
        else:
            weights = weights / total
        rows.append((cols, weights))
    return AffinityGraph(
        rows=rows,
        n_samples=n,
        n_source=n_source,
        k=k_eff,
        delta=0.0,
        structured=False,
    )


def laplacian(graph):
    """Symmetrized affinity and its combinatorial Laplacian.

    Parameters
    ----------
    graph : AffinityGraph or ndarray
        Row-stochastic affinity matrix (sparse rows or dense).

    Returns
    -------
    W : ndarray of shape (n, n)
        ``(S + S.T) / 2``, symmetric with zero diagonal.
    L : ndarray of shape (n, n)
        ``diag(W @ 1) - W``.  Callers that need a scale-free Laplacian can
        divide by ``numpy.linalg.norm(L, 'fro')``.
    """
    S = graph.toarray() if isinstance(graph, AffinityGraph) else np.asarray(graph)
    W = (S + S.T) / 2.0
    L = np.diag(W.sum(axis=1)) - W
    return W, L


def quadratic_charge(A, graph):
    """Total quadratic regularization ``sum_i sum_b lam_{i,b} * ||row block||^2``.

    Multipliers are recomputed from the cost matrix ``A`` exactly as the row
    updates pin them, block by block, so the value is consistent with the
    row subproblems the graph solves.
    """
    n_s = graph.n_source if graph.structured else 0
    total = 0.0
    for i, (cols, weights) in enumerate(graph.rows):
        if graph.structured and i < n_s:
            src_cands = np.flatnonzero(np.isfinite(A[i, :n_s]))
            src_mass = graph.delta if src_cands.size else 0.0
            blocks = [
                (src_cands, src_mass),
                (np.arange(n_s, graph.n_samples), 1.0 - src_mass),
            ]
        else:
            blocks = [(np.flatnonzero(np.isfinite(A[i])), 1.0)]
        for cands, mass in blocks:
            if mass <= 0.0 or cands.size == 0:
                continue
            lam = block_multiplier(A[i, cands], graph.k, mass)
            if lam == 0.0:
                continue
            inside = np.isin(cols, cands)
            total += lam * float(np.sum(weights[inside] ** 2))
    return total


def write_edges(graph, sink=None):
    """Write ``i j w`` triples sorted by ``(i, j)`` with 12-digit weights.

    ``sink`` is a writable text stream or a path; defaults to stdout.
    """
    if sink is None:
        sink = sys.stdout
    if isinstance(sink, (str, bytes)):
        with open(sink, "w") as fh:
            write_edges(graph, fh)
            return
    for i, (cols, weights) in enumerate(graph.rows):
        order = np.argsort(cols, kind="stable")
        for j, w in zip(cols[order], weights[order]):
            sink.write(f"{i} {j} {w:.12g}\n")
