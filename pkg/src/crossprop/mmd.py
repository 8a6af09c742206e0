"""Domain-discrepancy coefficient matrices.

For samples ordered source-first, the marginal coefficient matrix ``M0``
satisfies ``tr(Z M0 Z.T) = ||mean(Z_s) - mean(Z_t)||^2`` for any projected
sample matrix ``Z`` with samples as columns, i.e. it turns the empirical
maximum mean discrepancy between domains into a quadratic form.  The
class-conditional matrix does the same per class, using pseudo-labels on the
target side.  All constructors return symmetric positive semi-definite
matrices with zero row sums.
"""

import numpy as np

from .exceptions import ArgumentError, LabelError, ShapeError


def marginal_mmd(n_source, n_target):
    """Marginal domain-discrepancy matrix of shape ``(n, n)``.

    Entries are ``1/n_s^2`` on the source block, ``1/n_t^2`` on the target
    block and ``-1/(n_s * n_t)`` on the cross blocks.
    """
    if n_source < 1 or n_target < 1:
        raise ArgumentError("marginal_mmd needs at least one sample per domain")
    e = np.concatenate(
        [np.full(n_source, 1.0 / n_source), np.full(n_target, -1.0 / n_target)]
    )
    return np.outer(e, e)


def conditional_mmd(source_labels, target_pseudo_labels, n_classes):
    """Class-conditional domain-discrepancy matrix.

    For each class ``c`` with ``a`` source members and ``b`` target members
    (by pseudo-label), the class indicator vector with entries ``1/a`` on
    source members and ``-1/b`` on target members contributes its outer
    product.  Classes missing from either domain are skipped.

    Parameters
    ----------
    source_labels : ndarray of shape (n_s,)
        True source labels.
    target_pseudo_labels : ndarray of shape (n_t,)
        Current target label estimates (true labels may be substituted for
        any labeled target prefix).
    n_classes : int
        Number of classes.

    Returns
    -------
    M : ndarray of shape (n_s + n_t, n_s + n_t)
    """
    source_labels = np.asarray(source_labels, dtype=int)
    target_pseudo_labels = np.asarray(target_pseudo_labels, dtype=int)
    for labels in (source_labels, target_pseudo_labels):
        if labels.size and (labels.min() < 0 or labels.max() >= n_classes):
            raise LabelError("labels must lie in [0, n_classes)")
    n_s = source_labels.size
    n_t = target_pseudo_labels.size
    n = n_s + n_t
    M = np.zeros((n, n))
    for c in range(n_classes):
        src = np.flatnonzero(source_labels == c)
        tgt = np.flatnonzero(target_pseudo_labels == c)
        if src.size == 0 or tgt.size == 0:
            continue
        e = np.zeros(n)
        e[src] = 1.0 / src.size
        e[n_s + tgt] = -1.0 / tgt.size
        M += np.outer(e, e)
    return M


def combined_mmd(M0, Mc):
    """Marginal plus conditional matrix, scaled to unit Frobenius norm.

    Returns the zero matrix if the sum itself is zero.
    """
    M0 = np.asarray(M0, dtype=float)
    Mc = np.asarray(Mc, dtype=float)
    if M0.shape != Mc.shape:
        raise ShapeError(f"mismatched shapes {M0.shape} and {Mc.shape}")
    M = M0 + Mc
    norm = np.linalg.norm(M, "fro")
    if norm > 0.0:
        M = M / norm
    return M


def discrepancy_matrix(source_labels, target_pseudo_labels, n_classes):
    """Combined matrix straight from the label vectors (marginal + conditional)."""
    source_labels = np.asarray(source_labels, dtype=int)
    target_pseudo_labels = np.asarray(target_pseudo_labels, dtype=int)
    M0 = marginal_mmd(source_labels.size, target_pseudo_labels.size)
    Mc = conditional_mmd(source_labels, target_pseudo_labels, n_classes)
    return combined_mmd(M0, Mc)
