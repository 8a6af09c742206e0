"""Harmonic label propagation on clamped graphs."""

import numpy as np
import numpy.testing as npt

import crossprop as cp

from conftest import fixed_point_propagation, random_connected_weights


def laplacian_of(W):
    return np.diag(W.sum(axis=1)) - W


class TestHarmonicSolve:
    def test_single_edge_copies_the_clamp(self):
        W = np.array([[0.0, 1.0], [1.0, 0.0]])
        clamped = np.array([[1.0, 0.0]])
        F = cp.harmonic_solve(laplacian_of(W), clamped)
        npt.assert_allclose(F, [[1.0, 0.0]], atol=1e-12)

    def test_equidistant_node_averages_two_clamps(self):
        # Node 2 is linked equally to a class-0 clamp and a class-1 clamp.
        W = np.zeros((3, 3))
        W[0, 2] = W[2, 0] = 1.0
        W[1, 2] = W[2, 1] = 1.0
        clamped = np.eye(2)
        F = cp.harmonic_solve(laplacian_of(W), clamped)
        npt.assert_allclose(F, [[0.5, 0.5]], atol=1e-12)

    def test_chain_interpolates_linearly(self):
        # Path 0-1-2-3 with ends clamped to opposite classes: interior
        # scores follow the resistive-divider profile 2/3, 1/3.
        W = np.zeros((4, 4))
        for i in range(3):
            W[i, i + 1] = W[i + 1, i] = 1.0
        perm = [0, 3, 1, 2]  # clamped nodes first
        Wp = W[np.ix_(perm, perm)]
        clamped = np.eye(2)
        F = cp.harmonic_solve(laplacian_of(Wp), clamped)
        npt.assert_allclose(F, [[2.0 / 3.0, 1.0 / 3.0], [1.0 / 3.0, 2.0 / 3.0]], atol=1e-10)

    def test_agrees_with_fixed_point_iteration(self, rng):
        for _ in range(8):
            n = int(rng.integers(6, 14))
            n_c = int(rng.integers(2, 4))
            W = random_connected_weights(rng, n, extra_edges=n)
            clamped = np.eye(3)[rng.integers(0, 3, size=n_c)]
            L = laplacian_of(W)
            F = cp.harmonic_solve(L, clamped)
            F_iter = fixed_point_propagation(W, clamped)
            assert np.max(np.abs(F - F_iter)) <= 1e-8

    def test_scores_form_row_distributions(self, rng):
        for _ in range(5):
            n = int(rng.integers(8, 16))
            W = random_connected_weights(rng, n, extra_edges=2 * n)
            clamped = np.eye(3)[rng.integers(0, 3, size=4)]
            F = cp.harmonic_solve(laplacian_of(W), clamped)
            npt.assert_allclose(F.sum(axis=1), 1.0, atol=1e-8)
            assert np.all(F >= -1e-10)
            assert np.all(F <= 1.0 + 1e-10)

    def test_solution_minimizes_dirichlet_energy(self, rng):
        W = random_connected_weights(rng, 10, extra_edges=12)
        L = laplacian_of(W)
        clamped = np.eye(2)[np.array([0, 1, 0])]
        F = cp.harmonic_solve(L, clamped)
        full = np.vstack([clamped, F])

        def energy(G):
            return float(np.trace(G.T @ L @ G))

        base = energy(full)
        for _ in range(20):
            bump = np.zeros_like(full)
            i = int(rng.integers(3, 10))
            j = int(rng.integers(0, 2))
            bump[i, j] = rng.choice([-1e-3, 1e-3])
            assert energy(full + bump) >= base - 1e-10

    def test_disconnected_free_node_degrades_to_zero_scores(self):
        # A free node with no edges has no evidence for any class; the
        # regularized solve leaves its scores at zero instead of failing.
        W = np.zeros((3, 3))
        W[0, 1] = W[1, 0] = 1.0  # node 2 floats free
        F = cp.harmonic_solve(laplacian_of(W), np.array([[1.0, 0.0]]))
        npt.assert_allclose(F[0], [1.0, 0.0], atol=1e-6)
        npt.assert_allclose(F[1], [0.0, 0.0], atol=1e-12)


class TestDecideLabels:
    def test_argmax_per_row(self):
        F = np.array([[0.2, 0.8], [0.9, 0.1], [0.4, 0.6]])
        npt.assert_array_equal(cp.decide_labels(F), [1, 0, 1])

    def test_tie_takes_lowest_index(self):
        F = np.array([[0.5, 0.5], [0.3, 0.3]])
        npt.assert_array_equal(cp.decide_labels(F), [0, 0])

    def test_empty_input(self):
        assert cp.decide_labels(np.zeros((0, 3))).size == 0
