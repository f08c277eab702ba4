import math

import numpy as np
import pytest

from circjoin import smalleig
from circjoin.errors import ConvergenceError, IllConditionedError, PreconditionError

from corpus import inf_norm, multiset_match


def flat(pairs):
    out = []
    for lam, mult in pairs:
        out.extend([lam] * mult)
    return out


def random_complex_matrix(rng, d):
    return rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))


def test_quadratic_closed_form():
    m = np.array([[1.0, 5.0], [3.0, 4.0]])
    vals = flat(smalleig.eigenvalues(m))
    hi = (5.0 + math.sqrt(69.0)) / 2.0
    lo = (5.0 - math.sqrt(69.0)) / 2.0
    multiset_match(vals, [hi, lo], 1e-12)
    # cross-check against trace and determinant
    assert abs(sum(vals) - 5.0) <= 1e-12
    assert abs(vals[0] * vals[1] - (-11.0)) <= 1e-12


def test_nilpotent_two_by_two():
    assert smalleig.eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]])) == [(0.0 + 0.0j, 2)]


def test_diagonal_matrices():
    vals = np.array([3.0 - 1.0j, -2.0, 0.5 + 0.5j, 7.0])
    pairs = smalleig.eigenvalues(np.diag(vals))
    multiset_match(flat(pairs), vals, 1e-12)
    assert smalleig.eigenvalues(np.diag([3.0, 3.0])) == [(3.0 + 0.0j, 2)]


@pytest.mark.parametrize("d", [3, 4, 5, 8, 12])
def test_matches_generic_solver_on_random(d):
    rng = np.random.default_rng(400 + d)
    m = random_complex_matrix(rng, d)
    multiset_match(flat(smalleig.eigenvalues(m)), np.linalg.eigvals(m), 1e-9 * (1 + inf_norm(m)))


@pytest.mark.parametrize("d", [2, 3, 5, 7])
def test_similarity_invariance_under_unitary(d):
    rng = np.random.default_rng(500 + d)
    m = random_complex_matrix(rng, d)
    q, _ = np.linalg.qr(random_complex_matrix(rng, d))
    conj = q.conj().T @ m @ q
    multiset_match(
        flat(smalleig.eigenvalues(m)), flat(smalleig.eigenvalues(conj)), 1e-7
    )


@pytest.mark.parametrize("d", [1, 2, 3, 6, 10])
def test_trace_and_determinant_identities(d):
    rng = np.random.default_rng(600 + d)
    m = random_complex_matrix(rng, d)
    vals = flat(smalleig.eigenvalues(m))
    assert len(vals) == d
    assert abs(sum(vals) - np.trace(m)) <= 1e-9 * (1.0 + inf_norm(m))
    det = np.linalg.det(m)
    if abs(det) > 1e-8:
        assert abs(np.prod(vals) - det) <= 1e-7 * abs(det)


def test_permutation_matrix_needs_exceptional_shift():
    # cyclic shift matrices make plain Wilkinson-shift QR cycle
    p = np.zeros((5, 5))
    for i in range(5):
        p[i, (i - 1) % 5] = 1.0
    multiset_match(
        flat(smalleig.eigenvalues(p)),
        np.exp(2j * np.pi * np.arange(5) / 5),
        1e-9,
    )


def test_sweep_budget_exhaustion():
    rng = np.random.default_rng(11)
    m = random_complex_matrix(rng, 8)
    with pytest.raises(ConvergenceError):
        smalleig.eigenvalues(m, sweep_budget=1)


def test_cluster_merges_nearby_values():
    pairs = smalleig._cluster(np.array([1.0, 1.0 + 1e-9, 5.0]), 1e-7)
    assert pairs == [((1.0 + 5e-10) + 0.0j, 2), (5.0 + 0.0j, 1)]


def chain_relations_hold(m, lam, chains, tol):
    e = m - lam * np.eye(m.shape[0])
    for chain in chains:
        assert np.abs(e @ chain[0]).max() <= tol
        for r in range(1, len(chain)):
            assert np.abs(e @ chain[r] - chain[r - 1]).max() <= tol


def test_jordan_single_block_two():
    m = np.array([[0.0, 1.0], [0.0, 0.0]])
    chains = smalleig.jordan_chains(m, 0.0, 2)
    assert [len(c) for c in chains] == [2]
    chain_relations_hold(m, 0.0, chains, 1e-12)
    # the eigenvector is along e1, the generalized vector along e2
    u1, u2 = chains[0]
    assert abs(u1[1]) <= 1e-12
    assert abs(u2[0]) <= 1e-12


def test_jordan_diagonal_repeated():
    chains = smalleig.jordan_chains(np.diag([3.0, 3.0]), 3.0, 2)
    assert sorted(len(c) for c in chains) == [1, 1]
    vecs = np.vstack([c[0] for c in chains])
    assert abs(np.linalg.det(vecs)) > 0.5  # spans C^2


def test_jordan_simple_eigenvalue_residual():
    m = np.array([[1.0, 5.0], [3.0, 4.0]])
    lam = (5.0 + math.sqrt(69.0)) / 2.0
    chains = smalleig.jordan_chains(m, lam, 1)
    assert [len(c) for c in chains] == [1]
    chain_relations_hold(m, lam, chains, 1e-10)


def test_jordan_third_order_block():
    lam = 0.75 - 0.25j
    m = lam * np.eye(3) + np.diag([1.0, 1.0], k=1)
    chains = smalleig.jordan_chains(m, lam, 3)
    assert [len(c) for c in chains] == [3]
    chain_relations_hold(m, lam, chains, 1e-10)


def test_jordan_mixed_structure():
    m = np.zeros((3, 3))
    m[0, 1] = 1.0
    chains = smalleig.jordan_chains(m, 0.0, 3)
    assert sorted(len(c) for c in chains) == [1, 2]
    chain_relations_hold(m, 0.0, chains, 1e-10)
    stacked = np.hstack([c.T for c in chains])
    assert np.linalg.svd(stacked, compute_uv=False)[-1] >= 1e-6


def test_jordan_inconsistent_multiplicity_errors():
    with pytest.raises(IllConditionedError):
        smalleig.jordan_chains(np.diag([1.0, 2.0]), 1.0, 2)


def test_jordan_rejects_bad_multiplicity():
    with pytest.raises(PreconditionError):
        smalleig.jordan_chains(np.eye(2), 1.0, 3)


def test_rejects_non_square():
    with pytest.raises(PreconditionError):
        smalleig.eigenvalues(np.ones((2, 3)))
    with pytest.raises(PreconditionError):
        smalleig.eigenvalues(np.array([[np.inf, 0.0], [0.0, 1.0]]))
