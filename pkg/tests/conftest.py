"""Shared fixtures and independent reference oracles.

The oracles here deliberately avoid the library's vectorized code paths:
marginals come from exhaustive codeword enumeration, message passing from a
dict-per-edge implementation of the update rules, and gradients from central
finite differences in the tests that need them.
"""

import numpy as np
import pytest

from ldpclab import SparseParityCheck, construct_regular
from ldpclab.channel import EPS_PROB


@pytest.fixture
def code_20_1_2():
    return construct_regular(20, 1, 2, seed=7)


@pytest.fixture
def code_60_1_3():
    return construct_regular(60, 1, 3, seed=7)


@pytest.fixture
def hamming_h():
    return SparseParityCheck.from_dense(
        [
            [1, 1, 1, 0, 1, 0, 0],
            [1, 1, 0, 1, 0, 1, 0],
            [1, 0, 1, 1, 0, 0, 1],
        ]
    )


def random_parity_check(rng, n_max=200, max_weight=6):
    """Random irregular H: every check nonempty, columns may be empty."""
    n = int(rng.integers(4, n_max + 1))
    m = int(rng.integers(2, min(n, 60)))
    rows = []
    for _ in range(m):
        w = int(rng.integers(1, min(max_weight, n) + 1))
        rows.append(rng.choice(n, size=w, replace=False).tolist())
    return SparseParityCheck(n, rows)


def enumerate_codewords(H):
    """All 2^n words with zero syndrome, as a (count, n) uint8 array."""
    n = H.n
    words = ((np.arange(1 << n, dtype=np.uint64)[:, None] >> np.arange(n, dtype=np.uint64)) & 1)
    words = words.astype(np.uint8)
    valid = ((words @ H.to_dense().T) % 2 == 0).all(axis=1)
    return words[valid]


def map_marginals(H, P):
    """Exact bitwise posteriors by summing channel weights over all codewords."""
    cw = enumerate_codewords(H).astype(np.float64)
    logit = np.log(P) - np.log1p(-P)
    logw = cw @ logit + np.log1p(-P).sum()
    w = np.exp(logw - logw.max())
    return (cw.T @ w) / w.sum()


def _clamp(x):
    return min(max(x, EPS_PROB), 1.0 - EPS_PROB)


def reference_spa_messages(H, P, iterations):
    """Dict-per-edge sum-product, following the update rules literally.

    Returns (q1, r1, posterior) where q1[(i, j)] and r1[(j, i)] are the
    final per-edge messages and posterior[i] the decision statistic of bit
    value 1 after ``iterations`` full iterations.
    """
    q1 = {(i, j): _clamp(P[i]) for j, row in enumerate(H.rows) for i in row}
    r1 = {}
    for _ in range(iterations):
        for j, row in enumerate(H.rows):
            for i in row:
                prod = 1.0
                for i2 in row:
                    if i2 != i:
                        prod *= 1.0 - 2.0 * q1[(i2, j)]
                r1[(j, i)] = _clamp(1.0 - (0.5 + 0.5 * prod))
        for i, col in enumerate(H.cols):
            for j in col:
                p0, p1 = 1.0 - P[i], P[i]
                for j2 in col:
                    if j2 != j:
                        p0 *= 1.0 - r1[(j2, i)]
                        p1 *= r1[(j2, i)]
                q1[(i, j)] = _clamp(p1 / (p0 + p1))
    posterior = np.empty(H.n)
    for i, col in enumerate(H.cols):
        p0, p1 = 1.0 - P[i], P[i]
        for j in col:
            p0 *= 1.0 - r1[(j, i)]
            p1 *= r1[(j, i)]
        posterior[i] = p1 / (p0 + p1)
    return q1, r1, posterior
