"""Shared fixtures: an independent matrix-exponential oracle and a
seed-pinned randomized graph corpus."""

import numpy as np
import pytest
from scipy.linalg import expm

import pstwalk as pw

CORPUS_SEED = 20250814


def expm_amplitude(g, a, b, t):
    """Transfer amplitude straight from scipy's expm — no spectral shortcut."""
    return expm(-1j * t * g.adj)[b, a]


@pytest.fixture(scope="session")
def oracle_amp():
    return expm_amplitude


def _random_graph(rng) -> pw.Graph:
    n = int(rng.integers(2, 25))
    density = float(rng.uniform(0.15, 0.9))
    upper = np.triu(rng.random((n, n)) < density, 1)
    if rng.random() < 0.5:
        weights = np.ones((n, n))
    else:
        weights = rng.uniform(0.2, 3.0, size=(n, n))
    adj = np.where(upper, weights, 0.0)
    adj = adj + adj.T
    if rng.random() < 0.2:
        loops = np.where(rng.random(n) < 0.3, rng.uniform(0.5, 2.0, size=n), 0.0)
        adj = adj + np.diag(loops)
    return pw.Graph(adj)


def _structured_graphs():
    graphs = [
        pw.complete(2),
        pw.complete(3),
        pw.complete(5),
        pw.complete(9),
        pw.empty_graph(4),
        pw.path_graph([1.0] * 2),
        pw.path_graph([1.0] * 4),
        pw.path_graph([1.0] * 7),
        pw.path_graph([3.0, 1.5, 3.0], loops=(0.0, 1.0, 1.0, 0.0)),
        pw.cycle(3),
        pw.cycle(4),
        pw.cycle(6),
        pw.cycle(7),
        pw.cycle(12),
        pw.hypercube(1),
        pw.hypercube(2),
        pw.hypercube(3),
        pw.hypercube(4),
        pw.circulant(8, [1, 3]),
        pw.circulant(15, [1, 2, 4]),
        pw.circulant(15, [1, 2, 4, 7]),
        pw.circulant(9, [2]),
        pw.join(pw.empty_graph(2), pw.complete(3)),
        pw.join(pw.complete(2), pw.complete(3)),
        pw.join(pw.complete(1), pw.cycle(5)),
        pw.scale(pw.complete(3), np.sqrt(2.0)),
        pw.cartesian_product(pw.complete(2), pw.complete(3)),
        pw.cartesian_product(pw.path_graph([1.0]), pw.cycle(4)),
        pw.weak_product(pw.complete(2), pw.complete(4)),
        pw.weak_product(pw.hypercube(2), pw.complete(4)),
        pw.weak_product(pw.path_graph([1.0, 1.0]), pw.complete(4)),
        pw.lexicographic_product(pw.complete(2), pw.hypercube(2)),
        pw.lexicographic_product(pw.path_graph([1.0, 1.0]), pw.complete(2)),
        pw.double_cone(pw.complete(3), 0, 1.0),
        pw.double_cone(pw.scale(pw.complete(3), np.sqrt(2.0)), 0, np.sqrt(3.0)),
        pw.double_cone(pw.cycle(5), 1, 2.0),
        pw.double_cone(pw.path_graph([1.0, 1.0]), 0, 1.5),
        pw.glued_double_cone(pw.cycle(4), pw.cycle(4), np.eye(4)),
        pw.cylindrical_cone(pw.cycle(3), pw.empty_graph(1), pw.cycle(3)),
        pw.cylindrical_cone(pw.cycle(3), pw.empty_graph(2), pw.cycle(3)),
        pw.cylindrical_cone(pw.cycle(4), pw.empty_graph(2), pw.cycle(4)),
        pw.weighted_p4(1.0),
        pw.weighted_p4(0.75, 0.75),
        pw.weighted_p4(2.0 / np.sqrt(3.0)),
        pw.complement(pw.cycle(6)),
        pw.complement(pw.path_graph([1.0] * 4)),
    ]
    return graphs


@pytest.fixture(scope="session")
def corpus():
    """>= 100 graphs, n <= 24, deterministic across runs."""
    rng = np.random.default_rng(CORPUS_SEED)
    graphs = [_random_graph(rng) for _ in range(60)] + _structured_graphs()
    assert len(graphs) >= 100
    assert all(g.n <= 24 for g in graphs)
    return graphs


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(CORPUS_SEED + 1)
