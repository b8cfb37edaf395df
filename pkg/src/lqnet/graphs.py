"""Small-graph helpers: exhaustive network enumeration and canonical labels."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator

import numpy as np


def edge_slots(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def network_from_edges(n: int, edges) -> np.ndarray:
    adj = np.zeros((n, n), dtype=bool)
    for i, j in edges:
        if i == j:
            raise ValueError(f"self-loop {i}-{j}")
        adj[i, j] = adj[j, i] = True
    return adj


def edges_of(network: np.ndarray) -> list[tuple[int, int]]:
    i, j = np.nonzero(np.triu(network, 1))
    return list(zip(i.tolist(), j.tolist()))


def all_networks(n: int) -> Iterator[np.ndarray]:
    """Every labelled undirected network on ``n`` nodes (2**(n choose 2) of them)."""
    slots = edge_slots(n)
    rows = np.array([s[0] for s in slots])
    cols = np.array([s[1] for s in slots])
    for mask in range(1 << len(slots)):
        bits = (mask >> np.arange(len(slots))) & 1
        adj = np.zeros((n, n), dtype=bool)
        sel = bits.astype(bool)
        adj[rows[sel], cols[sel]] = True
        yield adj | adj.T


@lru_cache(maxsize=None)
def _permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp)


@lru_cache(maxsize=None)
def _bit_weights(n: int) -> np.ndarray:
    return (1 << np.arange(n * n, dtype=np.int64)).reshape(n, n)


def canonical_code(matrix: np.ndarray) -> int:
    """Smallest integer encoding of ``matrix`` over all relabelings of its nodes.

    Works for directed (intention) and undirected matrices alike; two
    matrices share a code iff they are isomorphic.  Exhaustive over the n!
    permutations, which is cheap for the group sizes used here.
    """
    m = np.asarray(matrix, dtype=bool)
    n = m.shape[0]
    perms = _permutations(n)
    relabelled = m[perms[:, :, None], perms[:, None, :]]
    codes = (relabelled * _bit_weights(n)).sum(axis=(1, 2))
    return int(codes.min())


def isomorphism_classes(n: int) -> dict[int, np.ndarray]:
    """One representative network per isomorphism class, keyed by canonical code."""
    reps: dict[int, np.ndarray] = {}
    for adj in all_networks(n):
        code = canonical_code(adj)
        if code not in reps:
            reps[code] = adj
    return dict(sorted(reps.items()))


def one_initiator_profiles(network: np.ndarray) -> Iterator[np.ndarray]:
    """All intention matrices realizing ``network`` with exactly one initiator per edge."""
    edges = edges_of(network)
    n = network.shape[0]
    for orient in itertools.product((False, True), repeat=len(edges)):
        g = np.zeros((n, n), dtype=bool)
        for (i, j), flip in zip(edges, orient):
            if flip:
                g[j, i] = True
            else:
                g[i, j] = True
        yield g


def path_network(n: int) -> np.ndarray:
    return network_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_network(n: int, center: int = 0) -> np.ndarray:
    return network_from_edges(n, [(center, j) for j in range(n) if j != center])


def complete_network(n: int) -> np.ndarray:
    return ~np.eye(n, dtype=bool)


def empty_network(n: int) -> np.ndarray:
    return np.zeros((n, n), dtype=bool)


def parse_network(spec: str, n: int) -> np.ndarray:
    """Parse ``empty|star|complete|path`` or an edge list like ``0-1,0-2``."""
    s = spec.strip().lower()
    named = {"empty": empty_network, "star": star_network,
             "complete": complete_network, "path": path_network}
    if s in named:
        return named[s](n)
    edges = []
    for tok in filter(None, (t.strip() for t in s.split(","))):
        try:
            a, b = (int(v) for v in tok.split("-"))
        except ValueError:
            raise ValueError(f"bad edge {tok!r}; expected 'i-j'") from None
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"edge {tok!r} out of range for {n} players")
        edges.append((a, b))
    return network_from_edges(n, edges)
