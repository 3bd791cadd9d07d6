"""Random test graphs."""

from __future__ import annotations

import random

from .graph import GraphError, build_graph


def random_connected_graph(n, m, wmax, seed=0):
    """Random spanning tree plus random extra edges; parallel edges merge.

    ``m`` counts generated edges (at least n - 1), so the merged graph may
    have slightly fewer.
    """
    if n < 1 or wmax < 1 or m < n - 1:
        raise GraphError("need n >= 1, wmax >= 1 and m >= n - 1")
    if n == 1:
        return build_graph(1, [])
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    edges = [(perm[i], perm[rng.randrange(i)], rng.randint(1, wmax)) for i in range(1, n)]
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.append((u, v, rng.randint(1, wmax)))
    return build_graph(n, edges)


def random_graph(n, m, wmax, seed=0):
    """m random non-loop edges; may be disconnected."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    edges = []
    if n >= 2:
        while len(edges) < m:
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                edges.append((u, v, rng.randint(1, wmax)))
    return build_graph(n, edges)
