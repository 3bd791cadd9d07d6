"""Extreme-sets tree by cut-threshold divide and conquer plus pruning.

Phase 1 splits the graph at the complement X of a random cut threshold,
recurses on the two contractions and merges the resulting laminar trees.
The merged tree contains every extreme set but may hold spurious nodes;
phase 2 removes every node whose cut value is not strictly below its
children's.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .flow import connectivity
from .graph import ContractedGraph, WeightedGraph, contract_with_map, perturb
from .oracles import brute_extreme_family
from .threshold import cut_threshold
from .tree import LaminarTree, tree_from_sets

BASE_CASE = 16


class MonteCarloFailure(RuntimeError):
    """The balanced-partition sampler ran out of attempts."""


@dataclass
class RecursionStats:
    max_depth: int = 0
    subproblems: int = 0
    attempts: int = 0
    retries: list = field(default_factory=list)  # failed attempts per subproblem

    @property
    def max_retries(self):
        return max(self.retries, default=0)


def retry_cap(n):
    return 64 * max(1, math.ceil(math.log2(n)))


def is_balanced(n, k):
    # the size bounds alone allow |X| = 1 or n - 1 below 17 vertices, which
    # would not shrink anything; both contractions must really be smaller
    return n <= 16 * k <= 15 * n and 2 <= k <= n - 2


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def base_case_extreme_sets(G, limit=BASE_CASE):
    if isinstance(G, ContractedGraph):
        G = G.graph
    if G.n > limit:
        raise ValueError(f"base case expects at most {limit} vertices")
    return tree_from_sets(G.n, brute_extreme_family(G))


def sample_balanced_partition(G, seed, backend="naive", stats=None):
    """Return a balanced complement X of a random perturbed cut threshold."""
    if isinstance(G, ContractedGraph):
        G = G.graph
    rng = _rng(seed)
    n = G.n
    cap = retry_cap(n)
    for attempt in range(cap):
        s, t = rng.sample(range(n), 2)
        Gp = perturb(G, rng).graph()
        phi = connectivity(Gp, s, t)
        X = cut_threshold(Gp, s, phi, backend).complement
        if stats is not None:
            stats.attempts += 1
        if is_balanced(n, len(X)):
            if stats is not None:
                stats.retries.append(attempt)
            return X
    if stats is not None:
        stats.retries.append(cap)
    raise MonteCarloFailure(
        f"no balanced partition after {cap} attempts on {n} vertices"
    )


def combine_trees(T_X, T_notX, X):
    """Merge the trees of contract(X) and contract(V minus X).

    Vertex numbering follows ``contract_with_map``: contracting X keeps the
    vertices of V minus X in order and puts X last; contracting V minus X
    keeps X in order and puts the merged vertex last.
    """
    X = sorted(X)
    n = T_X.n_leaves - 1 + len(X)
    xs = set(X)
    rest = [v for v in range(n) if v not in xs]
    if T_X.n_leaves != len(rest) + 1 or T_notX.n_leaves != len(X) + 1:
        raise ValueError("trees do not match the contracted graphs")
    x_leaf = len(rest)
    y_leaf = len(X)
    fam = []
    for y in range(T_X.size):
        if y == T_X.root:
            continue
        mem = T_X.members(y)
        s = [rest[v] for v in mem if v != x_leaf]
        if x_leaf in mem:
            s.extend(X)
        fam.append(s)
    for y in range(T_notX.size):
        if y == T_notX.root:
            continue
        mem = T_notX.members(y)
        s = [X[v] for v in mem if v != y_leaf]
        if s:
            fam.append(s)
    return tree_from_sets(n, fam)


def phase1(Ggen, seed, backend="naive", stats=None, limit=BASE_CASE, _depth=0):
    G = Ggen.graph if isinstance(Ggen, ContractedGraph) else Ggen
    rng = _rng(seed)
    if stats is not None:
        stats.subproblems += 1
        stats.max_depth = max(stats.max_depth, _depth)
    if G.n <= limit:
        return base_case_extreme_sets(G, limit)
    try:
        X = sample_balanced_partition(G, rng, backend, stats)
    except MonteCarloFailure:
        # with a lowered threshold small graphs may have no balanced split;
        # enumeration is exact there anyway
        if G.n <= BASE_CASE:
            return base_case_extreme_sets(G)
        raise
    notX = [v for v in range(G.n) if v not in X]
    G1, _ = contract_with_map(G, X)
    G2, _ = contract_with_map(G, notX)
    seed1, seed2 = rng.getrandbits(64), rng.getrandbits(64)
    T1 = phase1(G1, seed1, backend, stats, limit, _depth + 1)
    T2 = phase1(G2, seed2, backend, stats, limit, _depth + 1)
    return combine_trees(T1, T2, X)


# --- labels and pruning ------------------------------------------------------

def _lifting(tree):
    size = tree.size
    par = np.array(tree.parent, dtype=np.int64)
    par[tree.root] = tree.root
    depth = np.zeros(size, dtype=np.int64)
    for y in reversed(tree.postorder()):
        if y != tree.root:
            depth[y] = depth[par[y]] + 1
    up = [par]
    for _ in range(max(1, int(depth.max()).bit_length())):
        up.append(up[-1][up[-1]])
    return up, depth


def lca_many(tree, us, vs, lifting=None):
    up, depth = lifting or _lifting(tree)
    u = np.asarray(us, dtype=np.int64).copy()
    v = np.asarray(vs, dtype=np.int64).copy()
    swap = depth[u] < depth[v]
    u[swap], v[swap] = v[swap], u[swap].copy()
    diff = depth[u] - depth[v]
    for k in range(len(up)):
        sel = (diff >> k) & 1 == 1
        u[sel] = up[k][u[sel]]
    for k in range(len(up) - 1, -1, -1):
        a, b = up[k][u], up[k][v]
        sel = a != b
        u[sel], v[sel] = a[sel], b[sel]
    return np.where(u == v, u, up[0][u])


def subtree_cut_values(G, T):
    """delta(V(y)) for every node y, by LCA accumulation and subtree sums."""
    acc = [0] * T.size
    if G.m:
        us = [u for u, _, _ in G.edges]
        vs = [v for _, v, _ in G.edges]
        anc = lca_many(T, us, vs).tolist()
        for (u, v, w), a in zip(G.edges, anc):
            acc[u] += w
            acc[v] += w
            acc[a] -= 2 * w
    for y in T.postorder():
        p = T.parent[y]
        if p >= 0:
            acc[p] += acc[y]
    acc[T.root] = 0
    return acc


def phase2_prune(G, T):
    """Drop every node whose label is not strictly below all current children."""
    label = subtree_cut_values(G, T)
    keep = [True] * T.size
    cur = [None] * T.size
    for y in T.postorder():
        kids = []
        for c in T.children[y]:
            if keep[c]:
                kids.append(c)
            else:
                kids.extend(cur[c])
        cur[y] = kids
        if y != T.root and not T.is_leaf(y):
            keep[y] = all(label[y] < label[c] for c in kids)
    ids = {}
    for y in range(T.size):
        if keep[y]:
            ids[y] = len(ids)
    parent = [-1] * len(ids)
    for y, i in ids.items():
        for c in cur[y]:
            parent[ids[c]] = i
    out = LaminarTree(T.n_leaves, parent, ids[T.root])
    out.labels = [label[y] for y in ids]
    return out


def _single_component(G, seed, backend, stats, limit):
    cand = phase1(G, seed, backend, stats, limit)
    return phase2_prune(G, cand)


def extreme_sets_tree(G, seed=0, backend="naive", stats=None, limit=BASE_CASE):
    """Exact extreme-sets tree of G (labels hold delta, root label 0)."""
    if isinstance(G, ContractedGraph):
        G = G.graph
    comps = G.components() if G.n else []
    if len(comps) <= 1:
        return _single_component(G, seed, backend, stats, limit)
    rng = _rng(seed)
    fam = []
    for comp in comps:
        if len(comp) == 1:
            continue
        fam.append(comp)
        T = _single_component(G.induced(comp), rng.getrandbits(64), backend, stats, limit)
        for y in range(T.n_leaves, T.size):
            if y != T.root:
                fam.append([comp[v] for v in T.members(y)])
    T = tree_from_sets(G.n, fam)
    T.labels = subtree_cut_values(G, T)
    return T


def tree_to_records(G, T):
    """Nodes as dicts (id, parent, members, delta) for serialisation."""
    labels = T.labels if T.labels is not None else subtree_cut_values(G, T)
    return [
        {
            "id": y,
            "parent": T.parent[y] if T.parent[y] >= 0 else None,
            "members": list(T.members(y)),
            "delta": labels[y],
        }
        for y in range(T.size)
    ]


__all__ = [
    "MonteCarloFailure",
    "RecursionStats",
    "WeightedGraph",
    "base_case_extreme_sets",
    "combine_trees",
    "extreme_sets_tree",
    "phase1",
    "phase2_prune",
    "sample_balanced_partition",
    "subtree_cut_values",
]
