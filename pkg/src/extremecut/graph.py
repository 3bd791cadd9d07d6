"""Weighted undirected graphs, cut values, contraction and weight perturbation."""

from __future__ import annotations

import random
from dataclasses import dataclass, field


class GraphError(ValueError):
    pass


class WeightOverflowError(GraphError):
    """Perturbed weights do not fit the configured integer width."""

    def __init__(self, required_bits, width):
        super().__init__(
            f"perturbed weights need {required_bits} bits, configured width is {width}"
        )
        self.required_bits = required_bits
        self.width = width


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph on vertices 0..n-1 with positive integer weights.

    ``edges`` holds ``(u, v, w)`` with ``u < v``, sorted, no duplicates.
    Build instances with :func:`build_graph`.
    """

    n: int
    edges: tuple
    _adj: list = field(default=None, repr=False, compare=False)
    _net: object = field(default=None, repr=False, compare=False)

    @property
    def m(self):
        return len(self.edges)

    @property
    def adj(self):
        # list of (neighbour, weight, edge index) per vertex, built lazily
        if self._adj is None:
            adj = [[] for _ in range(self.n)]
            for i, (u, v, w) in enumerate(self.edges):
                adj[u].append((v, w, i))
                adj[v].append((u, w, i))
            object.__setattr__(self, "_adj", adj)
        return self._adj

    def _net_cache(self, net=None):
        if net is not None:
            object.__setattr__(self, "_net", net)
        return self._net

    def degree(self, v):
        return sum(w for _, w, _ in self.adj[v])

    def degrees(self):
        deg = [0] * self.n
        for u, v, w in self.edges:
            deg[u] += w
            deg[v] += w
        return deg

    def total_weight(self):
        return sum(w for _, _, w in self.edges)

    def weight_between(self, u, v):
        for x, w, _ in self.adj[u]:
            if x == v:
                return w
        return 0

    def components(self):
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        adj = self.adj
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack = [s]
            comp = []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y, _, _ in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self):
        return self.n <= 1 or len(self.components()) == 1

    def induced(self, vertices):
        """Subgraph induced by ``vertices`` relabelled 0..k-1 in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        sub = []
        for u, v, w in self.edges:
            if u in index and v in index:
                sub.append((index[u], index[v], w))
        return build_graph(len(vertices), sub)

    def with_weights(self, weights):
        """Same topology with the weights replaced (edge order preserved)."""
        if len(weights) != len(self.edges):
            raise GraphError("weight vector length differs from edge count")
        edges = tuple((u, v, w) for (u, v, _), w in zip(self.edges, weights))
        return WeightedGraph(self.n, edges)


def build_graph(n, edge_list):
    """Merge parallel edges, drop self-loops and sort edges canonically."""
    if n < 0:
        raise GraphError("negative vertex count")
    merged = {}
    for u, v, w in edge_list:
        u, v, w = int(u), int(v), int(w)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"vertex id out of range in edge ({u}, {v})")
        if w < 1:
            raise GraphError(f"non-positive weight {w} on edge ({u}, {v})")
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        merged[key] = merged.get(key, 0) + w
    edges = tuple((u, v, w) for (u, v), w in sorted(merged.items()))
    return WeightedGraph(n, edges)


def _as_set(G, S):
    S = set(S)
    if not S:
        raise GraphError("cut side is empty")
    if len(S) >= G.n:
        raise GraphError("cut side is the whole vertex set")
    for v in S:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} out of range")
    return S


def cut_value(G, S):
    """delta(S): total weight of edges with exactly one endpoint in S."""
    S = _as_set(G, S)
    return sum(w for u, v, w in G.edges if (u in S) != (v in S))


@dataclass(frozen=True)
class ContractedGraph:
    """A graph whose vertices stand for disjoint classes of original vertices."""

    graph: WeightedGraph
    classes: tuple

    @property
    def uncontracted(self):
        return frozenset(i for i, c in enumerate(self.classes) if len(c) == 1)

    @classmethod
    def trivial(cls, G):
        return cls(G, tuple((v,) for v in range(G.n)))


def contract_with_map(G, S):
    """Contract S in a plain graph.

    Returns the new graph and ``mapping`` with mapping[old] = new vertex.
    Vertices outside S keep their relative order; the merged vertex is last.
    """
    S = set(S)
    if not S:
        raise GraphError("cannot contract an empty set")
    if not S <= set(range(G.n)):
        raise GraphError("contracted set is not a subset of the vertices")
    mapping = [0] * G.n
    k = 0
    for v in range(G.n):
        if v not in S:
            mapping[v] = k
            k += 1
    for v in S:
        mapping[v] = k
    new_edges = [(mapping[u], mapping[v], w) for u, v, w in G.edges]
    return build_graph(k + 1, new_edges), mapping


def contract(CG, S):
    """Merge the vertex set S of a contracted graph into one vertex."""
    if len(set(S)) == 1:
        return CG
    graph, mapping = contract_with_map(CG.graph, S)
    classes = [[] for _ in range(graph.n)]
    for old, new in enumerate(mapping):
        classes[new].extend(CG.classes[old])
    return ContractedGraph(graph, tuple(tuple(sorted(c)) for c in classes))


DEFAULT_WIDTH = 128


@dataclass(frozen=True)
class PerturbedWeights:
    """w'(e) = m*N*w(e) + r(e) with r(e) uniform on 1..N and N = m*n**d."""

    base: WeightedGraph
    N: int
    r: tuple
    d: int = 4

    @property
    def scale(self):
        return self.base.m * self.N

    @property
    def weights(self):
        mN = self.scale
        return tuple(mN * w + r for (_, _, w), r in zip(self.base.edges, self.r))

    def graph(self):
        return self.base.with_weights(self.weights)


def perturb(G, seed, d=4, width=DEFAULT_WIDTH):
    if d < 4:
        raise GraphError("perturbation exponent must be at least 4")
    m, n = G.m, G.n
    N = max(m, 1) * n ** d
    if m:
        # every cut value must fit a signed integer of the configured width
        bound = m * (m * N * max(w for _, _, w in G.edges) + N)
        if bound.bit_length() >= width:
            raise WeightOverflowError(bound.bit_length() + 1, width)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    r = tuple(rng.randint(1, N) for _ in range(m))
    return PerturbedWeights(G, N, r, d)
