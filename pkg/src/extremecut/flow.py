"""Exact max-flow / min-cut on undirected graphs with arbitrary-size integers.

Every undirected edge becomes two opposing arcs that share its capacity.
Flows are kept in dictionaries keyed by arc, so a computation only pays for
the part of the graph it actually explores.  That matters for the local
flows used by the threshold and verification helpers.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

from .graph import GraphError, PerturbedWeights


@dataclass(frozen=True)
class FlowResult:
    value: int
    s_side: frozenset


class FlowCounter:
    def __init__(self):
        self.calls = 0


_counters = []


@contextmanager
def count_flows():
    """Count max-flow computations started inside the block."""
    c = FlowCounter()
    _counters.append(c)
    try:
        yield c
    finally:
        _counters.remove(c)


def _tick():
    for c in _counters:
        c.calls += 1


class FlowNetwork:
    """Residual network of a graph; reusable across many flow computations."""

    def __init__(self, G):
        if isinstance(G, PerturbedWeights):
            G = G.graph()
        self.graph = G
        self.n = G.n
        head = []
        cap = []
        adj = [[] for _ in range(G.n)]
        for u, v, w in G.edges:
            a = len(head)
            head.append(v)
            head.append(u)
            cap.append(w)
            cap.append(w)
            adj[u].append(a)
            adj[v].append(a + 1)
        self.head = head
        self.cap = cap
        self.adj = adj

    def add_edge(self, u, v, w):
        """Append an undirected edge (the network no longer mirrors ``graph``)."""
        a = len(self.head)
        self.head.extend((v, u))
        self.cap.extend((w, w))
        self.adj[u].append(a)
        self.adj[v].append(a + 1)

    def flow(self, sources, sink, limit=None):
        """Push flow from ``sources`` to the vertex set ``sink``.

        ``sink`` must support ``sink[v]`` truthiness (a bytearray mask).
        Stops once ``limit`` units are pushed.  Returns (value, flows) where
        flows maps arc -> net flow.
        """
        _tick()
        head, cap, adj = self.head, self.cap, self.adj
        fa = {}
        value = 0
        sources = list(sources)
        while limit is None or value < limit:
            # BFS layering, stopped at the first layer that touches the sink
            level = dict.fromkeys(sources, 0)
            queue = list(sources)
            depth = None
            i = 0
            while i < len(queue):
                x = queue[i]
                i += 1
                lx = level[x]
                if depth is not None and lx >= depth:
                    break
                for a in adj[x]:
                    y = head[a]
                    if y in level or cap[a] - fa.get(a, 0) <= 0:
                        continue
                    level[y] = lx + 1
                    if sink[y]:
                        depth = lx + 1
                    else:
                        queue.append(y)
            if depth is None:
                break
            ptr = {}
            for s in sources:
                stack = []
                x = s
                while True:
                    if sink[x]:
                        b = None
                        for a in stack:
                            r = cap[a] - fa.get(a, 0)
                            if b is None or r < b:
                                b = r
                        if limit is not None and limit - value < b:
                            b = limit - value
                        cut = None
                        for k, a in enumerate(stack):
                            fa[a] = fa.get(a, 0) + b
                            fa[a ^ 1] = fa.get(a ^ 1, 0) - b
                            if cut is None and cap[a] - fa[a] <= 0:
                                cut = k
                        value += b
                        if limit is not None and value >= limit:
                            return value, fa
                        del stack[cut:]
                        x = head[stack[-1]] if stack else s
                        continue
                    arcs = adj[x]
                    it = ptr.get(x, 0)
                    nxt = level.get(x, -2) + 1
                    moved = False
                    while it < len(arcs):
                        a = arcs[it]
                        y = head[a]
                        if level.get(y) == nxt and cap[a] - fa.get(a, 0) > 0:
                            stack.append(a)
                            moved = True
                            break
                        it += 1
                    ptr[x] = it
                    if moved:
                        x = head[stack[-1]]
                        continue
                    if x == s:
                        break
                    level[x] = -5  # dead end in this phase
                    stack.pop()
                    x = head[stack[-1]] if stack else s
        return value, fa

    def reachable(self, sources, fa, sink=None):
        """Vertices reachable from ``sources`` in the residual network."""
        head, cap, adj = self.head, self.cap, self.adj
        seen = set(sources)
        stack = list(sources)
        while stack:
            x = stack.pop()
            for a in adj[x]:
                y = head[a]
                if y not in seen and cap[a] - fa.get(a, 0) > 0:
                    if sink is not None and sink[y]:
                        continue
                    seen.add(y)
                    stack.append(y)
        return seen

    def mask(self, vertices):
        m = bytearray(self.n)
        for v in vertices:
            m[v] = 1
        return m

    def max_flow(self, s, t):
        if s == t:
            raise GraphError("source and sink coincide")
        sink = self.mask((t,))
        value, fa = self.flow((s,), sink)
        side = self.reachable((s,), fa)
        return FlowResult(value, frozenset(side))


def network(G):
    """Cached FlowNetwork for a graph or perturbed-weight view."""
    if isinstance(G, PerturbedWeights):
        return FlowNetwork(G)
    net = G._net_cache()
    if net is None:
        net = FlowNetwork(G)
        G._net_cache(net)
    return net


def max_flow(G, s, t):
    return network(G).max_flow(s, t)


def connectivity(G, s, t):
    return max_flow(G, s, t).value


def _bfs_order(G, start):
    seen = [False] * G.n
    seen[start] = True
    order = [start]
    i = 0
    while i < len(order):
        for y, _, _ in G.adj[order[i]]:
            if not seen[y]:
                seen[y] = True
                order.append(y)
        i += 1
    order.extend(v for v in range(G.n) if not seen[v])
    return order


def _grow_min_cut(net, terminals, cap):
    """Smallest cut separating the terminals, if below ``cap``.

    Terminals are processed in order; each one is separated from the set C
    of terminals processed before it by a flow capped at the best value so
    far.  The first terminal on the far side of an optimal cut sees C inside
    the near side, so the minimum is always found.
    """
    s0 = terminals[0]
    C = net.mask((s0,))
    best, side = cap, None
    for t in terminals[1:]:
        value, fa = net.flow((t,), C, best)
        if value < best:
            best = value
            side = net.reachable((t,), fa, C)
        C[t] = 1
    return best, side


def global_min_cut(G):
    """Exact minimum cut as (value, side)."""
    if G.n < 2:
        raise GraphError("global minimum cut needs at least two vertices")
    deg = G.degrees()
    v = min(range(G.n), key=deg.__getitem__)
    net = network(G)
    order = _bfs_order(G, 0)
    best, side = _grow_min_cut(net, order, deg[v])
    if side is None:
        return deg[v], frozenset((v,))
    return best, frozenset(side)


def min_cut_at_least(G, k):
    """True iff every cut of G has value >= k (cheap for small k)."""
    if G.n < 2 or k <= 0:
        return True
    if min(G.degrees()) < k:
        return False
    value, _ = _grow_min_cut(network(G), _bfs_order(G, 0), k)
    return value >= k


def steiner_connectivity(G, T):
    T = list(dict.fromkeys(T))
    if len(T) < 2:
        raise GraphError("Steiner connectivity needs at least two terminals")
    deg = G.degrees()
    cap = min(deg[t] for t in T)
    value, _ = _grow_min_cut(network(G), T, cap)
    return value
