"""Minimum isolating cuts with logarithmically many bipartition flows."""

from __future__ import annotations

from dataclasses import dataclass

from .flow import FlowNetwork, network
from .graph import GraphError, build_graph


@dataclass(frozen=True)
class IsolatingCutsResult:
    # terminal -> (value, side); each side contains exactly one terminal
    cuts: dict

    def value(self, t):
        return self.cuts[t][0]

    def side(self, t):
        return self.cuts[t][1]


def isolating_cuts(G, T):
    """Minimum cut separating each terminal from all the others.

    Terminal j is split from the rest by the bits of its index: for every bit
    one flow between the terminals with that bit clear and those with it
    set.  A terminal's region is the intersection of its sides; by
    submodularity some minimum isolating cut lies inside it, so one local
    flow per terminal (region against its contracted outside) finishes.
    """
    T = list(dict.fromkeys(T))
    k = len(T)
    if k < 2:
        raise GraphError("isolating cuts need at least two terminals")
    net = network(G)
    n = G.n
    code = [0] * n
    bits = (k - 1).bit_length()
    for i in range(bits):
        A = [t for j, t in enumerate(T) if not j >> i & 1]
        B = [t for j, t in enumerate(T) if j >> i & 1]
        sink = net.mask(B)
        _, fa = net.flow(A, sink)
        near = net.reachable(A, fa, sink)
        for v in range(n):
            if v not in near:
                code[v] |= 1 << i
    regions = {}
    for v in range(n):
        regions.setdefault(code[v], []).append(v)
    cuts = {}
    for j, t in enumerate(T):
        region = regions[j]
        index = {v: i for i, v in enumerate(region)}
        outside = len(region)
        local = []
        for u, v, w in G.edges:
            iu, iv = index.get(u), index.get(v)
            if iu is None and iv is None:
                continue
            local.append((outside if iu is None else iu, outside if iv is None else iv, w))
        H = FlowNetwork(build_graph(outside + 1, local))
        sink = H.mask((outside,))
        value, fa = H.flow((index[t],), sink)
        side = H.reachable((index[t],), fa, sink)
        cuts[t] = (value, frozenset(region[i] for i in side))
    return IsolatingCutsResult(cuts)
