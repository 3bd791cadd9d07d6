"""Cut threshold ct(s, phi) = {t : lambda(s, t) <= phi}."""

from __future__ import annotations

from dataclasses import dataclass

from .flow import _bfs_order, network
from .graph import GraphError, PerturbedWeights

BACKENDS = ("naive", "accelerated")


@dataclass(frozen=True)
class CutThresholdResult:
    s: int
    phi: int
    inside: frozenset
    complement: frozenset


def cut_threshold(G, s, phi, backend="naive"):
    """Exact cut threshold of s at phi.

    ``naive`` decides lambda(s, t) <= phi with one max-flow per vertex t
    (stopped early once phi + 1 units pass, which already settles the
    comparison).  ``accelerated`` gives the same answer with cheaper local
    flows, see :func:`_accelerated`.
    """
    if isinstance(G, PerturbedWeights):
        G = G.graph()
    if not 0 <= s < G.n:
        raise GraphError(f"source {s} out of range")
    if phi < 0:
        raise GraphError("phi must be non-negative")
    if backend == "naive":
        inside = _naive(G, s, phi)
    elif backend == "accelerated":
        inside = _accelerated(G, s, phi)
    else:
        raise GraphError(f"unknown backend {backend!r}")
    inside = frozenset(inside)
    return CutThresholdResult(s, phi, inside, frozenset(range(G.n)) - inside)


def _naive(G, s, phi):
    net = network(G)
    inside = []
    for t in range(G.n):
        if t == s:
            continue
        value, _ = net.flow((s,), net.mask((t,)), phi + 1)
        if value <= phi:
            inside.append(t)
    return inside


def _accelerated(G, s, phi):
    """Isolating-cut growth from s.

    C holds s and every vertex already shown to have lambda(s, .) > phi.
    Each undecided t gets the minimum cut isolating it from C, capped at
    phi + 1.  If that cut exceeds phi, so does lambda(s, t): a cut between s
    and t either separates t from all of C or separates s from some member
    of C.  Otherwise the cut's t-side has value <= phi and avoids s, so
    every vertex on it belongs to the threshold set at once.
    """
    net = network(G)
    deg = G.degrees()
    C = net.mask((s,))
    decided = bytearray(G.n)
    decided[s] = 1
    inside = []
    for t in _bfs_order(G, s):
        if decided[t]:
            continue
        if deg[t] <= phi:
            decided[t] = 1
            inside.append(t)
            continue
        value, fa = net.flow((t,), C, phi + 1)
        if value > phi:
            C[t] = 1
            decided[t] = 1
            continue
        for x in net.reachable((t,), fa, C):
            if not decided[x]:
                decided[x] = 1
                inside.append(x)
    return inside
