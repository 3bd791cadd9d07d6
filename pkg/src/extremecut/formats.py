"""Text formats for graphs and degree bounds (1-based ids on disk)."""

from __future__ import annotations

from .graph import GraphError, build_graph


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def _ints(line, no, k):
    parts = line.split()
    if len(parts) != k:
        raise GraphError(f"line {no}: expected {k} integers, got {line!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise GraphError(f"line {no}: not an integer in {line!r}") from None


def parse_graph(text):
    """Header "n m", then m lines "u v w"."""
    rows = _lines(text)
    try:
        no, header = next(rows)
    except StopIteration:
        raise GraphError("empty graph file") from None
    n, m = _ints(header, no, 2)
    if n < 0 or m < 0:
        raise GraphError("negative n or m in header")
    edges = []
    for no, line in rows:
        u, v, w = _ints(line, no, 3)
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphError(f"line {no}: vertex id out of range 1..{n}")
        if w < 1:
            raise GraphError(f"line {no}: weight must be a positive integer")
        edges.append((u - 1, v - 1, w))
    if len(edges) != m:
        raise GraphError(f"header promises {m} edges, file has {len(edges)}")
    return build_graph(n, edges)


def format_graph(G):
    out = [f"{G.n} {G.m}"]
    out.extend(f"{u + 1} {v + 1} {w}" for u, v, w in G.edges)
    return "\n".join(out) + "\n"


def read_graph(path):
    with open(path) as fh:
        return parse_graph(fh.read())


def parse_beta(text, n):
    """Lines "v b"; b = -1 means unbounded, unlisted vertices are unbounded."""
    beta = [None] * n
    seen = set()
    for no, line in _lines(text):
        v, b = _ints(line, no, 2)
        if not 1 <= v <= n:
            raise GraphError(f"line {no}: vertex id out of range 1..{n}")
        if v in seen:
            raise GraphError(f"line {no}: vertex {v} listed twice")
        if b < -1:
            raise GraphError(f"line {no}: degree bound must be >= 0 or -1")
        seen.add(v)
        beta[v - 1] = None if b == -1 else b
    return beta


def format_beta(beta):
    return "".join(f"{v + 1} {-1 if b is None else b}\n" for v, b in enumerate(beta))


def format_edges(F):
    return "".join(f"{u + 1} {v + 1} {w}\n" for u, v, w in F)
