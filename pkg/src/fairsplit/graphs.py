"""Graphs, vertex partitions, and the standard instance families.

Vertices are integers 1..n.  For paths and cycles the label order is the
traversal order, which is what the stability notions refer to.
"""

from __future__ import annotations

from .errors import InputError


class Graph:
    def __init__(self, n, edges):
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        self.n = n
        self.adj = {v: set() for v in range(1, n + 1)}
        es = set()
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise InputError("edge endpoint out of range: (%s, %s)" % (u, v))
            if u == v:
                raise InputError("loop at vertex %d" % u)
            a, b = min(u, v), max(u, v)
            es.add((a, b))
            self.adj[a].add(b)
            self.adj[b].add(a)
        self.edges = frozenset(es)

    @property
    def vertices(self):
        return range(1, self.n + 1)

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, v):
        return self.adj[v]

    def degree(self, v):
        return len(self.adj[v])

    def second_neighborhood(self, v):
        """Vertices at distance exactly two from v."""
        out = set()
        for u in self.adj[v]:
            out |= self.adj[u]
        out.discard(v)
        out -= self.adj[v]
        return out

    def relabel(self, perm):
        """New graph with vertex v renamed perm[v]; perm maps 1..n onto 1..n."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __repr__(self):
        return "Graph(n=%d, edges=%d)" % (self.n, len(self.edges))


class VertexPartition:
    """An ordered partition V_1, ..., V_m of the vertex set 1..n."""

    def __init__(self, blocks, n=None):
        self.blocks = [tuple(sorted(set(b))) for b in blocks]
        seen = set()
        for b in self.blocks:
            if not b:
                raise InputError("empty partition block")
            for v in b:
                if v in seen:
                    raise InputError("vertex %d appears in two blocks" % v)
                seen.add(v)
        self.ground = frozenset(seen)
        if n is not None and self.ground != set(range(1, n + 1)):
            raise InputError("partition does not cover 1..%d exactly" % n)
        self._block_of = {v: j for j, b in enumerate(self.blocks) for v in b}

    @property
    def m(self):
        return len(self.blocks)

    def block_of(self, v):
        return self._block_of[v]

    def sizes(self):
        return [len(b) for b in self.blocks]

    def relabel(self, perm):
        return VertexPartition([[perm[v] for v in b] for b in self.blocks])

    def __eq__(self, other):
        return isinstance(other, VertexPartition) and self.blocks == other.blocks

    def __repr__(self):
        return "VertexPartition(%r)" % (self.blocks,)


def single_block_partition(n):
    return VertexPartition([range(1, n + 1)], n)


def consecutive_partition(sizes):
    """Blocks of the given sizes, filled with consecutive labels from 1."""
    blocks, start = [], 1
    for s in sizes:
        if s < 1:
            raise InputError("block sizes must be positive")
        blocks.append(range(start, start + s))
        start += s
    return VertexPartition(blocks, start - 1)


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n):
    if n < 3:
        raise InputError("cycle needs at least 3 vertices")
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(n, 1)])


def power_path(n, r):
    """Path power: edges between labels at distance at most r."""
    if r < 0:
        raise InputError("radius must be nonnegative")
    return Graph(n, [(i, j) for i in range(1, n + 1)
                     for j in range(i + 1, min(i + r, n) + 1)])


def cliques_plus_isolated(n, q):
    """Disjoint union of n cliques of size q-1 and one isolated vertex."""
    if n < 1 or q < 2:
        raise InputError("need n >= 1 and q >= 2")
    edges = []
    for c in range(n):
        block = range(c * (q - 1) + 1, (c + 1) * (q - 1) + 1)
        edges += [(u, v) for u in block for v in block if u < v]
    return Graph(n * (q - 1) + 1, edges)


def path_union_cliques(n, q):
    """Edge-disjoint union of a path on (q-1)n+1 vertices and n pairwise
    vertex-disjoint cliques of size q-1.

    Clique c consists of the labels c, c+n, ..., c+(q-2)n, so clique members
    are at label distance n and share no path edge.  Requires n >= 2 when the
    cliques have any edges (q >= 3).
    """
    if n < 1 or q < 2:
        raise InputError("need n >= 1 and q >= 2")
    if q >= 3 and n < 2:
        raise InputError("cliques would overlap path edges; need n >= 2 for q >= 3")
    size = (q - 1) * n + 1
    edges = [(i, i + 1) for i in range(1, size)]
    for c in range(1, n + 1):
        members = [c + i * n for i in range(q - 1)]
        edges += [(u, v) for u in members for v in members if u < v]
    return Graph(size, edges)


def matching_graph(n):
    """n vertices, edges (1,2), (3,4), ...; a leftover odd vertex stays bare."""
    return Graph(n, [(i, i + 1) for i in range(1, n, 2)])


FAMILIES = {
    "path": lambda n, **kw: path_graph(n),
    "cycle": lambda n, **kw: cycle_graph(n),
    "power_path": lambda n, r, **kw: power_path(n, r),
    "cliques_plus_isolated": lambda n, q, **kw: cliques_plus_isolated(n, q),
    "path_union_cliques": lambda n, q, **kw: path_union_cliques(n, q),
    "edgeless": lambda n, **kw: Graph(n, []),
    "matching": lambda n, **kw: matching_graph(n),
}


def generate_family(kind, **params):
    if kind not in FAMILIES:
        raise InputError("unknown family %r (have %s)" % (kind, sorted(FAMILIES)))
    try:
        return FAMILIES[kind](**params)
    except TypeError as e:
        raise InputError("bad parameters for family %r: %s" % (kind, e))


def is_independent(g, s):
    s = list(s)
    for i, u in enumerate(s):
        for v in s[i + 1:]:
            if g.has_edge(u, v):
                return False
    return True


def degree_profile(g):
    """Per vertex: (|N(v)|, |N^2(v)|) with N^2 the distance-two neighborhood."""
    return {v: (g.degree(v), len(g.second_neighborhood(v))) for v in g.vertices}
