"""Checkable sufficient conditions for the existence of (almost fair or
transversal) splittings by independent sets.

Each predicate tests the hypotheses of one known sufficient condition from
the literature, treated as a black box: when the hypotheses hold, a splitting
of the advertised kind exists, and the search engine should confirm it on any
desk-size instance.  Nothing here computes topology; the recognizers are pure
graph/arithmetic tests.

The six conditions:
  * neighborhood_bound  -- every vertex has 2|N(v)| + |N2(v)| < q and the
    graph has at least (q-1)n + 1 vertices (N2 counts vertices at distance
    exactly two).
  * path_deletion       -- prime power q, blocks of size >= q-1, at least
    (q-1)(m+2) + 1 vertices, and some simple path whose edge deletion brings
    every vertex under the neighborhood bound.
  * cliques_plus_isolated_shape -- the graph is a disjoint union of n cliques
    of size q-1 and one isolated vertex (prime q).
  * long_path_shape     -- the graph is a simple path on (q-1)n + 1 vertices
    (prime power q >= 4).
  * path_union_cliques_shape -- edge-disjoint union of a simple path and
    pairwise vertex-disjoint (q-1)-cliques on (q-1)n + 1 vertices, n >= m+1,
    prime q, blocks >= q-1.
  * transversal_size    -- prime power q, neighborhood bound everywhere, and
    every block of size >= 2q-1; yields q disjoint independent transversals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, ResourceBudget
from .graphs import Graph, VertexPartition

PATH_SEARCH_BUDGET = 2_000_000


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def is_prime_power(n):
    if n < 2:
        return False
    for p in range(2, n + 1):
        if p * p > n:
            return is_prime(n)
        if n % p:
            continue
        while n % p == 0:
            n //= p
        return n == 1
    return False


def worst_neighborhood(g: Graph):
    """(max over v of 2|N(v)| + |N2(v)|, a vertex attaining it)."""
    worst, arg = -1, None
    for v in g.vertices:
        val = 2 * g.degree(v) + len(g.second_neighborhood(v))
        if val > worst:
            worst, arg = val, v
    return worst, arg


def neighborhood_bound(g: Graph, q, n):
    worst, arg = worst_neighborhood(g)
    degree_ok = worst < q
    size_ok = g.n >= (q - 1) * n + 1
    return {"ok": degree_ok and size_ok, "worst_value": worst,
            "worst_vertex": arg, "degree_ok": degree_ok, "size_ok": size_ok}


def _neighborhood_ok_minus(g: Graph, removed, q):
    """Neighborhood bound after deleting the edge set `removed`."""
    adj = {v: set(g.adj[v]) for v in g.vertices}
    for u, w in removed:
        adj[u].discard(w)
        adj[w].discard(u)
    for v in g.vertices:
        nb = adj[v]
        second = set()
        for u in nb:
            second |= adj[u]
        second -= nb
        second.discard(v)
        if 2 * len(nb) + len(second) >= q:
            return False
    return True


def _path_edge_set(g: Graph, path):
    """Validate a vertex sequence as a simple path of g; return its edges."""
    if len(set(path)) != len(path):
        raise InputError("path repeats a vertex")
    edges = set()
    for u, w in zip(path, path[1:]):
        if not g.has_edge(u, w):
            raise InputError("path uses the non-edge (%s, %s)" % (u, w))
        edges.add((min(u, w), max(u, w)))
    return edges


def _search_simple_path(g: Graph, accept, budget=PATH_SEARCH_BUDGET):
    """First simple path (as a vertex list, [] = delete nothing) whose edge
    deletion satisfies `accept`; None if none exists.  Deterministic order:
    empty path, then DFS by ascending labels; reversals are skipped."""
    if accept(set()):
        return []
    counter = [0]

    def extend(path, used, edges):
        counter[0] += 1
        if counter[0] > budget:
            raise ResourceBudget("simple-path search budget exceeded")
        last = path[-1]
        for w in sorted(g.adj[last]):
            if w in used:
                continue
            e = (min(last, w), max(last, w))
            path.append(w)
            used.add(w)
            edges.add(e)
            if path[0] < path[-1] and accept(edges):
                return list(path)
            got = extend(path, used, edges)
            if got is not None:
                return got
            path.pop()
            used.discard(w)
            edges.discard(e)
        return None

    for v in sorted(g.vertices):
        got = extend([v], {v}, set())
        if got is not None:
            return got
    return None


def path_deletion(g: Graph, partition: VertexPartition, q, path=None,
                  budget=PATH_SEARCH_BUDGET):
    gates = {
        "prime_power": is_prime_power(q),
        "blocks_ok": all(len(b) >= q - 1 for b in partition.blocks),
        "size_ok": g.n >= (q - 1) * (partition.m + 2) + 1,
    }
    out = {"ok": False, "path": None, **gates}
    if not all(gates.values()):
        return out
    if path is not None:
        removed = _path_edge_set(g, list(path))
        if _neighborhood_ok_minus(g, removed, q):
            out.update(ok=True, path=list(path))
        return out
    found = _search_simple_path(
        g, lambda removed: _neighborhood_ok_minus(g, removed, q), budget)
    if found is not None:
        out.update(ok=True, path=found)
    return out


def _components(adj, vertices):
    seen, comps = set(), []
    for v in sorted(vertices):
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _is_disjoint_cliques(adj, vertices, size):
    """Every nontrivial component a complete graph on `size` vertices.
    Isolated vertices are allowed (they carry no edges)."""
    for comp in _components(adj, vertices):
        if len(comp) == 1:
            continue
        if len(comp) != size:
            return False
        for v in comp:
            if len(adj[v]) != size - 1:
                return False
    return True


def cliques_plus_isolated_shape(g: Graph, q):
    """Disjoint union of n cliques of size q-1 and one isolated vertex."""
    out = {"ok": False, "n": None, "prime": is_prime(q)}
    if q < 2:
        return out
    comps = _components(g.adj, g.vertices)
    if q == 2:
        # size-1 cliques are themselves isolated vertices; the shape is any
        # edgeless graph on n + 1 >= 2 vertices
        if g.n >= 2 and not g.edges:
            out.update(ok=True, n=g.n - 1)
        return out
    isolated = [c for c in comps if len(c) == 1]
    cliques = [c for c in comps if len(c) > 1]
    if len(isolated) != 1 or not cliques:
        return out
    for c in cliques:
        if len(c) != q - 1 or any(len(g.adj[v]) != q - 2 for v in c):
            return out
    out.update(ok=True, n=len(cliques))
    return out


def long_path_shape(g: Graph, q, n):
    """A simple path on exactly (q-1)n + 1 vertices; prime power q >= 4."""
    out = {"ok": False, "prime_power_ge4": q >= 4 and is_prime_power(q),
           "size_ok": n >= 1 and g.n == (q - 1) * n + 1}
    degs = sorted(g.degree(v) for v in g.vertices)
    if g.n == 1:
        shape = not g.edges
    else:
        shape = (len(g.edges) == g.n - 1
                 and degs[:2] == [1, 1] and all(d == 2 for d in degs[2:])
                 and len(_components(g.adj, g.vertices)) == 1)
    out["is_path"] = shape
    out["ok"] = shape and out["prime_power_ge4"] and out["size_ok"]
    return out


def path_union_cliques_shape(g: Graph, partition: VertexPartition, q,
                             path=None, budget=PATH_SEARCH_BUDGET):
    """Edge-disjoint union of a simple path and pairwise vertex-disjoint
    cliques of size q-1, on (q-1)n + 1 vertices with n >= m+1; prime q;
    blocks of size >= q-1."""
    n, rem = divmod(g.n - 1, q - 1) if q >= 2 else (0, 1)
    gates = {
        "prime": is_prime(q),
        "blocks_ok": all(len(b) >= q - 1 for b in partition.blocks),
        "count_ok": rem == 0 and n >= partition.m + 1,
    }
    out = {"ok": False, "path": None, "n": n if rem == 0 else None, **gates}
    if not all(gates.values()):
        return out

    def accept(removed):
        adj = {v: set(g.adj[v]) for v in g.vertices}
        for u, w in removed:
            adj[u].discard(w)
            adj[w].discard(u)
        if q == 2:
            return all(not adj[v] for v in adj)
        return _is_disjoint_cliques(adj, g.vertices, q - 1)

    if path is not None:
        removed = _path_edge_set(g, list(path))
        if accept(removed):
            out.update(ok=True, path=list(path))
        return out
    found = _search_simple_path(g, accept, budget)
    if found is not None:
        out.update(ok=True, path=found)
    return out


def transversal_size(g: Graph, partition: VertexPartition, q):
    worst, arg = worst_neighborhood(g)
    out = {
        "ok": False,
        "prime_power": is_prime_power(q),
        "worst_value": worst,
        "worst_vertex": arg,
        "degree_ok": worst < q,
        "blocks_ok": all(len(b) >= 2 * q - 1 for b in partition.blocks),
    }
    out["ok"] = out["prime_power"] and out["degree_ok"] and out["blocks_ok"]
    return out


@dataclass
class ConditionReport:
    q: int
    n: int
    fragments: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.fragments[key]

    @property
    def any_certified(self):
        """True when at least one full sufficient condition holds."""
        keys = ("path_deletion", "path_union_cliques_shape",
                "transversal_size")
        return any(self.fragments[k]["ok"] for k in keys)

    def to_json(self):
        return {"schema": "conditions/1", "q": self.q, "n": self.n,
                "conditions": self.fragments}


def check_conditions(g: Graph, partition: VertexPartition, q, n=None,
                     path=None, budget=PATH_SEARCH_BUDGET):
    """Evaluate every condition; n defaults to the largest value compatible
    with the vertex count."""
    if q < 2:
        raise InputError("need q >= 2")
    if set(partition.ground) != set(g.vertices):
        raise InputError("partition must cover the graph's vertex set")
    if n is None:
        n = max((g.n - 1) // (q - 1), 1)
    frags = {
        "neighborhood_bound": neighborhood_bound(g, q, n),
        "path_deletion": path_deletion(g, partition, q, path, budget),
        "cliques_plus_isolated_shape": cliques_plus_isolated_shape(g, q),
        "long_path_shape": long_path_shape(g, q, n),
        "path_union_cliques_shape": path_union_cliques_shape(
            g, partition, q, path, budget),
        "transversal_size": transversal_size(g, partition, q),
    }
    return ConditionReport(q=q, n=n, fragments=frags)
