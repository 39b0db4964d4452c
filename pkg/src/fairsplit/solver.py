"""Exact backtracking search for splittings.

Vertices are processed in ascending label order and assigned to one of the q
sets or left unused.  Pruning:

  * quota deficits -- a block whose remaining vertices cannot fill the
    per-set minimums kills the branch;
  * uncovered budget -- flavors with a per-block cap on uncovered vertices
    prune as soon as a block overspends;
  * per-block caps (geometric mode, exact-count searches);
  * balance -- when requested, branches whose size spread cannot return to
    within 1 are cut;
  * admissibility -- graph adjacency plus label-distance stability, or facet
    bitmask filters when only a host complex is given;
  * symmetry -- a vertex may only open the first empty set, so each
    unordered family is visited exactly once, in canonical order.

"exhausted_none" is only reported after full (symmetry-reduced) exhaustion;
any budget cutoff is reported as "budget_exceeded", never as nonexistence.

The tree is always split into subtrees at a fixed shallow depth and the
subtrees are merged in fixed order, so verdict, witness, and node counts are
identical for every thread count.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .complexes import SimplicialComplex
from .errors import ContractError, InputError, ResourceBudget
from .exactlp import convex_hulls_common_point
from .geometry import PointConfiguration
from .graphs import Graph, VertexPartition
from .parallel import parallel_map
from .splitting import (Splitting, SplittingSpec, certificate_for,
                        check_splitting, is_weakly_q_stable, leftover_cap,
                        required_min)

DEFAULT_NODE_BUDGET = 5_000_000
_SPLIT_DEPTH = 4


@dataclass
class SearchProblem:
    partition: VertexPartition
    spec: SplittingSpec
    graph: Graph | None = None
    host: SimplicialComplex | None = None
    mode: str = "combinatorial"
    points: PointConfiguration | None = None
    caps: list | None = None
    budget: int = DEFAULT_NODE_BUDGET
    threads: int = 1

    def __post_init__(self):
        if self.graph is None and self.host is None:
            raise InputError("need a graph or a host complex")
        ground = set(self.partition.ground)
        if self.graph is not None and ground != set(self.graph.vertices):
            raise InputError("partition must cover the graph's vertex set")
        if self.graph is None and ground != set(self.host.vertices):
            raise InputError("partition must cover the host's vertex set")
        if self.mode not in ("combinatorial", "geometric"):
            raise InputError("unknown mode %r" % (self.mode,))
        if self.mode == "geometric":
            if self.points is None:
                raise InputError("geometric mode needs a point configuration")
            if len(self.points) < max(ground):
                raise InputError("need a point for every vertex label")
        if self.caps is not None and len(self.caps) != self.partition.m:
            raise InputError("need one cap per block")


@dataclass
class SearchOutcome:
    status: str  # found | exhausted_none | budget_exceeded
    splitting: Splitting | None = None
    certificate: object = None
    nodes: int = 0
    elapsed: float = 0.0
    common_point: tuple | None = None

    def to_json(self):
        out = {
            "schema": "outcome/1",
            "status": self.status,
            "nodes": self.nodes,
            "splitting": None if self.splitting is None else [list(s) for s in self.splitting.sets],
            "certificate": None if self.certificate is None else self.certificate.to_json(),
        }
        if self.common_point is not None:
            out["common_point"] = [[p.numerator, p.denominator] for p in self.common_point]
        return out


class _Ctx:
    def __init__(self, problem):
        p = problem
        self.spec = p.spec
        self.q = p.spec.q
        self.partition = p.partition
        self.order = sorted(p.partition.ground)
        self.n = len(self.order)
        if p.spec.stability >= 2 and not all(isinstance(v, int) for v in self.order):
            raise InputError("stability needs integer labels")
        self.block_of = [p.partition.block_of(v) for v in self.order]
        self.mins = [required_min(p.spec.flavor, len(b), self.q)
                     for b in p.partition.blocks]
        cap = leftover_cap(p.spec.flavor, self.q)
        self.unused_cap = [None if cap is None else cap for _ in p.partition.blocks]
        self.caps = p.caps
        self.balanced = p.spec.balanced
        self.stability = p.spec.stability
        self.graph = p.graph
        self.adj = p.graph.adj if p.graph is not None else None
        self.points = p.points if p.mode == "geometric" else None
        self.weak = p.spec.weak_stability
        # suffix counts: remaining[j][d] = vertices of block j at positions >= d
        m = p.partition.m
        self.remaining = [[0] * (self.n + 1) for _ in range(m)]
        for d in range(self.n - 1, -1, -1):
            for j in range(m):
                self.remaining[j][d] = self.remaining[j][d + 1] + (self.block_of[d] == j)
        # facet bitmask filters when no graph is available
        self.vmask = None
        if p.graph is None:
            facets = p.host.facets
            self.full_mask = (1 << len(facets)) - 1
            self.vmask = {v: 0 for v in self.order}
            for idx, f in enumerate(facets):
                for v in f:
                    self.vmask[v] |= 1 << idx
        self.host = p.host


class _State:
    def __init__(self, ctx):
        q, m = ctx.q, ctx.partition.m
        self.members = [[] for _ in range(q)]
        self.counts = [[0] * m for _ in range(q)]
        self.deficit = [q * ctx.mins[j] for j in range(m)]
        self.unused = [0] * m
        self.sizes = [0] * q
        self.used_sets = 0
        self.fmask = [ctx.full_mask] * q if ctx.vmask is not None else None
        self.choices = []


def _can_assign(ctx, st, i, v, j):
    if i > st.used_sets:
        return False  # symmetry: only the first empty set may open
    if ctx.caps is not None and st.counts[i][j] >= ctx.caps[j]:
        return False
    mem = st.members[i]
    if ctx.stability >= 2 and mem and v - mem[-1] < ctx.stability:
        return False
    if ctx.adj is not None:
        av = ctx.adj[v]
        if any(u in av for u in mem):
            return False
    else:
        if not (st.fmask[i] & ctx.vmask[v]):
            return False
    if ctx.balanced:
        rest = ctx.n - len(st.choices) - 1
        hi = lo = st.sizes[i] + 1
        for x in range(ctx.q):
            if x != i:
                s = st.sizes[x]
                if s > hi:
                    hi = s
                if s < lo:
                    lo = s
        if hi - (lo + rest) > 1:
            return False
    return True


def _apply(ctx, st, choice):
    d = len(st.choices)
    v = ctx.order[d]
    j = ctx.block_of[d]
    st.choices.append(choice)
    if choice == ctx.q:
        st.unused[j] += 1
        return
    i = choice
    if not st.members[i]:
        st.used_sets += 1
    if st.counts[i][j] < ctx.mins[j]:
        st.deficit[j] -= 1
    st.counts[i][j] += 1
    st.members[i].append(v)
    st.sizes[i] += 1
    if st.fmask is not None:
        st.fmask[i] &= ctx.vmask[v]


def _undo(ctx, st, saved_fmask):
    choice = st.choices.pop()
    d = len(st.choices)
    v = ctx.order[d]
    j = ctx.block_of[d]
    if choice == ctx.q:
        st.unused[j] -= 1
        return
    i = choice
    st.members[i].pop()
    st.sizes[i] -= 1
    st.counts[i][j] -= 1
    if st.counts[i][j] < ctx.mins[j]:
        st.deficit[j] += 1
    if not st.members[i]:
        st.used_sets -= 1
    if st.fmask is not None:
        st.fmask[i] = saved_fmask


class _BudgetHit(Exception):
    pass


class _Enough(Exception):
    pass


def _leaf_ok(ctx, st, solutions):
    if any(d > 0 for d in st.deficit):
        return
    if ctx.balanced and max(st.sizes) - min(st.sizes) > 1:
        return
    sets = [tuple(m) for m in st.members]
    if ctx.weak is not None and is_weakly_q_stable(sets, ctx.weak) is not True:
        return
    point = None
    if ctx.points is not None:
        if any(not s for s in sets):
            return
        got = convex_hulls_common_point([ctx.points.subset(s) for s in sets])
        if got is None:
            return
        point = got[0]
    solutions.append((sets, point))


def _explore(ctx, st, stop_depth, sink_prefix, solutions, box, limit):
    box[0] += 1
    if box[0] > box[1]:
        raise _BudgetHit()
    d = len(st.choices)
    if d == stop_depth:
        if sink_prefix is not None:
            sink_prefix(tuple(st.choices))
        else:
            _leaf_ok(ctx, st, solutions)
            if len(solutions) >= limit:
                raise _Enough()
        return
    j = ctx.block_of[d]
    v = ctx.order[d]
    rem_after = ctx.remaining[j][d + 1]
    for i in range(ctx.q):
        if not _can_assign(ctx, st, i, v, j):
            continue
        saved = st.fmask[i] if st.fmask is not None else None
        _apply(ctx, st, i)
        if st.deficit[j] <= rem_after:
            _explore(ctx, st, stop_depth, sink_prefix, solutions, box, limit)
        _undo(ctx, st, saved)
    cap = ctx.unused_cap[j]
    if cap is None or st.unused[j] < cap:
        _apply(ctx, st, ctx.q)
        if st.deficit[j] <= rem_after:
            _explore(ctx, st, stop_depth, sink_prefix, solutions, box, limit)
        _undo(ctx, st, None)


def _run_subtree(ctx, prefix, budget, limit):
    st = _State(ctx)
    for choice in prefix:
        _apply(ctx, st, choice)
    solutions = []
    box = [0, budget]
    status = "done"
    try:
        _explore(ctx, st, ctx.n, None, solutions, box, limit)
    except _BudgetHit:
        status = "budget"
    except _Enough:
        pass
    return status, solutions, box[0]


def _search(problem, limit):
    ctx = _Ctx(problem)
    split = min(_SPLIT_DEPTH, ctx.n)
    prefixes = []
    st = _State(ctx)
    box = [0, problem.budget]
    frontier_status = "done"
    try:
        _explore(ctx, st, split, prefixes.append, [], box, limit)
    except _BudgetHit:
        frontier_status = "budget"
    frontier_nodes = box[0]
    if frontier_status == "budget":
        return "budget", [], frontier_nodes

    results = parallel_map(
        lambda pfx: _run_subtree(ctx, pfx, problem.budget, limit),
        prefixes, problem.threads)

    solutions, nodes, budget_hit = [], frontier_nodes, False
    for status, sols, cnt in results:
        if len(solutions) < limit:
            nodes += cnt
            if status == "budget":
                budget_hit = True
            solutions.extend(sols)
    del solutions[limit:]
    if solutions:
        return "found", solutions, nodes
    return ("budget" if budget_hit else "none"), [], nodes


def _verify(problem, sets):
    if problem.graph is not None:
        return check_splitting(problem.graph, problem.partition, sets, problem.spec)
    return certificate_for(problem.host.is_face, problem.partition, sets, problem.spec)


def find_splitting(problem: SearchProblem) -> SearchOutcome:
    t0 = time.monotonic()
    status, solutions, nodes = _search(problem, 1)
    elapsed = time.monotonic() - t0
    if status == "found":
        sets, point = solutions[0]
        cert = _verify(problem, sets)
        if not cert.ok:
            raise ContractError("search produced a splitting its own certificate rejects")
        return SearchOutcome("found", Splitting(sets), cert, nodes, elapsed, point)
    if status == "budget":
        return SearchOutcome("budget_exceeded", None, None, nodes, elapsed)
    return SearchOutcome("exhausted_none", None, None, nodes, elapsed)


def find_transversal_splitting(g, partition, q, budget=DEFAULT_NODE_BUDGET, threads=1):
    spec = SplittingSpec(q=q, flavor="transversal")
    problem = SearchProblem(partition=partition, spec=spec, graph=g,
                            budget=budget, threads=threads)
    return find_splitting(problem)


def find_geometric_splitting(problem: SearchProblem) -> SearchOutcome:
    if problem.mode != "geometric":
        raise InputError("problem is not in geometric mode")
    if problem.caps is None:
        problem.caps = [len(b) // problem.spec.q for b in problem.partition.blocks]
    return find_splitting(problem)


def enumerate_splittings(problem: SearchProblem, limit) -> list:
    if limit < 0:
        raise InputError("limit must be nonnegative")
    if limit == 0:
        return []
    status, solutions, nodes = _search(problem, limit)
    if status == "budget" and len(solutions) < limit:
        raise ResourceBudget("node budget hit after %d splittings" % len(solutions))
    out = []
    for sets, point in solutions:
        cert = _verify(problem, sets)
        if not cert.ok:
            raise ContractError("enumerated splitting fails its certificate")
        outcome = SearchOutcome("found", Splitting(sets), cert, nodes, 0.0, point)
        out.append(outcome)
    return out
