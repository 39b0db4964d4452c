"""Splitting specifications, certificates, and the stability notions.

A splitting of a vertex-partitioned graph is an ordered family S_1, ..., S_q
of pairwise disjoint independent sets.  The per-block demands are

    fair        |S_i ∩ V_j| >= floor(|V_j| / q)
    almost fair |S_i ∩ V_j| >= floor((|V_j| + 1) / q) - 1, and at most q-1
                vertices of each V_j stay uncovered

and "balanced" additionally caps the size spread max|S_i| - min|S_i| at 1.

A set is s-stable when any two of its labels differ by at least s (so 2-stable
subsets of a path's vertex order are exactly its independent sets).  A family
is weakly w-stable when, after order-preserving relabeling of its union onto
1..(w-1)N+1, every window of w consecutive labels starting at 1 mod (w-1)
meets every member exactly once; the test is three-valued because the union
size can rule the relabeling out before anything is checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import InputError, is_independent


@dataclass(frozen=True)
class SplittingSpec:
    q: int
    flavor: str = "almost_fair"  # "fair" | "almost_fair" | "transversal"
    balanced: bool = False
    stability: int = 1
    weak_stability: int | None = None

    def __post_init__(self):
        if self.q < 1:
            raise InputError("q must be positive")
        if self.flavor not in ("fair", "almost_fair", "transversal"):
            raise InputError("unknown flavor %r" % (self.flavor,))
        if self.stability < 1:
            raise InputError("stability must be >= 1")
        if self.weak_stability is not None and self.weak_stability < 2:
            raise InputError("weak stability parameter must be >= 2")


class Splitting:
    """An ordered family of vertex sets, kept sorted for canonical output."""

    def __init__(self, sets):
        self.sets = [tuple(sorted(set(s))) for s in sets]

    @property
    def q(self):
        return len(self.sets)

    def covered(self):
        out = set()
        for s in self.sets:
            out.update(s)
        return out

    def __eq__(self, other):
        return isinstance(other, Splitting) and self.sets == other.sets

    def __repr__(self):
        return "Splitting(%r)" % (self.sets,)


def fair_quota(block_size, q):
    return block_size // q


def almost_fair_quota(block_size, q):
    return (block_size + 1) // q - 1


def required_min(flavor, block_size, q):
    if flavor == "fair":
        return fair_quota(block_size, q)
    if flavor == "almost_fair":
        return almost_fair_quota(block_size, q)
    if flavor == "transversal":
        return 1
    raise InputError("unknown flavor %r" % (flavor,))


def leftover_cap(flavor, q):
    """Per-block cap on uncovered vertices; None means unconstrained."""
    return q - 1 if flavor == "almost_fair" else None


def is_q_stable(s, q):
    """Any two labels differ by at least q (trivially true for q <= 1)."""
    xs = sorted(s)
    return all(b - a >= q for a, b in zip(xs, xs[1:]))


def is_weakly_q_stable(sets, q):
    """Three-valued: True / False / None (None = sizes rule the notion out).

    Requires the members to be pairwise disjoint and |union| = (q-1)N + 1 for
    some N >= 1; otherwise returns None.  Then relabels the union
    order-preservingly onto 1..(q-1)N+1 and demands that each of the N windows
    {(q-1)(i-1)+1, ..., (q-1)i+1} contain exactly one element of every member.
    """
    if q < 2:
        raise InputError("weak stability needs q >= 2")
    sets = [frozenset(s) for s in sets]
    total = sum(len(s) for s in sets)
    union = sorted(set().union(*sets) if sets else set())
    if len(union) != total:
        return None  # overlapping members
    if len(union) < 1 or (len(union) - 1) % (q - 1) != 0:
        return None
    big_n = (len(union) - 1) // (q - 1)
    if big_n == 0:
        return None
    pos = {v: i + 1 for i, v in enumerate(union)}
    relabeled = [frozenset(pos[v] for v in s) for s in sets]
    for i in range(1, big_n + 1):
        window = set(range((q - 1) * (i - 1) + 1, (q - 1) * i + 2))
        for s in relabeled:
            if len(window & s) != 1:
                return False
    return True


@dataclass
class QuotaCertificate:
    """Everything check_splitting measured, plus the per-clause verdicts."""

    q: int
    flavor: str
    counts: list = field(default_factory=list)       # counts[i][j] = |S_i ∩ V_j|
    mins: list = field(default_factory=list)         # per-block demanded minimum
    quota_ok: bool = True
    independence_ok: list = field(default_factory=list)
    disjoint_ok: bool = True
    leftover: list = field(default_factory=list)     # per-block uncovered count
    leftover_ok: bool = True
    sizes: list = field(default_factory=list)
    balanced_ok: bool | None = None
    stability_ok: list = field(default_factory=list)
    weak_verdict: bool | None = None
    ok: bool = False

    def to_json(self):
        return {
            "schema": "certificate/1",
            "q": self.q,
            "flavor": self.flavor,
            "counts": [list(row) for row in self.counts],
            "mins": list(self.mins),
            "quota_ok": self.quota_ok,
            "independence_ok": list(self.independence_ok),
            "disjoint_ok": self.disjoint_ok,
            "leftover": list(self.leftover),
            "leftover_ok": self.leftover_ok,
            "sizes": list(self.sizes),
            "balanced_ok": self.balanced_ok,
            "stability_ok": list(self.stability_ok),
            "weak_verdict": self.weak_verdict,
            "ok": self.ok,
        }


def certificate_for(face_ok, partition, sets, spec):
    """Assemble a QuotaCertificate with an arbitrary admissibility predicate
    in place of graph independence (used for searches over host complexes)."""
    sets = [tuple(sorted(s)) for s in sets]
    if len(sets) != spec.q:
        raise InputError("expected %d sets, got %d" % (spec.q, len(sets)))

    cert = QuotaCertificate(q=spec.q, flavor=spec.flavor)
    seen = set()
    cert.disjoint_ok = True
    for s in sets:
        for v in s:
            if v in seen:
                cert.disjoint_ok = False
            seen.add(v)

    cert.independence_ok = [face_ok(s) for s in sets]
    cert.mins = [required_min(spec.flavor, len(b), spec.q) for b in partition.blocks]
    cert.counts = [[len(set(s) & set(b)) for b in partition.blocks] for s in sets]
    cert.quota_ok = all(cert.counts[i][j] >= cert.mins[j]
                        for i in range(spec.q) for j in range(partition.m))

    covered = set().union(*[set(s) for s in sets]) if sets else set()
    cert.leftover = [len(set(b) - covered) for b in partition.blocks]
    cap = leftover_cap(spec.flavor, spec.q)
    cert.leftover_ok = cap is None or all(x <= cap for x in cert.leftover)

    cert.sizes = [len(s) for s in sets]
    if spec.balanced:
        cert.balanced_ok = max(cert.sizes) - min(cert.sizes) <= 1
    cert.stability_ok = [is_q_stable(s, spec.stability) for s in sets]
    if spec.weak_stability is not None:
        cert.weak_verdict = is_weakly_q_stable(sets, spec.weak_stability)

    cert.ok = (cert.disjoint_ok and all(cert.independence_ok) and cert.quota_ok
               and cert.leftover_ok and all(cert.stability_ok)
               and (cert.balanced_ok is not False)
               and (spec.weak_stability is None or cert.weak_verdict is True))
    return cert


def check_splitting(g, partition, splitting, spec):
    """Pure measurement against a graph: never raises on a failing splitting,
    only on structurally impossible input (wrong q, vertices outside 1..n)."""
    sets = splitting.sets if isinstance(splitting, Splitting) else [tuple(sorted(s)) for s in splitting]
    for s in sets:
        for v in s:
            if not (1 <= v <= g.n):
                raise InputError("vertex %d outside 1..%d" % (v, g.n))
    return certificate_for(lambda s: is_independent(g, s), partition, sets, spec)
