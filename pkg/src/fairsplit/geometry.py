"""Exact rational geometry on the moment curve.

All predicates reduce to rational linear feasibility (exactlp); there is no
floating point, so repeated runs are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, ResourceBudget
from .exactlp import convex_hulls_common_point


@dataclass
class PointConfiguration:
    """Ordered rational points, optionally remembering moment-curve params."""

    points: list  # list of tuples of Fractions
    params: list | None = None
    base: Fraction | None = None

    def __post_init__(self):
        self.points = [tuple(Fraction(c) for c in p) for p in self.points]
        dims = {len(p) for p in self.points}
        if len(dims) > 1:
            raise InputError("points of mixed dimension")
        if self.params is not None:
            self.params = [Fraction(t) for t in self.params]
            if any(a >= b for a, b in zip(self.params, self.params[1:])):
                raise InputError("moment parameters must be strictly increasing")

    @property
    def dim(self):
        return len(self.points[0]) if self.points else 0

    def __len__(self):
        return len(self.points)

    def subset(self, labels):
        """Points for 1-based labels."""
        return [self.points[i - 1] for i in labels]


def moment_points(params, d=None, dim=None):
    """Points (t, t^2, ..., t^dim) for strictly increasing rational params.

    Either d (ambient dimension 2d) or an explicit target dimension.
    """
    if (d is None) == (dim is None):
        raise InputError("give exactly one of d or dim")
    if dim is None:
        dim = 2 * d
    if dim < 1:
        raise InputError("dimension must be positive")
    params = [Fraction(t) for t in params]
    pts = [tuple(t ** e for e in range(1, dim + 1)) for t in params]
    return PointConfiguration(pts, params=params)


def stretched_moment_points(n, d=None, dim=None, base=2):
    """Moment configuration with doubly exponential parameters B^(2^i).

    The spacing is intended to make q-fold hull intersections happen exactly
    on weakly q-stable families; tests validate that per instance with the LP
    oracle instead of assuming it.
    """
    if n < 1:
        raise InputError("need at least one point")
    base = Fraction(base)
    if base <= 1:
        raise InputError("base must exceed 1")
    params = [base ** (2 ** i) for i in range(1, n + 1)]
    config = moment_points(params, d=d, dim=dim)
    config.base = base
    return config


def hulls_intersect(point_sets):
    """True iff the convex hulls of the given point sets share a point."""
    return convex_hulls_common_point(point_sets) is not None


def gale_alternating(s1, s2):
    """Strict alternation of two equal-size disjoint label sets in their
    natural order -- on moment-curve points in R^(2d) with |S_i| = d+1 this
    is equivalent to their hulls crossing."""
    a, b = set(s1), set(s2)
    if a & b:
        raise InputError("label sets must be disjoint")
    if len(a) != len(b):
        raise InputError("label sets must have equal size")
    if not a:
        return False
    merged = sorted(a | b)
    side = [x in a for x in merged]
    return all(u != v for u, v in zip(side, side[1:]))


def _disjoint_families(n_points, q, max_total):
    """Canonical families of q pairwise disjoint nonempty label subsets with
    at most max_total labels in total; canonical = classes ordered by first
    label, so each unordered family appears once."""
    out = []

    def rec(label, classes, total):
        if label > n_points:
            if all(classes):
                out.append([tuple(c) for c in classes])
            return
        rec(label + 1, classes, total)
        if total < max_total:
            first_empty = next((i for i, c in enumerate(classes) if not c), q)
            for i in range(min(first_empty + 1, q)):
                classes[i].append(label)
                rec(label + 1, classes, total + 1)
                classes[i].pop()

    rec(1, [[] for _ in range(q)], 0)
    return out


def strong_general_position_check(config, q, budget=200000):
    """True iff every family of q pairwise disjoint nonempty subsets with at
    most (q-1)(D+1) points in total has empty common hull intersection.

    Returns (verdict, witness_family_or_None).
    """
    if q < 1:
        raise InputError("q must be positive")
    bound = (q - 1) * (config.dim + 1)
    fams = _disjoint_families(len(config), q, bound)
    if len(fams) > budget:
        raise ResourceBudget("too many families to check: %d" % len(fams))
    for fam in fams:
        if hulls_intersect([config.subset(c) for c in fam]):
            return False, fam
    return True, None


def _set_partitions(n, q):
    """Partitions of labels 1..n into exactly q nonempty unordered parts, in
    lexicographic restricted-growth order."""
    if n < q:
        return
    code = [0] * n

    def rec(i, used):
        if i == n:
            if used == q:
                parts = [[] for _ in range(q)]
                for lbl, c in enumerate(code, start=1):
                    parts[c].append(lbl)
                yield [tuple(p) for p in parts]
            return
        for c in range(min(used + 1, q)):
            code[i] = c
            yield from rec(i + 1, max(used, c + 1))

    yield from rec(0, 0)


def tverberg_search(config, q, target_dim=None, budget=500000):
    """First partition of all the labels into q nonempty parts whose convex
    hulls share a point, as (parts, common_point); None when no partition
    works."""
    if target_dim is not None and target_dim != config.dim:
        raise InputError("configuration lives in dimension %d, not %d"
                         % (config.dim, target_dim))
    seen = 0
    for parts in _set_partitions(len(config), q):
        seen += 1
        if seen > budget:
            raise ResourceBudget("partition budget exceeded")
        got = convex_hulls_common_point([config.subset(p) for p in parts])
        if got is not None:
            return parts, got[0]
    return None
