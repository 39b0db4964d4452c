"""The labeled-direction constraint map on the q-fold deleted join of a
simplex, and its two correctness checks.

Setting: ground set of n = q*k - t vertices (0-based), 1 <= t <= q,
k >= min(t, 2).  A face of the q-fold deleted join assigns each vertex a
digit in {0..q}: 0 = unused, j = placed in slot j.  The constrained region
consists of the faces whose slots all have at most k-1 vertices, with at
least t-1 slots at k-2 or fewer; every face outside it gets a direction
d(F) in 1..q, and the face's barycenter is sent to the projection of
e_{d(F)} onto the zero-sum hyperplane (constrained faces are sent to 0).
Affine interpolation over the barycentric subdivision extends this to the
whole space.

Direction rule: the slot of largest size wins; ties are broken by the slot
containing the earliest vertex (in a configurable vertex order) among the
tied slots' members.  Ties can only involve nonempty slots, so the rule is
total, and it commutes with permuting the slots because it only looks at
slot contents.

The two checks:

  verify_zero_set      the map vanishes nowhere outside the constrained
                       region.  On an open cell of the subdivision (an
                       inclusion chain of faces) the map takes the value
                       sum of w_F * proj(e_{d(F)}) with all w_F > 0; such a
                       combination vanishes iff every direction 1..q occurs
                       among the chain's unconstrained faces.  So the check
                       is a search for an inclusion chain of unconstrained
                       faces whose directions cover 1..q, done by a
                       level-by-level DP over antichains of direction sets.

  verify_equivariance  d(pi F) = pi(d(F)) for slot permutations pi; the
                       adjacent transpositions generate the full symmetric
                       group, so checking them suffices, and small instances
                       are additionally checked against every permutation.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InputError, ResourceBudget

FACE_BUDGET = 10 ** 7
_NUMPY_THRESHOLD = 150000


@dataclass(frozen=True)
class ConstraintMapInstance:
    q: int
    k: int
    t: int
    vertex_order: tuple = None  # priority permutation of 0..n-1

    def __post_init__(self):
        if self.q < 2:
            raise InputError("q must be at least 2")
        if not 1 <= self.t <= self.q:
            raise InputError("need 1 <= t <= q")
        if self.k < min(self.t, 2):
            raise InputError("need k >= min(t, 2)")
        n = self.n
        if n < 1:
            raise InputError("ground set would be empty")
        if self.vertex_order is None:
            object.__setattr__(self, "vertex_order", tuple(range(n)))
        else:
            object.__setattr__(self, "vertex_order", tuple(self.vertex_order))
        if sorted(self.vertex_order) != list(range(n)):
            raise InputError("vertex_order must be a permutation of 0..n-1")

    @property
    def n(self):
        return self.q * self.k - self.t

    def face_count(self):
        return (self.q + 1) ** self.n


def slot_sizes(digits, q):
    counts = [0] * q
    for d in digits:
        if d:
            counts[d - 1] += 1
    return counts


def is_constrained_face(digits, q, k, t):
    """Membership in the constrained region, with a reason string."""
    counts = slot_sizes(digits, q)
    big = [j + 1 for j, c in enumerate(counts) if c > k - 1]
    if big:
        return False, "slot %d has %d > k-1 vertices" % (big[0], counts[big[0] - 1])
    small = sum(1 for c in counts if c <= k - 2)
    if small < t - 1:
        return False, "only %d slots at k-2 or fewer (need %d)" % (small, t - 1)
    return True, "all slots <= k-1 and %d slots <= k-2" % small


def constrained_size_bound(q, k, t):
    """Max total size of a constrained face: q(k-1) - (t-1)."""
    return q * (k - 1) - t + 1


def face_direction(inst, digits):
    """Direction in 1..q for unconstrained faces, None for constrained ones
    (the empty face is constrained for every valid instance)."""
    q, k, t = inst.q, inst.k, inst.t
    counts = slot_sizes(digits, q)
    ok, _ = is_constrained_face(digits, q, k, t)
    if ok:
        return None
    m = max(counts)
    tied = {j + 1 for j, c in enumerate(counts) if c == m}
    if len(tied) == 1:
        return tied.pop()
    for v in inst.vertex_order:
        if digits[v] in tied:
            return digits[v]
    raise AssertionError("unconstrained face has a nonempty maximal slot")


def slot_vector(q, j):
    """Projection of e_j onto the zero-sum hyperplane of R^q."""
    return tuple(Fraction(-1, q) + (1 if i == j else 0) for i in range(q))


def vertex_value(inst, digits):
    """Value at the subdivision vertex sitting at this face's barycenter."""
    d = face_direction(inst, digits)
    if d is None:
        return tuple(Fraction(0) for _ in range(inst.q))
    return slot_vector(inst.q, d - 1)


def is_subface(sub, sup):
    return all(a == 0 or a == b for a, b in zip(sub, sup))


def evaluate(inst, weighted_chain):
    """Value of the interpolated map at sum(w_F * barycenter(F)) for an
    inclusion chain of faces with positive weights summing to 1."""
    chain = [(tuple(d), Fraction(w)) for d, w in weighted_chain]
    if not chain:
        raise InputError("empty chain")
    if any(len(d) != inst.n for d, _ in chain):
        raise InputError("face has wrong ground set size")
    if any(w <= 0 for _, w in chain):
        raise InputError("weights must be positive")
    if sum(w for _, w in chain) != 1:
        raise InputError("weights must sum to 1")
    chain.sort(key=lambda fw: sum(1 for x in fw[0] if x))
    for (a, _), (b, _) in zip(chain, chain[1:]):
        if a == b or not is_subface(a, b):
            raise InputError("faces do not form a strict inclusion chain")
    out = [Fraction(0)] * inst.q
    for digits, w in chain:
        val = vertex_value(inst, digits)
        out = [acc + w * x for acc, x in zip(out, val)]
    return tuple(out)


def all_faces(inst):
    return itertools.product(range(inst.q + 1), repeat=inst.n)


def build_map(inst, budget=FACE_BUDGET):
    """Materialized direction assignment {digits: direction-or-None}."""
    if inst.face_count() > budget:
        raise ResourceBudget("instance has %d faces" % inst.face_count())
    return {digits: face_direction(inst, digits) for digits in all_faces(inst)}


def permute_slots(digits, perm):
    """perm maps slot j to perm[j] (1-based, perm[0] = 0 fixed)."""
    return tuple(perm[d] for d in digits)


# ---------------------------------------------------------------------------
# zero-set verification


@dataclass
class ZeroSetReport:
    q: int
    k: int
    t: int
    vertex_order: tuple
    levels_with_unconstrained: int
    short_circuit: bool
    faces_processed: int
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {
            "schema": "zero_set_report/1",
            "q": self.q, "k": self.k, "t": self.t,
            "vertex_order": list(self.vertex_order),
            "levels_with_unconstrained": self.levels_with_unconstrained,
            "short_circuit": self.short_circuit,
            "faces_processed": self.faces_processed,
            "violations": [{"chain": [list(f) for f in chain]} for chain in self.violations],
            "ok": self.ok,
        }


def _levels_with_unconstrained(inst):
    """Levels s (face sizes) at which some slot-size vector fails the
    constrained-region test; computed over compositions, not faces."""
    q, k, t, n = inst.q, inst.k, inst.t, inst.n
    levels = []
    for s in range(1, n + 1):
        found = False
        for cuts in itertools.combinations(range(s + q - 1), q - 1):
            counts = []
            prev = -1
            for c in cuts:
                counts.append(c - prev - 1)
                prev = c
            counts.append(s + q - 2 - prev)
            if not is_constrained_face_counts(counts, q, k, t):
                found = True
                break
        if found:
            levels.append(s)
    return levels


def is_constrained_face_counts(counts, q, k, t):
    if any(c > k - 1 for c in counts):
        return False
    return sum(1 for c in counts if c <= k - 2) >= t - 1


def _witness_chain(inst, top, need_mask):
    """Reconstruct an explicit rainbow chain below `top` covering need_mask,
    by depth-first descent; used only to decorate violations."""
    q = inst.q

    def rec(digits, need, acc):
        if need == 0:
            return acc
        support = [v for v, d in enumerate(digits) if d]
        for v in support:
            sub = list(digits)
            sub[v] = 0
            sub = tuple(sub)
            d = face_direction(inst, sub)
            nxt = acc
            nd = need
            if d is not None and need & (1 << (d - 1)):
                nxt = [sub] + acc
                nd = need & ~(1 << (d - 1))
            got = rec(sub, nd, nxt)
            if got is not None:
                return got
        return None

    d_top = face_direction(inst, top)
    need = need_mask & ~(1 << (d_top - 1))
    got = rec(top, need, [top])
    return got if got is not None else [top]


def verify_zero_set(inst, budget=FACE_BUDGET, max_witnesses=1):
    """Search for an inclusion chain of unconstrained faces whose directions
    cover all of 1..q; an empty violations list proves the map's zero set
    stays inside the constrained region."""
    q, n = inst.q, inst.n
    if inst.face_count() > budget:
        raise ResourceBudget("instance has %d faces" % inst.face_count())
    levels = _levels_with_unconstrained(inst)
    report = ZeroSetReport(inst.q, inst.k, inst.t, inst.vertex_order,
                           len(levels), False, 0)
    if len(levels) < q:
        report.short_circuit = True
        return report

    full = (1 << q) - 1
    prev_down = {}   # level s-1: digits -> antichain tuple of masks
    prev_dir = {}    # level s-1: digits -> direction or None
    processed = 0
    for s in range(0, n + 1):
        cur_down = {}
        cur_dir = {}
        for support in itertools.combinations(range(n), s):
            for assign in itertools.product(range(1, q + 1), repeat=s):
                digits = [0] * n
                for v, a in zip(support, assign):
                    digits[v] = a
                digits = tuple(digits)
                processed += 1
                d = face_direction(inst, digits)
                down = set()
                for v in support:
                    sub = list(digits)
                    sub[v] = 0
                    sub = tuple(sub)
                    sd = prev_dir.get(sub)
                    sdown = prev_down.get(sub, ())
                    down.update(sdown)
                    if sd is not None:
                        bit = 1 << (sd - 1)
                        down.add(bit)
                        for msk in sdown:
                            down.add(msk | bit)
                if d is not None:
                    need = full & ~(1 << (d - 1))
                    if need == 0 or any(msk & need == need for msk in down):
                        report.violations.append(
                            [list(f) for f in _witness_chain(inst, digits, full)])
                        if len(report.violations) >= max_witnesses:
                            report.faces_processed = processed
                            return report
                down = [m for m in down
                        if not any(m != o and m | o == o for o in down)]
                if down:
                    cur_down[digits] = tuple(down)
                cur_dir[digits] = d
        prev_down, prev_dir = cur_down, cur_dir
    report.faces_processed = processed
    return report


# ---------------------------------------------------------------------------
# equivariance verification


@dataclass
class EquivarianceReport:
    q: int
    k: int
    t: int
    vertex_order: tuple
    permutations_checked: int
    full_group: bool
    faces_processed: int
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {
            "schema": "equivariance_report/1",
            "q": self.q, "k": self.k, "t": self.t,
            "vertex_order": list(self.vertex_order),
            "permutations_checked": self.permutations_checked,
            "full_group": self.full_group,
            "faces_processed": self.faces_processed,
            "violations": self.violations,
            "ok": self.ok,
        }


def _adjacent_transpositions(q):
    out = []
    for a in range(1, q):
        perm = list(range(q + 1))
        perm[a], perm[a + 1] = perm[a + 1], perm[a]
        out.append(tuple(perm))
    return out


def _all_slot_permutations(q):
    out = []
    for p in itertools.permutations(range(1, q + 1)):
        out.append((0,) + p)
    return out


def _directions_array(inst, chunk=1 << 20):
    """dirs[face_int] in {0 = constrained, 1..q}; face ints are little-endian
    base-(q+1) digit strings."""
    q, k, t, n = inst.q, inst.k, inst.t, inst.n
    m = inst.face_count()
    base = q + 1
    weights = [(base ** v) for v in range(n)]
    dirs = np.zeros(m, dtype=np.int8)
    for lo in range(0, m, chunk):
        hi = min(lo + chunk, m)
        ints = np.arange(lo, hi, dtype=np.int64)
        digs = [(ints // weights[v]) % base for v in range(n)]
        counts = np.zeros((hi - lo, q), dtype=np.int16)
        for v in range(n):
            for j in range(1, q + 1):
                counts[:, j - 1] += (digs[v] == j)
        mx = counts.max(axis=1)
        small = (counts <= k - 2).sum(axis=1)
        constrained = (mx <= k - 1) & (small >= t - 1)
        out = np.zeros(hi - lo, dtype=np.int8)
        undecided = ~constrained
        for v in inst.vertex_order:
            if not undecided.any():
                break
            cand = digs[v]
            sel = np.take_along_axis(
                counts, np.maximum(cand - 1, 0)[:, None].astype(np.int64), axis=1)[:, 0]
            hit = undecided & (cand >= 1) & (sel == mx)
            out[hit] = cand[hit]
            undecided &= ~hit
        dirs[lo:hi] = out
    return dirs


def _verify_equivariance_numpy(inst, perms, report, chunk=1 << 20):
    q, n = inst.q, inst.n
    base = q + 1
    weights = [(base ** v) for v in range(n)]
    dirs = _directions_array(inst, chunk)
    m = inst.face_count()
    report.faces_processed = m
    for perm in perms:
        lut = np.array(perm, dtype=np.int64)
        dlut = np.array(perm, dtype=np.int8)
        for lo in range(0, m, chunk):
            hi = min(lo + chunk, m)
            ints = np.arange(lo, hi, dtype=np.int64)
            image = np.zeros(hi - lo, dtype=np.int64)
            for v in range(n):
                digs = (ints // weights[v]) % base
                image += lut[digs] * weights[v]
            got = dirs[image]
            want = dlut[dirs[lo:hi]]
            bad = np.nonzero(got != want)[0]
            for idx in bad[:5]:
                f = int(ints[idx])
                digits = tuple((f // weights[v]) % base for v in range(n))
                report.violations.append({
                    "face": list(digits), "perm": list(perm),
                    "got": int(got[idx]), "want": int(want[idx])})
            if bad.size:
                return
    return


def _verify_equivariance_python(inst, perms, report):
    for digits in all_faces(inst):
        report.faces_processed += 1
        d0 = face_direction(inst, digits)
        for perm in perms:
            pd = permute_slots(digits, perm)
            d1 = face_direction(inst, pd)
            want = None if d0 is None else perm[d0]
            if d1 != want:
                report.violations.append({
                    "face": list(digits), "perm": list(perm),
                    "got": 0 if d1 is None else d1,
                    "want": 0 if want is None else want})
                if len(report.violations) >= 5:
                    return


def verify_equivariance(inst, full_group=None, budget=FACE_BUDGET):
    """Check d(pi F) = pi d(F).  Adjacent transpositions generate the whole
    slot-permutation group, so they are always checked; the full group is
    checked too when the instance is small (or on request)."""
    m = inst.face_count()
    if m > budget:
        raise ResourceBudget("instance has %d faces" % m)
    if full_group is None:
        full_group = math.factorial(inst.q) * m <= 2_000_000
    perms = _all_slot_permutations(inst.q) if full_group else _adjacent_transpositions(inst.q)
    report = EquivarianceReport(inst.q, inst.k, inst.t, inst.vertex_order,
                                len(perms), full_group, 0)
    if m >= _NUMPY_THRESHOLD:
        _verify_equivariance_numpy(inst, perms, report)
    else:
        _verify_equivariance_python(inst, perms, report)
    return report


def valid_parameter_triples(max_ground):
    """All (q, k, t) with q >= 2, 1 <= t <= q, k >= min(t, 2) and ground set
    size qk - t between 1 and max_ground."""
    out = set()
    for q in range(2, max_ground + 2):
        for t in range(1, q + 1):
            k = min(t, 2)
            while q * k - t <= max_ground:
                if q * k - t >= 1:
                    out.add((q, k, t))
                k += 1
    return sorted(out)


def random_vertex_orders(n, count, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        order = list(range(n))
        rng.shuffle(order)
        out.append(tuple(order))
    return out
