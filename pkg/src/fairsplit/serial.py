"""Versioned JSON interchange for instances, splittings, complexes, and
point configurations.

Every document carries a "schema" field.  Output is canonical: keys sorted,
two-space indents, no timestamps, so identical inputs produce byte-identical
bytes across runs and thread counts.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .complexes import SimplicialComplex
from .errors import InputError
from .geometry import PointConfiguration
from .graphs import Graph, VertexPartition
from .splitting import Splitting

INSTANCE_SCHEMA = "instance/1"
SPLITTING_SCHEMA = "splitting/1"
COMPLEX_SCHEMA = "complex/1"
POINTS_SCHEMA = "points/1"


def canonical_dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _as_document(data, expect_schema):
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise InputError("invalid JSON: %s" % e) from None
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    if data.get("schema") != expect_schema:
        raise InputError("expected schema %r, got %r"
                         % (expect_schema, data.get("schema")))
    return data


def _int_list(xs, what):
    if not isinstance(xs, list) or not all(isinstance(x, int) for x in xs):
        raise InputError("%s must be a list of integers" % what)
    return xs


def instance_dump(g: Graph, partition: VertexPartition | None = None):
    doc = {"schema": INSTANCE_SCHEMA, "n": g.n,
           "edges": [list(e) for e in sorted(g.edges)]}
    if partition is not None:
        doc["partition"] = [list(b) for b in partition.blocks]
    return doc


def instance_load(data):
    doc = _as_document(data, INSTANCE_SCHEMA)
    if not isinstance(doc.get("n"), int) or doc["n"] < 0:
        raise InputError("instance needs a nonnegative integer n")
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise InputError("edges must be a list")
    pairs = []
    for e in edges:
        e = _int_list(e, "edge")
        if len(e) != 2:
            raise InputError("edge %r is not a pair" % (e,))
        pairs.append(tuple(e))
    g = Graph(doc["n"], pairs)
    partition = None
    if "partition" in doc:
        blocks = doc["partition"]
        if not isinstance(blocks, list) or not blocks:
            raise InputError("partition must be a nonempty list of blocks")
        partition = VertexPartition(
            [tuple(_int_list(b, "block")) for b in blocks], g.n)
        if set(partition.ground) != set(g.vertices):
            raise InputError("partition must cover vertices 1..%d" % g.n)
    return g, partition


def splitting_dump(s: Splitting):
    return {"schema": SPLITTING_SCHEMA, "sets": [list(x) for x in s.sets]}


def splitting_load(data):
    doc = _as_document(data, SPLITTING_SCHEMA)
    sets = doc.get("sets")
    if not isinstance(sets, list) or not sets:
        raise InputError("splitting needs a nonempty list of sets")
    out, seen = [], set()
    for s in sets:
        s = _int_list(s, "set")
        if len(set(s)) != len(s):
            raise InputError("set %r repeats a vertex" % (s,))
        if seen & set(s):
            raise InputError("sets overlap in %r" % sorted(seen & set(s)))
        seen |= set(s)
        out.append(tuple(s))
    return Splitting(out)


def complex_dump(k: SimplicialComplex):
    return {"schema": COMPLEX_SCHEMA, "vertices": list(k.vertices),
            "facets": [list(f) for f in k.facets]}


def complex_load(data):
    doc = _as_document(data, COMPLEX_SCHEMA)
    facets = doc.get("facets")
    if not isinstance(facets, list):
        raise InputError("complex needs a list of facets")
    cleaned = []
    for f in facets:
        if not isinstance(f, list) or not all(
                isinstance(v, (int, str)) for v in f):
            raise InputError("facet %r must list integer or string vertices"
                             % (f,))
        cleaned.append(tuple(f))
    vertices = doc.get("vertices")
    return SimplicialComplex(cleaned, vertices=vertices)


def _fraction_pair(x, what):
    if (not isinstance(x, list) or len(x) != 2
            or not all(isinstance(v, int) for v in x) or x[1] == 0):
        raise InputError("%s must be a [numerator, denominator] pair" % what)
    return Fraction(x[0], x[1])


def points_dump(config: PointConfiguration):
    return {"schema": POINTS_SCHEMA, "dim": config.dim,
            "points": [[[c.numerator, c.denominator] for c in p]
                       for p in config.points]}


def points_load(data):
    doc = _as_document(data, POINTS_SCHEMA)
    dim = doc.get("dim")
    pts = doc.get("points")
    if not isinstance(dim, int) or dim < 1 or not isinstance(pts, list):
        raise InputError("points document needs dim >= 1 and a point list")
    rows = []
    for p in pts:
        if not isinstance(p, list) or len(p) != dim:
            raise InputError("point %r does not have dim %d" % (p, dim))
        rows.append(tuple(_fraction_pair(c, "coordinate") for c in p))
    return PointConfiguration(tuple(rows))


def load_file(path, loader):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e)) from None
    return loader(text)
