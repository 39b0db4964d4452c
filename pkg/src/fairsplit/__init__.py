"""Exact search and verification for fair splittings of vertex-partitioned
graphs by pairwise disjoint independent sets."""

__version__ = "0.1.0"
