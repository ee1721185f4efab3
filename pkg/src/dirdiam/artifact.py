"""Reduction output bundle: a graph, gap thresholds, and bookkeeping.

Every hardness reduction in the package produces one of these.  A downstream
roundtrip-diameter solver only has to compare its answer against
``no_threshold`` / ``yes_threshold`` on the ``interesting_pairs``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import graph as _graph

KINDS = ("linfty-weighted", "linfty-unweighted", "ankc-weighted",
         "ankc-unweighted")


@dataclass(frozen=True)
class ReductionArtifact:
    graph: _graph.DirectedGraph
    kind: str
    yes_threshold: int
    no_threshold: int
    interesting_pairs: tuple  # ((u, v), ...)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown artifact kind {self.kind!r}")
        if not self.yes_threshold > self.no_threshold:
            raise ValueError("yes_threshold must exceed no_threshold")
        for u, v in self.interesting_pairs:
            if not (0 <= u < self.graph.n and 0 <= v < self.graph.n):
                raise ValueError(f"interesting pair ({u}, {v}) out of range")

    def meta_dict(self):
        return {
            "kind": self.kind,
            "yes_threshold": self.yes_threshold,
            "no_threshold": self.no_threshold,
            "interesting_pairs": [list(p) for p in self.interesting_pairs],
            "metadata": self.metadata,
        }

    def write(self, graph_path, meta_path):
        _graph.write_edge_list(self.graph, graph_path)
        with open(meta_path, "w") as fh:
            json.dump(self.meta_dict(), fh, indent=1)
            fh.write("\n")


def read_meta(meta_path):
    with open(meta_path) as fh:
        data = json.load(fh)
    data["interesting_pairs"] = [tuple(p) for p in data["interesting_pairs"]]
    return data
