"""The Alexander tree: iterated scans with Alexander-vector multisets at the vertices.

The root is a long knot D with its Conway polynomial.  An edge labelled by a
scan parameter leads from a tangle to the vertex holding the multiset of
Alexander vectors of the cocycle on the scan of its 2-cable (d-green terms,
without the R III moves of type 3, 4, 5 or 7 whose middle branch is red).
Each retained tangle of a vertex can be scanned again; new black components
carry the tree level at which they appear.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .diagram import Diagram, from_morse
from .invariants import AlexanderVector, alexander_vector, conway
from .scan import CocycleValue, ModelError, ScanParameter, evaluate


class ResourceError(RuntimeError):
    """A configured cap on terms or crossings was exceeded."""


def _poly_json(p):
    return [[e, c] for e, c in p.pairs()]


def vector_json(v: AlexanderVector) -> dict:
    return {"labels": list(v.labels),
            "polys": [_poly_json(p) for p in v.polys],
            "linking": [[a, b, n] for (a, b), n in v.linking]}


def _sort_key(entry):
    mult, vec = entry
    return json.dumps(vector_json(vec), sort_keys=True), mult


@dataclass
class TreeVertex:
    depth: int
    provenance: tuple  # (parent vertex index, term index in parent, parameter label)
    payload: tuple = ()  # sorted ((multiplicity, AlexanderVector), ...)
    tangles: list = field(default_factory=list, repr=False, compare=False)

    def to_json(self):
        return {"depth": self.depth,
                "provenance": list(self.provenance),
                "payload": [{"multiplicity": m, "vector": vector_json(v)}
                            for m, v in self.payload]}


def vertex_of(v: CocycleValue) -> tuple:
    """Multiset of Alexander vectors of the terms, as a canonical sorted tuple."""
    acc = {}
    vecs = {}
    for t in v.terms:
        if any(c.color == "uncolored" for c in t.diagram.components):
            raise ValueError("vertex payloads need coloured terms")
        vec = alexander_vector(t.diagram)
        k = vec.key()
        acc[k] = acc.get(k, 0) + t.coefficient
        vecs[k] = vec
    entries = [(m, vecs[k]) for k, m in acc.items() if m]
    return tuple(sorted(entries, key=_sort_key))


def compare_vertices(a, b) -> bool:
    """Equality of two payloads as multisets."""
    pa = a.payload if isinstance(a, TreeVertex) else a
    pb = b.payload if isinstance(b, TreeVertex) else b
    return [(m, v.key()) for m, v in pa] == [(m, v.key()) for m, v in pb]


@dataclass
class AlexanderTree:
    root: Diagram
    root_conway: object
    params: list
    depth: int
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)  # (parent, child, parameter label)
    truncated: bool = False
    skipped: list = field(default_factory=list)  # (parent, term index, label, reason)

    def to_json(self):
        return {"root": {"conway": _poly_json(self.root_conway),
                         "crossings": self.root.n_crossings()},
                "depth": self.depth,
                "truncated": self.truncated,
                "skipped": [list(x) for x in self.skipped],
                "edges": [list(e) for e in self.edges],
                "vertices": [v.to_json() for v in self.vertices]}

    def canonical(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()


def build_tree(D: Diagram, params: list, depth: int = 1, max_terms: int = 2000,
               max_crossings: int = 60, strict: bool = False,
               drop_middle_red: bool = True) -> AlexanderTree:
    """Breadth-first expansion of the Alexander tree down to the given depth.

    Vertices beyond the caps are not expanded; the tree is then marked
    truncated (or ResourceError is raised when strict).  A tangle whose scan
    would pass a star-like triple crossing is not expanded either; it is
    listed in ``skipped`` with the reason.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    tree = AlexanderTree(D, conway(D), list(params), depth)
    # frontier entries: (vertex index or -1 for the root, term index, tangle)
    frontier = [(-1, -1, D)]
    produced = 0
    for level in range(1, depth + 1):
        nxt = []
        for parent, ti, T in frontier:
            for p in params:
                if T.n_crossings() > max_crossings:
                    if strict:
                        raise ResourceError(f"tangle with {T.n_crossings()} crossings")
                    tree.truncated = True
                    tree.skipped.append((parent, ti, p.label(), "crossing cap"))
                    continue
                try:
                    val = evaluate(T, p, d_green=True, cabled=True,
                                   drop_middle_red=drop_middle_red)
                except ModelError as e:
                    if parent < 0:
                        raise
                    tree.truncated = True
                    tree.skipped.append((parent, ti, p.label(), str(e)))
                    continue
                produced += len(val.terms)
                if produced > max_terms:
                    if strict:
                        raise ResourceError(f"more than {max_terms} terms")
                    tree.truncated = True
                    break
                vx = TreeVertex(level, (parent, ti, p.label()), vertex_of(val))
                vx.tangles = [t.diagram for t in val.terms]
                tree.vertices.append(vx)
                k = len(tree.vertices) - 1
                tree.edges.append((parent, k, p.label()))
                if level < depth:
                    for j, t in enumerate(val.terms):
                        nxt.append((k, j, from_morse(t.morse)))
        frontier = nxt
    return tree


def compare(a: AlexanderTree, b: AlexanderTree) -> dict:
    """Vertex-by-vertex payload equality of two trees built with the same parameters."""
    same_root = a.root_conway == b.root_conway
    pairs = []
    for va, vb in zip(a.vertices, b.vertices):
        pairs.append(compare_vertices(va, vb))
    return {"root": same_root, "vertices": pairs,
            "equal": same_root and all(pairs) and len(a.vertices) == len(b.vertices)}
