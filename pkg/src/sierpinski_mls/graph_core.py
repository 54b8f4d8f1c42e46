"""Simple undirected graph with birth labels and a triangular-face registry.

Nodes are dense integers in creation order; ``0, 1, 2`` are the major nodes
A, B, C. Faces are stored combinatorially as canonical triples (rotated so
the smallest id comes first); the outer face is kept apart from the inner
faces and its edges are never flipped.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    AlreadyAdjacent,
    DuplicateEdge,
    NotTwoFaces,
    OuterFaceEdge,
    SelfLoop,
    UnknownEdge,
    UnknownNode,
)

A, B, C = 0, 1, 2
MAJORS = (A, B, C)

Face = tuple[int, int, int]


def canonical_face(x: int, y: int, z: int) -> Face:
    """Rotate a corner triple so the smallest id is first."""
    if x < y and x < z:
        return (x, y, z)
    if y < z:
        return (y, z, x)
    return (z, x, y)


def _face_key(face: Iterable[int]) -> frozenset:
    return frozenset(face)


class GsnGraph:
    """Labelled planar triangulation.

    ``faces`` holds the inner faces keyed by corner set (orientation is not
    tracked), mapping to the canonical triple. ``outer`` is the outer face,
    or ``None`` while the graph is still being assembled.
    """

    def __init__(self) -> None:
        self.adj: list[set[int]] = []
        self.birth: list[int] = []
        self._faces: dict[frozenset, Face] = {}
        self.outer: Face | None = None
        self.majors: tuple[int, int, int] = MAJORS
        self.submajors: tuple[int, int, int] | None = None
        self.n_edges = 0

    # -- construction -------------------------------------------------

    def add_node(self, birth: int) -> int:
        self.adj.append(set())
        self.birth.append(birth)
        return len(self.adj) - 1

    def _check(self, v: int) -> None:
        if not 0 <= v < len(self.adj):
            raise UnknownNode(v)

    def add_edge(self, u: int, v: int) -> None:
        self._check(u)
        self._check(v)
        if u == v:
            raise SelfLoop(u)
        if v in self.adj[u]:
            raise DuplicateEdge((u, v))
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.n_edges += 1

    def remove_edge(self, u: int, v: int) -> None:
        if not self.has_edge(u, v):
            raise UnknownEdge((u, v))
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.n_edges -= 1

    def add_face(self, x: int, y: int, z: int) -> Face:
        face = canonical_face(x, y, z)
        self._faces[_face_key(face)] = face
        return face

    def remove_face(self, face: Iterable[int]) -> None:
        del self._faces[_face_key(face)]

    # -- queries ------------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return len(self.adj)

    def nodes(self) -> range:
        return range(len(self.adj))

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < len(self.adj) and v in self.adj[u]

    def neighbors(self, v: int) -> list[int]:
        self._check(v)
        return sorted(self.adj[v])

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(s) for s in self.adj]

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, sorted."""
        for u, nbrs in enumerate(self.adj):
            for v in sorted(nbrs):
                if u < v:
                    yield (u, v)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    @property
    def faces(self) -> set[Face]:
        return set(self._faces.values())

    @property
    def n_faces(self) -> int:
        return len(self._faces)

    def has_face(self, x: int, y: int, z: int) -> bool:
        return frozenset((x, y, z)) in self._faces

    def faces_on_edge(self, u: int, v: int) -> list[int]:
        """Third corners of the stored inner faces containing edge ``uv``."""
        if not self.has_edge(u, v):
            raise UnknownEdge((u, v))
        small, big = (u, v) if len(self.adj[u]) <= len(self.adj[v]) else (v, u)
        out = [w for w in self.adj[small]
               if w in self.adj[big] and frozenset((u, v, w)) in self._faces]
        return sorted(out)

    def is_outer_edge(self, u: int, v: int) -> bool:
        return self.outer is not None and u in self.outer and v in self.outer

    # -- flips --------------------------------------------------------

    def flip_target(self, u: int, v: int) -> tuple[int, int]:
        """Return the opposite corners ``(x, y)`` of edge ``uv`` or raise."""
        if not self.has_edge(u, v):
            raise UnknownEdge((u, v))
        if self.is_outer_edge(u, v):
            raise OuterFaceEdge((u, v))
        third = self.faces_on_edge(u, v)
        if len(third) != 2:
            raise NotTwoFaces((u, v, third))
        x, y = third
        if self.has_edge(x, y):
            raise AlreadyAdjacent((x, y))
        return x, y

    def can_flip(self, u: int, v: int) -> bool:
        try:
            self.flip_target(u, v)
        except (UnknownEdge, OuterFaceEdge, NotTwoFaces, AlreadyAdjacent):
            return False
        return True

    def flip_edge(self, u: int, v: int) -> tuple[int, int]:
        """Replace edge ``uv`` by the opposite diagonal; returns the new edge."""
        x, y = self.flip_target(u, v)
        self.remove_face((x, u, v))
        self.remove_face((u, v, y))
        self.remove_edge(u, v)
        self.add_edge(x, y)
        self.add_face(x, u, y)
        self.add_face(x, v, y)
        return (min(x, y), max(x, y))

    # -- copying / export ---------------------------------------------

    def copy(self) -> "GsnGraph":
        g = GsnGraph()
        g.adj = [set(s) for s in self.adj]
        g.birth = list(self.birth)
        g._faces = dict(self._faces)
        g.outer = self.outer
        g.majors = self.majors
        g.submajors = self.submajors
        g.n_edges = self.n_edges
        return g

    def to_edgelist(self, t: int, extra_header: Iterable[str] = ()) -> str:
        lines = [f"# gsn t={t} nodes={self.n_nodes} edges={self.n_edges}"]
        lines += [f"# {h}" for h in extra_header]
        lines += [f"{u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"

    def to_dot(self, t: int, extra_header: Iterable[str] = ()) -> str:
        if self.n_nodes > 200:
            raise ValueError("DOT export is limited to graphs with at most 200 nodes")
        lines = [f"// gsn t={t} nodes={self.n_nodes} edges={self.n_edges}"]
        lines += [f"// {h}" for h in extra_header]
        lines.append(f"graph gsn_{t} {{")
        for v in self.nodes():
            lines.append(f'  {v} [label="{v}/{self.birth[v]}"];')
        for u, v in self.edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def connected_components(g: GsnGraph, excluded: Iterable[int] = ()) -> list[set[int]]:
    """Components of the subgraph induced on the non-excluded nodes.

    Components are listed in order of their smallest node id.
    """
    blocked = set(excluded)
    for v in blocked:
        g._check(v)
    seen = bytearray(g.n_nodes)
    for v in blocked:
        seen[v] = 1
    comps = []
    for s in g.nodes():
        if seen[s]:
            continue
        seen[s] = 1
        comp = {s}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = 1
                    comp.add(y)
                    queue.append(y)
        comps.append(comp)
    return comps


def random_flips(g: GsnGraph, count: int, rng_seed: int = 0,
                 max_tries: int = 1_000_000) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Apply ``count`` uniformly chosen valid flips in place.

    Edges are drawn from an index-stable list with numpy's PCG64 generator
    (``default_rng(rng_seed)``) and redrawn until a flippable one comes up,
    which is uniform over the valid flips. The new edge takes the slot of
    the removed one. Returns ``(removed, added)`` pairs.
    """
    rng = np.random.default_rng(rng_seed)
    pool = list(g.edges())
    done = []
    tries = 0
    while len(done) < count:
        tries += 1
        if tries > max_tries:
            raise RuntimeError("no valid flip found within the retry budget")
        i = int(rng.integers(len(pool)))
        u, v = pool[i]
        if not g.can_flip(u, v):
            continue
        pool[i] = g.flip_edge(u, v)
        done.append(((u, v), pool[i]))
    return done


def faces_are_triangles(g: GsnGraph) -> bool:
    return all(g.has_edge(x, y) and g.has_edge(y, z) and g.has_edge(x, z)
               for x, y, z in g.faces)


def is_simple(g: GsnGraph) -> bool:
    return all(v not in nbrs and all(v in g.adj[u] for u in nbrs)
               for v, nbrs in enumerate(g.adj)) and \
        sum(len(s) for s in g.adj) == 2 * g.n_edges
