"""Spanning trees of N(t) with many leaves.

Two constructions are provided:

* :func:`dff_bfsa` grows one tree alongside the network. Nodes that already
  hold a level are scanned in their global order, and every new node hangs
  off the first old node that reaches it.
* :func:`mls_compose` / :func:`build_family` glue six trees of N(i) into a
  tree of N(i + 1), one copy per region of the base graph.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .errors import CompositionNotATree, HistoryMismatch, IndexOutOfRange
from .graph_core import A, B, C, GsnGraph
from .growth import GrowthHistory, grow

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass
class SpanningTree:
    """Rooted spanning tree stored as a parent map.

    ``parent[root] == -1``. ``level`` is the level function of the
    construction that produced the tree; for composed trees it is the depth
    below the root.
    """

    root: int
    parent: list[int]
    level: list[int]
    t: int

    @property
    def n_nodes(self) -> int:
        return len(self.parent)

    def edges(self) -> list[Edge]:
        return sorted(_edge(v, p) for v, p in enumerate(self.parent) if p >= 0)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def tree_degrees(self) -> list[int]:
        deg = [0] * len(self.parent)
        for v, p in enumerate(self.parent):
            if p >= 0:
                deg[v] += 1
                deg[p] += 1
        return deg

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p >= 0:
                adj[v].append(p)
                adj[p].append(v)
        return adj

    def leaves(self) -> set[int]:
        return {v for v, d in enumerate(self.tree_degrees()) if d == 1}

    def internal_nodes(self) -> set[int]:
        return {v for v, d in enumerate(self.tree_degrees()) if d != 1}

    def has_edge(self, u: int, v: int) -> bool:
        return self.parent[u] == v or self.parent[v] == u

    def to_text(self, extra_header=()) -> str:
        m = tree_metrics(self)
        lines = [f"# tree t={self.t} leaves={m.leaf_count} diameter={m.diameter}"]
        lines += [f"# {h}" for h in extra_header]
        for v, p in enumerate(self.parent):
            lines.append(f"{v} {p} {self.level[v]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edges(cls, n: int, edges, root: int, t: int) -> "SpanningTree":
        """Orient an edge set away from ``root``; levels are BFS depths.

        Raises :class:`CompositionNotATree` unless the edges form a spanning
        tree on ``range(n)``.
        """
        edges = list(edges)
        if len(edges) != n - 1:
            raise CompositionNotATree(f"{len(edges)} edges for {n} nodes")
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        parent = [-2] * n
        level = [0] * n
        parent[root] = -1
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in sorted(adj[x]):
                if parent[y] == -2:
                    parent[y] = x
                    level[y] = level[x] + 1
                    queue.append(y)
        if -2 in parent:
            raise CompositionNotATree("edge set does not connect all nodes")
        return cls(root, parent, level, t)


@dataclass
class TreeMetrics:
    leaf_count: int
    leaves: set[int]
    diameter: int
    max_degree: int


def _farthest(adj: list[list[int]], src: int) -> tuple[int, int]:
    dist = [-1] * len(adj)
    dist[src] = 0
    queue = deque([src])
    far = src
    while queue:
        x = queue.popleft()
        if dist[x] > dist[far]:
            far = x
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return far, dist[far]


def tree_metrics(tr: SpanningTree) -> TreeMetrics:
    deg = tr.tree_degrees()
    leaves = {v for v, d in enumerate(deg) if d == 1}
    adj = tr.adjacency()
    far, _ = _farthest(adj, tr.root)
    _, diameter = _farthest(adj, far)
    return TreeMetrics(len(leaves), leaves, diameter, max(deg) if deg else 0)


def is_spanning_tree(g: GsnGraph, tr: SpanningTree) -> bool:
    """True if ``tr`` spans ``g`` using only graph edges, with n - 1 edges."""
    n = g.n_nodes
    if tr.n_nodes != n or tr.parent[tr.root] != -1:
        return False
    if sum(1 for p in tr.parent if p >= 0) != n - 1:
        return False
    if any(p >= 0 and not g.has_edge(v, p) for v, p in enumerate(tr.parent)):
        return False
    seen = bytearray(n)
    seen[tr.root] = 1
    queue = deque([tr.root])
    adj = tr.adjacency()
    count = 1
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = 1
                count += 1
                queue.append(y)
    return count == n


# -- DFF-BFSA -----------------------------------------------------------


def dff_bfsa(g: GsnGraph, history: GrowthHistory, root: int = B) -> SpanningTree:
    """Grow a spanning tree of N(t) step by step along the growth history.

    N(0) is searched breadth-first from ``root``. At step ``k + 1`` the nodes
    of N(k) are scanned in their established order (lower level first, then
    insertion order) and each unlevelled neighbour ``y`` of a scanned node
    ``x`` gets ``parent[y] = x`` and ``level[y] = m(k) + level[x] + 1``,
    where ``m(k)`` is the largest level reserved after step ``k``.
    """
    t = history.t
    if (history.boundaries[-1] != g.n_nodes
            or any(b > t for b in g.birth)
            or history.boundaries[0] != 3):
        raise HistoryMismatch("history does not describe this graph")
    for s in range(t + 1):
        lo = history.boundaries[s - 1] if s else 0
        hi = history.boundaries[s]
        if any(g.birth[v] != s for v in range(lo, hi)):
            raise HistoryMismatch(f"birth labels disagree with boundary of step {s}")

    n = g.n_nodes
    parent = [-1] * n
    level = [-1] * n
    # N(0): plain BFS from the root.
    level[root] = 0
    order = [root]
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for y in sorted(g.adj[x]):
            if y < 3 and level[y] < 0:
                level[y] = level[x] + 1
                parent[y] = x
                order.append(y)
    top = max(level[v] for v in order)

    for k in range(t):
        fresh = []
        for x in order:
            bump = top + level[x] + 1
            for y in sorted(g.adj[x]):
                if level[y] < 0 and g.birth[y] <= k + 1:
                    level[y] = bump
                    parent[y] = x
                    fresh.append(y)
        # scanning in level order keeps ``fresh`` sorted by level already
        top = max(top + level[x] + 1 for x in order)
        order.extend(fresh)

    if len(order) != n:
        raise HistoryMismatch("growth history does not reach every node")
    return SpanningTree(root, parent, level, t)


# -- membership / leaf bound ----------------------------------------------


def max_leaf_formula(t: int) -> int:
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0:
        return 2
    if t == 1:
        return 4
    return 19 * 6 ** (t - 2)


def mst_membership(tr: SpanningTree) -> bool:
    """Membership in M_st: A, B, C internal, AB and BC in the tree, AC not,
    and the leaf count equal to the maximum for N(t)."""
    deg = tr.tree_degrees()
    if min(deg[A], deg[B], deg[C]) < 2:
        return False
    if not (tr.has_edge(A, B) and tr.has_edge(B, C)) or tr.has_edge(A, C):
        return False
    return sum(1 for d in deg if d == 1) == max_leaf_formula(tr.t)


# -- composition ------------------------------------------------------------


@dataclass(frozen=True)
class Region:
    """Placement of one N(i) copy inside N(i + 1).

    ``corners`` gives the N(i + 1) node names (as letters of the base graph)
    that receive the copy's A, B and C. ``intact`` copies keep their whole
    tree; the others drop their AB and BC edges.
    """

    name: str
    corners: tuple[str, str, str]
    intact: bool


# Regions listed clockwise around the base graph.
LITERAL_LAYOUT = (
    Region("I", ("c", "A", "B"), True),
    Region("III'", ("c", "B", "a"), False),
    Region("II", ("a", "B", "C"), True),
    Region("I'", ("a", "C", "b"), False),
    Region("III", ("b", "C", "A"), True),
    Region("II'", ("b", "A", "c"), False),
)

# Same placement; regions III and II' trade the edge deletion so the six
# corner paths glue into a tree instead of closing the cycle A-B-C.
DEFAULT_LAYOUT = (
    Region("I", ("c", "A", "B"), True),
    Region("III'", ("c", "B", "a"), False),
    Region("II", ("a", "B", "C"), True),
    Region("I'", ("a", "C", "b"), False),
    Region("III", ("b", "C", "A"), False),
    Region("II'", ("b", "A", "c"), True),
)


def _letters(g: GsnGraph) -> dict[str, int]:
    if g.submajors is None:
        raise ValueError("graph has no submajor nodes (t < 1)")
    a, b, c = g.submajors
    return {"A": A, "B": B, "C": C, "a": a, "b": b, "c": c}


def region_embedding(small: GrowthHistory, big: GrowthHistory, corners: tuple[int, int, int]) -> list[int]:
    """Map every node of N(i) into N(i + 1).

    ``corners`` are the N(i + 1) nodes receiving the copy's A, B and C. The
    map follows the subdivision records downwards: the node opposite corner
    X of a copy face goes to the node opposite the image of X.
    """
    n = small.boundaries[-1]
    image = [-1] * n
    for x, y in zip((A, B, C), corners):
        image[x] = y
    stack = [(A, B, C)]
    while stack:
        face = stack.pop()
        sub = small.subdivisions.get(frozenset(face))
        if sub is None:
            continue
        target = big.subdivisions.get(frozenset(image[x] for x in face))
        if target is None:
            raise CompositionNotATree(f"face {face} has no counterpart")
        for x in face:
            image[sub.opposite(x)] = target.opposite(image[x])
        u, v, w = face
        nu, nv, nw = (sub.opposite(x) for x in face)
        stack.extend([(u, nv, nw), (v, nu, nw), (w, nu, nv),
                      (u, v, nw), (v, w, nu), (w, u, nv)])
    if -1 in image:
        raise CompositionNotATree("region embedding is incomplete")
    return image


@dataclass
class Level:
    """A grown network together with its history."""

    t: int
    graph: GsnGraph
    history: GrowthHistory

    @classmethod
    def build(cls, t: int) -> "Level":
        g, h = grow(t)
        return cls(t, g, h)


@dataclass
class Composer:
    """Precomputed region embeddings from N(i) into N(i + 1)."""

    small: Level
    big: Level
    layout: tuple[Region, ...] = DEFAULT_LAYOUT
    embeddings: list[list[int]] = field(init=False)

    def __post_init__(self) -> None:
        if self.big.t != self.small.t + 1:
            raise ValueError("levels must be consecutive")
        names = _letters(self.big.graph)
        self.embeddings = [
            region_embedding(self.small.history, self.big.history,
                             tuple(names[x] for x in r.corners))
            for r in self.layout
        ]

    def compose(self, trees: list[SpanningTree]) -> SpanningTree:
        if len(trees) != 6:
            raise IndexOutOfRange("composition needs exactly six trees")
        edges: set[Edge] = set()
        dropped = {_edge(A, B), _edge(B, C)}
        for region, emb, tr in zip(self.layout, self.embeddings, trees):
            if tr.t != self.small.t:
                raise ValueError(f"seed tree over N({tr.t}), expected N({self.small.t})")
            for e in tr.edges():
                if not region.intact and e in dropped:
                    continue
                # identical corner edges from neighbouring regions collapse here
                edges.add(_edge(emb[e[0]], emb[e[1]]))
        big = self.big.graph
        tree = SpanningTree.from_edges(big.n_nodes, sorted(edges), B, self.big.t)
        if not all(big.has_edge(u, v) for u, v in edges):
            raise CompositionNotATree("composed edge is not a graph edge")
        if not mst_membership(tree):
            raise CompositionNotATree("composed tree is not in M_st")
        self._check_labels()
        return tree

    def _check_labels(self) -> None:
        # copy label f maps to f + 1 away from the corners
        sb, bb = self.small.graph.birth, self.big.graph.birth
        for emb in self.embeddings:
            for v in range(3, len(emb)):
                if bb[emb[v]] != sb[v] + 1:
                    raise CompositionNotATree("region embedding breaks birth labels")


@dataclass
class SeedFamily:
    level: int
    trees: list[SpanningTree]
    tuples: list[tuple[int, ...]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.trees)


def mls_compose(family: SeedFamily, perm, composer: Composer | None = None) -> SpanningTree:
    """Glue six members of ``family`` (indices ``perm``) into a tree of the next level."""
    perm = tuple(perm)
    if len(perm) != 6:
        raise IndexOutOfRange("perm must have six entries")
    if not family.trees:
        raise IndexOutOfRange("family is empty")
    if any(not 0 <= j < len(family.trees) for j in perm):
        raise IndexOutOfRange(perm)
    if composer is None:
        composer = Composer(Level.build(family.level), Level.build(family.level + 1))
    return composer.compose([family.trees[j] for j in perm])


def build_family(t: int, seeds: SeedFamily, per_level_cap: int,
                 layout: tuple[Region, ...] = DEFAULT_LAYOUT) -> SeedFamily:
    """Compose level by level up to N(t), keeping at most ``per_level_cap``
    trees per level. Tuples are taken in lexicographic order, with
    repetition, over indices of the current family."""
    if seeds.level != 2 or t < 3:
        raise ValueError("build_family needs level-2 seeds and t >= 3")
    if not seeds.trees:
        raise IndexOutOfRange("seed family is empty")
    family = seeds
    small = Level.build(2)
    for i in range(2, t):
        big = Level.build(i + 1)
        composer = Composer(small, big, layout)
        trees, tuples, seen = [], [], set()
        for perm in itertools.product(range(len(family.trees)), repeat=6):
            if len(trees) >= per_level_cap:
                break
            tree = composer.compose([family.trees[j] for j in perm])
            key = tree.edge_set()
            if key in seen:
                continue
            seen.add(key)
            trees.append(tree)
            tuples.append(perm)
        family = SeedFamily(i + 1, trees, tuples)
        small = big
    return family


# -- seeds at level 2 -------------------------------------------------------


def _tree_path(adj: dict[int, set[int]], src: int, dst: int) -> list[int]:
    prev = {src: src}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            break
        for y in sorted(adj[x]):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path[::-1]


def exchange_neighbours(g: GsnGraph, edges: frozenset[Edge]):
    """Trees one edge exchange away: add a non-tree edge, drop a cycle edge."""
    adj: dict[int, set[int]] = {v: set() for v in g.nodes()}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    for e in g.edges():
        if e in edges:
            continue
        path = _tree_path(adj, *e)
        for x, y in zip(path, path[1:]):
            yield (edges - {_edge(x, y)}) | {e}


def explore_exchanges(g: GsnGraph, start: SpanningTree, accept, count: int,
                      max_visited: int | None = None) -> list[SpanningTree]:
    """Breadth-first walk over single edge exchanges from ``start``.

    Only trees passing ``accept`` are kept and expanded. Stops after
    ``count`` accepted trees (``start`` included) or ``max_visited``
    candidate edge sets.
    """
    found = [start]
    seen = {start.edge_set()}
    queue = deque([start.edge_set()])
    n = g.n_nodes
    while queue and len(found) < count:
        cur = queue.popleft()
        for cand in exchange_neighbours(g, cur):
            if cand in seen:
                continue
            seen.add(cand)
            if max_visited is not None and len(seen) > max_visited:
                return found
            tree = SpanningTree.from_edges(n, cand, start.root, start.t)
            if not accept(tree):
                continue
            found.append(tree)
            queue.append(cand)
            if len(found) >= count:
                break
    return found


def seed_family(count: int, level: Level | None = None) -> SeedFamily:
    """Up to ``count`` distinct M_st trees of N(2), reached from the
    DFF-BFSA tree through M_st trees only."""
    if count < 1:
        raise ValueError("count must be >= 1")
    level = level or Level.build(2)
    start = dff_bfsa(level.graph, level.history)
    if not mst_membership(start):
        raise CompositionNotATree("DFF-BFSA tree of N(2) is not in M_st")
    return SeedFamily(2, explore_exchanges(level.graph, start, mst_membership, count))
