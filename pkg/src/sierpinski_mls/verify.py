"""Independent oracles and theorem checks.

The maximum number of leaves of a spanning tree equals ``n - s`` where ``s``
is the size of a minimum connected dominating set, so the oracle searches
node subsets by increasing size.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ConstraintViolation, EmptySet, OutOfRange, TooLarge
from .graph_core import GsnGraph, connected_components
from .growth import grow, node_count_formula
from .trees import SeedFamily, SpanningTree

ORACLE_MAX_NODES = 26


@dataclass
class OracleResult:
    max_leaves: int
    witness_cds: set[int]
    cds_size: int
    # sizes searched to exhaustion without finding a CDS
    exhausted_sizes: list[int] = field(default_factory=list)
    subsets_tested: int = 0


def _masks(g: GsnGraph) -> tuple[list[int], list[int]]:
    nbr = [0] * g.n_nodes
    closed = [0] * g.n_nodes
    for v in g.nodes():
        m = 0
        for u in g.adj[v]:
            m |= 1 << u
        nbr[v] = m
        closed[v] = m | (1 << v)
    return nbr, closed


def _connected(mask: int, nbr: list[int]) -> bool:
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        v = low.bit_length() - 1
        new = nbr[v] & mask & ~seen
        seen |= new
        frontier |= new
    return seen == mask


def brute_force_max_leaves(g: GsnGraph, required=()) -> OracleResult:
    """Minimum connected dominating set by exhaustive search.

    Sizes are tried in increasing order and every smaller size is searched
    to exhaustion first, so the result certifies optimality. With
    ``required`` the search is restricted to sets containing those nodes,
    which bounds the leaves of trees keeping them internal.
    """
    n = g.n_nodes
    if n > ORACLE_MAX_NODES:
        raise TooLarge(f"oracle is limited to {ORACLE_MAX_NODES} nodes, got {n}")
    if n < 3:
        raise ValueError("oracle needs at least 3 nodes")
    nbr, closed = _masks(g)
    full = (1 << n) - 1
    base = 0
    base_cov = 0
    for v in required:
        base |= 1 << v
        base_cov |= closed[v]
    cand = [v for v in range(n) if not base >> v & 1]
    m = len(cand)
    # best[i]: largest closed neighbourhood among cand[i:]
    best = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        best[i] = max(best[i + 1], closed[cand[i]].bit_count())
    exhausted = []
    tested = 0

    for size in range(max(1, len(required)), n + 1):
        extra = size - len(required)
        found = None
        stack = [(0, 0, base, base_cov)]  # next index, picked, chosen, covered
        while stack:
            start, picked, chosen, covered = stack.pop()
            if picked == extra:
                tested += 1
                if covered == full and _connected(chosen, nbr):
                    found = chosen
                    break
                continue
            need = extra - picked
            for i in range(m - need, start - 1, -1):
                cov = covered | closed[cand[i]]
                if cov.bit_count() + (need - 1) * best[i + 1] < n:
                    continue
                stack.append((i + 1, picked + 1, chosen | (1 << cand[i]), cov))
        if found is not None:
            cds = {v for v in range(n) if found >> v & 1}
            return OracleResult(n - size, cds, size, exhausted, tested)
        exhausted.append(size)
    raise AssertionError("the full node set is always a connected dominating set")


def is_connected_dominating_set(g: GsnGraph, s) -> bool:
    s = set(s)
    if not s:
        raise EmptySet("empty node set")
    covered = set(s)
    for v in s:
        covered |= g.adj[v]
    if len(covered) != g.n_nodes:
        return False
    start = next(iter(s))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y in s and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == s


def tree_from_cds(g: GsnGraph, s, t: int = -1) -> SpanningTree:
    """Spanning tree whose internal nodes lie in ``s``: a BFS tree of the
    induced subgraph, with every remaining node hung on its smallest
    neighbour in ``s``."""
    s = set(s)
    root = min(s)
    edges = []
    seen = {root}
    queue = [root]
    for x in queue:
        for y in sorted(g.adj[x]):
            if y in s and y not in seen:
                seen.add(y)
                edges.append((x, y))
                queue.append(y)
    for v in g.nodes():
        if v not in s:
            edges.append((min(g.adj[v] & s), v))
    return SpanningTree.from_edges(g.n_nodes, edges, root, t)


def max_leaves_by_enumeration(g: GsnGraph) -> int:
    """Maximum leaf count over all spanning trees, by trying every edge subset
    of size n - 1. Only usable on very small graphs."""
    n = g.n_nodes
    edges = list(g.edges())
    best = -1
    for subset in itertools.combinations(edges, n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        deg = [0] * n
        for u, v in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
            deg[u] += 1
            deg[v] += 1
        if ok:
            best = max(best, deg.count(1))
    return best


# -- balanced sets, old-node leaves, kernels -----------------------------


@dataclass
class BalanceReport:
    set_x: set[int]
    counts: list[int]
    balanced: bool


def balance_check(x, family: SeedFamily, role: str = "leaves") -> BalanceReport:
    """Count ``|x ∩ role(T)|`` per tree; ``role`` is "leaves" or "internal"."""
    x = set(x)
    if role == "leaves":
        select = SpanningTree.leaves
    elif role == "internal":
        select = SpanningTree.internal_nodes
    else:
        raise ValueError(f"unknown role {role!r}")
    counts = [len(x & select(tr)) for tr in family.trees]
    return BalanceReport(x, counts, len(set(counts)) == 1)


def theorem2_check(t: int, k: int, family: SeedFamily) -> bool:
    """True iff no node of N(k) is a leaf of any tree in ``family``."""
    if t < k + 3:
        raise ConstraintViolation(f"need t >= k + 3, got t={t}, k={k}")
    return submajor_leaf_free(k, family)


def submajor_leaf_free(k: int, family: SeedFamily) -> bool:
    old = range(node_count_formula(k))
    return all(not (tr.leaves() & set(old)) for tr in family.trees)


@dataclass
class KernelEstimate:
    nodes: set[int]
    edges: list[tuple[int, int]]
    connected: bool


def kernel_estimate(family: SeedFamily, g: GsnGraph) -> KernelEstimate:
    if not family.trees:
        raise ValueError("family is empty")
    nodes = set(family.trees[0].internal_nodes())
    for tr in family.trees[1:]:
        nodes &= tr.internal_nodes()
    edges = sorted((u, v) for u in nodes for v in g.adj[u] if v in nodes and u < v)
    connected = bool(nodes) and len(
        connected_components(g, set(g.nodes()) - nodes)) == 1
    return KernelEstimate(nodes, edges, connected)


# -- fragmentation ----------------------------------------------------------


@dataclass
class Fragmentation:
    t: int
    k: int
    component_count: int
    component_sizes: list[int]
    claimed_count: int
    flagged: bool


def fragmentation(t: int, k: int, g: GsnGraph | None = None) -> Fragmentation:
    """Delete V(k) from N(t) and measure what is left."""
    if not 1 <= k < t:
        raise OutOfRange(f"need 1 <= k < t, got t={t}, k={k}")
    if g is None:
        g, _ = grow(t)
    comps = connected_components(g, range(node_count_formula(k)))
    sizes = sorted(len(c) for c in comps)
    claim = 6 ** (k - 1)
    return Fragmentation(t, k, len(comps), sizes, claim, len(comps) != claim)


def fragment_share(t: int) -> float:
    """Share of N(t) left after deleting V(t - 1); tends to 5/6."""
    return 3 * 6 ** (t - 1) / node_count_formula(t)


# -- suite --------------------------------------------------------------------


def _result(check: str, params: dict, expected, measured, ok) -> dict:
    return {"check": check, "params": params, "expected": expected,
            "measured": measured, "pass": ok}


def build_test_family(t: int, seed_cap: int, per_level_cap: int) -> SeedFamily:
    """DFF-BFSA tree of N(t) plus composed trees (``t >= 3``)."""
    from .trees import Level, build_family, dff_bfsa, seed_family

    level = Level.build(t)
    trees = [dff_bfsa(level.graph, level.history)]
    if t >= 3:
        seeds = seed_family(seed_cap)
        trees += build_family(t, seeds, per_level_cap).trees
    return SeedFamily(t, trees)


def run_suite(t_max: int, k_max: int, seed_cap: int = 3, per_level_cap: int = 60) -> list[dict]:
    """Theorem checks over the grid ``0 <= k <= k_max``, ``k + 3 <= t <= t_max``.

    Each entry is ``{check, params, expected, measured, pass}``; ``pass`` is
    ``"flagged"`` for fragmentation counts that disagree with the claimed
    6^(k-1) only.
    """
    from .trees import Level, dff_bfsa, max_leaf_formula, tree_metrics

    out = []
    for t in range(2, t_max + 1):
        level = Level.build(t)
        m = tree_metrics(dff_bfsa(level.graph, level.history))
        p = {"t": t}
        out.append(_result("dff_bfsa.leaves", p, max_leaf_formula(t), m.leaf_count,
                           m.leaf_count == max_leaf_formula(t)))
        out.append(_result("dff_bfsa.max_degree", p, 3**t + 1, m.max_degree,
                           m.max_degree == 3**t + 1))
        out.append(_result("dff_bfsa.diameter", p, 2 * t, m.diameter, m.diameter == 2 * t))
        frag = fragmentation(t, t - 1, level.graph)
        out.append(_result("fragmentation.last_layer", {"t": t, "k": t - 1}, 6 ** (t - 1),
                           frag.component_count,
                           frag.component_count == 6 ** (t - 1)
                           and set(frag.component_sizes) == {3}))
        for k in range(1, t - 1):
            frag = fragmentation(t, k, level.graph)
            out.append(_result("fragmentation.claimed_count", {"t": t, "k": k}, frag.claimed_count,
                               frag.component_count, "flagged" if frag.flagged else True))

    for t in range(3, t_max + 1):
        family = None
        for k in range(0, min(k_max, t - 3) + 1):
            if family is None:
                family = build_test_family(t, seed_cap, per_level_cap)
                g, _ = grow(t)
                leaves = [len(tr.leaves()) for tr in family.trees]
                out.append(_result("theorem1.leaves", {"t": t, "trees": len(family)},
                                   max_leaf_formula(t), sorted(set(leaves)),
                                   set(leaves) == {max_leaf_formula(t)}))
                cds = all(is_connected_dominating_set(g, tr.internal_nodes())
                          for tr in family.trees)
                out.append(_result("theorem3.internal_cds", {"t": t}, True, cds, cds))
            p = {"t": t, "k": k, "trees": len(family)}
            ok = theorem2_check(t, k, family)
            out.append(_result("theorem2.no_old_leaves", p, True, ok, ok))
            bal = balance_check(range(node_count_formula(k)), family)
            ok = bal.balanced and bal.counts[0] == 0
            out.append(_result("theorem3.balanced", p, 0, sorted(set(bal.counts)), ok))
            ker = kernel_estimate(family, g)
            ok = ker.connected and set(range(node_count_formula(k))) <= ker.nodes
            out.append(_result("theorem3.kernel", p, True,
                               {"size": len(ker.nodes), "connected": ker.connected}, ok))
    return out
