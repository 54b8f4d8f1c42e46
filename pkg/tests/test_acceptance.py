"""Acceptance gate: one PASS/FAIL line per criterion (sub-parts labelled a, b, c).

Lines are collected and printed in the pytest terminal summary. Criteria
known to fail are documented in the project notes; they are not relaxed here.
"""

import math
import time
from collections import Counter
from fractions import Fraction

from conftest import record

from sierpinski_mls.errors import CompositionNotATree
from sierpinski_mls.graph_core import faces_are_triangles, is_simple, random_flips
from sierpinski_mls.growth import (
    degree_spectrum_formula,
    edge_count_formula,
    grow,
    inner_triangle_count_formula,
    node_count_formula,
)
from sierpinski_mls.stats import (
    GAMMA,
    closed_form_D_leq,
    closed_form_S_leq,
    compute_report,
    edge_cumulative_asymptotic,
    edge_cumulative_exact,
    k_from_alpha,
    loglog_slope,
    low_class_degree_share,
    proportions,
    proportions_from_spectrum,
    report_from_degrees,
)
from sierpinski_mls.trees import (
    build_family,
    dff_bfsa,
    is_spanning_tree,
    max_leaf_formula,
    mst_membership,
    seed_family,
    tree_metrics,
)
from sierpinski_mls.verify import (
    balance_check,
    brute_force_max_leaves,
    build_test_family,
    fragmentation,
    is_connected_dominating_set,
    kernel_estimate,
    theorem2_check,
)

THEOREM2_PAIRS = [(0, 3), (0, 4), (1, 4), (1, 5)]
_FAMILIES = {}


def _family(t):
    # DFF-BFSA tree plus 60 composed trees
    if t not in _FAMILIES:
        _FAMILIES[t] = build_test_family(t, seed_cap=3, per_level_cap=60)
    return _FAMILIES[t]


def test_criterion_01_counts():
    start = time.perf_counter()
    bad = []
    for t in range(10):
        n_v, n_e = node_count_formula(t), edge_count_formula(t)
        # closed forms of the recurrences n_v(t) = 6 n_v(t-1) - 12 and n_e(t) = 6 n_e(t-1) - 6
        if t > 0 and (n_v != 6 * node_count_formula(t - 1) - 12 or
                      n_e != 6 * edge_count_formula(t - 1) - 6):
            bad.append(("recurrence", t))
        if inner_triangle_count_formula(t) != n_e - n_v + 1:
            bad.append(("faces formula", t))
        if t <= 7:
            g, _ = grow(t)
            if (g.n_nodes, g.n_edges, g.n_faces) != (n_v, n_e, n_e - n_v + 1):
                bad.append(("generated", t))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    assert record("1", ok, f"counts t=0..9 mismatches={bad} runtime={elapsed:.1f}s (< 60 s)")


def test_criterion_02_spectrum():
    bad = []
    for t in range(2, 8):
        g, _ = grow(t)
        counts = dict(Counter(g.degrees()))
        expected = {1 + 3**k: 3 * 6 ** (t - k) for k in range(1, t)}
        expected[1 + 3**t] = 6
        top = {v for v in g.nodes() if g.degree(v) == 3**t + 1}
        if counts != expected or counts != degree_spectrum_formula(t) or top != {0, 1, 2, *g.submajors}:
            bad.append(t)
    assert record("2", not bad, f"degree spectrum and top-six nodes t=2..7, mismatches={bad}")


def test_criterion_03a_oracle_values():
    got = []
    for t in range(3):
        g, _ = grow(t)
        got.append(brute_force_max_leaves(g).max_leaves)
    ok = got == [2, 4, 19]
    assert record("3a", ok, f"oracle max leaves N(0..2) = {tuple(got)}, expected (2, 4, 19)")


def test_criterion_03b_oracle_certificate():
    g, _ = grow(2)
    start = time.perf_counter()
    res = brute_force_max_leaves(g)
    elapsed = time.perf_counter() - start
    forced = brute_force_max_leaves(g, required=(0, 1, 2))
    ok = (res.exhausted_sizes == list(range(1, res.cds_size))
          and is_connected_dominating_set(g, res.witness_cds) and elapsed < 10)
    assert record("3b", ok,
                  f"N(2) sizes 1..{res.cds_size - 1} exhausted, witness {sorted(res.witness_cds)}, "
                  f"{elapsed:.2f}s (< 10 s); with A,B,C internal: {forced.max_leaves}")


def _dff_metrics():
    out = {}
    for t in range(2, 7):
        start = time.perf_counter()
        g, h = grow(t)
        tr = dff_bfsa(g, h)
        elapsed = time.perf_counter() - start
        assert is_spanning_tree(g, tr)
        out[t] = (tree_metrics(tr), elapsed)
    return out


_DFF = {}


def _dff():
    if not _DFF:
        _DFF.update(_dff_metrics())
    return _DFF


def test_criterion_04a_dff_leaves_degree():
    res = _dff()
    bad = [t for t, (m, _) in res.items()
           if m.leaf_count != 19 * 6 ** (t - 2) or m.max_degree != 3**t + 1]
    assert record("4a", not bad, f"DFF-BFSA leaves 19*6^(t-2) and max degree 3^t+1 t=2..6, "
                                 f"mismatches={bad}")


def test_criterion_04b_dff_diameter():
    res = _dff()
    got = {t: m.diameter for t, (m, _) in res.items()}
    ok = all(d == 2 * t for t, d in got.items())
    assert record("4b", ok, f"DFF-BFSA diameter = 2t t=2..6, measured {got}")


def test_criterion_04c_dff_runtime():
    m, elapsed = _dff()[6]
    ok = elapsed < 10
    assert record("4c", ok, f"growth plus DFF-BFSA on N(6) ({node_count_formula(6)} nodes) "
                            f"{elapsed:.2f}s (< 10 s)")


def test_criterion_05_recursive_construction():
    seeds = seed_family(3)
    details, ok = [], True
    for t in (3, 4, 5):
        try:
            fam = build_family(t, seeds, 20)
        except CompositionNotATree as e:
            ok = False
            details.append(f"t={t} CompositionNotATree {e}")
            continue
        leaves = {len(tr.leaves()) for tr in fam.trees}
        good = (len(fam.tuples) >= 20 and all(mst_membership(tr) for tr in fam.trees)
                and leaves == {max_leaf_formula(t)})
        ok &= good
        details.append(f"t={t} tuples={len(fam.tuples)} leaves={sorted(leaves)}")
    assert record("5", ok, "; ".join(details))


def test_criterion_06_theorem2():
    details, ok = [], True
    for k, t in THEOREM2_PAIRS:
        fam = _family(t)
        good = len(fam) >= 50 and theorem2_check(t, k, fam)
        ok &= good
        details.append(f"(k={k},t={t}) trees={len(fam)} {'ok' if good else 'violated'}")
    assert record("6", ok, "; ".join(details))


def test_criterion_07_theorem3():
    details, ok = [], True
    for k, t in THEOREM2_PAIRS:
        fam = _family(t)
        g, _ = grow(t)
        old = set(range(node_count_formula(k)))
        cds = all(is_connected_dominating_set(g, tr.internal_nodes()) for tr in fam.trees)
        bal = balance_check(old, fam)
        ker = kernel_estimate(fam, g)
        good = cds and bal.balanced and bal.counts[0] == 0 and ker.connected and old <= ker.nodes
        ok &= good
        details.append(f"(k={k},t={t}) cds={cds} balanced={bal.balanced} "
                       f"kernel={len(ker.nodes)} connected={ker.connected}")
    assert record("7", ok, "; ".join(details))


def test_criterion_08_fragmentation():
    bad, flagged = [], 0
    for t in range(2, 7):
        g, _ = grow(t)
        f = fragmentation(t, t - 1, g)
        if (f.component_count != 6 ** (t - 1) or set(f.component_sizes) != {3}
                or sum(f.component_sizes) != 5 * node_count_formula(t - 1) - 12):
            bad.append((t, t - 1))
        for k in range(1, t - 1):
            f = fragmentation(t, k, g)
            if f.component_count != 6**k:
                bad.append((t, k))
            flagged += f.flagged
    assert record("8", not bad, f"last layer 6^(t-1) triangles t=2..6, general counts 6^k, "
                                f"mismatches={bad}, flagged 6^(k-1) claims={flagged}")


def test_criterion_09a_edge_cumulative():
    t = 8
    errs = {ti: abs(float(edge_cumulative_exact(t, ti)) / edge_cumulative_asymptotic(t, ti) - 1)
            for ti in range(0, t - 1)}
    ok = all(e < 0.02 for e in errs.values())
    shown = ", ".join(f"{ti}:{e:.2%}" for ti, e in errs.items())
    in_domain = all(errs[ti] < 0.02 for ti in range(3, t - 1))
    assert record("9a", ok, f"t=8 relative error < 2% for t_i <= 6: {shown} "
                            f"(3 <= t_i <= 6 only: {'within' if in_domain else 'outside'})")


def test_criterion_09b_loglog_slope():
    slopes = loglog_slope(8)
    target = -(1 + math.log(2) / math.log(3))
    worst = max(abs(s - target) for s in slopes)
    ok = worst < 1e-4 and abs(-GAMMA - (-1.63093)) < 1e-4
    assert record("9b", ok, f"log-log slope {slopes[0]:.6f}, worst deviation {worst:.1e} (< 1e-4)")


def test_criterion_10_proportions():
    bad = []
    for t in range(2, 8):
        g, _ = grow(t)
        spec = compute_report(g, t, with_proportions=False).spectrum
        n_v, n_e = g.n_nodes, g.n_edges
        for k in range(1, t):
            emp = proportions_from_spectrum(spec, t, k)
            if (emp != proportions(t, k) or Fraction(emp.S_leq) != closed_form_S_leq(t, k)
                    or Fraction(emp.D_leq) != closed_form_D_leq(t, k)
                    or emp.S_geq * emp.D_geq != 2 * emp.alpha_k * emp.beta_k * n_v * n_e):
                bad.append((t, k))
    k = k_from_alpha(0.5e-6)
    beta = 1 - low_class_degree_share(k)
    ok = not bad and abs(k - 8.0974) < 1e-3 and abs(beta - 0.003) < 1e-3
    assert record("10", ok, f"exact rationals t<=7 mismatches={bad}; alpha=0.5e-6 -> "
                            f"k={k:.4f} beta={beta:.5f}")


def test_criterion_11_molloy_reed():
    values = {}
    for t in range(2, 9):
        if t <= 7:
            g, _ = grow(t)
            degrees = g.degrees()
        else:
            # N(8) has about a million nodes; its spectrum formula is
            # checked against generated graphs for t <= 7
            degrees = [d for d, c in degree_spectrum_formula(t).items() for _ in range(c)]
        values[t] = report_from_degrees(degrees, t).molloy_reed
    ok = all(v > 0 for v in values.values()) and values[2] == 26
    assert record("11", ok, f"<k^2> - 2<k> > 0 for t=2..8, value at t=2 = {values[2]}")


def test_criterion_12_flips():
    g, _ = grow(3)
    n = g.n_nodes
    plan = random_flips(g.copy(), 500, rng_seed=0)
    bad = 0
    for removed, added in plan:
        before = g.edge_set()
        assert g.flip_edge(*removed) == added
        if not (g.n_nodes == n and g.n_edges == 3 * n - 6 and is_simple(g)
                and faces_are_triangles(g)):
            bad += 1
        # immediate re-flip restores the prior edge set, then redo
        g.flip_edge(*added)
        if g.edge_set() != before:
            bad += 1
        g.flip_edge(*removed)
    ok = bad == 0 and len(plan) == 500
    assert record("12", ok, f"500 seeded flips on N(3), invariant or restore failures={bad}")
