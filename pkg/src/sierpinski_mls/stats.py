"""Deterministic statistics of N(t).

Everything with a /5 denominator is computed with integers or
:class:`fractions.Fraction`; floats appear only for logarithms and reports.
Degree classes are addressed by their index ``k`` (degree ``3**k + 1``).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotASpectrumDegree, OutOfRange
from .graph_core import GsnGraph
from .growth import edge_count_formula, node_count_formula

GAMMA = 1 + math.log(2) / math.log(3)


@dataclass
class ProportionRow:
    k: int
    S_leq: int
    D_leq: int
    S_geq: int
    D_geq: int
    alpha_k: Fraction
    beta_k: Fraction

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "S_leq": self.S_leq,
            "D_leq": self.D_leq,
            "S_geq": self.S_geq,
            "D_geq": self.D_geq,
            "alpha_k": _frac(self.alpha_k),
            "beta_k": _frac(self.beta_k),
        }


@dataclass
class StatsReport:
    t: int
    n_v: int
    n_e: int
    spectrum: dict[int, int]
    mean_degree: Fraction
    mean_square_degree: Fraction
    molloy_reed: Fraction
    gamma: float = GAMMA
    proportions: list[ProportionRow] = field(default_factory=list)
    boundaries: list[int] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "n_v": self.n_v,
            "n_e": self.n_e,
            "mean_degree": _frac(self.mean_degree),
            "mean_square_degree": _frac(self.mean_square_degree),
            "molloy_reed": _frac(self.molloy_reed),
            "gamma": self.gamma,
            "spectrum": {str(d): c for d, c in sorted(self.spectrum.items())},
            "proportions": [r.as_dict() for r in self.proportions],
            "boundaries": list(self.boundaries),
        }


def _frac(x: Fraction):
    """JSON form of a rational: an int when integral, else "p/q"."""
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def report_from_degrees(degrees, t: int) -> StatsReport:
    degrees = list(degrees)
    n_v = len(degrees)
    total = sum(degrees)
    mean = Fraction(total, n_v)
    mean_sq = Fraction(sum(d * d for d in degrees), n_v)
    spectrum = dict(sorted(Counter(degrees).items()))
    return StatsReport(t, n_v, total // 2, spectrum, mean, mean_sq, mean_sq - 2 * mean)


def compute_report(g: GsnGraph, t: int, history=None, with_proportions: bool = True) -> StatsReport:
    rep = report_from_degrees(g.degrees(), t)
    if with_proportions and t >= 2:
        rep.proportions = [proportions_from_spectrum(rep.spectrum, t, k) for k in range(1, t)]
    if history is not None:
        rep.boundaries = list(history.boundaries)
    return rep


def attach_probability(t: int, k: int) -> tuple[Fraction, float]:
    """Probability that a newcomer attaches to a given node of class ``k``.

    Returns the exact value and the large-t approximation.
    """
    if not 1 <= k <= t:
        raise OutOfRange(f"need 1 <= k <= t, got k={k}, t={t}")
    exact = Fraction(3**k + 1, 2 * edge_count_formula(t))
    approx = 5 / 18 * 3**k / 6**t
    return exact, approx


def _edge_sum(t_i: int) -> int:
    return sum(edge_count_formula(j) for j in range(t_i + 1))


def edge_cumulative_exact(t: int, t_i: int) -> Fraction:
    if not 0 <= t_i < t:
        raise OutOfRange(f"need 0 <= t_i < t, got t_i={t_i}, t={t}")
    return Fraction(_edge_sum(t_i), edge_count_formula(t))


def edge_cumulative_closed_form(t: int, t_i: int) -> Fraction:
    """Closed form of the partial edge sum, kept separate from the summation."""
    if not 0 <= t_i < t:
        raise OutOfRange(f"need 0 <= t_i < t, got t_i={t_i}, t={t}")
    num = 15 + 6 * t_i + Fraction(54, 5) * (6**t_i - 1)
    return num / (9 * 6**t + 6)


def edge_cumulative_asymptotic(t: int, t_i: int) -> float:
    return 6 / 5 * 6.0 ** (t_i - t)


def degree_class(d: int) -> int:
    """Index k with d == 3**k + 1, or raise NotASpectrumDegree."""
    k, p = 0, 1
    while p + 1 < d:
        p *= 3
        k += 1
    if p + 1 != d or k < 1:
        raise NotASpectrumDegree(d)
    return k


def edge_cumulative_of_degree(t: int, d: int) -> tuple[int, Fraction, float]:
    """Edge-cumulative value for the degree class of ``d`` (t_i = t - k)."""
    k = degree_class(d)
    if not 1 <= k < t:
        raise NotASpectrumDegree(f"degree {d} is not below the maximum class of N({t})")
    t_i = t - k
    return k, edge_cumulative_exact(t, t_i), edge_cumulative_asymptotic(t, t_i)


def loglog_slope(t: int) -> list[float]:
    """Slopes of log(asymptotic value) against log(3**k) between adjacent classes."""
    pts = [(k * math.log(3), math.log(edge_cumulative_of_degree(t, 3**k + 1)[2]))
           for k in range(1, t)]
    return [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]


def cumulative_rows(t: int) -> list[dict]:
    rows = []
    for k in range(1, t):
        _, exact, asym = edge_cumulative_of_degree(t, 3**k + 1)
        rows.append({"k": k, "degree": 3**k + 1, "t_i": t - k,
                     "exact": float(exact), "asymptotic": asym})
    return rows


def cumulative_csv(t: int, header=()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append("k,degree,t_i,exact,asymptotic")
    for r in cumulative_rows(t):
        lines.append(f"{r['k']},{r['degree']},{r['t_i']},{r['exact']:.12g},{r['asymptotic']:.12g}")
    return "\n".join(lines) + "\n"


# -- (alpha, beta) proportions ----------------------------------------------


def _check_class(t: int, k: int) -> None:
    if not 1 <= k <= t - 1:
        raise OutOfRange(f"need 1 <= k <= t - 1, got k={k}, t={t}")


def closed_form_S_leq(t: int, k: int) -> Fraction:
    return Fraction(3, 5) * 6 ** (t - k) * (6**k - 1)


def closed_form_D_leq(t: int, k: int) -> Fraction:
    return Fraction(3, 5) * 6**t * (6 - Fraction(1, 6**k) - Fraction(5, 2**k))


def closed_form_alpha(t: int, k: int) -> Fraction:
    return Fraction(3 * 6 ** (t - k) + 12, 3 * 6**t + 12)


def proportions_from_spectrum(spectrum: dict[int, int], t: int, k: int) -> ProportionRow:
    _check_class(t, k)
    low = [(d, c) for d, c in spectrum.items() if d <= 3**k + 1]
    S_leq = sum(c for _, c in low)
    D_leq = sum(d * c for d, c in low)
    n_v = sum(spectrum.values())
    two_ne = sum(d * c for d, c in spectrum.items())
    return ProportionRow(k, S_leq, D_leq, n_v - S_leq, two_ne - D_leq,
                         Fraction(n_v - S_leq, n_v), Fraction(two_ne - D_leq, two_ne))


def proportions(t: int, k: int) -> ProportionRow:
    """Closed-form row; every value is integral and checked to be so."""
    _check_class(t, k)
    S_leq, D_leq = closed_form_S_leq(t, k), closed_form_D_leq(t, k)
    assert S_leq.denominator == 1 and D_leq.denominator == 1
    n_v, n_e = node_count_formula(t), edge_count_formula(t)
    S_geq = n_v - int(S_leq)
    D_geq = 2 * n_e - int(D_leq)
    alpha = closed_form_alpha(t, k)
    beta = 1 - D_leq / (2 * n_e)
    return ProportionRow(k, int(S_leq), int(D_leq), S_geq, D_geq, alpha, beta)


def k_from_alpha(alpha: float) -> float:
    if not 0 < alpha < 1:
        raise OutOfRange(f"alpha must lie in (0, 1), got {alpha}")
    return -math.log(alpha) / math.log(6)


def low_class_degree_share(k: float) -> float:
    """Large-t share of all degree held by classes up to ``k`` (real ``k`` allowed)."""
    return 1 - (6.0**-k + 5 * 2.0**-k) / 6
