import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sierpinski_mls.errors import NotASpectrumDegree, OutOfRange
from sierpinski_mls.growth import degree_spectrum_formula, edge_count_formula, node_count_formula
from sierpinski_mls.stats import (
    GAMMA,
    attach_probability,
    closed_form_alpha,
    compute_report,
    cumulative_csv,
    degree_class,
    edge_cumulative_asymptotic,
    edge_cumulative_closed_form,
    edge_cumulative_exact,
    edge_cumulative_of_degree,
    k_from_alpha,
    loglog_slope,
    low_class_degree_share,
    proportions,
    proportions_from_spectrum,
    report_from_degrees,
)


def test_report_t2(grown):
    g, h = grown(2)
    r = compute_report(g, 2, h)
    assert (r.n_v, r.n_e) == (24, 66)
    assert r.mean_degree == Fraction(11, 2)
    assert r.mean_square_degree == 37
    assert r.molloy_reed == 26
    assert r.spectrum == {4: 18, 10: 6}


def test_report_t0():
    r = report_from_degrees([2, 2, 2], 0)
    assert (r.mean_degree, r.mean_square_degree, r.molloy_reed) == (2, 4, 0)


def test_report_json_round_trip(grown):
    g, h = grown(3)
    d = compute_report(g, 3, h).as_dict()
    again = json.loads(json.dumps(d))
    assert again == d
    assert d["mean_degree"] == "65/11"
    assert d["gamma"] == pytest.approx(GAMMA)
    assert d["proportions"][0]["alpha_k"] == "2/11"


@pytest.mark.parametrize("t", range(2, 7))
def test_molloy_reed_positive(grown, t):
    g, _ = grown(t)
    r = compute_report(g, t, with_proportions=False)
    assert r.molloy_reed > 0
    assert r.mean_degree == Fraction(2 * edge_count_formula(t), node_count_formula(t))


def test_attach_probability():
    assert attach_probability(3, 2)[0] == Fraction(1, 78)
    assert attach_probability(3, 3)[0] == Fraction(7, 195)
    for t in range(2, 8):
        for k in range(1, t + 1):
            ratio = attach_probability(t, t)[0] / attach_probability(t, k)[0]
            assert ratio == Fraction(3**t + 1, 3**k + 1)
    exact, approx = attach_probability(9, 4)
    # the approximation drops the +1 in 3^k + 1
    assert float(exact) == pytest.approx(approx, rel=1.5 / 3**4)
    with pytest.raises(OutOfRange):
        attach_probability(3, 0)
    with pytest.raises(OutOfRange):
        attach_probability(3, 4)


def test_edge_cumulative_example():
    assert edge_cumulative_exact(5, 3) == Fraction(2355, 69990)
    rel = abs(float(edge_cumulative_exact(5, 3)) / edge_cumulative_asymptotic(5, 3) - 1)
    assert rel < 0.01
    with pytest.raises(OutOfRange):
        edge_cumulative_exact(5, 5)


@pytest.mark.parametrize("t", range(1, 9))
def test_edge_cumulative_closed_form_matches_sum(t):
    vals = [edge_cumulative_exact(t, ti) for ti in range(t)]
    assert vals == [edge_cumulative_closed_form(t, ti) for ti in range(t)]
    assert vals == sorted(vals) and vals[-1] < 1


def test_degree_class():
    assert [degree_class(3**k + 1) for k in range(1, 6)] == [1, 2, 3, 4, 5]
    for d in (2, 3, 5, 11, 27):
        with pytest.raises(NotASpectrumDegree):
            degree_class(d)
    assert edge_cumulative_of_degree(8, 4)[0] == 1
    with pytest.raises(NotASpectrumDegree):
        edge_cumulative_of_degree(3, 28)


def test_loglog_slope():
    for s in loglog_slope(8):
        assert s == pytest.approx(-GAMMA, abs=1e-9)
    assert GAMMA == pytest.approx(1.63093, abs=1e-5)


def test_cumulative_csv():
    text = cumulative_csv(4, ["x"])
    lines = text.splitlines()
    assert lines[0] == "# x"
    assert lines[1] == "k,degree,t_i,exact,asymptotic"
    assert lines[2].startswith("1,4,3,")
    assert len(lines) == 2 + 3


def test_proportions_example():
    row = proportions(3, 1)
    assert (row.S_leq, row.S_geq) == (108, 24)
    assert row.alpha_k == Fraction(24, 132)
    assert row == proportions_from_spectrum(degree_spectrum_formula(3), 3, 1)
    with pytest.raises(OutOfRange):
        proportions(3, 3)


@given(t=st.integers(2, 9), data=st.data())
def test_proportion_identity(t, data):
    k = data.draw(st.integers(1, t - 1))
    row = proportions(t, k)
    n_v, n_e = node_count_formula(t), edge_count_formula(t)
    assert row == proportions_from_spectrum(degree_spectrum_formula(t), t, k)
    assert row.S_geq * row.D_geq == 2 * row.alpha_k * row.beta_k * n_v * n_e
    assert row.alpha_k == closed_form_alpha(t, k)
    assert 0 < row.beta_k < 1


def test_alpha_inversion():
    k = k_from_alpha(0.5e-6)
    assert k == pytest.approx(8.0974, abs=1e-3)
    assert 1 - low_class_degree_share(k) == pytest.approx(0.003, abs=1e-3)
    assert k_from_alpha(1 / 6) == pytest.approx(1.0)
    with pytest.raises(OutOfRange):
        k_from_alpha(1.5)
    # the large-t share approaches the exact one
    t = 9
    exact = 1 - proportions(t, 3).beta_k
    assert float(exact) == pytest.approx(low_class_degree_share(3), rel=1e-3)
    assert math.isclose(low_class_degree_share(0), 0.0, abs_tol=1e-12)
