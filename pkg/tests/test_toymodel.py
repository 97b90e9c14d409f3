"""Uniform-path census machinery and the Poisson/normal limit checks."""

import math
from fractions import Fraction

import numpy as np
import pytest

from wignerlab.errors import ConfigurationError, ResourceLimitError
from wignerlab.paths import ClosedPath
from wignerlab.toymodel import (PROPOSITIONS, ToyCensus, collect_census,
                                exact_no_si_probability, exhaustive_census,
                                poisson_pmf, proposition_check,
                                sample_closed_path, si_census)


def test_si_census_examples():
    # all-distinct walk: no orders, but the closing edge can still repeat
    assert si_census(ClosedPath((1, 2, 3), 3)) == ({}, False)
    # one vertex seen twice; (1,2) and the closing (1,3) both repeat
    assert si_census(ClosedPath((1, 2, 1, 3), 3)) == ({2: 1}, True)
    # one vertex seen twice along six distinct edges
    assert si_census(ClosedPath((1, 2, 3, 1, 4, 5), 5)) == ({2: 1}, False)
    # two simple vertices
    assert si_census(ClosedPath((1, 2, 1, 2), 2)) == ({2: 2}, True)
    # back-and-forth repeats the edge
    assert si_census(ClosedPath((1, 2), 2)) == ({}, True)


def test_exhaustive_census_small():
    census = exhaustive_census(3, 2)
    assert census.samples == 9
    # no-SI paths are the ordered pairs of distinct vertices
    assert Fraction(census.no_si, census.samples) == Fraction(2, 3)
    assert Fraction(census.no_si, census.samples) == exact_no_si_probability(3, 2)
    # every length-2 closed path repeats its single edge
    assert census.repeated_edge == census.samples
    dist = census.order_distribution(2)
    assert dist[0] == census.no_si
    assert sum(dist.values()) == census.samples


def test_exhaustive_matches_per_path_census():
    n, p = 3, 4
    census = exhaustive_census(n, p)
    no_si = 0
    repeated = 0
    orders_hist = {}
    for code in range(n ** p):
        verts = []
        c = code
        for _ in range(p):
            verts.append(c % n + 1)
            c //= n
        orders, rep = si_census(ClosedPath(tuple(verts), n))
        no_si += not orders
        repeated += rep
        m = sum(1 for k, cnt in orders.items() if k == 2 for _ in range(cnt))
        orders_hist[m] = orders_hist.get(m, 0) + 1
    assert census.no_si == no_si
    assert census.repeated_edge == repeated
    got = census.order_distribution(2)
    assert {m: c for m, c in got.items() if c} == \
        {m: c for m, c in orders_hist.items() if c}


def test_exhaustive_budget_guard():
    with pytest.raises(ResourceLimitError):
        exhaustive_census(10, 9)


def test_exact_no_si_probability_falling_product():
    for n in range(2, 6):
        for p in range(1, 5):
            want = Fraction(1)
            for k in range(p):
                want *= Fraction(max(n - k, 0), n)
            assert exact_no_si_probability(n, p) == want
    assert exact_no_si_probability(3, 5) == 0


def test_poisson_pmf():
    pmf = poisson_pmf(1.5, 8)
    assert pmf[0] == pytest.approx(math.exp(-1.5), rel=1e-15)
    assert pmf[3] == pytest.approx(math.exp(-1.5) * 1.5 ** 3 / 6, rel=1e-13)
    assert float(np.sum(pmf)) == pytest.approx(1.0, abs=1e-4)
    assert np.all(pmf >= 0.0)
    with pytest.raises(ConfigurationError):
        poisson_pmf(-0.1, 3)


def test_sample_path_deterministic():
    a = sample_closed_path(7, 12, 42)
    b = sample_closed_path(7, 12, 42)
    c = sample_closed_path(7, 12, 43)
    assert a.vertices == b.vertices
    assert a.vertices != c.vertices
    assert a.n == 7 and a.p == 12
    with pytest.raises(ConfigurationError):
        sample_closed_path(0, 3, 1)


def test_collect_census_deterministic_and_batched():
    a = collect_census(50, 10, 3000, seed=9)
    b = collect_census(50, 10, 3000, seed=9)
    assert a == b
    assert a.samples == 3000
    assert a.no_si + sum(
        c for m, c in a.order_distribution(2).items() if m > 0) >= \
        a.samples - a.nonsimple - a.beyond_triple


def test_census_merge_commutes_and_totals():
    a = collect_census(20, 6, 500, seed=1)
    b = collect_census(20, 6, 700, seed=2)
    ab = a.merge(b)
    ba = b.merge(a)
    assert ab.samples == 1200
    assert ab.order_distribution(2) == ba.order_distribution(2)
    assert ab.no_si == ba.no_si == a.no_si + b.no_si
    # merging an empty census is the identity
    empty = ToyCensus()
    assert a.merge(empty) == a


def test_proposition_p1_small_probability():
    report = proposition_check(10 ** 5, 30, 20000, "P1", seed=3)
    assert report.statistic == "repeated_edge_probability"
    assert report.estimate == pytest.approx(0.00015, abs=1e-10)
    assert report.distance < 5e-4


def test_proposition_p2_exact_reference():
    report = proposition_check(3, 2, 10 ** 5, "P2", seed=3)
    assert report.reference == pytest.approx(1.0 / 3.0, rel=1e-12)
    assert report.distance < 4.0 * report.stderr
    again = proposition_check(3, 2, 10 ** 5, "P2", seed=3)
    assert again.estimate == report.estimate


def test_proposition_p3_poisson_tv():
    report = proposition_check(10 ** 4, 100, 20000, "P3", seed=5)
    assert report.reference == pytest.approx(0.5)
    assert report.distance < 0.02
    assert "nonsimple_frequency" in report.as_dict()


def test_proposition_reports_are_json_ready():
    report = proposition_check(100, 4, 1500, "P2", seed=0)
    d = report.as_dict()
    assert d["n"] == 100 and d["p"] == 4 and d["replicas"] == 1500
    assert set(d) >= {"statistic", "estimate", "reference", "distance",
                      "stderr"}


def test_proposition_guards():
    with pytest.raises(ConfigurationError):
        proposition_check(10, 4, 999, "P1")
    with pytest.raises(ConfigurationError):
        proposition_check(10, 4, 2000, "P9")
    assert PROPOSITIONS == ("P1", "P2", "P3", "P4", "P5")
