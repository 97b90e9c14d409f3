"""Closed-path marking, census, enumeration, and exact trace moments."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wignerlab.ensembles import (EnsembleSpec, goe, gue,
                                 hermitian_rademacher_ensemble,
                                 rademacher_ensemble, rademacher_law)
from wignerlab.errors import (ConfigurationError, DomainError,
                              ResourceLimitError)
from wignerlab.paths import (ClosedPath, catalan, cluster_partition,
                             dyck_trajectory, edge_multiplicities,
                             enumerate_even_paths, exact_trace_moment,
                             first_return_candidates, is_even_path,
                             marked_instants, no_loops,
                             no_self_intersections, path_edges,
                             self_intersection_profile, semicircle_moment,
                             wigner_no_si_count)


def _path(vertices, n):
    return ClosedPath(tuple(vertices), n)


def test_two_cycle():
    p = _path((1, 2), 2)
    assert edge_multiplicities(p) == {(1, 2): 2}
    assert is_even_path(p)
    assert marked_instants(p) == frozenset({1})
    assert dyck_trajectory(p) == (0, 1, 0)
    assert no_loops(p) and no_self_intersections(p)


def test_loop_is_even_but_not_loopless():
    p = _path((1, 1), 1)
    assert edge_multiplicities(p) == {(1, 1): 2}
    assert is_even_path(p)
    assert marked_instants(p) == frozenset({1})
    assert not no_loops(p)


def test_uneven_path_rejects_marking():
    p = _path((1, 2, 3), 3)
    assert not is_even_path(p)
    with pytest.raises(DomainError):
        marked_instants(p)


def test_moderate_walk_marking():
    p = _path((1, 5, 3, 5, 2, 4, 2, 5), 5)
    assert is_even_path(p)
    assert marked_instants(p) == frozenset({1, 2, 4, 5})
    prof = self_intersection_profile(p)
    assert prof.nu_max == 2
    assert prof.type_vector[2] == 0


def test_double_bounce_census():
    # 1 -> 2 -> 1 -> 2: one vertex arrived at during two marked instants,
    # both along the same edge, and the return is forced
    p = _path((1, 2, 1, 2), 2)
    assert marked_instants(p) == frozenset({1, 3})
    assert dyck_trajectory(p) == (0, 1, 0, 1, 0)
    prof = self_intersection_profile(p)
    assert prof.type_vector == (1, 0, 1)
    assert prof.same_edge_simple == 1
    assert prof.simple_closed == 1 and prof.simple_nonclosed == 0


def test_branching_walk_census_closed():
    p = _path((1, 2, 3, 4, 3, 2, 5, 3, 6, 3, 5, 2), 6)
    prof = self_intersection_profile(p)
    assert prof.type_vector[:3] == (1, 4, 1)
    assert sum(prof.type_vector[3:]) == 0
    assert prof.simple_closed == 1 and prof.simple_nonclosed == 0
    assert prof.same_edge_simple == 0
    assert prof.nu_max == 2
    info = first_return_candidates(p, 3)
    assert info["first_arrival_edge"] == (2, 3)
    assert info["second_arrival_edge"] == (3, 5)
    assert info["first_departure_edge"] == (3, 4)
    assert info["return_instant"] == 10
    assert info["available_edges"] == ((3, 5),)


def test_branching_walk_census_nonclosed():
    p = _path((1, 2, 3, 4, 2, 5, 2, 3, 4, 2), 5)
    prof = self_intersection_profile(p)
    assert prof.type_vector[:3] == (1, 3, 1)
    assert prof.simple_closed == 0 and prof.simple_nonclosed == 1
    info = first_return_candidates(p, 2)
    assert info["return_instant"] == 7
    assert info["available_edges"] == ((1, 2), (2, 3), (2, 4))


def test_first_return_guard():
    with pytest.raises(DomainError):
        first_return_candidates(_path((1, 2), 2), 1)


def test_enumeration_counts():
    assert enumerate_even_paths(2, 2, predicate=no_loops) == 2
    assert enumerate_even_paths(3, 4) == 45
    assert enumerate_even_paths(
        3, 4, predicate=lambda q: no_loops(q) and no_self_intersections(q)
    ) == 12
    assert enumerate_even_paths(3, 5) == 0


def test_enumeration_visitor_sees_every_path():
    seen = []
    total = enumerate_even_paths(2, 4, visitor=seen.append)
    assert len(seen) == total
    assert all(is_even_path(q) for q in seen)


def test_enumeration_budget_guard():
    with pytest.raises(ResourceLimitError):
        enumerate_even_paths(10, 10)
    with pytest.raises(ConfigurationError):
        enumerate_even_paths(0, 2)


def test_no_si_count_closed_form():
    assert wigner_no_si_count(6, 4) == 6 * 5 * 4 * 3 * 2 * catalan(4)
    assert wigner_no_si_count(6, 4) == 10080
    # matches filtered enumeration on small cases
    for n in (2, 3, 4):
        for s in (1, 2):
            got = enumerate_even_paths(
                n, 2 * s,
                predicate=lambda q: no_loops(q) and no_self_intersections(q))
            assert wigner_no_si_count(n, s) == got
    # more vertices needed than available: count is zero
    assert wigner_no_si_count(2, 3) == 0
    with pytest.raises(DomainError):
        wigner_no_si_count(3, -1)


def test_semicircle_moments():
    assert [semicircle_moment(s) for s in range(4)] == [
        Fraction(1), Fraction(1, 4), Fraction(1, 8), Fraction(5, 64)]


def test_exact_moments_real_ensembles():
    rad = rademacher_ensemble()
    assert exact_trace_moment(2, 2, rad) == Fraction(1, 2)
    assert exact_trace_moment(2, 4, rad) == Fraction(3, 16)
    assert exact_trace_moment(3, 2, rad) == Fraction(3, 4)
    assert exact_trace_moment(3, 4, rad) == Fraction(5, 16)
    assert exact_trace_moment(2, 2, goe()) == Fraction(3, 4)
    assert exact_trace_moment(2, 2, gue()) == Fraction(1, 2)


def test_exact_moments_hermitian():
    h = hermitian_rademacher_ensemble()
    assert exact_trace_moment(2, 2, h) == Fraction(1, 2)
    custom = EnsembleSpec("h_custom", "hermitian",
                          rademacher_law(Fraction(1, 8)),
                          rademacher_law(Fraction(1, 2)))
    assert exact_trace_moment(2, 2, custom) == Fraction(3, 4)
    assert exact_trace_moment(2, 4, custom) == Fraction(13, 32)
    assert exact_trace_moment(3, 4, custom) == Fraction(13, 24)


def test_odd_moments_vanish():
    for spec in (goe(), gue(), rademacher_ensemble()):
        assert exact_trace_moment(3, 3, spec) == Fraction(0)


def test_goe_moment_deviation_from_semicircle():
    # E (1/n) Tr A^2 - m_1 = 1/(4n) exactly for the gaussian real ensemble
    for n in (3, 4, 5, 6):
        dev = exact_trace_moment(n, 2, goe()) / n - semicircle_moment(1)
        assert dev == Fraction(1, 4 * n)


def test_cluster_partition():
    a = _path((1, 2), 4)
    b = _path((3, 4), 4)
    c = _path((2, 1), 4)
    assert cluster_partition([a, b, c]) == [[0, 2], [1]]
    bridge = _path((1, 2, 3, 2), 4)
    assert cluster_partition([a, _path((2, 3), 4), bridge]) == [[0, 1, 2]]
    assert cluster_partition([]) == []
    with pytest.raises(DomainError):
        cluster_partition([a, _path((1, 2), 5)])
    assert path_edges(bridge) == frozenset({(1, 2), (2, 3)})


def test_path_validation():
    with pytest.raises(ConfigurationError):
        ClosedPath((), 3)
    with pytest.raises(ConfigurationError):
        ClosedPath((1, 4), 3)
    with pytest.raises(ConfigurationError):
        ClosedPath((1,), 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.data())
def test_out_and_back_paths_satisfy_marking_invariants(n, data):
    # walking any vertex list out and back traverses each edge twice
    m = data.draw(st.integers(1, 4))
    walk = [data.draw(st.integers(1, n)) for _ in range(m + 1)]
    vertices = tuple(walk) + tuple(walk[-2:0:-1])
    p = _path(vertices, n)
    assert is_even_path(p)
    marked = marked_instants(p)
    assert len(marked) == p.p // 2
    prof = self_intersection_profile(p)
    assert sum(k * c for k, c in enumerate(prof.type_vector)) == p.p // 2
    assert len(prof.dyck) == p.p + 1
    assert sum(edge_multiplicities(p).values()) == p.p
