"""Closed paths on the complete graph and their exact combinatorics.

A closed path of length p on vertices {1..n} is a sequence (i_0, ..., i_{p-1})
with an implicit closing step back to i_0.  A path is even when every
nonoriented edge it traverses (loops included) is traversed an even number of
times.  Even paths carry a marking structure: an instant is marked when its
edge has been traversed an odd number of times so far, and the marked instants
encode a Dyck walk on the nonnegative half-lattice.

The module provides the marking machinery, the self-intersection census,
exhaustive enumeration with exact parity pruning, and exact rational trace
moments for the sampled ensembles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .ensembles import EnsembleSpec
from .errors import ConfigurationError, DomainError, ResourceLimitError

_ENUM_BUDGET = 10**9


@dataclass(frozen=True)
class ClosedPath:
    """Vertex sequence with an implicit closing step; vertices are 1-based."""

    vertices: tuple
    n: int

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if self.n < 1:
            raise ConfigurationError("ambient vertex count must be positive")
        if not self.vertices:
            raise ConfigurationError("a closed path needs at least one step")
        for v in self.vertices:
            if not 1 <= v <= self.n:
                raise ConfigurationError(
                    f"vertex {v} outside the ambient range 1..{self.n}")

    @property
    def p(self) -> int:
        return len(self.vertices)

    def steps(self):
        """Traversed edges in order, as sorted vertex pairs; length p."""
        v = self.vertices
        out = []
        for t in range(1, len(v)):
            out.append(_edge(v[t - 1], v[t]))
        out.append(_edge(v[-1], v[0]))
        return out


@dataclass(frozen=True)
class PathProfile:
    """Marking and self-intersection census of one even closed path.

    type_vector[k] counts vertices arrived at during exactly k marked
    instants; the origin's instant-0 visit is not counted.  same_edge_simple
    counts simple self-intersections whose two marked arrivals traverse the
    same edge.  nu_max is the largest number of marked departures any single
    vertex supports.
    """

    marked: frozenset
    type_vector: tuple
    simple_closed: int
    simple_nonclosed: int
    same_edge_simple: int
    nu_max: int
    dyck: tuple

    def __post_init__(self):
        s = len(self.marked)
        assert len(self.dyck) == 2 * s + 1
        assert self.dyck[0] == 0 and self.dyck[-1] == 0 and min(self.dyck) >= 0
        assert sum(k * c for k, c in enumerate(self.type_vector)) == s
        n2 = self.type_vector[2] if len(self.type_vector) > 2 else 0
        assert self.simple_closed + self.simple_nonclosed == n2
        assert 0 <= self.same_edge_simple <= n2


def _edge(a: int, b: int):
    return (a, b) if a <= b else (b, a)


def edge_multiplicities(path: ClosedPath) -> dict:
    """Traversal count per nonoriented edge; counts sum to p."""
    counts = {}
    for e in path.steps():
        counts[e] = counts.get(e, 0) + 1
    return counts


def is_even_path(path: ClosedPath) -> bool:
    return all(c % 2 == 0 for c in edge_multiplicities(path).values())


def marked_instants(path: ClosedPath) -> frozenset:
    """Instants (1-based) whose edge has odd cumulative count there.

    Defined for even paths only; exactly half the instants are marked.
    """
    counts = {}
    marked = set()
    for t, e in enumerate(path.steps(), start=1):
        counts[e] = counts.get(e, 0) + 1
        if counts[e] % 2 == 1:
            marked.add(t)
    if any(c % 2 for c in counts.values()):
        raise DomainError("marking requires an even path")
    return frozenset(marked)


def dyck_trajectory(path: ClosedPath) -> tuple:
    """The walk x(0..p) stepping +1 at marked instants, -1 otherwise."""
    marked = marked_instants(path)
    x = [0]
    for t in range(1, path.p + 1):
        x.append(x[-1] + (1 if t in marked else -1))
        assert x[-1] >= 0, "trajectory dipped below zero; marking is inconsistent"
    assert x[-1] == 0
    return tuple(x)


def _marked_arrivals(path: ClosedPath, marked) -> dict:
    """vertex -> sorted instants of marked arrival (instant 0 not counted)."""
    arrivals = {}
    for t in sorted(marked):
        arrivals.setdefault(path.vertices[t], []).append(t)
    return arrivals


def first_return_candidates(path: ClosedPath, vertex: int) -> dict:
    """Diagnostics for one simple self-intersection vertex.

    Reports the three canonical continuation edges (first arrival, first
    departure, second marked arrival), the instant of the first unmarked
    departure after the second marked arrival, and every edge actually
    available there (incident edges with odd count at that moment).
    """
    marked = marked_instants(path)
    arr = _marked_arrivals(path, marked).get(vertex, [])
    if len(arr) != 2:
        raise DomainError(f"vertex {vertex} is not a simple self-intersection")
    m1, m2 = arr
    steps = path.steps()
    verts = path.vertices + (path.vertices[0],)
    info = {
        "first_arrival_edge": steps[m1 - 1],
        "second_arrival_edge": steps[m2 - 1],
        "first_departure_edge": steps[m1] if m1 < path.p else None,
    }
    counts = {}
    available = None
    depart_at = None
    for t in range(1, path.p + 1):
        if t > m2 and t not in marked and verts[t - 1] == vertex:
            available = tuple(sorted(
                e for e, c in counts.items() if vertex in e[:2] and c % 2 == 1))
            depart_at = t
            break
        e = steps[t - 1]
        counts[e] = counts.get(e, 0) + 1
    if available is None:
        # no unmarked departure follows; judge at the second arrival itself
        counts = {}
        for t in range(1, m2 + 1):
            e = steps[t - 1]
            counts[e] = counts.get(e, 0) + 1
        available = tuple(sorted(
            e for e, c in counts.items() if vertex in e[:2] and c % 2 == 1))
    info["return_instant"] = depart_at
    info["available_edges"] = available
    return info


def self_intersection_profile(path: ClosedPath) -> PathProfile:
    """Full marking census: type vector, closed/nonclosed split, q, nu."""
    marked = marked_instants(path)
    dyck = dyck_trajectory(path)
    s = path.p // 2
    arrivals = _marked_arrivals(path, marked)
    type_vector = [0] * (s + 1)
    for instants in arrivals.values():
        type_vector[len(instants)] += 1
    type_vector[0] = path.n - sum(type_vector[1:])

    steps = path.steps()
    closed = nonclosed = same_edge = 0
    for vertex, instants in arrivals.items():
        if len(instants) != 2:
            continue
        m1, m2 = instants
        if steps[m1 - 1] == steps[m2 - 1]:
            same_edge += 1
        ways = len(first_return_candidates(path, vertex)["available_edges"])
        if ways == 1:
            closed += 1
        else:
            nonclosed += 1

    departures = {}
    verts = path.vertices
    for t in marked:
        u = verts[t - 1]
        departures[u] = departures.get(u, 0) + 1
    nu = max(departures.values(), default=0)
    return PathProfile(marked=marked, type_vector=tuple(type_vector),
                       simple_closed=closed, simple_nonclosed=nonclosed,
                       same_edge_simple=same_edge, nu_max=nu, dyck=dyck)


def no_loops(path: ClosedPath) -> bool:
    return all(a != b for a, b in path.steps())


def no_self_intersections(path: ClosedPath) -> bool:
    """Distinct marked arrivals hit distinct vertices; instant 0 counts here."""
    marked = marked_instants(path)
    seen = {path.vertices[0]}
    for t in marked:
        v = path.vertices[t]
        if v in seen:
            return False
        seen.add(v)
    return True


def _check_budget(n: int, p: int):
    if n < 1 or p < 1:
        raise ConfigurationError("enumeration needs n >= 1 and p >= 1")
    if n**p > _ENUM_BUDGET:
        raise ResourceLimitError(
            f"enumeration over n^p = {n}^{p} sequences exceeds the budget")


def enumerate_even_paths(n: int, p: int, predicate=None, visitor=None) -> int:
    """Count closed even paths with distinguished origin, exactly.

    The search is depth-first over next-vertex choices.  Pruning is exact:
    with c edges currently odd and r steps remaining, completion requires
    c <= r and r - c even, and a path failing that bound has no even
    extension.  ``predicate`` filters completed paths; ``visitor`` sees each
    accepted ClosedPath.
    """
    _check_budget(n, p)
    if p % 2 == 1:
        return 0
    count = 0
    seq = [0] * p
    counts = {}

    def flip(e) -> int:
        # returns +1 if the edge became odd, -1 if it closed
        c = counts.get(e, 0) + 1
        counts[e] = c
        return 1 if c % 2 == 1 else -1

    def unflip(e):
        counts[e] -= 1

    def descend(t: int, odd: int):
        # seq[1..t-1] chosen, instants 1..t-1 traversed, p - t + 1 left;
        # t == p means the forced closing instant has been applied too
        nonlocal count
        if t == p:
            if odd == 0:
                path = ClosedPath(tuple(seq), n)
                if predicate is None or predicate(path):
                    count += 1
                    if visitor is not None:
                        visitor(path)
            return
        remaining = p - t + 1
        if odd > remaining or (remaining - odd) % 2 == 1:
            return
        for v in range(1, n + 1):
            seq[t] = v
            e = _edge(seq[t - 1], v)
            d = flip(e)
            if t == p - 1:
                ec = _edge(v, seq[0])
                dc = flip(ec)
                descend(p, odd + d + dc)
                unflip(ec)
            else:
                descend(t + 1, odd + d)
            unflip(e)

    for origin in range(1, n + 1):
        seq[0] = origin
        descend(1, 0)
    return count


def wigner_no_si_count(n: int, s: int) -> int:
    """Even no-self-intersection loopless path count: n(n-1)...(n-s) C_s.

    The origin occupies a vertex of its own, so s + 1 falling factors
    appear, one per vertex the path touches.
    """
    if s < 0 or n < 1:
        raise DomainError("need n >= 1 and s >= 0")
    out = catalan(s)
    for j in range(s + 1):
        out *= n - j
    return max(out, 0)


def catalan(s: int) -> int:
    return comb(2 * s, s) // (s + 1)


def semicircle_moment(s: int) -> Fraction:
    """Even moment of the limiting spectral density: C_s / 4^s."""
    if s < 0:
        raise DomainError("moment index must be nonnegative")
    return Fraction(catalan(s), 4**s)


def _real_weight(counts: dict, spec: EnsembleSpec) -> Fraction:
    w = Fraction(1)
    for (a, b), m in counts.items():
        law = spec.diag if a == b else spec.offdiag
        w *= law.moment(m)
        if w == 0:
            break
    return w


def _hermitian_edge_weight(k: int, m: int, spec: EnsembleSpec) -> Fraction:
    # E (xi + i eta)^k (xi - i eta)^m expanded over symmetric xi, eta;
    # surviving terms carry even powers, so i^(...) is a rational sign
    law = spec.offdiag
    total = Fraction(0)
    for a in range(k + 1):
        for b in range(m + 1):
            ima = (k - a) + (m - b)
            if (a + b) % 2 or ima % 2:
                continue
            sign = (-1) ** (ima // 2) * (-1) ** (m - b)
            total += sign * comb(k, a) * comb(m, b) * law.moment(a + b) * law.moment(ima)
    return total


def _hermitian_weight(path: ClosedPath, spec: EnsembleSpec) -> Fraction:
    oriented = {}
    v = path.vertices + (path.vertices[0],)
    for t in range(path.p):
        oriented[(v[t], v[t + 1])] = oriented.get((v[t], v[t + 1]), 0) + 1
    w = Fraction(1)
    for (a, b) in {_edge(a, b) for (a, b) in oriented}:
        if a == b:
            w *= spec.diag.moment(oriented.get((a, a), 0))
        else:
            w *= _hermitian_edge_weight(oriented.get((a, b), 0),
                                        oriented.get((b, a), 0), spec)
        if w == 0:
            break
    return w


def exact_trace_moment(n: int, p: int, spec: EnsembleSpec) -> Fraction:
    """E Trace A^p as an exact rational, by exhaustive path summation.

    Every closed path contributes the product over its distinct edges of the
    entry-law moment at that edge's multiplicity, scaled by n^(-p/2).  Odd p
    vanishes identically; only even paths contribute for symmetric laws, so
    the enumeration reuses the parity-pruned search.
    """
    _check_budget(n, p)
    if p % 2 == 1:
        return Fraction(0)
    total = Fraction(0)

    def add(path: ClosedPath):
        nonlocal total
        if spec.symmetry == "real":
            total += _real_weight(edge_multiplicities(path), spec)
        else:
            total += _hermitian_weight(path, spec)

    enumerate_even_paths(n, p, visitor=add)
    return total / Fraction(n) ** (p // 2)


def path_edges(path: ClosedPath) -> frozenset:
    return frozenset(path.steps())


def cluster_partition(paths) -> list:
    """Partition indices of ``paths`` into maximal edge-sharing clusters.

    Two paths are joined when they traverse a common nonoriented edge;
    clusters are the connected components of that relation.
    """
    paths = list(paths)
    if not paths:
        return []
    ambient = {q.n for q in paths}
    if len(ambient) > 1:
        raise DomainError("clustering needs a shared ambient vertex count")
    parent = list(range(len(paths)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner = {}
    for i, q in enumerate(paths):
        for e in path_edges(q):
            if e in owner:
                parent[find(i)] = find(owner[e])
            else:
                owner[e] = i
    groups = {}
    for i in range(len(paths)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())
