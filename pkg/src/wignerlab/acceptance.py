"""Release gate: the twelve numbered checks behind ``wignerlab verify``.

Each criterion is a function returning (passed, detail).  Tolerances are
pilot-calibrated for the fixed seeds below; every Monte Carlo check keys
replica r of seed s through the counter-mode generator, so reruns and
worker counts cannot change the verdict.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import airykernel, toymodel
from .airyfun import airy_ai
from .eigen import backend_name, eigvals_sym
from .ensembles import (goe, gue, rademacher_ensemble, replica_key,
                        sample_matrix)
from .experiments import (high_trace_power, run_edge_samples,
                          run_even_trace_moments, run_high_traces)
from .mcstats import (CountCollector, EmpiricalCDF, ks_distance,
                      ks_two_sample)
from .paths import (dyck_trajectory, enumerate_even_paths,
                    exact_trace_moment, marked_instants,
                    no_self_intersections, self_intersection_profile,
                    semicircle_moment, wigner_no_si_count)
from .quadrature import integrate
from .tracywidom import default_table, tw_cdf, tw_table
from . import _eigen_py

SEED_MOMENTS = 3000
SEED_EDGE_GUE = 6000
SEED_EDGE_GOE = 6001
SEED_UNIV_RAD = 7000
SEED_UNIV_GOE = 7001
SEED_TRACE = 8000
SEED_TOY = 1
SEED_DEVIATION = 11000


@dataclass(frozen=True)
class CheckResult:
    cid: int
    slug: str
    passed: bool
    detail: str
    seconds: float


def format_result(r: CheckResult) -> str:
    tag = "PASS" if r.passed else "FAIL"
    return f"[{r.cid:2d}] {tag} {r.slug} ({r.seconds:.1f}s): {r.detail}"


# -- 1: no-self-intersection count ------------------------------------------

def _check_catalan_count(workers: int):
    worst = ""
    for n in range(1, 7):
        for s in range(1, 5):
            got = enumerate_even_paths(n, 2 * s, predicate=no_self_intersections)
            want = wigner_no_si_count(n, s)
            if got != want:
                return False, f"n={n} s={s}: enumerated {got}, closed form {want}"
            worst = f"n={n} s={s} count {got}"
    return True, f"24 (n, s) pairs exact, last {worst}"


# -- 2: exact moment vs exhaustive expectation ------------------------------

def _brute_rademacher_moment(n: int, p: int) -> Fraction:
    """E Trace (A/sqrt n)^p over all sign assignments, entries +-1/2."""
    half = Fraction(1, 2)
    slots = [(i, i) for i in range(n)] + [(i, j) for i in range(n)
                                          for j in range(i + 1, n)]
    total = Fraction(0)
    for mask in range(1 << len(slots)):
        m = [[Fraction(0)] * n for _ in range(n)]
        for b, (i, j) in enumerate(slots):
            v = half if mask >> b & 1 else -half
            m[i][j] = v
            m[j][i] = v
        acc = m
        for _ in range(p - 1):
            acc = [[sum(acc[i][k] * m[k][j] for k in range(n))
                    for j in range(n)] for i in range(n)]
        total += sum(acc[i][i] for i in range(n))
    mean = total / (1 << len(slots))
    if p % 2:
        if mean != 0:
            raise AssertionError(f"odd power {p} brute force gave {mean}")
        return Fraction(0)
    return mean / Fraction(n) ** (p // 2)


def _check_moment_oracle(workers: int):
    spec = rademacher_ensemble()
    cases = 0
    for n in range(1, 4):
        for p in range(1, 7):
            got = exact_trace_moment(n, p, spec)
            want = _brute_rademacher_moment(n, p)
            if got != want:
                return False, f"n={n} p={p}: combinatorial {got}, brute {want}"
            if p % 2 and got != 0:
                return False, f"n={n} odd p={p} gave {got}, expected 0"
            cases += 1
    return True, f"{cases} (n, p) cases agree exactly; odd powers vanish"


# -- 3: semicircle moments at n = 2000 --------------------------------------

def _check_semicircle_moments(workers: int):
    n, replicas = 2000, 200
    traces = run_even_trace_moments(goe(), n, replicas, SEED_MOMENTS, 3,
                                    workers=workers)
    mean = traces.mean(axis=0) / n
    devs = []
    for s in (1, 2, 3):
        ref = float(semicircle_moment(s))
        devs.append(abs(mean[s - 1] - ref) / ref)
    detail = ("rel devs " + ", ".join(f"{d:.2e}" for d in devs)
              + " for s=1..3 (tol 0.03)")
    return max(devs) < 0.03, detail


# -- 4: kernel identity -----------------------------------------------------

def _check_kernel_identity(workers: int):
    grid = np.linspace(-3.0, 3.0, 10)
    worst = 0.0
    for x in grid:
        for y in grid:
            worst = max(worst, abs(airykernel.airy_kernel(x, y)
                                   - airykernel.airy_kernel_quadrature(x, y)))
    return worst < 1e-8, f"max |closed - quadrature| {worst:.2e} on 100 pairs (tol 1e-8)"


def _simpson_from(values: np.ndarray, step: float, i: int) -> float:
    """Integral of the sampled function from node i to the last node."""
    m = len(values) - 1 - i
    if m == 0:
        return 0.0
    if m == 1:
        # single interval: quadratic through the trailing three nodes
        return step / 12.0 * (-values[i - 1] + 8.0 * values[i]
                              + 5.0 * values[i + 1])
    acc = 0.0
    if m % 2:
        # half-panel quadratic rule keeps O(step^4) for odd interval counts
        acc += step / 12.0 * (5.0 * values[i] + 8.0 * values[i + 1]
                              - values[i + 2])
        i += 1
        m -= 1
    if m:
        body = values[i:]
        acc += step / 3.0 * (body[0] + body[-1] + 4.0 * body[1:-1:2].sum()
                             + 2.0 * body[2:-1:2].sum())
    return acc


# -- 5: Painleve / Tracy-Widom self-consistency -----------------------------

def _check_tw_consistency(workers: int):
    table = default_table()
    step = float(table.s[1] - table.s[0])
    i6 = int(np.argmin(np.abs(table.s - 6.0)))
    q_rel = abs(table.q[i6] - airy_ai(6.0)) / airy_ai(6.0)
    if q_rel >= 1e-6:
        return False, f"q(6) vs Ai(6) relative error {q_rel:.2e} (tol 1e-6)"

    # squared-F1 identity, with the integral of q redone by Simpson so the
    # check does not reuse the table's own antiderivative
    worst_id = 0.0
    for i in range(len(table.s)):
        integral = _simpson_from(table.q, step, i) + table.tail_q
        worst_id = max(worst_id, abs(table.f1[i] ** 2
                                     - table.f2[i] * math.exp(-integral)))
    if worst_id >= 1e-6:
        return False, f"F1^2 identity deviates {worst_id:.2e} (tol 1e-6)"

    inside = ((table.f2 >= 0.0) & (table.f2 <= 1.0)
              & (table.f1 >= 0.0) & (table.f1 <= 1.0))
    if not bool(inside.all()):
        return False, "a distribution value left [0, 1]"
    if np.any(np.diff(table.f2) < -1e-12) or np.any(np.diff(table.f1) < -1e-12):
        return False, "distribution column not monotone"

    fine = tw_table(step=0.01)
    probes = np.linspace(table.s[0] + 0.011, table.s[-1] - 0.011, 613)
    worst_res = 0.0
    for beta in (1, 2):
        a = tw_cdf(beta, probes, table=table)
        b = tw_cdf(beta, probes, table=fine)
        worst_res = max(worst_res, float(np.max(np.abs(a - b))))
    passed = worst_res < 1e-6
    return passed, (f"q(6) rel {q_rel:.1e}; identity {worst_id:.1e}; "
                    f"monotone in [0,1]; resolutions {worst_res:.1e} (tol 1e-6)")


# -- 6: Gaussian edge laws --------------------------------------------------

def _check_gaussian_edge(workers: int):
    n, replicas = 200, 2000
    table = default_table()
    out = []
    for spec, seed, beta in ((gue(), SEED_EDGE_GUE, 2),
                             (goe(), SEED_EDGE_GOE, 1)):
        theta, _ = run_edge_samples(spec, n, replicas, seed, k=1,
                                    workers=workers)
        ecdf = EmpiricalCDF.from_samples(theta[:, 0])
        out.append(ks_distance(ecdf, lambda x: tw_cdf(beta, x, table=table)))
    detail = f"KS gue {out[0]:.3f}, goe {out[1]:.3f} (tol 0.06)"
    return max(out) < 0.06, detail


# -- 7: universality across entry laws --------------------------------------

def _check_universality(workers: int):
    n, replicas = 200, 2000
    rad, _ = run_edge_samples(rademacher_ensemble(), n, replicas,
                              SEED_UNIV_RAD, k=2, workers=workers)
    ref, _ = run_edge_samples(goe(), n, replicas, SEED_UNIV_GOE, k=2,
                              workers=workers)
    ks = [ks_two_sample(EmpiricalCDF.from_samples(rad[:, j]),
                        EmpiricalCDF.from_samples(ref[:, j]))
          for j in (0, 1)]
    detail = f"two-sample KS theta1 {ks[0]:.3f}, theta2 {ks[1]:.3f} (tol 0.05)"
    if max(ks) >= 0.05:
        # the laws do converge to each other, but their finite-size
        # centerings differ at order n^(-1/3); at this n the offset is the
        # whole story, so report it alongside the distance
        detail += (f"; theta1 means {rad[:, 0].mean():+.3f} vs "
                   f"{ref[:, 0].mean():+.3f}: the entry-law-dependent "
                   f"finite-size shift exceeds this tolerance at n={n}")
    return max(ks) < 0.05, detail


# -- 8: linear-statistic limit vs high traces -------------------------------

def _check_linear_statistic(workers: int):
    n, replicas, t = 400, 1000, 1.0
    ref = airykernel.linear_statistic_limit(t)
    traces = run_high_traces(gue(), n, replicas, SEED_TRACE, t,
                             workers=workers)
    mc = float(traces.mean())
    dev = abs(mc - ref) / ref
    detail = (f"mean Trace A^{high_trace_power(t, n)} = {mc:.4f} vs "
              f"quadrature {ref:.4f}, rel dev {dev:.3f} (tol 0.10)")
    return dev < 0.10, detail


# -- 9: small-t blowup constant ---------------------------------------------

def _check_small_t(workers: int):
    t = 0.05
    ref = t ** -1.5 / math.sqrt(math.pi)
    val = airykernel.linear_statistic_limit(t)
    dev = abs(val - ref) / ref
    return dev < 0.10, (f"quadrature {val:.4f} vs pi^-1/2 t^-3/2 = {ref:.4f}, "
                        f"rel dev {dev:.1e} (tol 0.10)")


# -- 10: toy-model Poisson limits -------------------------------------------

def _check_toy_limits(workers: int):
    r3 = toymodel.proposition_check(10 ** 4, 100, 10 ** 5, "P3", seed=SEED_TOY)
    if r3.distance >= 0.05:
        return False, f"simple-count TV {r3.distance:.4f} (tol 0.05)"
    r5 = toymodel.proposition_check(4096, 256, 10 ** 5, "P5", seed=SEED_TOY)
    if r5.distance >= 0.05:
        return False, f"triple-count TV {r5.distance:.4f} (tol 0.05)"
    census = toymodel.exhaustive_census(3, 2)
    exact = Fraction(census.no_si, census.samples)
    if exact != Fraction(2, 3) or toymodel.exact_no_si_probability(3, 2) != exact:
        return False, f"exhaustive no-SI probability {exact} != 2/3"
    return True, (f"simple TV {r3.distance:.4f}, triple TV {r5.distance:.4f} "
                  f"(tol 0.05); n=3 p=2 exhaustive exactly 2/3")


# -- 11: eigenvalues beyond the bulk edge -----------------------------------

def _check_large_deviation(workers: int):
    n, replicas = 400, 2000
    theta, _ = run_edge_samples(goe(), n, replicas, SEED_DEVIATION, k=1,
                                workers=workers)
    # lambda_1 > 1 + 1/(2 sqrt n) is theta_1 > n^(1/6) after rescaling
    hits = int(np.count_nonzero(theta[:, 0] > n ** (1.0 / 6.0)))
    freq = hits / replicas
    return freq < 0.05, (f"{hits}/{replicas} = {freq:.4f} exceed "
                         f"1 + 1/(2 sqrt n) (tol 0.05)")


# -- 12: invariant battery --------------------------------------------------

def _invariant_paths():
    found = []
    enumerate_even_paths(3, 6, visitor=found.append)
    for path in found:
        marked = marked_instants(path)
        assert len(marked) == path.p // 2, "marked instants are half the steps"
        dyck_trajectory(path)
        profile = self_intersection_profile(path)
        s = path.p // 2
        assert sum(k * nk for k, nk in enumerate(profile.type_vector)) == s


def _invariant_merge():
    gen = np.random.default_rng(12)
    a, b = gen.normal(size=40), gen.normal(size=25)
    both = EmpiricalCDF.from_samples(a).merge(EmpiricalCDF.from_samples(b))
    direct = EmpiricalCDF.from_samples(np.concatenate([a, b]))
    assert np.array_equal(both.values, direct.values)
    cc = CountCollector.for_intervals([(0.0, 1.0), (1.0, 2.0)])
    cc.record([0.5, 1.5, 1.7])
    dd = CountCollector.for_intervals([(0.0, 1.0), (1.0, 2.0)])
    dd.record([0.2])
    merged = cc.merge(dd)
    assert list(merged.column(0)) == [1, 1] and list(merged.column(1)) == [2, 0]
    c1 = toymodel.collect_census(5, 4, 300, seed=9)
    c2 = toymodel.collect_census(5, 4, 200, seed=77)
    m12, m21 = c1.merge(c2), c2.merge(c1)
    assert m12.samples == 500 and m12.order_distribution(2) == m21.order_distribution(2)


def _invariant_determinism():
    m1 = sample_matrix(goe(), 30, replica_key(4, 0))
    m2 = sample_matrix(goe(), 30, replica_key(4, 0))
    assert np.array_equal(m1, m2)
    a1 = run_edge_samples(gue(), 20, 4, seed=5, k=1, workers=1)
    a2 = run_edge_samples(gue(), 20, 4, seed=5, k=1, workers=2)
    assert np.array_equal(a1[0], a2[0]) and np.array_equal(a1[1], a2[1])
    t1 = toymodel.collect_census(100, 10, 500, seed=3)
    t2 = toymodel.collect_census(100, 10, 500, seed=3)
    assert t1 == t2


def _invariant_distribution_table():
    table = default_table()
    assert table.f2[-1] > 1.0 - 1e-6 and table.f2[0] < 1e-3
    assert 0.0 <= table.f1.min() and table.f1.max() <= 1.0
    value, flag = tw_cdf(2, -50.0, with_flag=True)
    assert value == 0.0 and flag
    value, flag = tw_cdf(1, 50.0, with_flag=True)
    assert value == 1.0 and flag


def _invariant_numerics():
    exact = 2.0 ** 9 / 9.0
    assert abs(integrate(lambda x: x ** 8, 0.0, 2.0) - exact) < 1e-12
    lam = eigvals_sym(sample_matrix(goe(), 40, replica_key(8, 0)))
    ref = _eigen_py.eigvals_sym(sample_matrix(goe(), 40, replica_key(8, 0)))
    assert np.max(np.abs(lam - ref)) < 1e-11, "backends disagree"


def _check_invariants(workers: int):
    battery = [("path identities", _invariant_paths),
               ("merge algebra", _invariant_merge),
               ("determinism", _invariant_determinism),
               ("distribution table", _invariant_distribution_table),
               ("numerics", _invariant_numerics)]
    failures = []
    for name, fn in battery:
        try:
            fn()
        except AssertionError as exc:
            failures.append(f"{name}: {exc}")
    if failures:
        return False, "; ".join(failures)
    return True, f"{len(battery)} invariant bundles green ({backend_name()} backend)"


_REGISTRY = (
    (1, "path-count", _check_catalan_count),
    (2, "moment-oracle", _check_moment_oracle),
    (3, "semicircle-moments", _check_semicircle_moments),
    (4, "kernel-identity", _check_kernel_identity),
    (5, "tw-consistency", _check_tw_consistency),
    (6, "gaussian-edge-law", _check_gaussian_edge),
    (7, "universality", _check_universality),
    (8, "linear-statistic", _check_linear_statistic),
    (9, "small-t-limit", _check_small_t),
    (10, "toy-poisson", _check_toy_limits),
    (11, "large-deviation", _check_large_deviation),
    (12, "invariants", _check_invariants),
)

CRITERIA = tuple((cid, slug) for cid, slug, _ in _REGISTRY)


def run_checks(only=None, workers: int = 1, progress=None):
    """Run the selected criteria; never stops at a failure."""
    results = []
    for cid, slug, fn in _REGISTRY:
        if only is not None and cid not in only:
            continue
        start = time.perf_counter()
        try:
            passed, detail = fn(workers)
        except Exception as exc:  # a crash is a failed check, not an abort
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(cid, slug, bool(passed), str(detail),
                                   time.perf_counter() - start))
        if progress is not None:
            progress(results[-1])
    return results
