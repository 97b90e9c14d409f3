"""Entry laws and matrix sampling for Wigner ensembles.

A real symmetric ensemble draws independent symmetric entries xi_ij with
E xi^2 = 1/4 above the diagonal and sets a_ij = xi_ij / sqrt(n).  A hermitian
ensemble draws independent real and imaginary parts with E xi^2 = E eta^2 =
1/8.  The diagonal law is free apart from a declared second-moment bound.

Sampling uses the counter-based Philox generator keyed by (seed, replica), so
replicas are reproducible independently of scheduling or worker count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, sqrt

import numpy as np

from .errors import ConfigurationError

_REAL_VAR = Fraction(1, 4)
_HERM_VAR = Fraction(1, 8)


def _double_factorial_odd(m: int) -> int:
    # (2m-1)!! pairs gaussian moments
    out = 1
    for j in range(1, 2 * m, 2):
        out *= j
    return out


@dataclass(frozen=True)
class EntryLaw:
    """Symmetric scalar law, exact where the parameters are rational.

    kind: 'gaussian' | 'rademacher' | 'uniform_symmetric' | 'discrete_symmetric'
    var: exact second moment (Fraction)
    atoms: ((value, prob), ...) for discrete laws, probabilities as Fractions
    """

    kind: str
    var: Fraction
    atoms: tuple = ()

    def __post_init__(self):
        if self.kind not in ("gaussian", "rademacher", "uniform_symmetric", "discrete_symmetric"):
            raise ConfigurationError(f"unknown entry law kind {self.kind!r}")
        if self.var < 0:
            raise ConfigurationError("entry law needs a nonnegative variance")
        if self.kind == "discrete_symmetric":
            support = {}
            total = Fraction(0)
            for value, prob in self.atoms:
                support[Fraction(value)] = Fraction(prob)
                total += Fraction(prob)
            if total != 1:
                raise ConfigurationError("discrete law probabilities must sum to 1")
            for v, p in support.items():
                if support.get(-v) != p:
                    raise ConfigurationError("discrete law must be symmetric about 0")
            got = sum(p * v * v for v, p in support.items())
            if got != self.var:
                raise ConfigurationError("discrete law variance disagrees with atoms")

    def moment(self, order: int) -> Fraction:
        """E xi^order, exactly; odd orders vanish by symmetry."""
        if order < 0:
            raise ConfigurationError("moment order must be nonnegative")
        if order % 2 == 1:
            return Fraction(0)
        m = order // 2
        if self.kind == "gaussian":
            return self.var**m * _double_factorial_odd(m)
        if self.kind == "rademacher":
            return self.var**m
        if self.kind == "uniform_symmetric":
            # uniform on [-a, a] has E xi^{2m} = a^{2m}/(2m+1), a^2 = 3 var
            return (3 * self.var) ** m / (2 * m + 1)
        return sum(Fraction(p) * Fraction(v) ** order for v, p in self.atoms)

    def sample(self, gen: np.random.Generator, size: int) -> np.ndarray:
        s = sqrt(float(self.var))
        if self.kind == "gaussian":
            return s * gen.standard_normal(size)
        if self.kind == "rademacher":
            return s * (2.0 * gen.integers(0, 2, size=size) - 1.0)
        if self.kind == "uniform_symmetric":
            a = sqrt(3.0 * float(self.var))
            return gen.uniform(-a, a, size=size)
        values = np.array([float(v) for v, _ in self.atoms])
        probs = np.array([float(p) for _, p in self.atoms])
        return values[gen.choice(len(values), size=size, p=probs)]


def gaussian_law(var) -> EntryLaw:
    return EntryLaw("gaussian", Fraction(var))


def rademacher_law(var) -> EntryLaw:
    """Two-point law +-sqrt(var) with equal weights."""
    return EntryLaw("rademacher", Fraction(var))


def uniform_law(var) -> EntryLaw:
    return EntryLaw("uniform_symmetric", Fraction(var))


@dataclass(frozen=True)
class EnsembleSpec:
    """Symmetry class plus entry laws; validated on construction."""

    name: str
    symmetry: str  # 'real' | 'hermitian'
    offdiag: EntryLaw
    diag: EntryLaw
    diag_second_moment_bound: Fraction = Fraction(4)

    def __post_init__(self):
        if self.symmetry not in ("real", "hermitian"):
            raise ConfigurationError(f"unknown symmetry class {self.symmetry!r}")
        want = _REAL_VAR if self.symmetry == "real" else _HERM_VAR
        if self.offdiag.var != want:
            raise ConfigurationError(
                f"off-diagonal variance must be {want} for {self.symmetry} ensembles, "
                f"got {self.offdiag.var}"
            )
        if self.diag.moment(2) > self.diag_second_moment_bound:
            raise ConfigurationError("diagonal second moment exceeds its declared bound")

    @property
    def beta(self) -> int:
        return 1 if self.symmetry == "real" else 2


def goe(diag_var=Fraction(1, 2)) -> EnsembleSpec:
    return EnsembleSpec("goe", "real", gaussian_law(_REAL_VAR), gaussian_law(diag_var))


def gue(diag_var=Fraction(1, 4)) -> EnsembleSpec:
    return EnsembleSpec("gue", "hermitian", gaussian_law(_HERM_VAR), gaussian_law(diag_var))


def rademacher_ensemble(diag_var=Fraction(1, 4)) -> EnsembleSpec:
    return EnsembleSpec("rademacher", "real", rademacher_law(_REAL_VAR), rademacher_law(diag_var))


def uniform_ensemble(diag_var=Fraction(1, 4)) -> EnsembleSpec:
    return EnsembleSpec("uniform", "real", uniform_law(_REAL_VAR), uniform_law(diag_var))


def hermitian_rademacher_ensemble(diag_var=Fraction(1, 4)) -> EnsembleSpec:
    return EnsembleSpec(
        "rademacher_hermitian", "hermitian", rademacher_law(_HERM_VAR), rademacher_law(diag_var)
    )


_BUILTIN = {
    "goe": goe,
    "gue": gue,
    "rademacher": rademacher_ensemble,
    "uniform": uniform_ensemble,
    "rademacher_hermitian": hermitian_rademacher_ensemble,
}


def ensemble_by_name(name: str) -> EnsembleSpec:
    try:
        return _BUILTIN[name]()
    except KeyError:
        raise ConfigurationError(
            f"unknown ensemble {name!r}; available: {', '.join(sorted(_BUILTIN))}"
        ) from None


def replica_key(seed: int, replica: int) -> int:
    """Distinct 128-bit Philox key for one replica of one base seed."""
    if seed < 0 or replica < 0:
        raise ConfigurationError("seed and replica index must be nonnegative")
    return (seed & ((1 << 64) - 1)) | ((replica + 1) << 64)


def _generator(key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=key))


def sample_matrix(spec: EnsembleSpec, n: int, seed: int) -> np.ndarray:
    """One n x n matrix draw; identical (spec, n, seed) give identical bits.

    Entries are xi / sqrt(n).  Fill order is fixed: upper off-diagonal
    triangle row-major, then the diagonal, then (hermitian only) the
    imaginary parts in the same triangle order.
    """
    if n < 1:
        raise ConfigurationError("matrix dimension must be positive")
    gen = _generator(seed)
    ntri = n * (n - 1) // 2
    scale = 1.0 / sqrt(n)
    iu, ju = np.triu_indices(n, k=1)
    if spec.symmetry == "real":
        a = np.zeros((n, n))
        off = spec.offdiag.sample(gen, ntri) * scale
        a[iu, ju] = off
        a[ju, iu] = off
        a[np.diag_indices(n)] = spec.diag.sample(gen, n) * scale
        return a
    re = spec.offdiag.sample(gen, ntri) * scale
    d = spec.diag.sample(gen, n) * scale
    im = spec.offdiag.sample(gen, ntri) * scale
    a = np.zeros((n, n), dtype=np.complex128)
    a[iu, ju] = re + 1j * im
    a[ju, iu] = re - 1j * im
    a[np.diag_indices(n)] = d
    return a


def entry_moment(law: EntryLaw, order: int) -> Fraction:
    return law.moment(order)


def exact_sqrt(fr: Fraction):
    """sqrt of a Fraction if exact, else None (used by tests)."""
    p, q = fr.numerator, fr.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None
