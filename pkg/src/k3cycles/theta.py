"""Theta expansions and related q-series with exact coefficients.

Series use the convention q = exp(pi*i*tau), so a positive definite
lattice of rank m has theta expansion sum_x q^((x,x)) whose exponents are
the exact norm values (integers for integral lattices, rationals for
dual cosets).  Numerical evaluation is the only place floating point
enters, and it always carries an explicit truncation tail bound.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Sequence

from . import linalg
from .enumeration import norm_histogram, tuple_rep_count, _validate_target
from .errors import InvalidTau, UnsupportedWeight
from .lattice import Lattice, Vector, discriminant_group

Rational = Fraction


@dataclass(frozen=True)
class QExpansion:
    """Finitely many exact coefficients of a q-series, indexed by exponent."""

    weight: Fraction
    bound: Fraction
    coeffs: tuple[tuple[Fraction, Fraction], ...]

    def coefficient(self, t) -> Fraction:
        t = Fraction(t)
        for idx, c in self.coeffs:
            if idx == t:
                return c
        return Fraction(0)

    def as_dict(self) -> dict[Fraction, Fraction]:
        return dict(self.coeffs)


def _expansion(weight: Fraction, bound: Fraction, coeffs: Mapping) -> QExpansion:
    items = tuple(sorted((Fraction(k), Fraction(v)) for k, v in coeffs.items()))
    return QExpansion(weight=weight, bound=Fraction(bound), coeffs=items)


@lru_cache(maxsize=128)
def _hist_cached(gram: tuple, shift: tuple, bound: Fraction) -> tuple:
    lat = Lattice(gram)
    h = list(shift) if shift else None
    return tuple(sorted(norm_histogram(lat, h, bound).items()))


def _histogram(lat: Lattice, h: Optional[Sequence], bound) -> dict[Fraction, int]:
    shift: tuple = ()
    if h is not None:
        frac = tuple(Fraction(x) - Fraction(x).__floor__() for x in h)
        if any(frac):
            shift = frac
    return dict(_hist_cached(lat.gram, shift, Fraction(bound)))


def theta_coeffs(lat: Lattice, h: Optional[Sequence] = None, bound=10) -> QExpansion:
    """Norm-counting q-expansion of L + h up to the exponent bound."""
    hist = _histogram(lat, h, bound)
    return _expansion(Fraction(lat.rank, 2), Fraction(bound), hist)


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m with B_1 = -1/2."""
    if m == 0:
        return Fraction(1)
    acc = Fraction(0)
    for j in range(m):
        acc += math.comb(m + 1, j) * bernoulli(j)
    return -acc / (m + 1)


def _sigma(power: int, n: int) -> int:
    return sum(d ** power for d in range(1, n + 1) if n % d == 0)


def eisenstein_sigma_coeffs(k: int, bound: int) -> QExpansion:
    """1 + (-2k/B_k) * sum sigma_{k-1}(n) q^n up to q^bound, exact."""
    if not isinstance(k, int) or k % 2 != 0 or k < 4:
        raise UnsupportedWeight("weight must be an even integer >= 4")
    const = Fraction(-2 * k) / bernoulli(k)
    coeffs = {Fraction(0): Fraction(1)}
    for n in range(1, int(bound) + 1):
        coeffs[Fraction(n)] = const * _sigma(k - 1, n)
    return _expansion(Fraction(k), Fraction(bound), coeffs)


@dataclass(frozen=True)
class ThetaValue:
    value: complex
    tail_bound: float
    bound: Fraction


def _require_upper_half(tau: complex) -> complex:
    tau = complex(tau)
    if not (tau.imag > 0):
        raise InvalidTau("tau must lie in the upper half plane")
    return tau


def _theta_sum(hist: Mapping[Fraction, int], tau: complex) -> complex:
    re = []
    im = []
    for t in sorted(hist):
        z = hist[t] * cmath.exp(1j * math.pi * float(t) * tau)
        re.append(z.real)
        im.append(z.imag)
    return complex(math.fsum(re), math.fsum(im))


def _tail_bound(lat: Lattice, bound: Fraction, tau: complex) -> float:
    """Crude but valid bound on the dropped terms, from coordinate boxes.

    Any x with Q(x) = t has |x_i|^2 <= (G^-1)_ii * t, so the number of
    norms in (t-1, t] is at most the full box count at t.
    """
    v = tau.imag
    if lat.rank == 0:
        return 0.0
    inv = linalg.inverse(linalg.frac_matrix(lat.gram))
    assert inv is not None
    g = max(float(inv[i][i]) for i in range(lat.rank))
    total = 0.0
    b = float(bound)
    for k in range(1, 200_000):
        t = b + k
        count = 1.0
        for _ in range(lat.rank):
            count *= 2.0 * math.sqrt(max(g * t, 0.0)) + 1.0
        term = count * math.exp(-math.pi * v * (t - 1.0))
        total += term
        if term < 1e-300 or (total > 0 and term / total < 1e-18 and k > 8):
            break
    return total


def theta_value(lat: Lattice, h: Optional[Sequence], tau: complex, bound) -> ThetaValue:
    """Truncated numerical theta value with a tail bound report."""
    tau = _require_upper_half(tau)
    bound = Fraction(bound)
    hist = _histogram(lat, h, bound)
    return ThetaValue(
        value=_theta_sum(hist, tau),
        tail_bound=_tail_bound(lat, bound, tau),
        bound=bound,
    )


def theta_transform_check(lat: Lattice, tau: complex, bound) -> float:
    """Residual of the inversion identity

        theta_L(-1/tau) = (tau/i)^(m/2) |D|^(-1/2) sum_h theta_{L,h}(tau)

    computed from truncated series on both sides; small residuals certify
    the modular transformation numerically.
    """
    tau = _require_upper_half(tau)
    bound = Fraction(bound)
    disc = discriminant_group(lat)
    lhs = _theta_sum(_histogram(lat, None, bound), -1.0 / tau)
    coset_sum = complex(0.0)
    for h in disc.elements():
        coset_sum += _theta_sum(_histogram(lat, h, bound), tau)
    factor = (tau / 1j) ** (lat.rank / 2.0)
    rhs = factor * coset_sum / math.sqrt(disc.order)
    return abs(lhs - rhs)


@dataclass(frozen=True)
class FourierTable:
    """Genus-r counting table over all psd integer targets with trace <= bound.

    Every entry records the tuple count at the zero coset together with
    the rank of the target, which is the stratum label used when weighting
    rank-deficient targets.
    """

    genus: int
    bound: int
    entries: tuple[tuple[tuple[tuple[int, ...], ...], int, int], ...]
    coset: tuple[Vector, ...]

    def count(self, target) -> int:
        key = tuple(tuple(int(x) for x in row) for row in target)
        for t, _rank, c in self.entries:
            if t == key:
                return c
        raise KeyError("target outside the tabulated range")

    def rank_of(self, target) -> int:
        key = tuple(tuple(int(x) for x in row) for row in target)
        for t, rank, _c in self.entries:
            if t == key:
                return rank
        raise KeyError("target outside the tabulated range")


def _psd_targets(r: int, bound: int):
    """All psd symmetric integer r x r matrices with trace <= bound,
    in deterministic lexicographic order."""
    import itertools

    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    for diag in itertools.product(range(bound + 1), repeat=r):
        if sum(diag) > bound:
            continue
        limits = [math.isqrt(diag[i] * diag[j]) for i, j in pairs]
        for off in itertools.product(*(range(-s, s + 1) for s in limits)):
            t = [[0] * r for _ in range(r)]
            for i in range(r):
                t[i][i] = diag[i]
            for (i, j), x in zip(pairs, off):
                t[i][j] = t[j][i] = x
            p, q, z = linalg.inertia(t)
            if q == 0:
                yield tuple(tuple(row) for row in t), p + q


def siegel_theta_table(lat: Lattice, r: int, bound: int) -> FourierTable:
    """Tuple counts for every psd Gram target of trace <= bound (zero coset)."""
    if r < 1:
        raise ValueError("genus must be at least 1")
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    entries = []
    for target, rk in _psd_targets(r, int(bound)):
        _validate_target(target)
        entries.append((target, rk, tuple_rep_count(lat, target)))
    zero = tuple(tuple(Fraction(0) for _ in range(lat.rank)) for _ in range(r))
    return FourierTable(genus=r, bound=int(bound), entries=tuple(entries), coset=zero)
