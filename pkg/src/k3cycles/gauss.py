"""Generalized Gauss sums over residue classes and discriminant forms.

Both sums are finite exponential sums evaluated in floating point from
exactly reduced rational phases, so the only error is the final complex
rounding, not phase drift.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    EnumerationLimitExceeded,
    InvalidModulus,
    OddLatticeUnsupported,
)
from .lattice import Lattice, discriminant_group, signature

RESIDUE_TERM_CAP = 10_000_000
MILGRAM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class GaussSumValue:
    value: complex
    a: int
    c: int
    rank: int
    normalization: float


def gauss_sum(lat: Lattice, a: int, c: int) -> GaussSumValue:
    """c^(-rank/2) * sum over x in (Z/c)^rank of exp(pi*i*a*(x,x)/c).

    The phase a*(x,x) is reduced mod 2c exactly before exponentiation.
    Refuses when c^rank exceeds the residue term cap.
    """
    if not isinstance(c, int) or isinstance(c, bool) or c < 1:
        raise InvalidModulus("modulus c must be a positive integer")
    if not isinstance(a, int) or isinstance(a, bool):
        raise InvalidModulus("parameter a must be an integer")
    n = lat.rank
    if c ** n > RESIDUE_TERM_CAP:
        raise EnumerationLimitExceeded(
            f"residue enumeration would need {c ** n} terms (cap {RESIDUE_TERM_CAP})")
    gram = lat.gram
    two_c = 2 * c
    re = im = 0.0
    cr = ci = 0.0  # Kahan compensation
    for x in itertools.product(range(c), repeat=n):
        q = 0
        for i in range(n):
            xi = x[i]
            if xi:
                row = gram[i]
                q += row[i] * xi * xi
                for j in range(i + 1, n):
                    if x[j]:
                        q += 2 * row[j] * xi * x[j]
        phase = (a * q) % two_c
        z = cmath.exp(1j * math.pi * phase / c)
        y = z.real - cr
        t = re + y
        cr = (t - re) - y
        re = t
        y = z.imag - ci
        t = im + y
        ci = (t - im) - y
        im = t
    norm = c ** (-n / 2.0)
    return GaussSumValue(value=complex(re, im) * norm, a=a, c=c, rank=n,
                         normalization=norm)


@dataclass(frozen=True)
class MilgramResult:
    total: complex
    predicted: complex
    signature_mod8: int
    error: float
    agrees: bool


def milgram_invariant(lat: Lattice) -> MilgramResult:
    """sum over the discriminant group of exp(pi*i*(h,h)) against the
    signature prediction sqrt(|D|) * exp(2*pi*i*sig/8)."""
    if not lat.even:
        raise OddLatticeUnsupported("discriminant-form sum needs an even lattice")
    disc = discriminant_group(lat)  # raises DegenerateLattice when det = 0
    p, q = signature(lat)
    re = []
    im = []
    for h in disc.elements():
        norm = lat.norm(h)
        phase = norm - 2 * ((norm / 2).__floor__())  # exact value in [0, 2)
        z = cmath.exp(1j * math.pi * float(phase))
        re.append(z.real)
        im.append(z.imag)
    total = complex(math.fsum(re), math.fsum(im))
    sig = (p - q) % 8
    predicted = math.sqrt(disc.order) * cmath.exp(2j * math.pi * sig / 8)
    err = abs(total - predicted)
    return MilgramResult(total=total, predicted=predicted, signature_mod8=sig,
                         error=err, agrees=err < MILGRAM_TOLERANCE)
