"""Complex structures, polarization forms, and special endomorphisms on C(L).

A negative 2-plane with orthogonal rational basis z1, z2 gives the even
Clifford element j = z1 z2 with j*j = c < 0 exact; j/sqrt(-c) would be the
usual complex structure, but every symmetry, commutation, and definiteness
statement below is invariant under that positive rescaling, so the whole
certification runs in exact rational arithmetic.  The polarization form is
<x, y> = trace(a x y^iota) for a = a1 a2 built from an orthogonal basis of
the negative definite rank-2 summand.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import clifford, linalg
from .clifford import CliffordElement
from .errors import (
    BadPolarizer,
    BadSplitting,
    NotNegativePlane,
    UnsupportedSignature,
)
from .lattice import Lattice, Vector, as_vector, signature

Splitting = tuple[Sequence[Sequence], Sequence[Sequence]]

ADJOINT_SAMPLES = 8


@dataclass(frozen=True)
class PeriodPlane:
    """A rational 2-plane in L (x) Q spanned by z1, z2."""

    ambient: Lattice
    z1: Vector
    z2: Vector

    @cached_property
    def gram2(self) -> tuple[tuple[Fraction, Fraction], ...]:
        lat = self.ambient
        return tuple(
            tuple(lat.inner(u, v) for v in (self.z1, self.z2))
            for u in (self.z1, self.z2)
        )


@dataclass(frozen=True)
class CommutationProfile:
    delta_commutes: bool
    parity_rule_ok: bool


@dataclass(frozen=True)
class KSReport:
    """Exact certification data for the torus attached to a period plane."""

    j: CliffordElement
    j_square_scalar: Fraction
    riemann_gram: tuple[tuple[Fraction, ...], ...]
    alternating_ok: bool
    symmetric_ok: bool
    definite: bool
    inertia: tuple[int, int, int]
    torus_dim: int
    complex_dim: int


def period_plane(lat: Lattice, z1: Sequence, z2: Sequence) -> PeriodPlane:
    v1, v2 = as_vector(z1), as_vector(z2)
    if len(v1) != lat.rank or len(v2) != lat.rank:
        raise ValueError("plane vector length does not match lattice rank")
    z = PeriodPlane(lat, v1, v2)
    _require_negative(z)
    return z


def _require_negative(z: PeriodPlane) -> None:
    g = z.gram2
    if not (g[0][0] < 0 and g[0][0] * g[1][1] - g[0][1] * g[1][0] > 0):
        raise NotNegativePlane("the plane spanned by z1, z2 is not negative definite")


def _clear_denominators(v: Vector) -> Vector:
    scale = math.lcm(*(x.denominator for x in v)) if v else 1
    return tuple(x * scale for x in v)


def orthogonalize_plane(z: PeriodPlane) -> PeriodPlane:
    """One Gram-Schmidt step on z2, with denominators cleared afterwards.

    Only positive rescalings and shear by z1 are applied, so the
    orientation of (z1, z2) is preserved.
    """
    _require_negative(z)
    g = z.gram2
    if g[0][1] == 0:
        return z
    f = g[0][1] / g[0][0]
    z2 = _clear_denominators(tuple(b - f * a for a, b in zip(z.z1, z.z2)))
    return PeriodPlane(z.ambient, z.z1, z2)


def j_element(z: PeriodPlane) -> tuple[CliffordElement, Fraction]:
    """The product j = z1 z2 after orthogonalization, and c = j*j < 0.

    c = -(z1,z1)(z2,z2); the normalized complex structure j/sqrt(-c) is
    never materialized since all downstream checks are scale-invariant.
    """
    z = orthogonalize_plane(z)
    g = z.gram2
    j = clifford.multiply(
        clifford.vector_element(z.ambient, z.z1),
        clifford.vector_element(z.ambient, z.z2),
    )
    return j, -g[0][0] * g[1][1]


def _integral_vector(lat: Lattice, v: Sequence) -> Vector:
    vec = as_vector(v)
    if len(vec) != lat.rank:
        raise BadSplitting("splitting vector length does not match lattice rank")
    if any(x.denominator != 1 for x in vec):
        raise BadSplitting("splitting basis vectors must be integral")
    return vec


def polarizer(lat: Lattice, splitting: Splitting) -> CliffordElement:
    """The element a = a1 a2 from the negative definite part of a splitting.

    The positive part must be orthogonal to it and complete a full-rank
    basis; a is required to satisfy a^iota = -a, which for a product of
    two vectors means exactly that the pair is orthogonal.
    """
    plus_basis, minus_basis = splitting
    if len(minus_basis) != 2:
        raise BadSplitting("the negative part of the splitting must have rank 2")
    a1, a2 = (_integral_vector(lat, v) for v in minus_basis)
    g11, g12, g22 = lat.inner(a1, a1), lat.inner(a1, a2), lat.inner(a2, a2)
    if not (g11 < 0 and g11 * g22 - g12 * g12 > 0):
        raise BadSplitting("the negative part of the splitting is not negative definite")
    plus = [_integral_vector(lat, v) for v in plus_basis]
    if len(plus) != lat.rank - 2:
        raise BadSplitting("the positive part must have rank equal to rank(L) - 2")
    for v in plus:
        if lat.inner(v, a1) != 0 or lat.inner(v, a2) != 0:
            raise BadSplitting("the two parts of the splitting are not orthogonal")
    full = [list(v) for v in plus] + [list(a1), list(a2)]
    if linalg.rank(full) != lat.rank:
        raise BadSplitting("splitting vectors do not span L (x) Q")
    a = clifford.multiply(
        clifford.vector_element(lat, a1), clifford.vector_element(lat, a2)
    )
    if clifford.main_involution(a) != -a:
        raise BadPolarizer(
            "a1 a2 is not involution-antisymmetric; use an orthogonal basis "
            "of the negative part"
        )
    return a


def _form(a: CliffordElement, x: CliffordElement, y: CliffordElement) -> Fraction:
    return clifford.trace(
        clifford.multiply(clifford.multiply(a, x), clifford.main_involution(y))
    )


def riemann_form(
    lat: Lattice, splitting: Splitting, x: CliffordElement, y: CliffordElement
) -> Fraction:
    """trace(a x y^iota), bilinear and alternating, Z-valued on C(L)."""
    return _form(polarizer(lat, splitting), x, y)


def ks_report(lat: Lattice, splitting: Splitting, z: PeriodPlane) -> KSReport:
    """Assemble and certify the full polarization package for a plane.

    Builds the 2^rank x 2^rank matrices of <x,y> = trace(a x y^iota) and
    <x j, y> over the monomial basis, then checks exactly: the first is
    antisymmetric, the second symmetric with definite inertia (up to the
    global sign fixed by orientation).
    """
    sig = signature(lat)
    if sig.neg != 2:
        raise UnsupportedSignature(
            f"polarization certification needs signature (n, 2), got {tuple(sig)}"
        )
    a = polarizer(lat, splitting)
    j, c = j_element(z)
    n = 1 << lat.rank
    monos = [clifford.element(lat, {m: 1}) for m in range(n)]
    rev = [clifford.main_involution(e) for e in monos]
    a_e = [clifford.multiply(a, e) for e in monos]
    a_ej = [clifford.multiply(a, clifford.multiply(e, j)) for e in monos]
    alt = [[clifford.trace(clifford.multiply(a_e[s], rev[t])) for t in range(n)]
           for s in range(n)]
    sym = [[clifford.trace(clifford.multiply(a_ej[s], rev[t])) for t in range(n)]
           for s in range(n)]
    alternating_ok = all(
        alt[s][t] == -alt[t][s] for s in range(n) for t in range(s, n)
    )
    symmetric_ok = all(
        sym[s][t] == sym[t][s] for s in range(n) for t in range(s + 1, n)
    )
    inertia = linalg.inertia(sym)
    return KSReport(
        j=j,
        j_square_scalar=c,
        riemann_gram=tuple(tuple(row) for row in sym),
        alternating_ok=alternating_ok,
        symmetric_ok=symmetric_ok,
        definite=inertia in ((n, 0, 0), (0, n, 0)),
        inertia=inertia,
        torus_dim=n,
        complex_dim=n // 2,
    )


def special_endo_test(lat: Lattice, x: Sequence, z: PeriodPlane) -> bool:
    """Whether right multiplication by x commutes with the complex structure.

    Equivalent to x j = j x in C(L (x) Q), which holds exactly when x is
    orthogonal to both plane vectors.
    """
    j, _ = j_element(z)
    xe = clifford.vector_element(lat, x)
    return clifford.multiply(xe, j) == clifford.multiply(j, xe)


def special_endo_basis(lat: Lattice, z: PeriodPlane) -> tuple[Vector, ...]:
    """A saturated integral basis of the vectors orthogonal to the plane."""
    rows = []
    for zv in (z.z1, z.z2):
        row = _clear_denominators(tuple(lat.inner(zv, unit) for unit in _units(lat)))
        rows.append([int(x) for x in row])
    kernel = linalg.integer_kernel(rows, cols=lat.rank)
    return tuple(as_vector(v) for v in kernel)


def _units(lat: Lattice):
    for i in range(lat.rank):
        yield tuple(int(i == j) for j in range(lat.rank))


def special_endo_lattice(lat: Lattice, z: PeriodPlane) -> Lattice:
    """The sublattice of vectors orthogonal to the plane, with its Gram.

    The restriction of the form to the returned basis is an isometry onto
    its image; the result may have rank 0.
    """
    basis = special_endo_basis(lat, z)
    gram = tuple(
        tuple(int(lat.inner(u, v)) for v in basis) for u in basis
    )
    return Lattice(gram)


def default_splitting(lat: Lattice) -> Splitting:
    """An orthogonal plus/minus splitting found by diagonalizing the Gram.

    Needs exactly two negative directions; basis vectors are cleared to
    integer coordinates so they feed straight into polarizer.
    """
    basis, diag = linalg.congruence_diagonalize(lat.gram)
    neg = [i for i, d in enumerate(diag) if d < 0]
    if len(neg) != 2:
        raise UnsupportedSignature(
            "a default splitting needs exactly two negative directions"
        )
    minus = tuple(_clear_denominators(tuple(basis[i])) for i in neg)
    plus = tuple(
        _clear_denominators(tuple(basis[i])) for i, d in enumerate(diag) if d > 0
    )
    return (plus, minus)


def _internal_polarizer(lat: Lattice) -> CliffordElement:
    """An involution-antisymmetric a = a1 a2 found by diagonalizing L."""
    basis, diag = linalg.congruence_diagonalize(lat.gram)
    neg = [i for i, d in enumerate(diag) if d < 0]
    if len(neg) < 2:
        raise UnsupportedSignature(
            "no negative 2-plane available for an internal polarizer"
        )
    a1 = _clear_denominators(tuple(basis[neg[0]]))
    a2 = _clear_denominators(tuple(basis[neg[1]]))
    return clifford.multiply(
        clifford.vector_element(lat, a1), clifford.vector_element(lat, a2)
    )


def commutation_profile(lat: Lattice, x: Sequence) -> CommutationProfile:
    """How right multiplication by a lattice vector sits against delta.

    delta_commutes is the literal check x delta = delta x.  parity_rule_ok
    asks for the rank-parity prediction (commute for odd rank, anticommute
    for even; reliable for orthogonal Gram matrices) together with the
    adjointness trace(a (y x) w^iota) = trace(a y (w x)^iota) on seeded
    random pairs.
    """
    d = clifford.delta(lat)
    xe = clifford.vector_element(lat, x)
    xd = clifford.multiply(xe, d)
    dx = clifford.multiply(d, xe)
    delta_commutes = xd == dx
    rule = delta_commutes if lat.rank % 2 else xd == -dx
    a = _internal_polarizer(lat)
    rng = random.Random(20260823)
    size = 1 << lat.rank
    adjoint_ok = True
    for _ in range(ADJOINT_SAMPLES):
        y = clifford.element(lat, {m: rng.randint(-2, 2) for m in range(size)})
        w = clifford.element(lat, {m: rng.randint(-2, 2) for m in range(size)})
        lhs = _form(a, clifford.multiply(y, xe), w)
        rhs = _form(a, y, clifford.multiply(w, xe))
        if lhs != rhs:
            adjoint_ok = False
            break
    return CommutationProfile(delta_commutes, rule and adjoint_ok)
