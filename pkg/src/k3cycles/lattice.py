"""Integral quadratic lattices given by exact Gram matrices.

A lattice here is Z^n equipped with the symmetric integer matrix G of a
nondegenerate bilinear form (degeneracy is tolerated at construction and
rejected by the operations that cannot handle it).  All invariants are
computed exactly: signatures by rational congruence diagonalization,
discriminant groups by Smith normal form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, NamedTuple, Optional, Sequence

from . import linalg
from .errors import (
    DegenerateLattice,
    InvalidScale,
    NotInDualLattice,
    UnsupportedSignature,
)

Vector = tuple[Fraction, ...]


def as_vector(v: Sequence) -> Vector:
    return tuple(Fraction(x) for x in v)


class Signature(NamedTuple):
    pos: int
    neg: int


@dataclass(frozen=True)
class Lattice:
    """Free Z-module with an integer Gram matrix."""

    gram: tuple[tuple[int, ...], ...]
    name: Optional[str] = None

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(g)
        for row in g:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        d = linalg.det(self.gram)
        assert d.denominator == 1
        return int(d)

    @property
    def even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        xv, yv = as_vector(x), as_vector(y)
        if len(xv) != self.rank or len(yv) != self.rank:
            raise ValueError("vector length does not match lattice rank")
        return sum(
            (xv[i] * self.gram[i][j] * yv[j]
             for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )

    def norm(self, x: Sequence) -> Fraction:
        return self.inner(x, x)

    def in_dual(self, h: Sequence) -> bool:
        hv = as_vector(h)
        if len(hv) != self.rank:
            raise ValueError("vector length does not match lattice rank")
        for row in self.gram:
            if sum(Fraction(row[j]) * hv[j] for j in range(self.rank)).denominator != 1:
                return False
        return True

    def to_dict(self) -> dict:
        d = {"gram": [list(row) for row in self.gram]}
        if self.name is not None:
            d["name"] = self.name
        return d

    @classmethod
    def from_dict(cls, obj: dict) -> "Lattice":
        if not isinstance(obj, dict) or "gram" not in obj:
            raise ValueError("lattice object must contain a 'gram' matrix")
        gram = obj["gram"]
        if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
            raise ValueError("'gram' must be a list of integer rows")
        for row in gram:
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise ValueError("'gram' entries must be integers")
        name = obj.get("name")
        if name is not None and not isinstance(name, str):
            raise ValueError("'name' must be a string")
        return cls(gram=tuple(tuple(r) for r in gram), name=name)


@dataclass(frozen=True)
class LatticeInfo:
    even: bool
    unimodular: bool
    det: int


@dataclass(frozen=True)
class DiscriminantGroup:
    """L^vee / L presented by cyclic invariant factors.

    generators[j] is a rational coordinate vector of order
    invariant_factors[j]; the group order is the product, which equals
    |det L|.
    """

    invariant_factors: tuple[int, ...]
    generators: tuple[Vector, ...]
    order: int
    rank: int

    def elements(self) -> Iterator[Vector]:
        """All cosets, each reduced to coordinates in [0, 1)."""
        if not self.invariant_factors:
            yield tuple(Fraction(0) for _ in range(self.rank))
            return
        n = len(self.generators[0])
        for ks in itertools.product(*(range(d) for d in self.invariant_factors)):
            coords = [Fraction(0)] * n
            for k, g in zip(ks, self.generators):
                for i in range(n):
                    coords[i] += k * g[i]
            yield tuple(c - c.__floor__() for c in coords)


@dataclass(frozen=True)
class EmbeddingReport:
    """Tri-state answers; None means the rank criterion does not decide."""

    occurs: Optional[bool]
    unique: Optional[bool]


def signature(lat: Lattice) -> Signature:
    """Exact signature (p, q); raises DegenerateLattice when det = 0."""
    p, q, z = linalg.inertia(lat.gram)
    if z:
        raise DegenerateLattice("Gram matrix is degenerate")
    return Signature(p, q)


def lattice_info(lat: Lattice) -> LatticeInfo:
    d = lat.det
    return LatticeInfo(even=lat.even, unimodular=abs(d) == 1, det=d)


def discriminant_group(lat: Lattice) -> DiscriminantGroup:
    if lat.rank == 0:
        return DiscriminantGroup((), (), 1, 0)
    if lat.det == 0:
        raise DegenerateLattice("degenerate lattice has no discriminant group")
    d, _u, v = linalg.smith_normal_form([list(row) for row in lat.gram])
    n = lat.rank
    factors = []
    gens = []
    for j in range(n):
        dj = d[j][j]
        if dj > 1:
            factors.append(dj)
            gens.append(tuple(Fraction(v[r][j], dj) for r in range(n)))
    order = 1
    for f in factors:
        order *= f
    assert order == abs(lat.det)
    return DiscriminantGroup(tuple(factors), tuple(gens), order, n)


def direct_sum(*lattices: Lattice) -> Lattice:
    n = sum(l.rank for l in lattices)
    gram = [[0] * n for _ in range(n)]
    off = 0
    for lat in lattices:
        for i in range(lat.rank):
            for j in range(lat.rank):
                gram[off + i][off + j] = lat.gram[i][j]
        off += lat.rank
    return Lattice(tuple(tuple(row) for row in gram))


def rescale(lat: Lattice, c: int) -> Lattice:
    """L(c): same module, form multiplied by the nonzero integer c."""
    if not isinstance(c, int) or isinstance(c, bool) or c == 0:
        raise InvalidScale("scale factor must be a nonzero integer")
    return Lattice(tuple(tuple(c * x for x in row) for row in lat.gram))


def coset_norm(lat: Lattice, h: Sequence) -> Fraction:
    """(h, h) reduced mod 2Z into [0, 2); h must lie in the dual lattice."""
    if not lat.in_dual(h):
        raise NotInDualLattice("vector does not pair integrally with the lattice")
    q = lat.norm(h)
    return q - 2 * ((q / 2).__floor__())


def nikulin_embeddable(lat: Lattice) -> EmbeddingReport:
    """Primitive-embedding rank criteria into the K3 lattice.

    Signature (2, n): occurs whenever n <= 9, uniquely when n < 9.
    Signature (1, n'): occurs whenever n' <= 10, uniquely when n' < 10.
    Outside those ranges the criteria are silent and both answers are None.
    """
    if not lat.even:
        raise UnsupportedSignature("criterion applies to even lattices only")
    p, q = signature(lat)
    if p == 2:
        occurs = True if q <= 9 else None
        unique = True if q < 9 else None
    elif p == 1:
        occurs = True if q <= 10 else None
        unique = True if q < 10 else None
    else:
        raise UnsupportedSignature(
            "criterion applies to signatures (2, n) and (1, n') only")
    return EmbeddingReport(occurs=occurs, unique=unique)


def hyperbolic_plane() -> Lattice:
    return Lattice(((0, 1), (1, 0)), name="H")


def root_a1() -> Lattice:
    return Lattice(((2,),), name="A1")


_E8_GRAM = (
    (2, 0, -1, 0, 0, 0, 0, 0),
    (0, 2, 0, -1, 0, 0, 0, 0),
    (-1, 0, 2, -1, 0, 0, 0, 0),
    (0, -1, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, 0, 0, -1, 2),
)


def e8_lattice(sign: int = 1) -> Lattice:
    """E8 root lattice Gram (simple-root basis); sign=-1 gives E8(-1)."""
    if sign == 1:
        return Lattice(_E8_GRAM, name="E8")
    if sign == -1:
        return Lattice(
            tuple(tuple(-x for x in row) for row in _E8_GRAM), name="E8(-1)")
    raise InvalidScale("sign must be +1 or -1")


def k3_lattice() -> Lattice:
    """H^3 + E8(-1)^2: even unimodular of signature (3, 19)."""
    h = hyperbolic_plane()
    e8m = e8_lattice(-1)
    summed = direct_sum(h, h, h, e8m, e8m)
    return Lattice(summed.gram, name="K3")


def builtin_lattice(name: str) -> Lattice:
    table = {
        "H": hyperbolic_plane,
        "A1": root_a1,
        "E8": e8_lattice,
        "E8(-1)": lambda: e8_lattice(-1),
        "K3": k3_lattice,
    }
    if name not in table:
        raise ValueError(f"unknown builtin lattice {name!r}; have {sorted(table)}")
    return table[name]()


BUILTIN_NAMES = ("H", "A1", "E8", "E8(-1)", "K3")
