"""Exact Clifford algebra of an integral lattice.

Elements live in the 2^rank monomial basis e_S = e_{i_1}...e_{i_k} indexed
by sorted subsets S of the basis (encoded as bitmasks), with rational
coefficients.  Multiplication is generated by v.w + w.v = 2(v,w) and
v.v = (v,v), reduced to normal form one generator at a time; the reduction
table is memoized per Gram matrix, so repeated products on the same lattice
are cheap.  Everything is exact: no floating point enters this module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from . import linalg
from .errors import AmbientMismatch, NotInvertible, RankLimitExceeded
from .lattice import Lattice

INVERSION_RANK_CAP = 12

Terms = tuple[tuple[int, Fraction], ...]


class GradedParity(Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"


@dataclass(frozen=True)
class CliffordElement:
    """A finite rational combination of basis monomials of C(L).

    coeffs maps bitmasks to nonzero rationals; bit i set means the basis
    vector e_{i+1} occurs in the monomial.  Instances are immutable and
    always normalized (zero coefficients dropped, masks sorted).
    """

    ambient: Lattice
    coeffs: Terms

    @cached_property
    def _map(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def coefficient(self, mask: int) -> Fraction:
        return self._map.get(mask, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: CliffordElement) -> CliffordElement:
        _same_ambient(self, other)
        acc = dict(self.coeffs)
        for mask, c in other.coeffs:
            acc[mask] = acc.get(mask, Fraction(0)) + c
        return element(self.ambient, acc)

    def __sub__(self, other: CliffordElement) -> CliffordElement:
        return self + (-other)

    def __neg__(self) -> CliffordElement:
        return CliffordElement(self.ambient, tuple((m, -c) for m, c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> CliffordElement:
        return self.scale(other)

    def scale(self, c) -> CliffordElement:
        c = Fraction(c)
        if c == 0:
            return CliffordElement(self.ambient, ())
        return CliffordElement(self.ambient, tuple((m, c * v) for m, v in self.coeffs))


def element(lat: Lattice, coeffs: Mapping[int, object]) -> CliffordElement:
    """Build a normalized element from a mask -> rational mapping."""
    size = 1 << lat.rank
    acc: dict[int, Fraction] = {}
    for mask, c in coeffs.items():
        if not 0 <= mask < size:
            raise ValueError(f"monomial mask {mask} out of range for rank {lat.rank}")
        c = Fraction(c)
        if c != 0:
            acc[mask] = c
    return CliffordElement(lat, tuple(sorted(acc.items())))


def scalar_element(lat: Lattice, c) -> CliffordElement:
    return element(lat, {0: Fraction(c)})


def vector_element(lat: Lattice, coords: Sequence) -> CliffordElement:
    """The lattice (or rational) vector sum(coords[i] * e_{i+1}) inside C."""
    if len(coords) != lat.rank:
        raise ValueError("coordinate vector length does not match lattice rank")
    return element(lat, {1 << i: Fraction(x) for i, x in enumerate(coords)})


def basis_element(lat: Lattice, index: int) -> CliffordElement:
    """The single basis vector e_index (1-based)."""
    if not 1 <= index <= lat.rank:
        raise ValueError(f"basis index {index} out of range for rank {lat.rank}")
    return element(lat, {1 << (index - 1): Fraction(1)})


def _same_ambient(x: CliffordElement, y: CliffordElement) -> None:
    if x.ambient.gram != y.ambient.gram:
        raise AmbientMismatch("elements live in Clifford algebras of different lattices")


class _GenTable:
    """Memoized reduction of (normal monomial) * (single generator)."""

    def __init__(self, gram: tuple):
        self.gram = gram
        self._memo: dict[tuple[int, int], Terms] = {}
        self._tau: dict[int, Fraction] = {}

    def gen(self, mask: int, j: int) -> Terms:
        key = (mask, j)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if mask == 0:
            out: Terms = ((1 << j, Fraction(1)),)
        else:
            top = mask.bit_length() - 1
            rest = mask ^ (1 << top)
            if top < j:
                out = ((mask | (1 << j), Fraction(1)),)
            elif top == j:
                g = self.gram[j][j]
                out = ((rest, Fraction(g)),) if g else ()
            else:
                # e_rest e_top e_j = 2(e_top,e_j) e_rest - (e_rest e_j) e_top,
                # and every monomial of e_rest e_j has top bit < top.
                acc: dict[int, Fraction] = {}
                g = self.gram[top][j]
                if g:
                    acc[rest] = Fraction(2 * g)
                for m, c in self.gen(rest, j):
                    m2 = m | (1 << top)
                    acc[m2] = acc.get(m2, Fraction(0)) - c
                out = tuple(sorted((m, c) for m, c in acc.items() if c))
        self._memo[key] = out
        return out

    def mono(self, mx: int, my: int) -> Terms:
        """Normal form of e_S * e_T for bitmasks S, T."""
        terms: dict[int, Fraction] = {mx: Fraction(1)}
        j = 0
        while my:
            if my & 1:
                nxt: dict[int, Fraction] = {}
                for m, c in terms.items():
                    for m2, c2 in self.gen(m, j):
                        v = nxt.get(m2, Fraction(0)) + c * c2
                        if v:
                            nxt[m2] = v
                        elif m2 in nxt:
                            del nxt[m2]
                terms = nxt
            my >>= 1
            j += 1
        return tuple(sorted(terms.items()))

    def reversed_mono(self, mask: int) -> Terms:
        """Normal form of the reversed product e_{i_k}...e_{i_1}."""
        terms: dict[int, Fraction] = {0: Fraction(1)}
        for j in reversed(range(mask.bit_length())):
            if not mask >> j & 1:
                continue
            nxt: dict[int, Fraction] = {}
            for m, c in terms.items():
                for m2, c2 in self.gen(m, j):
                    v = nxt.get(m2, Fraction(0)) + c * c2
                    if v:
                        nxt[m2] = v
                    elif m2 in nxt:
                        del nxt[m2]
            terms = nxt
        return tuple(sorted(terms.items()))

    def tau(self, mask: int) -> Fraction:
        """Matrix trace of left multiplication by the monomial e_mask."""
        hit = self._tau.get(mask)
        if hit is None:
            n = 1 << len(self.gram)
            hit = Fraction(0)
            for t in range(n):
                for m, c in self.mono(mask, t):
                    if m == t:
                        hit += c
                        break
            self._tau[mask] = hit
        return hit


@lru_cache(maxsize=32)
def _table(gram: tuple) -> _GenTable:
    return _GenTable(gram)


def multiply(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    """The associative Clifford product in normal form."""
    _same_ambient(x, y)
    table = _table(x.ambient.gram)
    acc: dict[int, Fraction] = {}
    for mx, cx in x.coeffs:
        for my, cy in y.coeffs:
            c = cx * cy
            for m, cm in table.mono(mx, my):
                v = acc.get(m, Fraction(0)) + c * cm
                if v:
                    acc[m] = v
                elif m in acc:
                    del acc[m]
    return CliffordElement(x.ambient, tuple(sorted(acc.items())))


def main_involution(x: CliffordElement) -> CliffordElement:
    """The anti-automorphism fixing every lattice vector.

    On a monomial it reverses the factor order; the reversed word is then
    remultiplied back into normal form, which is what makes this correct
    for non-orthogonal Gram matrices.
    """
    table = _table(x.ambient.gram)
    acc: dict[int, Fraction] = {}
    for mask, c in x.coeffs:
        for m, cm in table.reversed_mono(mask):
            v = acc.get(m, Fraction(0)) + c * cm
            if v:
                acc[m] = v
            elif m in acc:
                del acc[m]
    return CliffordElement(x.ambient, tuple(sorted(acc.items())))


def parity(x: CliffordElement) -> GradedParity:
    """Grading of x under C = C+ (+) C-; the zero element counts as even."""
    seen = {bin(mask).count("1") & 1 for mask, _ in x.coeffs}
    if len(seen) == 2:
        return GradedParity.MIXED
    if seen == {1}:
        return GradedParity.ODD
    return GradedParity.EVEN


def delta(lat: Lattice) -> CliffordElement:
    """The ordered product e_1 e_2 ... e_rank of the basis vectors.

    In the sorted-subset normal form this is exactly the top monomial.
    """
    return element(lat, {(1 << lat.rank) - 1: Fraction(1)})


def scalar_part(x: CliffordElement) -> Fraction:
    return x.coefficient(0)


def as_scalar(x: CliffordElement) -> Optional[Fraction]:
    """The rational c with x = c*1, or None if x is not scalar."""
    if not x.coeffs:
        return Fraction(0)
    if len(x.coeffs) == 1 and x.coeffs[0][0] == 0:
        return x.coeffs[0][1]
    return None


def trace(x: CliffordElement) -> Fraction:
    """Matrix trace of left multiplication by x.

    For an orthogonal Gram matrix every nonempty monomial has traceless
    left multiplication and this reduces to 2^rank times the coefficient
    of the empty monomial.  For a non-orthogonal Gram the two differ
    (on [[2,1],[1,2]] the monomial e1e2 has trace 4, not 0); the honest
    matrix trace is the basis-independent choice and is what makes
    trace(xy) = trace(yx) hold unconditionally.
    """
    table = _table(x.ambient.gram)
    return sum((c * table.tau(mask) for mask, c in x.coeffs), Fraction(0))


def _left_mul_matrix(x: CliffordElement) -> list[list[Fraction]]:
    n = 1 << x.ambient.rank
    table = _table(x.ambient.gram)
    zero = Fraction(0)
    cols = [[zero] * n for _ in range(n)]
    for t in range(n):
        col = cols[t]
        for mx, cx in x.coeffs:
            for m, cm in table.mono(mx, t):
                col[m] += cx * cm
    return [[cols[t][s] for t in range(n)] for s in range(n)]


def invert(x: CliffordElement) -> CliffordElement:
    """Two-sided inverse, by solving the 2^rank left-multiplication system."""
    rank = x.ambient.rank
    if rank > INVERSION_RANK_CAP:
        raise RankLimitExceeded(
            f"inversion solves a dense 2^{rank} system; rank is capped at "
            f"{INVERSION_RANK_CAP}"
        )
    c = as_scalar(x)
    if c is not None:
        if c == 0:
            raise NotInvertible("the zero element has no inverse")
        return scalar_element(x.ambient, 1 / c)
    mat = _left_mul_matrix(x)
    rhs = [Fraction(0)] * (1 << rank)
    rhs[0] = Fraction(1)
    sol = linalg.solve(mat, rhs)
    if sol is None:
        raise NotInvertible("left multiplication by this element is singular")
    return element(x.ambient, {m: c for m, c in enumerate(sol)})


def spinor_norm(g: CliffordElement) -> CliffordElement:
    """g times its main involution; a scalar when g lies in GSpin."""
    return multiply(g, main_involution(g))


def is_gspin(g: CliffordElement) -> bool:
    """Whether conjugation by g maps every basis vector back into V.

    Requires g even and invertible; odd or mixed parity fails the test
    outright, a genuinely singular g raises NotInvertible.
    """
    if parity(g) is not GradedParity.EVEN:
        return False
    g_inv = invert(g)
    lat = g.ambient
    singletons = {1 << i for i in range(lat.rank)}
    for i in range(lat.rank):
        conj = multiply(multiply(g, basis_element(lat, i + 1)), g_inv)
        if any(mask not in singletons for mask, _ in conj.coeffs):
            return False
    return True


_TERM_RE = re.compile(
    r"(?P<sign>[+-]+)?(?P<coeff>\d+(?:/\d+)?)?(?P<star>\*)?(?P<mono>e\{[\d,]*\})?"
)


def format_element(x: CliffordElement) -> str:
    """Render as a sum of coeff*e{i,j,...} terms, masks ascending."""
    if not x.coeffs:
        return "0*e{}"
    out = ""
    for mask, c in x.coeffs:
        idx = [str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1]
        term = f"{abs(c)}*e{{{','.join(idx)}}}"
        if not out:
            out = ("-" if c < 0 else "") + term
        else:
            out += (" - " if c < 0 else " + ") + term
    return out


def parse_element(lat: Lattice, text: str) -> CliffordElement:
    """Parse the format produced by format_element.

    Accepts optional whitespace, +- separators, bare rationals (scalar
    terms), and bare monomials (coefficient 1).
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty Clifford element")
    acc: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if m is None or m.end() == pos or (m.group("coeff") is None and m.group("mono") is None):
            raise ValueError(f"bad Clifford element syntax near {s[pos:pos + 12]!r}")
        if pos > 0 and m.group("sign") is None:
            raise ValueError("Clifford element terms must be joined by + or -")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        if m.group("sign") and m.group("sign").count("-") % 2:
            coeff = -coeff
        mask = 0
        if m.group("mono"):
            body = m.group("mono")[2:-1]
            for part in filter(None, body.split(",")):
                i = int(part)
                if not 1 <= i <= lat.rank:
                    raise ValueError(f"basis index {i} out of range for rank {lat.rank}")
                bit = 1 << (i - 1)
                if mask & bit:
                    raise ValueError(f"repeated basis index {i} in monomial")
                mask |= bit
        acc[mask] = acc.get(mask, Fraction(0)) + coeff
        pos = m.end()
    return element(lat, acc)
