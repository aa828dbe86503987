"""Totally real fields with exact arithmetic and certified embeddings.

A field is a monic squarefree integer polynomial all of whose roots are
real (Sturm-verified), together with an integral basis given in the power
basis of a root.  Element arithmetic is polynomial arithmetic mod f, so it
is exact; the real embeddings are isolating rational intervals around the
roots, kept in ascending order and refined on demand when a sign has to be
decided.  Reducible squarefree polynomials are tolerated (the arithmetic
is then that of a product of fields), which keeps degree-1 and split test
cases cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from . import linalg
from .errors import NotAnOrder, PrecisionExhausted

Poly = list[Fraction]

REFINEMENT_CAP = 128


def _trim(p: Sequence) -> Poly:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    p = list(p)
    lead = q[-1]
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    while len(p) >= len(q):
        f = p[-1] / lead
        shift = len(p) - len(q)
        quot[shift] = f
        for i, c in enumerate(q):
            p[shift + i] -= f * c
        p = _trim(p)
        if not p:
            break
    return _trim(quot), p


def _poly_eval(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_deriv(p: Poly) -> Poly:
    return _trim([i * c for i, c in enumerate(p)][1:])


def _poly_gcd(p: Poly, q: Poly) -> Poly:
    a, b = _trim(p), _trim(q)
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _sturm_chain(f: Poly) -> list[Poly]:
    chain = [_trim(f), _poly_deriv(f)]
    while chain[-1]:
        rem = _poly_divmod(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append([-c for c in rem])
    return chain


def _sign_changes(chain: list[Poly], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _poly_eval(p, x)
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_roots(chain: list[Poly], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in the half-open interval (a, b]."""
    return _sign_changes(chain, a) - _sign_changes(chain, b)


def _interval_eval(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of p over [lo, hi] by interval Horner evaluation."""
    alo = ahi = Fraction(0)
    for c in reversed(p):
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + c, max(cands) + c
    return alo, ahi


@dataclass(frozen=True)
class FieldElement:
    """An element of F in power-basis coordinates (exact rationals)."""

    field: TotallyRealField
    power: tuple[Fraction, ...]

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.power, other.power)))

    def __sub__(self, other: FieldElement) -> FieldElement:
        return self + (-other)

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, tuple(-a for a in self.power))

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            self._check(other)
            prod = _poly_mul(list(self.power), list(other.power))
            return self.field.from_power(_poly_divmod(prod, self.field._poly)[1])
        c = Fraction(other)
        return FieldElement(self.field, tuple(c * a for a in self.power))

    def __rmul__(self, other) -> FieldElement:
        return self * other

    @property
    def is_zero(self) -> bool:
        return not any(self.power)

    def _check(self, other: FieldElement) -> None:
        if self.field.poly != other.field.poly:
            raise ValueError("field elements belong to different fields")


@dataclass(frozen=True)
class TotallyRealField:
    """Q[x]/(f) for a monic squarefree totally real integer polynomial f.

    basis rows are the integral basis in power-basis coordinates; the
    default is the power basis itself, which is always an order.
    """

    poly: tuple[int, ...]
    basis: tuple[tuple[Fraction, ...], ...] = dataclass_field(default=())

    def __post_init__(self):
        if len(self.poly) < 2:
            raise ValueError("the defining polynomial must have degree at least 1")
        if any(not isinstance(c, int) or isinstance(c, bool) for c in self.poly):
            raise ValueError("the defining polynomial must have integer coefficients")
        if self.poly[-1] != 1:
            raise ValueError("the defining polynomial must be monic")
        f = _trim(self.poly)
        if len(_poly_gcd(f, _poly_deriv(f))) != 1:
            raise ValueError("the defining polynomial must be squarefree")
        if not self.basis:
            d = self.degree
            rows = tuple(
                tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)
            )
            object.__setattr__(self, "basis", rows)
        else:
            object.__setattr__(
                self,
                "basis",
                tuple(tuple(Fraction(c) for c in row) for row in self.basis),
            )
        chain = _sturm_chain(f)
        bound = Fraction(1 + max(abs(c) for c in self.poly))
        if _count_roots(chain, -bound, bound) != self.degree:
            raise ValueError("the defining polynomial is not totally real")
        self._validate_order()

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    @cached_property
    def _poly(self) -> Poly:
        return _trim(self.poly)

    @cached_property
    def _chain(self) -> list[Poly]:
        return _sturm_chain(self._poly)

    @cached_property
    def _intervals(self) -> list[list[Fraction]]:
        """Current isolating intervals, ascending; refined in place."""
        bound = Fraction(1 + max(abs(c) for c in self.poly))
        found: list[list[Fraction]] = []
        stack = [(-bound, bound)]
        while stack:
            a, b = stack.pop()
            k = _count_roots(self._chain, a, b)
            if k == 0:
                continue
            if k == 1:
                if _poly_eval(self._poly, b) == 0:
                    found.append([b, b])
                else:
                    found.append([a, b])
                continue
            m = (a + b) / 2
            if _poly_eval(self._poly, m) == 0:
                found.append([m, m])
                delta = (b - a) / 4
                while _count_roots(self._chain, m - delta, m + delta) != 1:
                    delta /= 2
                stack.append((a, m - delta))
                stack.append((m + delta, b))
            else:
                stack.append((a, m))
                stack.append((m, b))
        found.sort(key=lambda iv: iv[0])
        return found

    def _validate_order(self) -> None:
        d = self.degree
        rows = [list(r) for r in self.basis]
        if len(rows) != d or any(len(r) != d for r in rows):
            raise NotAnOrder("the integral basis must be square of size degree")
        if linalg.rank(rows) != d:
            raise NotAnOrder("the integral basis does not span the field")
        if self._to_integral(tuple([Fraction(1)] + [Fraction(0)] * (d - 1))) is None:
            raise NotAnOrder("1 is not an integer combination of the basis")
        for k in range(d):
            for l in range(k, d):
                prod = _poly_divmod(
                    _poly_mul(list(self.basis[k]), list(self.basis[l])), self._poly
                )[1]
                prod = tuple(prod) + (Fraction(0),) * (d - len(prod))
                if self._to_integral(prod) is None:
                    raise NotAnOrder(
                        "the integral basis is not closed under multiplication"
                    )

    def _to_integral(self, power: tuple[Fraction, ...]) -> Optional[tuple[int, ...]]:
        """Integer coordinates against the basis, or None."""
        coords = self.integral_coords(power)
        if any(c.denominator != 1 for c in coords):
            return None
        return tuple(int(c) for c in coords)

    def integral_coords(self, power: Sequence) -> tuple[Fraction, ...]:
        """Rational coordinates of a power-basis vector against the basis."""
        mat = [[self.basis[k][j] for k in range(self.degree)] for j in range(self.degree)]
        sol = linalg.solve(mat, [Fraction(c) for c in power])
        assert sol is not None
        return tuple(sol)

    def from_power(self, coords: Sequence) -> FieldElement:
        v = _trim(coords)
        if len(v) > self.degree:
            v = _poly_divmod(v, self._poly)[1]
        padded = tuple(v) + (Fraction(0),) * (self.degree - len(v))
        return FieldElement(self, padded)

    def element(self, coords: Sequence) -> FieldElement:
        """The element with the given coordinates against the integral basis."""
        if len(coords) != self.degree:
            raise ValueError("coordinate vector length does not match the degree")
        power = [Fraction(0)] * self.degree
        for c, row in zip(coords, self.basis):
            c = Fraction(c)
            for j in range(self.degree):
                power[j] += c * row[j]
        return FieldElement(self, tuple(power))

    def zero(self) -> FieldElement:
        return self.from_power([])

    def one(self) -> FieldElement:
        return self.from_power([1])

    def gen(self) -> FieldElement:
        return self.from_power([0, 1])

    def trace(self, x: FieldElement) -> Fraction:
        """Trace of the multiplication-by-x matrix in the power basis."""
        total = Fraction(0)
        for k in range(self.degree):
            shifted = [Fraction(0)] * k + list(x.power)
            red = _poly_divmod(shifted, self._poly)[1]
            if len(red) > k:
                total += red[k]
        return total

    def invert(self, x: FieldElement) -> FieldElement:
        """Multiplicative inverse; ZeroDivisionError for zero divisors."""
        d = self.degree
        cols = []
        for k in range(d):
            shifted = [Fraction(0)] * k + list(x.power)
            red = _poly_divmod(shifted, self._poly)[1]
            cols.append(tuple(red) + (Fraction(0),) * (d - len(red)))
        mat = [[cols[k][j] for k in range(d)] for j in range(d)]
        rhs = [Fraction(int(j == 0)) for j in range(d)]
        sol = linalg.solve(mat, rhs)
        if sol is None:
            raise ZeroDivisionError("element is zero or a zero divisor")
        inv = self.from_power(sol)
        if not (inv * x - self.one()).is_zero:
            raise ZeroDivisionError("element is zero or a zero divisor")
        return inv

    def embeddings(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Current isolating intervals for the real roots, ascending."""
        return tuple((iv[0], iv[1]) for iv in self._intervals)

    def _refine(self, i: int) -> None:
        iv = self._intervals[i]
        lo, hi = iv
        if lo == hi:
            return
        m = (lo + hi) / 2
        if _poly_eval(self._poly, m) == 0:
            iv[0] = iv[1] = m
        elif _count_roots(self._chain, lo, m) == 1:
            iv[1] = m
        else:
            iv[0] = m

    def sign_at(self, i: int, x: FieldElement) -> int:
        """Certified sign of x under the i-th embedding (-1, 0, or 1)."""
        g = _trim(x.power)
        if not g:
            return 0
        h = _poly_gcd(g, self._poly)
        if len(h) > 1 and self._root_of(i, h):
            return 0
        for _ in range(REFINEMENT_CAP):
            lo, hi = self._intervals[i]
            vlo, vhi = _interval_eval(g, lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            self._refine(i)
        raise PrecisionExhausted(
            f"sign of embedding {i} undecided after {REFINEMENT_CAP} refinements"
        )

    def _root_of(self, i: int, h: Poly) -> bool:
        lo, hi = self._intervals[i]
        if lo == hi:
            return _poly_eval(h, lo) == 0
        chain = _sturm_chain(h)
        return _count_roots(chain, lo, hi) >= 1

    def to_dict(self) -> dict:
        return {
            "poly": list(self.poly),
            "integral_basis": [[str(c) for c in row] for row in self.basis],
        }

    @classmethod
    def from_dict(cls, data: dict) -> TotallyRealField:
        if not isinstance(data, dict) or "poly" not in data:
            raise ValueError("field JSON must be an object with a 'poly' list")
        poly = data["poly"]
        if not isinstance(poly, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in poly
        ):
            raise ValueError("'poly' must be a list of integers")
        basis = data.get("integral_basis")
        if basis is None:
            return cls(tuple(poly))
        if not isinstance(basis, list) or not all(isinstance(r, list) for r in basis):
            raise ValueError("'integral_basis' must be a list of coordinate rows")
        rows = tuple(tuple(Fraction(str(c)) for c in row) for row in basis)
        return cls(tuple(poly), rows)

    @classmethod
    def rationals(cls) -> TotallyRealField:
        return cls((0, 1))

    @classmethod
    def quadratic(cls, n: int) -> TotallyRealField:
        """Q(sqrt(n)) for a positive nonsquare integer n (power basis)."""
        if n <= 0:
            raise ValueError("quadratic fields here must be real: n > 0")
        return cls((-n, 0, 1))
