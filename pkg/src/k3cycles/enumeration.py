"""Exact lattice point enumeration for positive definite Gram matrices.

The engine is a rational Fincke-Pohst recursion: the form is split as
Q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2 by an exact LDL
decomposition, coordinates are chosen from the last to the first, and the
admissible integer window at each level is derived from exact rational
square-root floors, never from floating point.  Coset shifts are allowed,
so norms and targets may be non-integral rationals.

Counting paths exploit the x -> -x symmetry when the coset is trivial.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import linalg
from .errors import (
    EnumerationLimitExceeded,
    IndefiniteLattice,
    NegativeTarget,
)
from .lattice import Lattice, Vector, as_vector

ENUM_LIMIT_ENV = "K3CYCLES_ENUM_LIMIT"
_DEFAULT_LIMIT = 10_000_000


def _enum_limit() -> int:
    raw = os.environ.get(ENUM_LIMIT_ENV, "")
    try:
        v = int(raw)
    except ValueError:
        return _DEFAULT_LIMIT
    return v if v > 0 else _DEFAULT_LIMIT


def _ldl(gram) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Split Q(x) = sum d_i (x_i + sum_{j>i} u_ij x_j)^2; needs Q > 0."""
    n = len(gram)
    a = linalg.frac_matrix(gram)
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        piv = a[i][i]
        if piv <= 0:
            raise IndefiniteLattice("Gram matrix is not positive definite")
        d[i] = piv
        for j in range(i + 1, n):
            u[i][j] = a[i][j] / piv
        for r in range(i + 1, n):
            if a[r][i] != 0:
                f = a[r][i] / piv
                for c in range(i + 1, n):
                    a[r][c] -= f * a[i][c]
    return d, u


def _sqrt_floor(q: Fraction) -> int:
    return math.isqrt(q.numerator * q.denominator) // q.denominator


def _floor_plus_sqrt(beta: Fraction, rad: Fraction) -> int:
    """floor(beta + sqrt(rad)), exact."""
    s = beta.__floor__() + _sqrt_floor(rad)
    for m in (s + 1, s):
        diff = m - beta
        if diff <= 0 or diff * diff <= rad:
            return m
    return s  # s always qualifies; kept for clarity


def _ceil_minus_sqrt(beta: Fraction, rad: Fraction) -> int:
    """ceil(beta - sqrt(rad)), exact."""
    t = beta.__ceil__() - _sqrt_floor(rad) - 1
    for m in (t, t + 1):
        diff = beta - m
        if diff <= 0 or diff * diff <= rad:
            return m
    return t + 1


def _window(alpha: Fraction, rad: Fraction) -> tuple[int, int]:
    """Integers m with (m + alpha)^2 <= rad, as an inclusive range."""
    if rad < 0:
        return 1, 0
    beta = -alpha
    return _ceil_minus_sqrt(beta, rad), _floor_plus_sqrt(beta, rad)


def _frac_part(v: Sequence[Fraction]) -> list[Fraction]:
    return [x - x.__floor__() for x in v]


def _sqrt_exact(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit: int):
        self.left = limit

    def spend(self, k: int = 1):
        self.left -= k
        if self.left < 0:
            raise EnumerationLimitExceeded(
                f"enumeration exceeded the {ENUM_LIMIT_ENV} budget")


def _sweep(
    gram,
    shift: Sequence[Fraction],
    bound: Fraction,
    visit: Callable[[list[Fraction], Fraction, int], None],
    symmetric: bool,
) -> None:
    """Call visit(coords, norm, weight) for x in Z^n + shift, Q(x) <= bound.

    With symmetric=True (only valid for a trivial coset) each x is visited
    once per +-pair with weight 2, and the zero vector with weight 1.
    """
    n = len(gram)
    if n == 0:
        if bound >= 0:
            visit([], Fraction(0), 1)
        return
    d, u = _ldl(gram)
    shift = [Fraction(s) for s in shift]
    budget = _Budget(_enum_limit())
    xs: list[Fraction] = [Fraction(0)] * n

    def rec(i: int, used: Fraction, zero_prefix: bool):
        if i < 0:
            budget.spend()
            visit(xs, used, 2 if (symmetric and not zero_prefix) else 1)
            return
        c = Fraction(0)
        ui = u[i]
        for j in range(i + 1, n):
            if ui[j] != 0 and xs[j] != 0:
                c += ui[j] * xs[j]
        alpha = shift[i] + c
        lo, hi = _window(alpha, (bound - used) / d[i])
        if symmetric and zero_prefix and lo < 0:
            lo = 0
        for m in range(lo, hi + 1):
            x = m + shift[i]
            xs[i] = x
            term = d[i] * (x + c) * (x + c)
            rec(i - 1, used + term, zero_prefix and x == 0)
        xs[i] = Fraction(0)

    rec(n - 1, Fraction(0), True)


def _sweep_eq(
    gram,
    shift: Sequence[Fraction],
    target: Fraction,
    visit: Callable[[list[Fraction], int], None],
    symmetric: bool,
) -> None:
    """Like _sweep but with Q(x) = target exactly; the innermost level is
    solved as a quadratic equation instead of scanned."""
    n = len(gram)
    if n == 0:
        if target == 0:
            visit([], 1)
        return
    if target < 0:
        return
    d, u = _ldl(gram)
    shift = [Fraction(s) for s in shift]
    budget = _Budget(_enum_limit())
    xs: list[Fraction] = [Fraction(0)] * n

    def base(c: Fraction, remaining: Fraction, zero_prefix: bool):
        # d0 (x0 + c)^2 = remaining with x0 in Z + shift0
        root = _sqrt_exact(remaining / d[0])
        if root is None:
            return
        vals = (root,) if root == 0 else (root, -root)
        for r in vals:
            x = r - c
            if (x - shift[0]).denominator != 1:
                continue
            if symmetric and zero_prefix and x < 0:
                continue
            budget.spend()
            xs[0] = x
            visit(xs, 2 if (symmetric and not (zero_prefix and x == 0)) else 1)
        xs[0] = Fraction(0)

    def rec(i: int, used: Fraction, zero_prefix: bool):
        c = Fraction(0)
        ui = u[i]
        for j in range(i + 1, n):
            if ui[j] != 0 and xs[j] != 0:
                c += ui[j] * xs[j]
        if i == 0:
            base(c, target - used, zero_prefix)
            return
        alpha = shift[i] + c
        lo, hi = _window(alpha, (target - used) / d[i])
        if symmetric and zero_prefix and lo < 0:
            lo = 0
        for m in range(lo, hi + 1):
            x = m + shift[i]
            xs[i] = x
            term = d[i] * (x + c) * (x + c)
            rec(i - 1, used + term, zero_prefix and x == 0)
        xs[i] = Fraction(0)

    rec(n - 1, Fraction(0), True)


def _normalized_shift(lat: Lattice, h: Optional[Sequence]) -> list[Fraction]:
    if h is None:
        return [Fraction(0)] * lat.rank
    hv = as_vector(h)
    if len(hv) != lat.rank:
        raise ValueError("coset vector length does not match lattice rank")
    return _frac_part(hv)


def _check_posdef(lat: Lattice) -> None:
    _ldl(lat.gram)


def enumerate_vectors(lat: Lattice, t, h: Optional[Sequence] = None) -> list[Vector]:
    """All x in L + h with (x, x) = t, in lexicographic coordinate order."""
    t = Fraction(t)
    shift = _normalized_shift(lat, h)
    _check_posdef(lat)
    if t < 0:
        return []
    out: list[Vector] = []
    _sweep_eq(lat.gram, shift, t, lambda xs, w: out.append(tuple(xs)), False)
    out.sort()
    return out


def rep_count(lat: Lattice, t, h: Optional[Sequence] = None) -> int:
    """Number of x in L + h with (x, x) = t; zero for negative t."""
    t = Fraction(t)
    shift = _normalized_shift(lat, h)
    _check_posdef(lat)
    if t < 0:
        return 0
    symmetric = all(s == 0 for s in shift)
    total = 0

    def visit(_xs, w):
        nonlocal total
        total += w

    _sweep_eq(lat.gram, shift, t, visit, symmetric)
    return total


def norm_histogram(lat: Lattice, h: Optional[Sequence], bound) -> dict[Fraction, int]:
    """Counts of every norm value <= bound in L + h, keyed exactly."""
    bound = Fraction(bound)
    shift = _normalized_shift(lat, h)
    _check_posdef(lat)
    symmetric = all(s == 0 for s in shift)
    counts: dict[Fraction, int] = {}

    def visit(_xs, norm, w):
        counts[norm] = counts.get(norm, 0) + w

    _sweep(lat.gram, shift, bound, visit, symmetric)
    return counts


def _gram_rows(lat: Lattice) -> list[list[Fraction]]:
    return linalg.frac_matrix(lat.gram)


def _validate_target(target) -> tuple[tuple[int, ...], ...]:
    rows = tuple(tuple(int(x) for x in row) for row in target)
    r = len(rows)
    for row in rows:
        if len(row) != r:
            raise ValueError("Gram target must be square")
    for i in range(r):
        for j in range(r):
            if rows[i][j] != rows[j][i]:
                raise ValueError("Gram target must be symmetric")
    for i in range(r):
        if rows[i][i] < 0:
            raise NegativeTarget("Gram target has a negative diagonal entry")
    return rows


def target_rank(target) -> int:
    rows = _validate_target(target)
    p, q, z = linalg.inertia(rows)
    return p + q


def _target_is_psd(rows) -> bool:
    _p, q, _z = linalg.inertia(rows)
    return q == 0


def _tuple_cosets(lat: Lattice, r: int, cosets: Optional[Sequence]) -> list[list[Fraction]]:
    if cosets is None:
        return [[Fraction(0)] * lat.rank for _ in range(r)]
    if len(cosets) != r:
        raise ValueError("need one coset vector per tuple slot")
    return [_normalized_shift(lat, h) for h in cosets]


def _tuple_search(
    lat: Lattice,
    target: Sequence[Sequence[int]],
    cosets: Optional[Sequence],
    leaf: Callable[[list[Vector]], None],
) -> None:
    """Backtracking over tuples (x_1..x_r) with prescribed Gram matrix.

    Slot k is reduced to a norm-equation in the affine sublattice cut out
    by the inner-product constraints against the already chosen vectors,
    so each level reuses the rank-reduced Fincke-Pohst engine.
    """
    rows = _validate_target(target)
    if not _target_is_psd(rows):
        return
    _check_posdef(lat)
    r = len(rows)
    n = lat.rank
    shifts = _tuple_cosets(lat, r, cosets)
    G = _gram_rows(lat)

    def rec(chosen: list[Vector]):
        k = len(chosen)
        if k == r:
            leaf(chosen)
            return
        t_k = Fraction(rows[k][k])
        shift = shifts[k]
        if k == 0:
            def visit(xs, _w):
                rec(chosen + [tuple(xs)])
            _sweep_eq(lat.gram, shift, t_k, visit, False)
            return
        # integer model of the constraints (x, chosen_i) = T[i][k]
        a_rows: list[list[int]] = []
        rhs: list[int] = []
        for i, ci in enumerate(chosen):
            w = [sum(G[a][b] * ci[a] for a in range(n)) for b in range(n)]
            b = Fraction(rows[i][k]) - sum(w[j] * shift[j] for j in range(n))
            den = b.denominator
            for x in w:
                den = den * x.denominator // math.gcd(den, x.denominator)
            a_rows.append([int(x * den) for x in w])
            rhs.append(int(b * den))
        vp = linalg.solve_integer(a_rows, rhs)
        if vp is None:
            return
        kernel = linalg.integer_kernel(a_rows, cols=n)
        x0 = [shift[j] + vp[j] for j in range(n)]
        if not kernel:
            if lat.norm(x0) == t_k:
                rec(chosen + [tuple(x0)])
            return
        s = len(kernel)
        nk = [[Fraction(kernel[a][j]) for a in range(s)] for j in range(n)]  # n x s
        gs = [[sum(kernel[a][i] * lat.gram[i][j] * kernel[b][j]
                   for i in range(n) for j in range(n))
               for b in range(s)] for a in range(s)]
        rhs2 = [sum(Fraction(kernel[a][i]) * G[i][j] * x0[j]
                    for i in range(n) for j in range(n)) for a in range(s)]
        w_vec = linalg.solve(linalg.frac_matrix(gs), rhs2)
        assert w_vec is not None
        q0 = sum(x0[i] * G[i][j] * x0[j] for i in range(n) for j in range(n))
        wgw = sum(w_vec[a] * gs[a][b] * w_vec[b] for a in range(s) for b in range(s))
        resid = t_k - q0 + wgw

        def visit2(ys, _w):
            u = [ys[a] - w_vec[a] for a in range(s)]
            x = tuple(x0[j] + sum(nk[j][a] * u[a] for a in range(s))
                      for j in range(n))
            rec(chosen + [x])

        _sweep_eq(gs, w_vec, resid, visit2, False)

    rec([])


def tuple_rep_count(lat: Lattice, target, cosets: Optional[Sequence] = None) -> int:
    """Number of r-tuples in the prescribed cosets with Gram matrix = target."""
    total = 0

    def leaf(_chosen):
        nonlocal total
        total += 1

    _tuple_search(lat, target, cosets, leaf)
    return total


def naive_stratum_count(lat: Lattice, target, cosets: Optional[Sequence] = None) -> int:
    """Tuples with Gram matrix = target whose span has dimension rank(target).

    For positive definite lattices the span condition is automatic, but it
    is checked literally here.
    """
    rows = _validate_target(target)
    p, q, _z = linalg.inertia(rows)
    wanted = p + q
    total = 0

    def leaf(chosen):
        nonlocal total
        if linalg.rank([list(x) for x in chosen]) == wanted:
            total += 1

    _tuple_search(lat, target, cosets, leaf)
    return total
