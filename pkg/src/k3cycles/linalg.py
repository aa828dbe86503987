"""Exact linear algebra over the rationals and the integers.

Matrices are lists of lists, row major.  Rational routines work on
fractions.Fraction entries; integer routines (Smith form, kernels) expect
plain ints and return plain ints.  Everything here is deterministic and
allocation-happy rather than clever, which is fine at the ranks this
package handles (a few dozen at most).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Matrix = list[list[Fraction]]
IntMatrix = list[list[int]]


def frac_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

def int_identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_mul(a, b):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def mat_vec(a, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def is_symmetric(a) -> bool:
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def det(a) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    m = frac_matrix(a)
    sign = 1
    out = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        out *= p
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] / p
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return out * sign


def rank(a) -> int:
    if not a:
        return 0
    m = frac_matrix(a)
    rows, cols = len(m), len(m[0])
    rk = 0
    for col in range(cols):
        piv = next((r for r in range(rk, rows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk][col]
        for r in range(rows):
            if r != rk and m[r][col] != 0:
                f = m[r][col] / p
                m[r] = [x - f * y for x, y in zip(m[r], m[rk])]
        rk += 1
        if rk == rows:
            break
    return rk


def solve(a: Matrix, b: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """One solution of a*x = b over Q, or None if inconsistent.

    For singular square systems the free coordinates are set to zero.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(x) for x in a[i]] + [Fraction(b[i])] for i in range(rows)]
    pivots = []
    rk = 0
    for col in range(cols):
        piv = next((r for r in range(rk, rows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk][col]
        m[rk] = [x / p for x in m[rk]]
        for r in range(rows):
            if r != rk and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rk])]
        pivots.append(col)
        rk += 1
    for r in range(rk, rows):
        if m[r][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for r, col in enumerate(pivots):
        x[col] = m[r][cols]
    return x


def inverse(a: Matrix) -> Optional[Matrix]:
    n = len(a)
    m = [[Fraction(x) for x in a[i]] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def rational_kernel(a) -> list[list[Fraction]]:
    """Basis of the right nullspace of a over Q (list of vectors)."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = frac_matrix(a)
    pivots = []
    rk = 0
    for col in range(cols):
        piv = next((r for r in range(rk, rows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk][col]
        m[rk] = [x / p for x in m[rk]]
        for r in range(rows):
            if r != rk and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rk])]
        pivots.append(col)
        rk += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def inertia(a) -> tuple[int, int, int]:
    """Sylvester inertia (p, q, z) of a symmetric rational matrix.

    Computed by congruence diagonalization with exact pivoting; z counts
    zero eigenvalues, so a nondegenerate form has z = 0.
    """
    n = len(a)
    if not is_symmetric(a):
        raise ValueError("inertia requires a symmetric matrix")
    m = frac_matrix(a)
    p = q = z = 0
    for i in range(n):
        if m[i][i] == 0:
            j = next((k for k in range(i + 1, n) if m[k][k] != 0), None)
            if j is not None:
                _congruence_swap(m, i, j)
            else:
                j = next((k for k in range(i + 1, n) if m[i][k] != 0), None)
                if j is None:
                    z += 1
                    continue
                # mix in row/column j so the diagonal pivot becomes 2*m[i][j]
                _congruence_add(m, i, j)
        piv = m[i][i]
        if piv > 0:
            p += 1
        else:
            q += 1
        # Schur complement of the pivot: only the trailing block changes
        for r in range(i + 1, n):
            if m[r][i] != 0:
                f = m[r][i] / piv
                for c in range(i + 1, n):
                    m[r][c] -= f * m[i][c]
        for r in range(i + 1, n):
            m[r][i] = Fraction(0)
            m[i][r] = Fraction(0)
    return p, q, z


def congruence_diagonalize(a) -> tuple[Matrix, list[Fraction]]:
    """Rational basis diagonalizing a symmetric form: rows b with
    b[i] . a . b[j] = d[i] when i = j and 0 otherwise.

    Degenerate directions come out with d[i] = 0.  Same pivoting as
    inertia, but the congruence transform is recorded.
    """
    n = len(a)
    if not is_symmetric(a):
        raise ValueError("congruence diagonalization requires a symmetric matrix")
    m = frac_matrix(a)
    b = identity(n)
    for i in range(n):
        if m[i][i] == 0:
            j = next((k for k in range(i + 1, n) if m[k][k] != 0), None)
            if j is not None:
                _congruence_swap(m, i, j)
                b[i], b[j] = b[j], b[i]
            else:
                j = next((k for k in range(i + 1, n) if m[i][k] != 0), None)
                if j is None:
                    continue
                _congruence_add(m, i, j)
                b[i] = [x + y for x, y in zip(b[i], b[j])]
        piv = m[i][i]
        for r in range(i + 1, n):
            if m[r][i] != 0:
                f = m[r][i] / piv
                for c in range(i + 1, n):
                    m[r][c] -= f * m[i][c]
                b[r] = [x - f * y for x, y in zip(b[r], b[i])]
        for r in range(i + 1, n):
            m[r][i] = Fraction(0)
            m[i][r] = Fraction(0)
    return b, [m[i][i] for i in range(n)]


def _congruence_swap(m, i, j):
    m[i], m[j] = m[j], m[i]
    for row in m:
        row[i], row[j] = row[j], row[i]


def _congruence_add(m, i, j):
    for c in range(len(m)):
        m[i][c] += m[j][c]
    for r in range(len(m)):
        m[r][i] += m[r][j]


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (d, u, v) with u*a*v = d in Smith normal form.

    u and v are unimodular; d is diagonal (rectangular allowed) with
    nonnegative entries d1 | d2 | ... in divisibility order.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [list(map(int, row)) for row in a]
    u = int_identity(rows)
    v = int_identity(cols)

    def row_op(i, j, f):  # row_i -= f * row_j
        d[i] = [x - f * y for x, y in zip(d[i], d[j])]
        u[i] = [x - f * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, f):  # col_i -= f * col_j
        for r in range(rows):
            d[r][i] -= f * d[r][j]
        for r in range(cols):
            v[r][i] -= f * v[r][j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(rows):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    t = 0
    while t < min(rows, cols):
        # locate a nonzero entry of smallest magnitude in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t] != 0:
                    f = d[i][t] // d[t][t]
                    row_op(i, t, f)
                    if d[i][t] != 0:
                        swap_rows(t, i)
                    dirty = True
            for j in range(t + 1, cols):
                if d[t][j] != 0:
                    f = d[t][j] // d[t][t]
                    col_op(j, t, f)
                    if d[t][j] != 0:
                        swap_cols(t, j)
                    dirty = True
            if not dirty:
                break
        # enforce divisibility of the rest of the block by the pivot
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if d[i][j] % d[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)  # add offending row, then reduce again
            continue
        t += 1
    for i in range(min(rows, cols)):
        if d[i][i] < 0:
            d[i] = [-x for x in d[i]]
            u[i] = [-x for x in u[i]]
    return d, u, v


def integer_kernel(a: IntMatrix, cols: Optional[int] = None) -> list[list[int]]:
    """Saturated basis of {x in Z^cols : a*x = 0} (list of int vectors)."""
    rows = len(a)
    if rows == 0:
        n = cols if cols is not None else 0
        return [[int(i == j) for j in range(n)] for i in range(n)]
    n = len(a[0])
    d, _u, v = smith_normal_form(a)
    free = []
    for j in range(n):
        dj = d[j][j] if j < min(rows, n) else 0
        if dj == 0:
            free.append(j)
    return [[v[r][j] for r in range(n)] for j in free]


def solve_integer(a: IntMatrix, b: Sequence[int]) -> Optional[list[int]]:
    """One integer solution of a*x = b, or None."""
    rows = len(a)
    n = len(a[0]) if rows else 0
    d, u, v = smith_normal_form(a)
    ub = [sum(u[i][j] * b[j] for j in range(rows)) for i in range(rows)]
    y = [0] * n
    for i in range(rows):
        di = d[i][i] if i < min(rows, n) else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di != 0:
                return None
            y[i] = ub[i] // di
    return [sum(v[i][j] * y[j] for j in range(n)) for i in range(n)]
