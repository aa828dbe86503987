"""Trace-form transfer of quadratic lattices over totally real fields.

An O_F-lattice with Gram entries in F becomes a Z-lattice on the basis
{omega_k m_i} via (x, y) = tr_{F/Q} (x, y)_M; signatures add over the real
embeddings, which is what makes the admissibility shape (one embedding of
signature (2, m), the rest (0, m+2)) detectable exactly.  Also here: the
(d, m, N) feasibility rows for 2 <= d(m+2) <= 21 and the trace-zero
lattice of a quaternion order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

from . import linalg
from .errors import DegenerateTransfer, NotAnOrder, NotFreeModule
from .lattice import Lattice, Signature, signature
from .numberfield import FieldElement, TotallyRealField

SignatureProfile = tuple[Signature, ...]


class FeasibilityRow(NamedTuple):
    d: int
    m: int
    n: int


@dataclass(frozen=True)
class NumberFieldLattice:
    """A free O_F-lattice with symmetric Gram entries in F."""

    field: TotallyRealField
    gram: tuple[tuple[FieldElement, ...], ...]

    def __post_init__(self):
        r = len(self.gram)
        if any(len(row) != r for row in self.gram):
            raise ValueError("Gram matrix must be square")
        for i in range(r):
            for j in range(r):
                if self.gram[i][j].power != self.gram[j][i].power:
                    raise ValueError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def to_dict(self) -> dict:
        rows = []
        for row in self.gram:
            out_row = []
            for x in row:
                coords = self.field._to_integral(x.power)
                if coords is None:
                    raise ValueError(
                        "Gram entries must be O_F-integral to serialize"
                    )
                out_row.append(list(coords))
            rows.append(out_row)
        return {"field": self.field.to_dict(), "gram": rows}

    @classmethod
    def from_dict(cls, data: dict) -> "NumberFieldLattice":
        if not isinstance(data, dict) or "field" not in data or "gram" not in data:
            raise ValueError(
                "field lattice JSON must contain 'field' and 'gram'"
            )
        field = TotallyRealField.from_dict(data["field"])
        gram = data["gram"]
        if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
            raise ValueError("'gram' must be a matrix of coordinate vectors")
        rows = []
        for row in gram:
            out = []
            for entry in row:
                if not isinstance(entry, list) or len(entry) != field.degree or not all(
                    isinstance(c, int) and not isinstance(c, bool) for c in entry
                ):
                    raise ValueError(
                        "Gram entries must be integer coordinate vectors of "
                        "length equal to the field degree"
                    )
                out.append(field.element(entry))
            rows.append(tuple(out))
        return cls(field, tuple(rows))


def number_field_lattice(field: TotallyRealField, entries) -> NumberFieldLattice:
    """Build from a matrix of integral-basis coordinate vectors or elements."""
    rows = []
    for row in entries:
        out = []
        for x in row:
            out.append(x if isinstance(x, FieldElement) else field.element(x))
        rows.append(tuple(out))
    return NumberFieldLattice(field, tuple(rows))


def diagonal_lattice(field: TotallyRealField, elems: Sequence) -> NumberFieldLattice:
    xs = [x if isinstance(x, FieldElement) else field.element(x) for x in elems]
    z = field.zero()
    rows = tuple(
        tuple(xs[i] if i == j else z for j in range(len(xs))) for i in range(len(xs))
    )
    return NumberFieldLattice(field, rows)


def trace_lattice(m: NumberFieldLattice) -> Lattice:
    """The Z-lattice tr_{F/Q}(omega_k omega_l (m_i, m_j)_M).

    Basis order: lattice index outer, field basis index inner, so the
    result has rank d * rank_F.  Entries must come out integral (true
    whenever the Gram entries lie in the order spanned by the basis).
    """
    field = m.field
    d = field.degree
    omegas = [field.element(tuple(int(k == t) for t in range(d))) for k in range(d)]
    size = m.rank * d
    gram = [[0] * size for _ in range(size)]
    for i in range(m.rank):
        for j in range(m.rank):
            entry = m.gram[i][j]
            for k in range(d):
                for l in range(d):
                    t = field.trace(omegas[k] * omegas[l] * entry)
                    if t.denominator != 1:
                        raise ValueError(
                            "trace form is not integral; Gram entries must "
                            "lie in the order spanned by the integral basis"
                        )
                    gram[i * d + k][j * d + l] = int(t)
    lat = Lattice(tuple(tuple(row) for row in gram))
    if lat.det == 0:
        raise DegenerateTransfer("the form is degenerate at some real embedding")
    return lat


def _diagonalize_over_field(m: NumberFieldLattice) -> list[FieldElement]:
    """Congruence-diagonalize the Gram over F; returns the diagonal.

    Pivots must be invertible in F.  For an irreducible defining
    polynomial every nonzero element qualifies, so this only fails on a
    degenerate form; over a product of fields (reducible polynomial) the
    search is best-effort and failures are reported as degeneracy.
    """
    field = m.field
    r = m.rank
    a = [[m.gram[i][j] for j in range(r)] for i in range(r)]

    def try_invert(x: FieldElement):
        try:
            return field.invert(x)
        except ZeroDivisionError:
            return None

    diag: list[FieldElement] = []
    for i in range(r):
        inv = try_invert(a[i][i])
        if inv is None:
            swap = next(
                (k for k in range(i + 1, r) if try_invert(a[k][k]) is not None), None
            )
            if swap is not None:
                a[i], a[swap] = a[swap], a[i]
                for row in a:
                    row[i], row[swap] = row[swap], row[i]
            else:
                mixed = False
                for s in range(i, r):
                    for t in range(i, r):
                        if s == t:
                            continue
                        cand = a[s][s] + a[t][t] + a[s][t] + a[t][s]
                        if try_invert(cand) is not None:
                            for c in range(r):
                                a[s][c] = a[s][c] + a[t][c]
                            for rr in range(r):
                                a[rr][s] = a[rr][s] + a[rr][t]
                            if s != i:
                                a[i], a[s] = a[s], a[i]
                                for row in a:
                                    row[i], row[s] = row[s], row[i]
                            mixed = True
                            break
                    if mixed:
                        break
                if not mixed:
                    if all(
                        a[s][t].is_zero for s in range(i, r) for t in range(i, r)
                    ):
                        raise DegenerateTransfer(
                            "the form is degenerate at some real embedding"
                        )
                    raise DegenerateTransfer(
                        "could not find an invertible pivot while "
                        "diagonalizing over the coefficient algebra"
                    )
            inv = field.invert(a[i][i])
        piv = a[i][i]
        for s in range(i + 1, r):
            if a[s][i].is_zero:
                continue
            f = a[s][i] * inv
            for c in range(r):
                a[s][c] = a[s][c] - f * a[i][c]
            for rr in range(r):
                a[rr][s] = a[rr][s] - f * a[rr][i]
        diag.append(piv)
    return diag


def signature_profile(m: NumberFieldLattice) -> SignatureProfile:
    """Per-embedding signatures, embeddings in ascending root order.

    The Gram is diagonalized once symbolically over F; each diagonal
    entry's sign under each embedding is then certified by interval
    refinement.
    """
    field = m.field
    diag = _diagonalize_over_field(m)
    out = []
    for i in range(field.degree):
        pos = neg = 0
        for x in diag:
            s = field.sign_at(i, x)
            if s == 0:
                raise DegenerateTransfer(
                    "the form is degenerate at some real embedding"
                )
            if s > 0:
                pos += 1
            else:
                neg += 1
        out.append(Signature(pos, neg))
    return tuple(out)


def ks_admissible(m: NumberFieldLattice) -> bool:
    """Whether the profile is (2, m) at one embedding, (0, m+2) elsewhere.

    The distinguished embedding may sit at any position.  When the shape
    matches, the trace lattice signature (2, d(m+2)-2) is also verified.
    """
    r = m.rank
    if r < 2:
        return False
    profile = signature_profile(m)
    head = Signature(2, r - 2)
    rest = Signature(0, r)
    if profile.count(head) != 1 or profile.count(rest) != len(profile) - 1:
        return False
    total = signature(trace_lattice(m))
    assert total == Signature(2, m.field.degree * r - 2)
    return True


def feasibility_table() -> tuple[FeasibilityRow, ...]:
    """All (d, m) with d >= 2, m >= 0, 2 <= d(m+2) <= 21; N = d(m+2) - 2."""
    rows = []
    for d in itertools.count(2):
        if 2 * d > 21:
            break
        for m in itertools.count(0):
            total = d * (m + 2)
            if total > 21:
                break
            rows.append(FeasibilityRow(d, m, total - 2))
    return tuple(rows)


def feasibility_csv() -> str:
    lines = ["d,m,N"]
    lines.extend(f"{r.d},{r.m},{r.n}" for r in feasibility_table())
    return "\n".join(lines) + "\n"


Quaternion = tuple[FieldElement, FieldElement, FieldElement, FieldElement]


@dataclass(frozen=True)
class QuaternionAlgebra:
    """(a, b / F): i^2 = a, j^2 = b, ij = -ji = k, in the basis 1,i,j,k."""

    field: TotallyRealField
    a: FieldElement
    b: FieldElement

    def __post_init__(self):
        if self.a.is_zero or self.b.is_zero:
            raise ValueError("quaternion parameters a, b must be nonzero")

    @cached_property
    def _mul_table(self) -> dict:
        one = self.field.one()
        a, b = self.a, self.b
        ab = a * b
        # (m, n) -> (basis index, field factor)
        return {
            (0, 0): (0, one), (0, 1): (1, one), (0, 2): (2, one), (0, 3): (3, one),
            (1, 0): (1, one), (1, 1): (0, a), (1, 2): (3, one), (1, 3): (2, a),
            (2, 0): (2, one), (2, 1): (3, -one), (2, 2): (0, b), (2, 3): (1, -b),
            (3, 0): (3, one), (3, 1): (2, -a), (3, 2): (1, b), (3, 3): (0, -ab),
        }

    def element(self, coords: Sequence[FieldElement]) -> Quaternion:
        if len(coords) != 4:
            raise ValueError("a quaternion needs 4 components")
        return tuple(coords)

    def zero(self) -> Quaternion:
        z = self.field.zero()
        return (z, z, z, z)

    def multiply(self, x: Quaternion, y: Quaternion) -> Quaternion:
        comps = list(self.zero())
        for m in range(4):
            if x[m].is_zero:
                continue
            for n in range(4):
                if y[n].is_zero:
                    continue
                idx, factor = self._mul_table[(m, n)]
                comps[idx] = comps[idx] + x[m] * y[n] * factor
        return tuple(comps)

    def conjugate(self, x: Quaternion) -> Quaternion:
        return (x[0], -x[1], -x[2], -x[3])

    def reduced_trace(self, x: Quaternion) -> FieldElement:
        return x[0] + x[0]

    def reduced_norm(self, x: Quaternion) -> FieldElement:
        prod = self.multiply(x, self.conjugate(x))
        return prod[0]

    def pairing(self, x: Quaternion, y: Quaternion) -> FieldElement:
        """(x, y) = tr_red(x * conj(y))."""
        return self.reduced_trace(self.multiply(x, self.conjugate(y)))


def _flat_coords(field: TotallyRealField, q: Quaternion) -> list[Fraction]:
    out: list[Fraction] = []
    for comp in q:
        out.extend(field.integral_coords(comp.power))
    return out


def _order_span_matrix(field: TotallyRealField, elems: Sequence[Quaternion]):
    """Columns: flat O_F-coordinates of omega_k * e for each element e."""
    d = field.degree
    omegas = [field.element(tuple(int(k == t) for t in range(d))) for k in range(d)]
    cols = []
    for q in elems:
        for w in omegas:
            scaled = tuple(w * comp for comp in q)
            cols.append(_flat_coords(field, scaled))
    denom = 1
    for col in cols:
        for x in col:
            denom = math.lcm(denom, x.denominator)
    mat = [[int(cols[c][r] * denom) for c in range(len(cols))] for r in range(4 * d)]
    return mat, denom


def _in_span(field, span_matrix, denom, q: Quaternion) -> bool:
    target = _flat_coords(field, q)
    target = [x * denom for x in target]
    if any(x.denominator != 1 for x in target):
        return False
    return linalg.solve_integer(span_matrix, [int(x) for x in target]) is not None


def quaternion_trace_zero(
    field: TotallyRealField,
    a,
    b,
    order_basis: Sequence[Sequence[Sequence]],
) -> NumberFieldLattice:
    """Trace-zero part of a quaternion order, with (x,y) = tr_red(x conj(y)).

    order_basis holds 4 quaternions, each as 4 integral-basis coordinate
    vectors against 1, i, j, k.  The span must contain 1, be stable under
    O_F, and be closed under multiplication; the trace-zero kernel is
    saturated and returned as a free rank-3 O_F-lattice (NotFreeModule
    when no basis of the kernel module exists).
    """
    alg = QuaternionAlgebra(
        field,
        a if isinstance(a, FieldElement) else field.element(a),
        b if isinstance(b, FieldElement) else field.element(b),
    )
    d = field.degree
    basis = []
    for q in order_basis:
        if len(q) != 4:
            raise ValueError("each order basis element needs 4 coordinate vectors")
        basis.append(tuple(field.element(c) for c in q))
    if len(basis) != 4:
        raise NotAnOrder("an order basis must have 4 elements")
    span_matrix, denom = _order_span_matrix(field, basis)
    if linalg.rank(span_matrix) != 4 * d:
        raise NotAnOrder("order basis does not span the algebra over F")
    one = alg.element([field.one(), field.zero(), field.zero(), field.zero()])
    if not _in_span(field, span_matrix, denom, one):
        raise NotAnOrder("the order does not contain 1")
    for x in basis:
        for y in basis:
            if not _in_span(field, span_matrix, denom, alg.multiply(x, y)):
                raise NotAnOrder("the order basis is not closed under multiplication")

    # trace-zero condition: d rational equations on the 4d integer coords
    omegas = [field.element(tuple(int(k == t) for t in range(d))) for k in range(d)]
    rows: list[list[Fraction]] = [[] for _ in range(d)]
    for q in basis:
        for w in omegas:
            val = alg.reduced_trace(tuple(w * comp for comp in q))
            for r in range(d):
                rows[r].append(val.power[r])
    int_rows = []
    for row in rows:
        den = math.lcm(*(x.denominator for x in row)) if row else 1
        int_rows.append([int(x * den) for x in row])
    kernel = linalg.integer_kernel(int_rows, cols=4 * d)
    if len(kernel) != 3 * d:
        raise NotFreeModule(
            f"trace-zero kernel has Z-rank {len(kernel)}, expected {3 * d}"
        )

    def to_quaternion(flat: Sequence[int]) -> Quaternion:
        comps = []
        for t in range(4):
            coeff = field.zero()
            for k in range(d):
                coeff = coeff + flat[t * d + k] * omegas[k]
            comps.append(coeff)
        q = alg.zero()
        for t in range(4):
            q = tuple(c + comps[t] * comp for c, comp in zip(q, basis[t]))
        return q

    quats = [to_quaternion(v) for v in kernel]
    for triple in itertools.combinations(range(len(quats)), 3):
        chosen = [quats[t] for t in triple]
        span, sden = _order_span_matrix(field, chosen)
        if linalg.rank(span) != 3 * d:
            continue
        if all(_in_span(field, span, sden, q) for q in quats):
            gram = tuple(
                tuple(alg.pairing(x, y) for y in chosen) for x in chosen
            )
            return NumberFieldLattice(field, gram)
    raise NotFreeModule(
        "the trace-zero module admits no free O_F-basis among kernel generators"
    )
