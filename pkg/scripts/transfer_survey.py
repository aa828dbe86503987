"""Survey the trace-form transfer: worked examples and the (d, m, N) table.

Shows three exact computations end to end: the admissible rank-2 form
sqrt(2)*<1, 1> over Q(sqrt 2), the trace-zero lattice of the Hamilton
quaternion order over Q, and the full table of degrees and ranks with
d(m + 2) <= 21.

Usage: python3 scripts/transfer_survey.py
"""

import sys

from k3cycles.lattice import signature
from k3cycles.numberfield import TotallyRealField
from k3cycles.transfer import (
    diagonal_lattice,
    feasibility_table,
    ks_admissible,
    quaternion_trace_zero,
    signature_profile,
    trace_lattice,
)


def show_form(title, m):
    lat = trace_lattice(m)
    print(title)
    print(f"  profile over embeddings: {[tuple(s) for s in signature_profile(m)]}")
    print(f"  trace lattice rank {lat.rank}, signature {tuple(signature(lat))}")
    for row in lat.gram:
        print(f"    {row}")
    print(f"  admissible: {ks_admissible(m)}")


def main():
    sqrt2 = TotallyRealField.quadratic(2)
    show_form(
        "sqrt(2) * <1, 1> over Q(sqrt 2):",
        diagonal_lattice(sqrt2, [[0, 1], [0, 1]]),
    )

    rationals = TotallyRealField.rationals()
    order = tuple(
        tuple((1,) if t == s else (0,) for t in range(4)) for s in range(4)
    )
    show_form(
        "\ntrace-zero part of the Hamilton order Z<1, i, j, k>:",
        quaternion_trace_zero(rationals, (-1,), (-1,), order),
    )

    print("\nfeasible (degree d, rank m + 2) pairs and the count size N:")
    print(f"  {'d':>3} {'m':>3} {'N':>3}")
    for row in feasibility_table():
        print(f"  {row.d:>3} {row.m:>3} {row.n:>3}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
