"""Command line front end: k3cycles <subcommand> [flags].

Each subcommand validates its input, computes with the exact kernels in
this package, and emits a deterministic artifact: JSON, or CSV for
`table`.  Exact numbers appear as JSON integers or "p/q" strings; the
few floating-point fields carry a sibling *_tol key.  Exit codes: 0
success, 2 validation failure (error JSON on stderr), 64 unknown
subcommand, 66 file trouble.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import clifford, enumeration, gauss, kuga_satake, theta, transfer
from .errors import K3CyclesError
from .lattice import (
    BUILTIN_NAMES,
    Lattice,
    builtin_lattice,
    discriminant_group,
    signature,
)

SCHEMA_VERSION = 1
TRANSFORM_TOL = 1e-8
FLOAT_TOL = 1e-9

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_USAGE = 64
EXIT_FILE = 66

_USAGE = (
    "usage: k3cycles <subcommand> [flags]\n"
    "subcommands: clifford, count, gauss, info, ks, milgram, table, theta, "
    "transfer\n"
    "run `k3cycles <subcommand> --help` for per-subcommand flags\n"
)


class _FileTrouble(Exception):
    """Input or output file could not be read or written."""


def _fail(code: int, kind: str, message: str) -> int:
    doc = {"schema_version": SCHEMA_VERSION, "error": {"type": kind, "message": message}}
    sys.stderr.write(json.dumps(doc, sort_keys=True) + "\n")
    return code


def _emit(text: str, output: Optional[str]) -> int:
    if output is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as ex:
        return _fail(EXIT_FILE, "FileTrouble", f"cannot write {output!r}: {ex}")
    return EXIT_OK


def _artifact(payload: dict) -> str:
    doc = {"schema_version": SCHEMA_VERSION}
    doc.update(payload)
    return json.dumps(doc, sort_keys=True) + "\n"


def _frac(x) -> str:
    return str(Fraction(x))


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as ex:
        raise _FileTrouble(f"cannot read {path!r}: {ex}") from ex


def _load_lattice(spec: str) -> Lattice:
    if spec in BUILTIN_NAMES:
        return builtin_lattice(spec)
    raw = _read_text(spec)
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as ex:
        raise ValueError(f"lattice file {spec!r} is not valid JSON: {ex}") from ex
    return Lattice.from_dict(data)


def _parse_vector(text: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(part.strip()) for part in text.split(","))


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _cmd_info(args) -> int:
    lat = _load_lattice(args.lattice)
    sig = signature(lat)
    disc = discriminant_group(lat)
    payload = {
        "rank": lat.rank,
        "signature": [sig.pos, sig.neg],
        "even": lat.even,
        "det": abs(lat.det),
        "det_signed": lat.det,
        "discriminant_group": list(disc.invariant_factors),
        "discriminant_order": disc.order,
    }
    if lat.name is not None:
        payload["name"] = lat.name
    return _emit(_artifact(payload), args.output)


def _cmd_count(args) -> int:
    lat = _load_lattice(args.lattice)
    t = Fraction(args.t)
    h = _parse_vector(args.h) if args.h is not None else None
    payload = {"t": _frac(t), "count": enumeration.rep_count(lat, t, h)}
    if h is not None:
        payload["h"] = [_frac(x) for x in h]
    return _emit(_artifact(payload), args.output)


def _cmd_theta(args) -> int:
    lat = _load_lattice(args.lattice)
    h = _parse_vector(args.h) if args.h is not None else None
    bound = Fraction(args.bound)
    exp = theta.theta_coeffs(lat, h, bound=bound)
    payload = {
        "bound": _frac(exp.bound),
        "weight": _frac(exp.weight),
        "coeffs": [[_frac(t), _frac(c)] for t, c in exp.coeffs],
    }
    if h is not None:
        payload["h"] = [_frac(x) for x in h]
    if args.check_transform and args.tau is None:
        raise ValueError("--check-transform needs --tau")
    if args.tau is not None:
        tau = complex(args.tau[0], args.tau[1])
        val = theta.theta_value(lat, h, tau, bound)
        payload["tau"] = list(args.tau)
        payload["theta_value"] = [val.value.real, val.value.imag]
        payload["theta_value_tol"] = val.tail_bound
        if args.check_transform:
            payload["transform_residual"] = theta.theta_transform_check(
                lat, tau, bound
            )
            payload["transform_residual_tol"] = TRANSFORM_TOL
    return _emit(_artifact(payload), args.output)


def _cmd_gauss(args) -> int:
    lat = _load_lattice(args.lattice)
    val = gauss.gauss_sum(lat, args.a, args.c)
    payload = {
        "a": val.a,
        "c": val.c,
        "rank": val.rank,
        "value": [val.value.real, val.value.imag],
        "value_tol": FLOAT_TOL,
        "normalization": val.normalization,
        "normalization_tol": FLOAT_TOL,
    }
    return _emit(_artifact(payload), args.output)


def _cmd_milgram(args) -> int:
    lat = _load_lattice(args.lattice)
    res = gauss.milgram_invariant(lat)
    payload = {
        "signature_mod8": res.signature_mod8,
        "agrees": res.agrees,
        "total": [res.total.real, res.total.imag],
        "predicted": [res.predicted.real, res.predicted.imag],
        "error": res.error,
        "error_tol": gauss.MILGRAM_TOLERANCE,
    }
    return _emit(_artifact(payload), args.output)


def _cmd_clifford(args) -> int:
    lat = _load_lattice(args.lattice)
    x = clifford.parse_element(lat, args.element)
    payload = {
        "element": clifford.format_element(x),
        "parity": clifford.parity(x).value,
        "trace": _frac(clifford.trace(x)),
        "scalar_part": _frac(clifford.scalar_part(x)),
    }
    if args.times is not None:
        y = clifford.parse_element(lat, args.times)
        payload["product"] = clifford.format_element(clifford.multiply(x, y))
    if args.involution:
        payload["involution"] = clifford.format_element(clifford.main_involution(x))
    if args.invert:
        payload["inverse"] = clifford.format_element(clifford.invert(x))
    if args.spinor_norm:
        payload["spinor_norm"] = clifford.format_element(clifford.spinor_norm(x))
    if args.gspin:
        payload["is_gspin"] = clifford.is_gspin(x)
    return _emit(_artifact(payload), args.output)


def _cmd_ks(args) -> int:
    lat = _load_lattice(args.lattice)
    plane = kuga_satake.period_plane(
        lat, _parse_vector(args.z1), _parse_vector(args.z2)
    )
    if args.minus or args.plus:
        if args.minus is None or len(args.minus) != 2:
            raise ValueError("--minus must be given exactly twice")
        splitting = (
            tuple(_parse_vector(v) for v in args.plus or []),
            tuple(_parse_vector(v) for v in args.minus),
        )
    else:
        splitting = kuga_satake.default_splitting(lat)
    report = kuga_satake.ks_report(lat, splitting, plane)
    endo = kuga_satake.special_endo_lattice(lat, plane)
    payload = {
        "j_square": _frac(report.j_square_scalar),
        "alternating_ok": report.alternating_ok,
        "symmetric_ok": report.symmetric_ok,
        "definite": report.definite,
        "inertia": list(report.inertia),
        "torus_dim": report.torus_dim,
        "complex_dim": report.complex_dim,
        "special_endo_rank": endo.rank,
        "special_endo_gram": [list(row) for row in endo.gram],
    }
    return _emit(_artifact(payload), args.output)


def _cmd_transfer(args) -> int:
    raw = _read_text(args.input)
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as ex:
        raise ValueError(f"{args.input!r} is not valid JSON: {ex}") from ex
    m = transfer.NumberFieldLattice.from_dict(data)
    lat = transfer.trace_lattice(m)
    prof = transfer.signature_profile(m)
    sig = signature(lat)
    payload = {
        "gram": [list(row) for row in lat.gram],
        "rank": lat.rank,
        "signature": [sig.pos, sig.neg],
        "even": lat.even,
        "det": abs(lat.det),
        "det_signed": lat.det,
        "profile": [[p.pos, p.neg] for p in prof],
        "admissible": transfer.ks_admissible(m),
    }
    return _emit(_artifact(payload), args.output)


def _cmd_table(args) -> int:
    return _emit(transfer.feasibility_csv(), args.output)


_COMMANDS = {
    "info": _cmd_info,
    "count": _cmd_count,
    "theta": _cmd_theta,
    "gauss": _cmd_gauss,
    "milgram": _cmd_milgram,
    "clifford": _cmd_clifford,
    "ks": _cmd_ks,
    "transfer": _cmd_transfer,
    "table": _cmd_table,
}

_LATTICE_HELP = (
    f"builtin name ({', '.join(BUILTIN_NAMES)}) or path to a JSON file "
    'with a "gram" matrix'
)


def _build_parser(name: str) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog=f"k3cycles {name}")
    p.add_argument("--output", metavar="PATH", help="write the artifact here instead of stdout")
    p.add_argument(
        "--threads",
        type=_positive_int,
        default=1,
        help="parallelism cap; output never depends on it",
    )
    if name in ("info", "count", "theta", "gauss", "milgram", "clifford", "ks"):
        p.add_argument("--lattice", required=True, help=_LATTICE_HELP)
    if name == "count":
        p.add_argument("--t", required=True, help="target norm, integer or p/q")
        p.add_argument("--h", help="coset vector, comma-separated rationals")
    elif name == "theta":
        p.add_argument("--bound", default="10", help="include exponents up to this norm")
        p.add_argument("--h", help="coset vector, comma-separated rationals")
        p.add_argument(
            "--tau",
            nargs=2,
            type=float,
            metavar=("RE", "IM"),
            help="also evaluate the series at tau = RE + IM*i",
        )
        p.add_argument(
            "--check-transform",
            action="store_true",
            help="report the inversion-symmetry residual at --tau",
        )
    elif name == "gauss":
        p.add_argument("--a", required=True, type=int, help="numerator of the phase a/c")
        p.add_argument("--c", required=True, type=int, help="modulus")
    elif name == "clifford":
        p.add_argument(
            "--element",
            required=True,
            help="element text, e.g. '2 + 1/2*e{1,3}'",
        )
        p.add_argument("--times", help="right-multiply by this element")
        p.add_argument("--involution", action="store_true", help="apply the main involution")
        p.add_argument("--invert", action="store_true", help="compute the inverse")
        p.add_argument(
            "--spinor-norm", action="store_true", help="compute g * involution(g)"
        )
        p.add_argument(
            "--gspin",
            action="store_true",
            help="test conjugation-stabilizes-vectors membership",
        )
    elif name == "ks":
        p.add_argument("--z1", required=True, help="first plane vector, comma-separated")
        p.add_argument("--z2", required=True, help="second plane vector, comma-separated")
        p.add_argument(
            "--minus",
            action="append",
            metavar="VEC",
            help="negative-part basis vector (give exactly twice)",
        )
        p.add_argument(
            "--plus",
            action="append",
            metavar="VEC",
            help="positive-part basis vector (repeatable)",
        )
    elif name == "transfer":
        p.add_argument(
            "--input",
            required=True,
            help='path to JSON with "field" and "gram" over the field',
        )
    return p


def run(argv: Sequence[str]) -> int:
    argv = list(argv)
    if argv and argv[0] in ("-h", "--help"):
        sys.stdout.write(_USAGE)
        return EXIT_OK
    if not argv:
        sys.stdout.write(_USAGE)
        return _fail(EXIT_USAGE, "UnknownSubcommand", "no subcommand given")
    name = argv[0]
    if name not in _COMMANDS:
        return _fail(
            EXIT_USAGE,
            "UnknownSubcommand",
            f"unknown subcommand {name!r}; expected one of {sorted(_COMMANDS)}",
        )
    parser = _build_parser(name)
    try:
        args = parser.parse_args(argv[1:])
    except SystemExit as ex:
        if ex.code in (0, None):
            return EXIT_OK
        return _fail(EXIT_INVALID, "InvalidArguments", f"bad arguments for {name!r}")
    try:
        return _COMMANDS[name](args)
    except _FileTrouble as ex:
        return _fail(EXIT_FILE, "FileTrouble", str(ex))
    except (K3CyclesError, ValueError, ZeroDivisionError) as ex:
        return _fail(EXIT_INVALID, type(ex).__name__, str(ex))


def main() -> None:
    sys.exit(run(sys.argv[1:]))
