"""Command-line front end.

One binary, six subcommands: ``necklace``, ``cyclo-factors``, ``dynatomic``,
``relation``, ``scan``, ``cover``.  All output is byte-deterministic for
fixed flags: JSON is emitted with a fixed key order and indent, CSV uses LF
endings with exactly one trailing newline, and the SVG scatter uses integer
coordinates only.

Exit codes: 0 success; ``relation`` exits 2 when the tuple is not
admissible and 4 when an admissible tuple is falsified by evidence (which
would be a counterexample and deserves a bug report); ``cover`` exits 3
when the character group is not covered; I/O and usage problems exit 1.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .characters import covers
from .cyclotomic import cyclo_factor_scan, cyclotomic_poly
from .dynatomic import (RelationTuple, build_relation_certificate,
                        dynatomic_poly, generalized_dynatomic)
from .errors import DomainError, ExactDivisionError, ResourceLimitError
from .necklace import dynamical_necklace, fast_xn1_divides, necklace_poly
from .numtheory import core_and_cocore
from .polycore import QQ, PrimeField, Polynomial, parse_polynomial


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _dump_json(data) -> str:
    return json.dumps(data, indent=2)


def _write_file(path: str, payload: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(payload)
        if not payload.endswith("\n"):
            handle.write("\n")


def _poly_payload(poly: Polynomial) -> dict:
    return {"text": poly.to_text(), "json": poly.to_json_dict()}


# -- necklace ---------------------------------------------------------------

def _cmd_necklace(args) -> int:
    if args.f is not None:
        f = parse_polynomial(args.f)
        poly = dynamical_necklace(f, args.d)
        label = f"M_{{f,{args.d}}} for f = {f.to_text()}"
    else:
        poly = necklace_poly(args.d)
        label = f"M_{args.d}"
    if args.format == "json":
        _emit(_dump_json({"d": args.d, "f": args.f, **_poly_payload(poly)}))
    else:
        _emit(f"{label} = {poly.to_text()}")
    return 0


# -- cyclo-factors ----------------------------------------------------------

def _scan_payload(poly: Polynomial) -> dict:
    return cyclo_factor_scan(poly).to_json_dict()


def _format_scan_text(name: str, report_dict: dict) -> str:
    cyclo = " ".join(
        f"Phi_{entry['n']}" + (f"^{entry['mult']}" if entry["mult"] > 1 else "")
        for entry in report_dict["cyclotomic"]) or "(none)"
    return (f"{name}: x^{report_dict['x_multiplicity']} * {cyclo} "
            f"* cofactor of degree {report_dict['cofactor_degree']}")


def _cmd_cyclo_factors(args) -> int:
    chosen = [v is not None for v in (args.poly, args.necklace, args.shifted,
                                      args.both)]
    if sum(chosen) != 1:
        sys.stderr.write("choose exactly one of --poly / --necklace / "
                         "--shifted / --both\n")
        return 1
    if args.both is not None:
        reports = {
            "necklace": _scan_payload(necklace_poly(args.both).scale(args.both)),
            "shifted_cyclotomic": _scan_payload(cyclotomic_poly(args.both) - 1),
        }
        if args.format == "json":
            _emit(_dump_json({"d": args.both, **reports}))
        else:
            _emit(_format_scan_text(f"{args.both}*M_{args.both}",
                                    reports["necklace"]))
            _emit(_format_scan_text(f"Phi_{args.both} - 1",
                                    reports["shifted_cyclotomic"]))
        return 0
    if args.poly is not None:
        poly = parse_polynomial(args.poly, QQ)
        name = args.poly
    elif args.necklace is not None:
        poly = necklace_poly(args.necklace).scale(args.necklace)
        name = f"{args.necklace}*M_{args.necklace}"
    else:
        poly = cyclotomic_poly(args.shifted) - 1
        name = f"Phi_{args.shifted} - 1"
    report = _scan_payload(poly)
    if args.format == "json":
        _emit(_dump_json(report))
    else:
        _emit(_format_scan_text(name, report))
    return 0


# -- dynatomic --------------------------------------------------------------

def _cmd_dynatomic(args) -> int:
    ring = PrimeField(args.p) if args.p else None
    f = parse_polynomial(args.f, ring)
    if args.m is not None or args.n is not None:
        if args.m is None or args.n is None:
            sys.stderr.write("--m and --n go together\n")
            return 1
        poly = generalized_dynatomic(f, args.m, args.n)
        label = f"Phi_{{f,{args.m},{args.n}}}"
    elif args.d is not None:
        poly = dynatomic_poly(f, args.d)
        label = f"Phi_{{f,{args.d}}}"
    else:
        sys.stderr.write("need --d or --m/--n\n")
        return 1
    if args.format == "json":
        _emit(_dump_json({"f": f.to_text(), **_poly_payload(poly)}))
    else:
        _emit(f"{label} = {poly.to_text()}")
    return 0


# -- relation ---------------------------------------------------------------

def _parse_specialize(text: str) -> Fraction:
    name, _, value = text.partition("=")
    if name.strip() != "a" or not value:
        raise DomainError("--specialize expects a=<rational>, e.g. a=-5/4")
    return Fraction(value.strip())


def _cmd_relation(args) -> int:
    t = RelationTuple(m=args.m, n=args.n, c=args.c, d=args.d)
    family = parse_polynomial(args.family)
    label = args.family
    if args.specialize is not None:
        value = _parse_specialize(args.specialize)
        if family.ring.tag == "Qa":
            family = family.specialize(value)
            label = f"{args.family} at a = {value}"
    cert = build_relation_certificate(
        t, family=family, family_label=label, trials=args.trials,
        seed=args.seed, cap=args.degree_max, force=args.force)
    payload = cert.to_json_dict()
    if args.out:
        _write_file(args.out, _dump_json(payload))
    if args.format == "json":
        _emit(_dump_json(payload))
    else:
        cond = cert.conditions
        _emit(f"tuple (m, n, c, d) = ({t.m}, {t.n}, {t.c}, {t.d})")
        _emit(f"  cond1 (m > c or n does not divide d): {cond.cond1}")
        _emit(f"  cond2 (cocore(d) covers the preperiod): {cond.cond2}")
        _emit(f"  cond3 (x^{t.n} - 1 divides M_{t.d}): {cond.cond3}")
        _emit(f"  alt   (d > 1, c - 1 >= m, n = 1): {cond.alt}")
        _emit(f"  admissible: {cond.admissible}")
        for ev in cert.evidence:
            seed = "" if ev.seed is None else f" (seed {ev.seed})"
            if ev.divides:
                detail = f"divides, cofactor degree {ev.cofactor_degree}"
            else:
                detail = f"remainder of degree {ev.remainder_degree}"
            _emit(f"  [{ev.ring}] {ev.family}{seed}: {detail}")
        if cert.evidence:
            good = sum(1 for ev in cert.evidence if ev.divides)
            _emit(f"  evidence: {good}/{len(cert.evidence)} divide")
    if not cert.conditions.admissible:
        return 2
    if cert.evidence and not cert.all_divide:
        return 4
    return 0


# -- scan -------------------------------------------------------------------

def scan_rows(d_max: int, n_max: int) -> list[tuple[int, int]]:
    """All grid pairs where x^n - 1 divides M_d, ordered by (d, n)."""
    return [(d, n)
            for d in range(1, d_max + 1)
            for n in range(1, n_max + 1)
            if fast_xn1_divides(d, n)]


def scan_csv(rows: list[tuple[int, int]]) -> str:
    return "".join(["d,n\n"] + [f"{d},{n}\n" for d, n in rows])


def scan_svg(rows: list[tuple[int, int]], d_max: int, n_max: int) -> str:
    """Minimal deterministic scatter: one 2px square per divisibility hit."""
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1000 1000">\n',
        '<rect x="0" y="0" width="1000" height="1000" fill="white"/>\n',
        '<text x="500" y="998" font-size="20" text-anchor="middle">d</text>\n',
        '<text x="12" y="500" font-size="20" text-anchor="middle" '
        'transform="rotate(-90 12 500)">n</text>\n',
    ]
    for d, n in rows:
        px = d * 1000 // d_max
        py = 1000 - n * 1000 // n_max
        parts.append(f'<rect x="{px}" y="{py}" width="2" height="2"/>\n')
    parts.append("</svg>\n")
    return "".join(parts)


def _cmd_scan(args) -> int:
    rows = scan_rows(args.d_max, args.n_max)
    try:
        _write_file(args.out, scan_csv(rows))
        if args.svg:
            _write_file(args.svg, scan_svg(rows, args.d_max, args.n_max))
    except OSError as exc:
        sys.stderr.write(f"cannot write output: {exc}\n")
        return 1
    _emit(f"{len(rows)} pairs written to {args.out}")
    return 0


# -- cover ------------------------------------------------------------------

def _cmd_cover(args) -> int:
    cert = covers(args.d, args.n)
    payload = cert.to_json_dict()
    if args.certificate:
        try:
            _write_file(args.certificate, _dump_json(payload))
        except OSError as exc:
            sys.stderr.write(f"cannot write certificate: {exc}\n")
            return 1
    if args.format == "json":
        _emit(_dump_json(payload))
    else:
        cocore = core_and_cocore(args.d)[1]
        state = "covered" if cert.covered else "not covered"
        _emit(f"d = {args.d}, n = {args.n}: {state}")
        _emit(f"  usable primes: {list(cert.usable_primes)}")
        _emit(f"  cocore(d) = {cocore}")
        if cert.covered:
            low = 0 if args.d % args.n != 0 else 1
            if low <= cocore:
                _emit(f"  universal relation: Phi_{{f,m,{args.n}}} divides "
                      f"Phi_{{f,{args.d}}} - 1 for every f of degree >= 2 "
                      f"and {low} <= m <= {cocore}")
        elif cert.failing_character is not None:
            _emit(f"  failing character exponents: "
                  f"{list(cert.failing_character)}")
    return 0 if cert.covered else 3


# -- parser wiring ----------------------------------------------------------

def _add_format(sub) -> None:
    sub.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dynlab",
        description="necklace / cyclotomic / dynatomic polynomial toolkit")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("necklace", help="print a (dynamical) necklace polynomial")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--f", type=str, default=None,
                   help="polynomial for the dynamical variant M_{f,d}")
    _add_format(p)
    p.set_defaults(func=_cmd_necklace)

    p = subs.add_parser("cyclo-factors",
                        help="cyclotomic factor scan of a rational polynomial")
    p.add_argument("--poly", type=str, default=None)
    p.add_argument("--necklace", type=int, default=None, metavar="D",
                   help="scan d*M_d")
    p.add_argument("--shifted", type=int, default=None, metavar="N",
                   help="scan Phi_N - 1")
    p.add_argument("--both", type=int, default=None, metavar="D",
                   help="scan d*M_d and Phi_d - 1 side by side")
    _add_format(p)
    p.set_defaults(func=_cmd_cyclo_factors)

    p = subs.add_parser("dynatomic", help="print a (generalized) dynatomic polynomial")
    p.add_argument("--f", type=str, required=True)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=int, default=None,
                   help="prime: interpret f over the field with p elements")
    _add_format(p)
    p.set_defaults(func=_cmd_dynatomic)

    p = subs.add_parser("relation",
                        help="evaluate and certify a divisibility relation tuple")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--family", type=str, default="x^2+a")
    p.add_argument("--specialize", type=str, default=None, metavar="a=VAL")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--degree-max", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--force", action="store_true",
                   help="run evidence even for non-admissible tuples")
    _add_format(p)
    p.set_defaults(func=_cmd_relation)

    p = subs.add_parser("scan", help="grid scan of x^n - 1 | M_d to CSV/SVG")
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out", type=str, required=True)
    p.add_argument("--svg", type=str, default=None)
    p.set_defaults(func=_cmd_scan)

    p = subs.add_parser("cover", help="hyperplane-cover divisibility certificate")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--certificate", type=str, default=None)
    _add_format(p)
    p.set_defaults(func=_cmd_cover)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ResourceLimitError, ExactDivisionError,
            ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
