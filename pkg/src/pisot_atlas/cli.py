"""pisot-atlas command line."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import field_atlas as fa
from .errors import DomainError, ParseError, PisotAtlasError
from .exact_arith.polynomial import IntPolynomial
from .number_field import FieldElement, NumberField, format_decimal, make_field, parse_field
from .pisot_salem import is_salem_trace, lift_salem, trace_power
from .report import Report, element_json, emit_report, num, parse_coords

COMMANDS = (
    "field-info",
    "pisot",
    "gaps",
    "u-set",
    "min-trace",
    "lift",
    "trace-powers",
    "decompose",
    "represent",
    "witnesses",
    "quad-oracle",
    "density",
)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


class _Parser(argparse.ArgumentParser):
    """Usage errors are reported as error JSON with exit code 2."""

    def error(self, message):
        doc = {"error": "ParseError", "message": message, "command": None, "exit_code": "2"}
        sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help='field spec: "sqrt:m" or "poly:[c0,...,1]"')
    common.add_argument("--bound", type=_rational, default=Fraction(100), help="search bound X (default 100)")
    common.add_argument("--cap", type=int, default=10**4, help="exponent/iteration guard (default 10^4)")
    common.add_argument("--precision", type=int, default=12, help="decimal digits shown (display only)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=0, help="reserved; every command is deterministic")
    common.add_argument("--poly", help="polynomial as an ascending coefficient list, e.g. [-3,-1,1]")
    common.add_argument("--element", help="element coordinates over the field's integral basis, e.g. [1,1]")
    common.add_argument("--count", type=int, default=5, help="number of items (default 5)")
    common.add_argument("-N", type=int, default=200, help="number of trace powers (default 200)")
    common.add_argument("--bins", type=int, default=8, help="bins per axis (default 8)")
    common.add_argument("--initial-bound", type=_rational, default=Fraction(4), help="min-trace start bound")
    ap = _Parser(prog="pisot-atlas", description="Pisot numbers generating a given number field")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return ap


# -- helpers --------------------------------------------------------------------------


def _need_field(args) -> NumberField:
    if not args.field:
        raise ParseError("this command needs --field")
    return parse_field(args.field)


def _need_poly(args) -> IntPolynomial:
    if not args.poly:
        raise ParseError("this command needs --poly")
    return IntPolynomial.parse(args.poly)


def _element(K: NumberField, args) -> FieldElement:
    coords = parse_coords(args.element)
    if len(coords) != K.degree:
        raise ParseError(f"expected {K.degree} coordinates")
    return K.element(coords)


def _ej(x: FieldElement, args) -> dict:
    return element_json(x, args.precision)


def _cert_json(cert: fa.DifferenceCertificate, args) -> dict:
    out = {
        "target": _ej(cert.target, args),
        "minuend": _ej(cert.minuend, args),
        "subtrahend": _ej(cert.subtrahend, args),
        "kind": cert.kind,
        "verified": cert.verify(),
    }
    if cert.violation_embedding is not None:
        out["violation_embedding"] = str(cert.violation_embedding)
    return out


def _caveats(K: NumberField) -> list[str]:
    if K.maximality.is_maximal:
        return []
    return ["integral basis is the power basis; maximality of the order not certified"]


# -- commands -----------------------------------------------------------------------------


def cmd_field_info(args) -> Report:
    K = _need_field(args)
    emb = []
    width = Fraction(1, 10 ** (args.precision + 2))
    for j in range(1, K.n_embeddings + 1):
        if K.is_real_embedding(j):
            approx = {"re": format_decimal(K.real_root(j, width).mid, args.precision)}
        else:
            disk = K.complex_root(j, width)
            approx = {"re": format_decimal(disk.re, args.precision), "im": format_decimal(disk.im, args.precision)}
        emb.append({"index": str(j), "real": K.is_real_embedding(j), "approx": approx})
    result = {"disc_defining": str(K.disc_defining), "embeddings": emb}
    return Report(K, "field-info", result, {"maximality": K.maximality.value}, _caveats(K), digits=args.precision)


def cmd_pisot(args) -> Report:
    K = _need_field(args)
    thetas = fa.enumerate_pisot(K, args.bound)
    result = {"bound": num(args.bound), "count": str(len(thetas)), "pisot": [_ej(x, args) for x in thetas]}
    certs = {"method": "lattice box enumeration with exact membership decisions"}
    if K.surd is not None:
        certs["quadratic_closed_form_agrees"] = True
    rows = [(f"theta_{i}", x) for i, x in enumerate(thetas, start=1)]
    return Report(K, "pisot", result, certs, _caveats(K), rows, args.precision)


def cmd_gaps(args) -> Report:
    K = _need_field(args)
    rep = fa.gap_report(K, args.bound)
    u3, d3, agree = rep.third_values
    result = {
        "bound": num(args.bound),
        "pisot_count": str(len(rep.pisot_list)),
        "gaps": [
            {"value": _ej(g.value, args), "first_index": str(g.first_index), "multiplicity": str(g.multiplicity)}
            for g in rep.gaps
        ],
        "rho": _ej(rep.rho, args),
        "stabilization_index": str(rep.stabilization_index),
        "u_set": [_ej(u, args) for u in rep.u_set] if rep.u_set is not None else None,
        "min_trace": _ej(rep.min_trace, args) if rep.min_trace is not None else None,
        "third_values": {
            "u3": _ej(u3, args) if u3 is not None else None,
            "d3": _ej(d3, args) if d3 is not None else None,
            "agree": None if agree is None else agree,
        },
    }
    certs = {
        "gaps_in_EK": True,
        "telescoping": [
            {"m": str(m), "n": str(n), "gap_counts": [str(c) for c in ls]} for m, n, ls in rep.telescoping_pairs
        ],
        "basis": rep.basis_caveat.value,
    }
    rows = [(f"d_{i}", g.value) for i, g in enumerate(rep.gaps, start=1)]
    return Report(K, "gaps", result, certs, rep.caveats, rows, args.precision)


def cmd_u_set(args) -> Report:
    K = _need_field(args)
    us = fa.compute_U_detailed(K)
    result = {
        "u_set": [
            dict(_ej(u.value, args), n=str(u.recognition.n), k=str(u.recognition.k)) for u in us
        ]
    }
    certs = {"route": "E_K slice and cyclotomic-trace search" if K.is_totally_real else "cyclotomic-trace search"}
    caveats = _caveats(K)
    if not K.is_totally_real:
        caveats.append("field is not totally real; only the cyclotomic-trace route applies")
    rows = [(f"u_{i}", u.value) for i, u in enumerate(us, start=1)]
    return Report(K, "u-set", result, certs, caveats, rows, args.precision)


def cmd_min_trace(args) -> Report:
    K = _need_field(args)
    x = fa.compute_minT(K, args.initial_bound)
    cert = is_salem_trace(x) if K.degree > 1 else None
    certs = {}
    if cert is not None:
        certs["salem_trace"] = {
            "value": cert.value,
            "degree": str(cert.degree),
            "roots_in_open_band": str(cert.roots_in_open_band),
        }
    return Report(K, "min-trace", _ej(x, args), certs, _caveats(K), [("min_T", x)], args.precision)


def cmd_lift(args) -> Report:
    m = _need_poly(args)
    lift = lift_salem(m)
    # the enclosure is a fixed-width certificate; only the approximation follows --precision
    enc = lift.refine(Fraction(1, 1 << 64))
    fine = lift.refine(min(enc.width, Fraction(1, 10 ** (args.precision + 2))))
    result = {
        "source": [str(c) for c in m.coeffs],
        "lifted": [str(c) for c in lift.lifted_poly.coeffs],
        "salem_enclosure": [num(enc.lo), num(enc.hi)],
        "approx": format_decimal(fine.mid, args.precision),
    }
    return Report(None, "lift", result, {"salem_polynomial": True}, [], digits=args.precision)


def cmd_trace_powers(args) -> Report:
    m = _need_poly(args)
    K = make_field(m)
    beta = K.theta
    if args.count < 1:
        raise DomainError("--count must be positive")
    values = [trace_power(beta, n, check=(n == args.count)) for n in range(1, args.count + 1)]
    result = {"powers": [dict(_ej(v, args), n=str(n)) for n, v in enumerate(values, start=1)]}
    rows = [(f"beta_{n}", v) for n, v in enumerate(values, start=1)]
    return Report(K, "trace-powers", result, {"salem_trace": True}, _caveats(K), rows, args.precision)


def cmd_decompose(args) -> Report:
    K = _need_field(args)
    if args.element:
        targets = [_element(K, args)]
    else:
        targets = fa.iter_EK(K, args.bound)
    certs = [fa.decompose_difference(K, b) for b in targets]
    result = {"decompositions": [_cert_json(c, args) for c in certs]}
    rows = []
    for i, c in enumerate(certs, start=1):
        rows += [(f"beta_{i}", c.target), (f"theta'_{i}", c.minuend), (f"theta_{i}", c.subtrahend)]
    return Report(K, "decompose", result, {"all_verified": all(c.verify() for c in certs)}, _caveats(K), rows, args.precision)


def cmd_represent(args) -> Report:
    if args.poly:
        lift = lift_salem(_need_poly(args))
        K, tau = fa.salem_field(lift)
        caveats = ["field of the Salem polynomial built with irreducibility inferred from the lift"]
    else:
        K = _need_field(args)
        tau = _element(K, args) if args.element else fa.first_pisot(K)
        caveats = []
    cert = fa.represent_as_difference(tau, args.cap)
    rows = [("tau", cert.target), ("tau*alpha", cert.minuend), ("tau*alpha'", cert.subtrahend)]
    return Report(K, "represent", _cert_json(cert, args), {"verified": cert.verify()}, _caveats(K) + caveats, rows, args.precision)


def cmd_witnesses(args) -> Report:
    K = _need_field(args)
    ws = fa.nonpisot_difference_witnesses(K, args.count, args.cap)
    result = {"witnesses": [_cert_json(w, args) for w in ws]}
    rows = [(f"w_{i}", w.target) for i, w in enumerate(ws, start=1)]
    return Report(K, "witnesses", result, {"all_verified": all(w.verify() for w in ws)}, _caveats(K), rows, args.precision)


def cmd_quad_oracle(args) -> Report:
    K = _need_field(args)
    if K.surd is None:
        raise DomainError("quad-oracle needs a field given as sqrt:m")
    q = fa.quadratic_closed_forms(K.surd)
    rep = fa.gap_report(K, args.bound)
    agree = {
        "gaps": [g.value.coords for g in rep.gaps] == [g.coords for g in q.gaps],
        "u_set": [u.coords for u in rep.u_set] == [u.coords for u in q.u_set],
        "min_trace": rep.min_trace == q.min_trace,
    }
    result = {
        "predicted": {
            "u_set": [_ej(u, args) for u in q.u_set],
            "gaps": [_ej(g, args) for g in q.gaps],
            "min_trace": _ej(q.min_trace, args),
        },
        "observed_bound": num(args.bound),
        "agrees": agree,
    }
    rows = [(f"F_{i}", g) for i, g in enumerate(q.gaps, start=1)] + [("min_T", q.min_trace)]
    caveats = ["observed gap set depends on the bound; disagreement at small bounds is not an error"]
    return Report(K, "quad-oracle", result, {"closed_form": True}, caveats, rows, args.precision)


def cmd_density(args) -> Report:
    lift = lift_salem(_need_poly(args))
    res = fa.density_experiment(lift, args.N, args.bins)
    cells = [
        {"cell": [str(c) for c in cell], "hits": str(n)} for cell, n in sorted(res.counts.items())
    ]
    result = {
        "N": str(res.N),
        "bins_per_axis": str(res.bins_per_axis),
        "dims": str(res.dims),
        "cells_hit": str(res.cells_hit),
        "cells_total": str(res.cells_total),
        "all_hit": res.all_hit,
        "pisot_window_rate": num(res.pisot_window_rate),
        "cells": cells,
    }
    return Report(None, "density", result, {}, ["a finite coverage count, not a density proof"], digits=args.precision)


HANDLERS = {
    "field-info": cmd_field_info,
    "pisot": cmd_pisot,
    "gaps": cmd_gaps,
    "u-set": cmd_u_set,
    "min-trace": cmd_min_trace,
    "lift": cmd_lift,
    "trace-powers": cmd_trace_powers,
    "decompose": cmd_decompose,
    "represent": cmd_represent,
    "witnesses": cmd_witnesses,
    "quad-oracle": cmd_quad_oracle,
    "density": cmd_density,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.precision < 0:
        args.precision = 0
    try:
        report = HANDLERS[args.command](args)
        sys.stdout.write(emit_report(report, args.format))
        return 0
    except PisotAtlasError as exc:
        doc = {"error": type(exc).__name__, "message": str(exc), "command": args.command, "exit_code": str(exc.exit_code)}
        sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
