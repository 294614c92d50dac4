"""Command-line front end.

Exit status: 0 on success (claim holds, check passes), 1 on a
counterexample or failed check, 2 on usage or computation errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import cache
from .congruence import CongruenceClaim, progression_level, scan_ramanujan, sturm_bound, verify_claim
from .etatheta import EtaQuotient, eta_quotient_meta, eta_quotient_series, theta_meta, theta_series
from .frobenius import SeriesSpec
from .parity import (
    ParityParams,
    bound_cphibar_exact,
    bound_general_exact,
    check_mod2_factorization,
    cphibar2_form_series,
    min_j_cphibar,
    parity_search,
)
from .qseries import QSeries, reduce_mod

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _series_dict(spec, s: QSeries):
    return {
        "spec": str(spec),
        "offset": s.offset,
        "trunc": s.trunc,
        "modulus": s.modulus,
        "coeffs": [str(c) for c in s.coeffs],
    }


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


def _maybe_mod(args, s: QSeries) -> QSeries:
    return reduce_mod(s, args.mod) if args.mod else s


def _series(args, spec: SeriesSpec, T: int) -> QSeries:
    return cache.cached_series(spec, T, None, args.cache)


# subcommands


def cmd_expand(args):
    spec = SeriesSpec.parse(args.spec)
    s = cache.cached_series(spec, args.terms, args.mod, args.cache)
    _emit(args, _series_dict(spec, s), " ".join(str(c) for c in s.coeffs))
    return EXIT_OK


def cmd_verify(args):
    claim = CongruenceClaim.parse(args.claim)
    form = (args.weight, args.level) if args.weight is not None and args.level is not None else None
    series = _series(args, claim.spec, claim.A * args.limit + claim.B + 1)
    report = verify_claim(claim, args.limit, series=series, form=form)
    if report.counterexample:
        n, value = report.counterexample
        text = f"counterexample: n={n}, coefficient({claim.A * n + claim.B}) = {value}"
    else:
        text = f"{report.status}: {claim} for 0 <= n <= {args.limit}"
        if report.sturm is not None:
            text += f" (Sturm bound {report.sturm})"
    _emit(args, report.to_dict(), text)
    return EXIT_OK if report.holds else EXIT_FAIL


def cmd_scan(args):
    spec = SeriesSpec.parse(args.spec)
    need = args.ell_max * args.limit + args.ell_max
    found = scan_ramanujan(spec, args.ell_max, args.limit, args.ell_min, series=_series(args, spec, need))
    _emit(
        args,
        {"spec": str(spec), "ell_max": args.ell_max, "n_max": args.limit, "candidates": found},
        "\n".join(f"{ell} {beta}" for ell, beta in found) or "(none)",
    )
    return EXIT_OK


def cmd_sturm(args):
    level = args.level
    if args.t is not None:
        level = progression_level(args.level, args.r, args.t)
    bound = sturm_bound(args.weight, level)
    _emit(args, {"weight": args.weight, "level": level, "bound": bound}, str(bound))
    return EXIT_OK


def _meta_dict(meta):
    out = {
        "weight": str(meta.weight),
        "weight_halves": meta.weight_halves,
        "level": meta.level,
        "character_disc": meta.character_disc,
        "flag": meta.holomorphic_flag,
    }
    if meta.cusp_orders is not None:
        out["cusp_orders"] = {str(d): str(v) for d, v in meta.cusp_orders.items()}
    return out


def cmd_theta(args):
    meta = theta_meta(args.k)
    s = _maybe_mod(args, theta_series(args.k, args.terms))
    payload = {"k": args.k, "meta": _meta_dict(meta), "series": _series_dict(f"theta:{args.k}", s)}
    text = (
        f"weight {meta.weight}, level {meta.level}, character ({meta.character_disc}|.), "
        f"{meta.holomorphic_flag}\n" + " ".join(str(c) for c in s.coeffs)
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_eta(args):
    eq = EtaQuotient.parse(args.eta)
    payload, lines = {"eta": str(eq)}, []
    if not args.no_prefactor:
        meta = eta_quotient_meta(eq, args.level)
        payload["meta"] = _meta_dict(meta)
        lines.append(
            f"weight {meta.weight}, level {meta.level}, character ({meta.character_disc}|.), "
            f"{meta.holomorphic_flag}"
        )
        lines.append(
            "cusp orders: " + " ".join(f"1/{d}:{v}" for d, v in sorted(meta.cusp_orders.items()))
        )
    s = _maybe_mod(args, eta_quotient_series(eq, args.terms, prefactor=not args.no_prefactor))
    payload["series"] = _series_dict(str(eq), s)
    lines.append(f"offset {s.offset}: " + " ".join(str(c) for c in s.coeffs))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_parity(args):
    series = _series(args, SeriesSpec("cphibar2q"), args.limit + 1)
    report = parity_search(args.r, args.t, args.limit, series=series)
    text = (
        f"r={args.r} t={args.t} limit={args.limit}: {len(report.odd)} odd, "
        f"{report.even_count} even, smallest odd {report.smallest_odd}, C={report.bound}\n"
        f"{report.verdict}"
    )
    _emit(args, report.to_dict(), text)
    return EXIT_OK


def cmd_bound(args):
    if args.general:
        params = ParityParams(args.alpha, args.beta, args.t, args.r, args.N0, args.weight_k, args.j or 0)
        exact = bound_general_exact(params, args.level)
    else:
        j = min_j_cphibar(args.t) if args.j is None else args.j
        exact = bound_cphibar_exact(args.r, args.t, j)
    value = -(-exact.numerator // exact.denominator)
    _emit(
        args,
        {"r": args.r, "t": args.t, "bound": str(value), "rounded": exact.denominator != 1},
        str(value),
    )
    return EXIT_OK


def cmd_factorcheck(args):
    params = ParityParams.cphibar2(args.t, j=args.j)
    T = args.terms
    c = cphibar2_form_series(T)
    result = check_mod2_factorization(c, params, T)
    text = (
        f"t={args.t} j={params.j} through q^{T - 1}: "
        + ("pass" if result.passed else f"FAIL at exponent {result.first_mismatch}")
    )
    _emit(args, {"t": args.t, "j": params.j, "trunc": T, "passed": result.passed,
                 "first_mismatch": result.first_mismatch}, text)
    return EXIT_OK if result.passed else EXIT_FAIL


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--terms", type=int, default=20, help="exponents below this are computed")
    common.add_argument("--mod", type=int, default=None, help="reduce printed series mod m")
    common.add_argument("--cache", type=Path, default=None, help=f"cache directory (default ${cache.CACHE_ENV})")

    parser = _Parser(prog="cphilab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("expand", parents=[common], help="print coefficients of a series")
    p.add_argument("spec", help="partition | cphi:k | cphi2prod | cphibar2q | sellers | treneerf:k")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", parents=[common], help="check a congruence on a progression")
    p.add_argument("claim", help="<spec>;A=<int>;B=<int>;M=<int>")
    p.add_argument("--limit", type=int, default=1000)
    p.add_argument("--weight", type=int, default=None, help="asserted weight, for Sturm certification")
    p.add_argument("--level", type=int, default=None, help="asserted Gamma_1 level")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common], help="search for Ramanujan-type congruences")
    p.add_argument("spec")
    p.add_argument("--ell-max", type=int, default=11)
    p.add_argument("--ell-min", type=int, default=2)
    p.add_argument("--limit", type=int, default=500)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("sturm", parents=[common], help="Sturm bound for M_k(Gamma_1(N))")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--r", type=int, default=0, help="sieve residue (with --t)")
    p.add_argument("--t", type=int, default=None, help="sieve modulus; level becomes N t^2/gcd(r,t)")
    p.set_defaults(func=cmd_sturm)

    p = sub.add_parser("theta", parents=[common], help="theta series of Q and its metadata")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("eta", parents=[common], help="eta-quotient expansion and metadata")
    p.add_argument("eta", help="e.g. 192^2,12^-2,96^-1")
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--no-prefactor", action="store_true")
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("parity", parents=[common], help="parity search for cbar phi_2(M)/4")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--limit", type=int, default=1000)
    p.set_defaults(func=cmd_parity)

    p = sub.add_parser("bound", parents=[common], help="bound C_(r,t) on the smallest odd index")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--general", action="store_true", help="general form bound with the options below")
    p.add_argument("--alpha", type=int, default=12)
    p.add_argument("--beta", type=int, default=-1)
    p.add_argument("--N0", type=int, default=576)
    p.add_argument("--weight-k", type=int, default=0)
    p.add_argument("--level", type=int, default=None, help="override lcm(alpha t, N0)")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("factorcheck", parents=[common], help="mod-2 factorization of f_t")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--j", type=int, default=None)
    p.set_defaults(func=cmd_factorcheck, terms=3000)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
