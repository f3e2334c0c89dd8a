"""Command-line driver.

    spinsym killing --type 1,1
    spinsym verify --spin 1 --family chiral [--corrupt c21]
    spinsym dimensions --spin 1 --max-r 3 [--constructive]

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error,
3 capacity error (raise --order), 4 Killing type without a closed-form count.
"""
from __future__ import annotations

import argparse
import logging
import random
import sys
from fractions import Fraction

from . import __version__
from .jets import CapacityError, JetContext, commutation_check
from .killing import DomainError, conformal_killing_basis, killing_dimension, solve_killing
from .reports import Report, item

log = logging.getLogger("spinsym")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY, EXIT_NO_FORMULA = 0, 1, 2, 3, 4

FAMILIES = ("scaling", "conformal", "dual-conformal", "chiral", "lie", "commutation",
            "maxwell", "dirac")


class UsageError(Exception):
    pass


def parse_spin(text: str) -> int:
    """'3/2' -> 3 (returns 2s)."""
    try:
        s = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a spin value: {text!r}") from None
    two_s = 2 * s
    if two_s.denominator != 1 or two_s < 1:
        raise argparse.ArgumentTypeError(f"spin must be a positive multiple of 1/2, got {text}")
    return int(two_s)


def parse_type(text: str) -> tuple[int, int]:
    try:
        k, l = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"type must look like k,l, got {text!r}") from None
    if k < 0 or l < 0:
        raise argparse.ArgumentTypeError("k and l must be non-negative")
    return k, l


def parse_corrupt(text: str) -> tuple[int, int]:
    """'c21' -> (2s, p) = (2, 1)."""
    if len(text) != 3 or text[0] != "c" or not text[1:].isdigit():
        raise argparse.ArgumentTypeError(f"corruption target must look like c21, got {text!r}")
    return int(text[1]), int(text[2])


def build_parser() -> argparse.ArgumentParser:
    def common(parser, defaults):
        # accepted before or after the subcommand; SUPPRESS keeps a later
        # subparser from resetting a value given up front
        dflt = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
        parser.add_argument("--format", choices=("json", "table"), default=dflt("table"))
        parser.add_argument("--seed", type=int, default=dflt(0), help="seed for sampled checks")
        parser.add_argument("--cache-dir", default=dflt(None),
                            help="Killing-basis cache (default $SPINSYM_CACHE_DIR)")
        parser.add_argument("-v", "--verbose", action="store_true", default=dflt(False))

    p = argparse.ArgumentParser(prog="spinsym", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"spinsym {__version__}")
    common(p, True)
    shared = argparse.ArgumentParser(add_help=False)
    common(shared, False)
    sub = p.add_subparsers(dest="command", required=True)

    k = sub.add_parser("killing", parents=[shared], help="solve the Killing spinor equations of one type")
    k.add_argument("--type", dest="ktype", type=parse_type, required=True, metavar="K,L")
    k.add_argument("--degree-bound", type=int, default=None)
    k.add_argument("--no-cache", action="store_true")

    v = sub.add_parser("verify", parents=[shared], help="build and verify a symmetry family over a full basis")
    v.add_argument("--spin", type=parse_spin, default=2, metavar="S")
    v.add_argument("--family", choices=FAMILIES, required=True)
    v.add_argument("--order", type=int, default=None, help="jet order of the verification ring")
    v.add_argument("--corrupt", type=parse_corrupt, default=None, metavar="cXY",
                   help="replace the chiral weight c_{X,Y} by 1 (negative control)")
    v.add_argument("--samples", type=int, default=None,
                   help="sampled pairs for lie (default 10), coefficient sets per h for maxwell (default 3)")

    d = sub.add_parser("dimensions", parents=[shared], help="dimension table, optionally with constructive ranks")
    d.add_argument("--spin", type=parse_spin, default=2, metavar="S")
    d.add_argument("--theory", choices=("spin", "maxwell", "dirac"), default="spin")
    d.add_argument("--max-r", type=int, default=3)
    d.add_argument("--min-r", type=int, default=None)
    d.add_argument("--constructive", action="store_true")
    d.add_argument("--constructive-max-r", type=int, default=2,
                   help="largest r for which a constructive rank is attempted")
    return p


# -- killing ------------------------------------------------------------------------


def cmd_killing(args, report: Report) -> int:
    k, l = args.ktype
    basis = solve_killing(k, l, args.degree_bound, use_cache=not args.no_cache,
                          cache_root=args.cache_dir)
    try:
        expected = killing_dimension(k, l)
    except DomainError:
        expected = None
    ok = expected is not None and basis.dimension == expected
    report.add(item("killing", "killing", {"type": f"{k},{l}", "degree_bound": basis.degree_bound},
                    -1, ok, 0, basis.dimension, expected))
    if expected is None:
        return EXIT_NO_FORMULA
    return EXIT_OK if ok else EXIT_FAIL


# -- verify -------------------------------------------------------------------------


def _spin_reports(args, report: Report) -> None:
    from . import symmetries as sy

    two_s = args.spin
    coeffs = None
    if args.corrupt is not None:
        cs, cp = args.corrupt
        if cs != two_s:
            raise UsageError(f"--corrupt c{cs}{cp} does not match spin {Fraction(two_s, 2)}")
        if args.family not in ("chiral", "dirac"):
            raise UsageError("--corrupt applies to the chiral families")
        coeffs = {cp: Fraction(1)}

    def ctx_for(order):
        need = order + 1
        if args.order is not None:
            if args.order < need:
                raise CapacityError(f"order {args.order} too small, characteristic needs {need}")
            need = args.order
        return JetContext(two_s, need)

    def add(Q, params):
        res = sy.verify_symmetry(Q, ctx_for(max(Q.order, 0)))
        report.add(item("verify", Q.family or args.family, {"spin": str(Fraction(two_s, 2)), **params},
                        Q.order, res["pass"], res["residual_terms"]))

    fam = args.family
    if fam == "scaling":
        for kind in ("S", "S_tilde"):
            add(sy.build_scaling(two_s, kind), {"kind": kind})
    elif fam in ("conformal", "dual-conformal"):
        for xi in conformal_killing_basis():
            add(sy.build_conformal(xi, two_s, dual=fam == "dual-conformal"), {"xi": xi.name})
    elif fam == "chiral":
        for n, pi in enumerate(solve_killing(0, 2 * two_s, use_cache=True, cache_root=args.cache_dir)):
            add(sy.build_chiral(pi, two_s, coefficients=coeffs), {"pi": n})
    elif fam == "lie":
        rng = random.Random(args.seed)
        ckvs = conformal_killing_basis()
        pis = solve_killing(0, 2 * two_s, use_cache=True, cache_root=args.cache_dir).elements
        for _ in range(args.samples or 10):
            zeta = rng.choice(ckvs)
            if rng.random() < 0.5:
                xi = rng.choice(ckvs)
                base, label = sy.build_conformal(xi, two_s), {"base": f"Z[{xi.name}]"}
            else:
                n = rng.randrange(len(pis))
                base, label = sy.build_chiral(pis[n], two_s), {"base": f"W[pi{n}]"}
            Q = sy.lie_derive(base, zeta)
            res = sy.verify_symmetry(Q, ctx_for(Q.order))
            ok = res["pass"] and Q.order == base.order + 1
            report.add(item("verify", "lie", {"spin": str(Fraction(two_s, 2)), **label, "zeta": zeta.name},
                            Q.order, ok, res["residual_terms"]))
    elif fam == "commutation":
        for p in (1, 2):
            res = commutation_check(two_s, p)
            report.add(item("verify", "commutation", {"spin": str(Fraction(two_s, 2)), "p": p},
                            p, res["pass"], len(res["violations"])))
    else:
        raise UsageError(f"family {fam!r} is not spin-generic")


def _maxwell_reports(args, report: Report) -> None:
    from . import maxwell as mx
    from .killing import killing_residual

    rng = random.Random(args.seed)
    D = mx.MaxwellDictionary(args.order or 4)
    for xi in conformal_killing_basis():
        for dual in (False, True):
            res = D.determining_residuals(mx.tensor_conformal(xi, dual))
            n = sum(len(v) for v in res.values())
            report.add(item("verify", "maxwell-conformal", {"xi": xi.name, "dual": dual}, 1, n == 0, n))
    for h in range(5):
        for s in range(args.samples or 3):
            a = mx.random_admissible(h, rng)
            p = mx.build_p(h, a)
            W = mx.maxwell_chiral(p)
            res = D.determining_residuals(W)
            n = sum(len(v) for v in res.values())
            pi = mx.spinor_projection(p)
            closed = mx.pi_closed_form(h, mx.alpha_from_a(h, a))
            kill = killing_residual(0, 4, pi.comps)
            ok = (n == 0 and all(pi.comps[key] == closed.comps[key] for key in pi.comps)
                  and not any(kill.values()))
            report.add(item("verify", "maxwell-chiral", {"h": h, "sample": s}, 2, ok, n))


def _dirac_reports(args, report: Report) -> None:
    from . import dirac as dc

    coeffs = None
    if args.corrupt is not None:
        cs, cp = args.corrupt
        if cs != 1:
            raise UsageError("the Dirac chiral weights are c10 and c11")
        coeffs = {cp: Fraction(1)}
    variants = [(), ("gamma5",), ("conjugate",), ("conjugate", "gamma5")]

    def add(Q, params):
        res = dc.verify_dirac(Q)
        report.add(item("verify", f"dirac-{Q.family}", {"variant": "+".join(Q.variant) or "plain", **params},
                        Q.order, res["pass"], res["residual_terms"]))

    if coeffs is None:
        for fam in ("S", "S_tilde"):
            for v in variants:
                add(dc.build_dirac_symmetry(fam, variants=v), {})
        for xi in conformal_killing_basis():
            for v in variants:
                add(dc.build_dirac_symmetry("Z", xi, v), {"xi": xi.name})
    for n, pi in enumerate(solve_killing(0, 2, use_cache=True, cache_root=args.cache_dir)):
        for v in variants:
            add(dc.build_dirac_symmetry("W", pi, v, coefficients=coeffs), {"pi": n})


def cmd_verify(args, report: Report) -> int:
    if args.family == "maxwell":
        _maxwell_reports(args, report)
    elif args.family == "dirac":
        _dirac_reports(args, report)
    else:
        _spin_reports(args, report)
    return EXIT_OK if all(r["pass"] for r in report.items) else EXIT_FAIL


# -- dimensions ---------------------------------------------------------------------


def cmd_dimensions(args, report: Report) -> int:
    from . import symmetries as sy

    ok = True
    if args.theory == "spin":
        lo = 0 if args.min_r is None else args.min_r
        for r in range(lo, args.max_r + 1):
            expected = sy.dimension_d_r(args.spin, r)
            rank = None
            if args.constructive and r <= args.constructive_max_r:
                rank = sy.constructive_rank(args.spin, r)["rank"]
            good = rank is None or rank == expected
            ok = ok and good
            report.add(item("dimensions", "d_r", {"spin": str(Fraction(args.spin, 2)), "r": r},
                            r, good, 0, rank, expected))
    elif args.theory == "maxwell":
        from .maxwell import maxwell_dimension
        lo = 2 if args.min_r is None else max(2, args.min_r)
        for r in range(lo, args.max_r + 1):
            expected = maxwell_dimension(r)
            good = expected == sy.dimension_d_r(2, r)
            ok = ok and good
            report.add(item("dimensions", "maxwell", {"r": r}, r, good, 0,
                            sy.dimension_d_r(2, r), expected))
    else:
        from .dirac import dirac_constructive_rank, dirac_dimension
        lo = 1 if args.min_r is None else max(1, args.min_r)
        for r in range(lo, args.max_r + 1):
            expected = dirac_dimension(r)
            rank = None
            if args.constructive and r <= min(args.constructive_max_r, 1):
                rank = dirac_constructive_rank(r)["rank"]
            good = (rank is None or rank == expected) and expected == 4 * sy.dimension_d_r(1, r)
            ok = ok and good
            report.add(item("dimensions", "dirac", {"r": r}, r, good, 0, rank, expected))
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"killing": cmd_killing, "verify": cmd_verify, "dimensions": cmd_dimensions}


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("verbose", "cache_dir")}
    if "spin" in cfg:
        cfg["spin"] = str(Fraction(cfg["spin"], 2))
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    report = Report(args.command, _config(args))
    try:
        code = COMMANDS[args.command](args, report)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"spinsym: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as e:
        print(f"spinsym: capacity error: {e}; rerun with a larger --order", file=sys.stderr)
        code = EXIT_CAPACITY
    render = report.json_lines if args.format == "json" else report.table
    sys.stdout.write(render(code))
    if code == EXIT_NO_FORMULA:
        print("spinsym: no closed-form dimension for this Killing type", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
