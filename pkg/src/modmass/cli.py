"""Command line front end: ``modmass <subcommand> [options]``.

Every subcommand writes one report (CSV by default) to stdout or ``--out``
and a PASS/FAIL summary to stderr.  Exit status: 0 when every asserted check
passes, 1 when one fails, 2 on a usage or input error.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings

from . import experiments as ex
from .errors import DomainError, ModmassError, ParseError, ValidationError
from .numerics import ENV_PRECISION

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

SUBCOMMANDS = ("eigenform", "whittaker", "eisenstein", "rankin-selberg", "que-scan", "shifted-sum", "maass-check", "selftest")

# weights used when neither --weights nor the config file gives any
DEFAULT_WEIGHTS = {
    "eigenform": list(ex.DESK_WEIGHTS),
    "rankin-selberg": [12, 16],
    "que-scan": list(ex.DESK_WEIGHTS),
    "shifted-sum": [12],
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--config", help="config file (JSON object or key = value lines)")
    common.add_argument("--weights", type=_int_list, help="comma-separated even weights, e.g. 12,16")
    common.add_argument("--precision-bits", type=int, dest="precision_bits")
    common.add_argument("--tol", type=float, help="acceptance tolerance (quadrature runs at min(tol, 1e-8), never below 1e-12)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--include-dim2", action="store_true", dest="include_dim2", default=None, help="allow weights 24 and 28")

    p = _Parser(prog="modmass", description="Desk-scale experiments with modular forms of weight k.")
    sub = p.add_subparsers(dest="command", metavar="subcommand", parser_class=_Parser)
    sub.required = True
    sp = sub.add_parser("eigenform", parents=[common], help="Hecke eigenforms, L(1, sym^2 f) and the Hecke relation suite")
    sp.add_argument("--N", type=int, help="q-expansion length")
    sp.add_argument("--cache", help="also write the eigenform cache file here")
    sub.add_parser("whittaker", parents=[common], help="closed form vs recursion, k = 0 Bessel route")
    sub.add_parser("eisenstein", parents=[common], help="coset sum vs Fourier expansion, residue, raising")
    sp = sub.add_parser("rankin-selberg", parents=[common], help="Dirichlet series vs quadrature for all pairs from --weights")
    sp.add_argument("--s", type=float, help="real s in [1.5, 3]")
    sp = sub.add_parser("que-scan", parents=[common], help="diagonal masses and Eisenstein overlaps across weights")
    sp.add_argument("--s", type=float)
    sp = sub.add_parser("shifted-sum", parents=[common], help="shifted convolution sums against the sieve bound")
    sp.add_argument("--x", type=_int_list, help="comma-separated x values (default 1000,10000,100000)")
    sp.add_argument("--deltas", type=_float_list, help="comma-separated delta values (default 0.5,0.9)")
    sp = sub.add_parser("maass-check", parents=[common], help="checks on an ingested Maass coefficient file")
    sp.add_argument("--input", help="Maass coefficient file")
    sub.add_parser("selftest", parents=[common], help="quick closed-form checks of every module")
    return p


def _config(args):
    data = ex.parse_config_text(open(args.config).read()) if args.config else {}
    data.setdefault("experiment", args.command)
    explicit_bits = "precision_bits" in data or args.precision_bits is not None
    for key in ("weights", "precision_bits", "tol", "format", "include_dim2", "output"):
        val = getattr(args, "out" if key == "output" else key, None)
        if val is not None:
            data[key] = val
    if "weights" not in data and args.command in DEFAULT_WEIGHTS:
        data["weights"] = DEFAULT_WEIGHTS[args.command]
    for key in ("N", "input"):
        if getattr(args, key, None) is not None:
            data[key] = getattr(args, key)
    if not explicit_bits and os.environ.get(ENV_PRECISION):
        data["precision_bits"] = int(os.environ[ENV_PRECISION])
    cfg = ex.ExperimentConfig.from_mapping(data)
    # everything below picks its precision up from the environment
    os.environ[ENV_PRECISION] = str(cfg.precision_bits)
    return cfg


def _run(args, cfg):
    cmd = args.command
    if cmd == "selftest":
        from .selftest import run_selftest

        return run_selftest()
    if cmd == "eigenform":
        rep = ex.eigenform_report(cfg.weights, cfg.N, cfg.include_dim2, cfg.prec)
        if args.cache:
            from .io import write_eigenforms

            write_eigenforms(rep.forms, args.cache)
        return rep
    if cmd == "whittaker":
        return ex.whittaker_report(prec=cfg.prec)
    if cmd == "eisenstein":
        return ex.eisenstein_report(B=cfg.B, prec=cfg.prec)
    if cmd == "rankin-selberg":
        s = args.s if args.s is not None else cfg.s_values[0]
        if not 1.5 <= s <= 3:
            raise UsageError(f"--s must lie in [1.5, 3], got {s}")
        ws = sorted(cfg.weights)
        pairs = [((a, 0), (b, 0)) for i, a in enumerate(ws) for b in ws[i:]]
        return ex.rankin_selberg_report(pairs, s=s, tol=cfg.tol, config=cfg)
    if cmd == "que-scan":
        s = args.s if args.s is not None else cfg.s_values[0]
        return ex.que_scan(cfg.weights, s, cfg)
    if cmd == "shifted-sum":
        xs = args.x or [1_000, 10_000, 100_000]
        deltas = args.deltas or [0.5, 0.9]
        if min(xs) < 100:
            raise UsageError("--x values must be at least 100")
        k1, k2 = cfg.weights[0], cfg.weights[-1]
        N = max(xs) + 10
        f, g = ex._form(k1, N=N), ex._form(k2, N=N)
        rep = ex.sieve_suite(f, g, xs=xs, deltas=deltas)
        ps = ex.prime_sum_inequality(f, min(1000, N))
        rep.check(f"prime-sum inequality, f = {f.label}, K = {ps['K']}", ps["holds"], ps["min_margin"], "margin >= 0")
        m_lo, m_hi = ex.m_quantity(f, g), ex.m_quantity(f, g, 26)
        rep.fitted["M_fg"] = m_lo
        rep.fitted["M_fg_k2_26"] = m_hi
        return rep
    if cmd == "maass-check":
        if not cfg.input:
            raise UsageError("maass-check needs --input (or input = ... in the config file)")
        from .io import ingest_maass

        return ex.maass_report(ingest_maass(cfg.input))
    raise UsageError(f"unknown subcommand {cmd!r}")


def cli_main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except (ValidationError, ParseError, DomainError, OSError, ValueError) as exc:
        print(f"modmass: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rep = _run(args, cfg)
    except UsageError as exc:
        print(f"modmass {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, ParseError, OSError) as exc:
        print(f"modmass {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ModmassError as exc:
        print(f"modmass {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED
    text = rep.to_csv() if cfg.format == "csv" else rep.to_json()
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for line in rep.summary_lines():
        print(line, file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAILED


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
