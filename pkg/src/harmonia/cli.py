"""Command line entry point: ``harmonia <subcommand> [flags]``.

Every subcommand prints one JSON document on stdout.  Exit codes:
0 success, 1 acceptance failure, 2 validation error, 64 unknown subcommand,
65 malformed input file.  Errors are reported as {"error": code, "detail": text}.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import acceptance, banach, circle, group, padic, solenoid
from .scalar import complex_to_json

SUBCOMMANDS = ("dft", "conv", "abel", "poisson", "padic", "solenoid", "spectrum", "check")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65


class CliError(Exception):
    def __init__(self, code: str, detail: str, status: int = EXIT_INVALID):
        super().__init__(detail)
        self.code = code
        self.detail = detail
        self.status = status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("invalid_arguments", message)


def _moduli(s: str) -> tuple:
    try:
        mods = tuple(int(x) for x in s.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad moduli {s!r}")
    if not mods or any(m < 1 for m in mods):
        raise argparse.ArgumentTypeError("moduli must be positive integers")
    return mods


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad rational {s!r}")


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CliError("missing_input", f"no such file: {path}", EXIT_DATAERR)
    except json.JSONDecodeError as exc:
        raise CliError("malformed_input", f"{path}: {exc}", EXIT_DATAERR)


def _parse(path: str, ctor):
    doc = _load(path)
    try:
        return ctor(doc)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise CliError("malformed_input", f"{path}: {type(exc).__name__}: {exc}", EXIT_DATAERR)


def _common(p):
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="harmonia", description="Harmonic analysis on finite, circle, r-adic and solenoid groups.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("dft", help="character transform of a GroupFun")
    p.add_argument("--moduli", type=_moduli)
    p.add_argument("--input", required=True)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--method", choices=("naive", "fast"), default="naive")
    _common(p)

    p = sub.add_parser("conv", help="convolution of two GroupFuns or GroupMeasures")
    p.add_argument("--moduli", type=_moduli)
    p.add_argument("--input", required=True)
    p.add_argument("--with", dest="other", required=True)
    _common(p)

    p = sub.add_parser("abel", help="Abel mean of a trigonometric polynomial")
    p.add_argument("--input", required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--z", type=float, default=0.0, help="angle of z in radians")
    _common(p)

    p = sub.add_parser("poisson", help="Poisson extension of circle samples")
    p.add_argument("--input", help="TrigPoly or sampled-function JSON; random samples if omitted")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--z", type=float, default=0.0, help="angle of z in radians")
    p.add_argument("--kernel-table", action="store_true", help="write the kernel table CSV to --out")
    _common(p)

    p = sub.add_parser("padic", help="p-adic and r-adic arithmetic")
    p.add_argument("action", choices=("abs", "val", "inv", "normalize", "pair"))
    p.add_argument("--p", type=int)
    p.add_argument("--radices", type=_moduli)
    p.add_argument("--L", type=int)
    p.add_argument("--x", type=_rational)
    p.add_argument("--y", type=_rational)
    _common(p)

    p = sub.add_parser("solenoid", help="solenoid points and characters")
    p.add_argument("action", choices=("embed", "zr", "add", "char"))
    p.add_argument("--radices", type=_moduli)
    p.add_argument("--a", type=_rational)
    p.add_argument("--x", type=int)
    p.add_argument("--level", type=int)
    p.add_argument("--input")
    p.add_argument("--with", dest="other")
    _common(p)

    p = sub.add_parser("spectrum", help="spectrum and spectral radius of a convolution operator")
    p.add_argument("--input", required=True)
    p.add_argument("--kmax", type=int, default=64)
    _common(p)

    p = sub.add_parser("check", help="run the acceptance suite")
    p.add_argument("--format", choices=("json", "text"), default="json")
    _common(p)
    return parser


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise CliError("missing_flag", "required: " + ", ".join("--" + m for m in missing))


def _check_moduli(args, f):
    if args.moduli is not None and tuple(args.moduli) != f.group.moduli:
        raise CliError("moduli_mismatch", f"--moduli {args.moduli} but input has {f.group.moduli}")


def cmd_dft(args):
    f = _parse(args.input, group.GroupFun.from_json)
    _check_moduli(args, f)
    out = group.idft(f, args.method) if args.inverse else group.dft(f, args.method)
    return out.to_json()


def cmd_conv(args):
    doc = _load(args.input)
    ctor = group.GroupMeasure.from_json if "masses" in doc else group.GroupFun.from_json
    f = _parse(args.input, ctor)
    g = _parse(args.other, ctor)
    if isinstance(f, group.GroupFun):
        _check_moduli(args, f)
    return group.convolve(f, g).to_json()


def _z(angle):
    return complex(math.cos(angle), math.sin(angle))


def cmd_abel(args):
    a = _parse(args.input, circle.TrigPoly.from_json)
    return {"value": complex_to_json(circle.abel_sum(a, args.r, _z(args.z))), "r": args.r, "z": args.z}


def cmd_poisson(args):
    if args.samples < 1:
        raise CliError("invalid_samples", "--samples must be >= 1")
    if args.kernel_table:
        _need(args, "out")
        import csv
        rows = circle.kernel_table([args.r], args.samples)
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["r", "theta_z", "theta_w", "P"])
            w.writerows(rows)
        return {"table": args.out, "rows": len(rows)}
    if args.input is None:
        rng = np.random.default_rng(args.seed)
        f = circle.SampledCircleFun(rng.normal(size=args.samples) + 1j * rng.normal(size=args.samples))
    else:
        doc = _load(args.input)
        if "coeffs" in doc:
            f = _parse(args.input, circle.TrigPoly.from_json).sample(args.samples)
        else:
            f = _parse(args.input, circle.SampledCircleFun.from_json)
    val = circle.poisson_extension(f, args.r, _z(args.z))
    return {
        "value": complex_to_json(val),
        "mean": complex_to_json(complex(np.mean(f.values))),
        "r": args.r,
        "z": args.z,
        "samples": f.to_json(),
    }


def _integer(q: Fraction, flag: str) -> int:
    if q.denominator != 1:
        raise CliError("not_an_integer", f"{flag} must be an integer here, got {q}")
    return q.numerator


def cmd_padic(args):
    act = args.action
    if act in ("abs", "val") and args.radices is not None:
        _need(args, "x")
        tw = padic.RadixTower(args.radices)
        x = padic.RAdicInt(tw, _integer(args.x, "--x"))
        if act == "abs":
            return {"abs": str(padic.radic_abs(x))}
        return {"valuation": padic.valuation(x)}
    _need(args, "p")
    p = args.p
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise CliError("not_prime", f"--p {p} is not prime")
    L = args.L if args.L is not None else padic.DEFAULT_PRIME_PRECISION
    if L < 1:
        raise CliError("invalid_precision", "--L must be >= 1")
    if act == "abs":
        _need(args, "x")
        return {"abs": str(padic.qp_normalize(p, args.x, L).abs())}
    if act == "val":
        _need(args, "x")
        y = padic.qp_normalize(p, args.x, L)
        return {"valuation": None if y.is_zero else y.v}
    if act == "inv":
        _need(args, "x")
        x = padic.RAdicInt(padic.RadixTower.constant(p, L), _integer(args.x, "--x"))
        inv = padic.invert_unit(x)
        return {**inv.to_json(), "inverse": str(inv.residue)}
    if act == "normalize":
        _need(args, "x")
        return padic.qp_normalize(p, args.x, L).to_json()
    _need(args, "x", "y")
    x = padic.RAdicInt(padic.RadixTower.constant(p, L), _integer(args.x, "--x"))
    y = padic.qp_normalize(p, args.y, L)
    frac = padic.pairing_fraction(y, x)
    return {"value": complex_to_json(frac.to_complex()), "fraction": str(frac.value)}


def cmd_solenoid(args):
    act = args.action
    if act == "add":
        _need(args, "input", "other")
        x = _parse(args.input, solenoid.SolenoidPoint.from_json)
        y = _parse(args.other, solenoid.SolenoidPoint.from_json)
        return (x + y).to_json()
    if act == "char":
        _need(args, "input", "level", "a")
        x = _parse(args.input, solenoid.SolenoidPoint.from_json)
        chi = solenoid.SolenoidChar(x.tower, args.level, _integer(args.a, "--a"))
        return {"value": complex_to_json(chi(x)), "frequency": str(chi.frequency)}
    _need(args, "radices")
    tw = padic.RadixTower(args.radices)
    if act == "embed":
        _need(args, "a")
        return solenoid.sol_from_real(tw, args.a).to_json()
    _need(args, "x")
    return solenoid.zr_embed(padic.RAdicInt(tw, args.x)).to_json()


def cmd_spectrum(args):
    theta = _parse(args.input, group.GroupFun.from_json)
    if theta.haar != group.COUNTING:
        raise CliError("invalid_haar", "spectrum needs counting measure")
    if args.kmax < 1:
        raise CliError("invalid_kmax", "--kmax must be >= 1")
    pairs = group.conv_operator_spectrum(theta)
    seq, est = banach.spectral_radius_seq(theta, args.kmax)
    return {
        "eigenvalues": [complex_to_json(e.eigenvalue) for e in pairs],
        "characters": [list(e.character.b) for e in pairs],
        "max_residual": max(e.residual for e in pairs),
        "spectral_radius_seq": seq,
        "estimate": est,
        "max_modulus": max(abs(e.eigenvalue) for e in pairs),
    }


def cmd_check(args):
    results = acceptance.run_all(args.seed)
    if args.format == "text":
        return acceptance.format_report(results, args.seed), all(r.passed for r in results)
    doc = {
        "seed": args.seed,
        "criteria": [
            {"number": r.number, "name": r.name, "measured": r.measured if math.isfinite(r.measured) else None,
             "threshold": r.threshold if math.isfinite(r.threshold) else None,
             "passed": r.passed, "detail": r.detail}
            for r in results
        ],
        "passed": sum(r.passed for r in results),
        "total": len(results),
    }
    return doc, all(r.passed for r in results)


HANDLERS = {
    "dft": cmd_dft, "conv": cmd_conv, "abel": cmd_abel, "poisson": cmd_poisson,
    "padic": cmd_padic, "solenoid": cmd_solenoid, "spectrum": cmd_spectrum, "check": cmd_check,
}


def _emit(obj, out_path=None, stream=None):
    stream = sys.stdout if stream is None else stream
    text = obj if isinstance(obj, str) else json.dumps(obj, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    stream.write(text)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in SUBCOMMANDS and not argv[0].startswith("-"):
        _emit({"error": "unknown_subcommand", "detail": f"expected one of {', '.join(SUBCOMMANDS)}"})
        return EXIT_USAGE
    if argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return EXIT_OK
    if argv[0] not in SUBCOMMANDS:
        _emit({"error": "unknown_subcommand", "detail": f"expected one of {', '.join(SUBCOMMANDS)}"})
        return EXIT_USAGE
    try:
        args = build_parser().parse_args(argv)
        result = HANDLERS[args.command](args)
        status = EXIT_OK
        if args.command == "check":
            result, ok = result
            status = EXIT_OK if ok else EXIT_FAIL
        out = getattr(args, "out", None)
        if args.command == "poisson" and args.kernel_table:
            out = None
        _emit(result, out)
        return status
    except CliError as exc:
        _emit({"error": exc.code, "detail": exc.detail})
        return exc.status
    except (ValueError, ArithmeticError, TypeError) as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
