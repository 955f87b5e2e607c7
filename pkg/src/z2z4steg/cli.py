"""Command-line front end.

Exit status is 0 on success, 2 for bad parameters and 3 when a message does
not fit or a block cannot be embedded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict
from pathlib import Path

from .codes import build_hamming_check, build_z2z4_check, z2z4_params
from .exceptions import CapacityError, InfeasibleError, ParameterError
from .jobs import SCHEMES, StegoJob, block_scheme, run_embed, run_extract
from .product import product_check
from .rates import curve, scheme_ci, to_csv, to_json
from .simulate import simulate

EXIT_PARAM = 2
EXIT_CAPACITY = 3

_CURVE_FAMILIES = {
    "f5": "f5",
    "z2z4": "z2z4-single",
    "kp": "kp",
    "z2z4-product": "z2z4-product",
    "ternary": "ternary-hamming",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARAM, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"2..6"`` or ``"2,4,5"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise ParameterError(f"bad range {text!r}") from exc


def parse_level(text: str) -> int | float:
    if text in ("inf", "oo", "infinity"):
        return math.inf
    return int(text)


def _code_flags(p: argparse.ArgumentParser, schemes=SCHEMES, m_type=int) -> None:
    p.add_argument("--scheme", choices=schemes, required=True)
    p.add_argument("--m", type=m_type, required=True, help="code exponent")
    p.add_argument("--delta", type=int, default=1, help="number of order-four parity rows (z2z4 schemes)")
    p.add_argument("--level", type=parse_level, default=2, help="product level (kp, z2z4-product)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="z2z4steg", description="Syndrome-coding steganography with Hamming and Z2Z4 perfect codes.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("embed", help="hide a message file in a PGM cover")
    _code_flags(p)
    p.add_argument("--bitdepth", type=int, help="expected bit depth of the cover")
    p.add_argument("--cover", type=Path, required=True)
    p.add_argument("--message", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--length-prefix", action="store_true", help="store the message length in a 32-bit header")
    p.add_argument("--no-optimize", action="store_true", help="disable the two-flip column shortcut")

    p = sub.add_parser("extract", help="recover a message from a stego PGM")
    _code_flags(p)
    p.add_argument("--bitdepth", type=int)
    p.add_argument("--cover", type=Path, required=True, help="stego image")
    p.add_argument("--length", type=int, help="message length in bytes")
    p.add_argument("--length-prefix", action="store_true")
    p.add_argument("--out", type=Path, help="write the message here instead of stdout")

    p = sub.add_parser("simulate", help="Monte-Carlo distortion versus the analytic bound")
    _code_flags(p)
    p.add_argument("--bitdepth", type=int, default=8)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-optimize", action="store_true")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("curves", help="normalized-rate curve data")
    p.add_argument("--scheme", choices=sorted(_CURVE_FAMILIES), required=True)
    p.add_argument("--m", type=parse_range, required=True, help="range such as 2..6 (t for ternary)")
    p.add_argument("--level", type=parse_level, default=math.inf)
    p.add_argument("--bitdepth", type=int, default=8)
    p.add_argument("--samples", type=int, default=64, help="direct-sum points between anchors")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("info", help="code parameters and CI-rate")
    _code_flags(p)
    p.add_argument("--bitdepth", type=int, default=8)
    p.add_argument("--dump-matrix", action="store_true", help="print the serialized parity-check matrix")
    return ap


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        out.write_text(text)


def _level(args) -> int:
    if args.level == math.inf:
        raise ParameterError("an infinite level only makes sense for curves and info")
    return int(args.level)


def _job(args, **kw) -> StegoJob:
    return StegoJob(
        cover=args.cover,
        scheme=args.scheme,
        m=args.m,
        delta=args.delta,
        level=_level(args),
        B=args.bitdepth,
        length_prefix=args.length_prefix,
        **kw,
    )


def _info(args) -> str:
    scheme, m = args.scheme, args.m
    if args.dump_matrix:
        if scheme in ("f5", "kp"):
            rows = build_hamming_check(m).matrix
            return "\n".join("".join(str(int(v)) for v in row) for row in rows) + "\n"
        H = build_z2z4_check(z2z4_params(m, args.delta)) if scheme == "z2z4" else product_check(m, args.delta)
        return H.dumps()
    ci = scheme_ci(_CURVE_FAMILIES[scheme], m, B=args.bitdepth, level=args.level)
    info = {"scheme": scheme, "m": m, "n": 2**m - 1, "CI": asdict(ci)}
    if scheme in ("z2z4", "z2z4-product"):
        p = z2z4_params(m, args.delta)
        info.update(delta=p.delta, alpha=p.alpha, beta=p.beta, gamma=p.gamma, N=p.N)
    if args.level != math.inf:
        bs = block_scheme(scheme, m, args.delta, int(args.level) if scheme in ("kp", "z2z4-product") else 2, args.bitdepth)
        info.update(block_shape=list(bs.shape), bits_per_block=bs.bits)
    return json.dumps(info, indent=1)


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "embed":
        job = _job(args, message=args.message, out=args.out, optimize=not args.no_optimize)
        report = run_embed(job)
        _emit(json.dumps(asdict(report), indent=1), None)
    elif args.command == "extract":
        data = run_extract(_job(args, length=args.length))
        if args.out is None:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
        else:
            args.out.write_bytes(data)
    elif args.command == "simulate":
        report = simulate(
            args.scheme,
            args.m,
            args.trials,
            args.seed,
            delta=args.delta,
            level=_level(args),
            B=args.bitdepth,
            optimize=not args.no_optimize,
            workers=args.workers,
        )
        _emit(report.to_json(), args.out)
    elif args.command == "curves":
        if args.samples < 0:
            raise ParameterError("samples must be >= 0")
        family = _CURVE_FAMILIES[args.scheme]
        pts = curve(family, args.m, B=args.bitdepth, level=args.level, samples=args.samples)
        _emit(to_csv(pts) if args.format == "csv" else to_json(pts), args.out)
    else:
        _emit(_info(args), None)
    return 0


def main(argv: list[str] | None = None) -> int:
    try:
        return run(argv)
    except CapacityError as exc:
        print(f"z2z4steg: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InfeasibleError as exc:
        print(f"z2z4steg: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ParameterError, ValueError, FileNotFoundError) as exc:
        print(f"z2z4steg: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
