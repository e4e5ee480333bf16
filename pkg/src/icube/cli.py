"""Command-line surface: classify, render, coverage, verify-lemma, oracle,
enumerate, probe.

Machine-oriented: identical argv yields byte-identical stdout and artifacts,
every error is a single JSON line on stderr, and exit codes are 0 (success),
1 (verification failure), 2 (usage error).  ICUBE_THREADS is validated and
caps worker counts; the current kernels are sequential, so it has no effect
beyond validation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from . import classify as cl
from . import digit_sets as ds
from . import enumeration as en
from . import expansion as ex
from . import render as rd
from .lattice import Window2, Window3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default prints usage text
        raise UsageError(message)


def _parse_ivec(text: str, n: int) -> tuple[int, ...]:
    parts = text.split(",")
    if len(parts) != n:
        raise UsageError(f"expected {n} comma-separated integers, got {text!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"direction components must be integers: {text!r}") from None


def _parse_decimal(text: str) -> tuple[Fraction, Fraction]:
    """Exact rational of a decimal string plus its printed precision."""
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a decimal or p/q rational: {text!r}") from None
    if "/" in text or "." not in text:
        return value, Fraction(0)
    digits = len(text.split(".")[1])
    return value, Fraction(1, 10 ** digits)


def _threads() -> int:
    raw = os.environ.get("ICUBE_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"ICUBE_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError("ICUBE_THREADS must be >= 1")
    return n


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc) + "\n")


def _classification_doc(fractal, direction, result: cl.Classification,
                        oracle: cl.OracleEvidence) -> dict:
    uv = None
    if result.uv is not None:
        uv = {"p": result.uv.p, "q": result.uv.q, "r": result.uv.r}
    witness = None
    if oracle.witness is not None:
        witness = [[int(a), int(b)] for a, b in oracle.witness]
    return {
        "fractal": fractal,
        "direction": list(direction) if direction is not None else None,
        "reduced": list(result.reduced) if result.reduced is not None else None,
        "verdict": result.verdict.value,
        "rule": result.rule.value,
        "uv": uv,
        "oracle": {"checked": oracle.checked, "witness": witness},
    }


def _cmd_classify(args) -> int:
    if (args.dir is None) == (args.uv is None):
        raise UsageError("provide exactly one of --dir or --uv")
    oracle = cl.OracleEvidence(False)
    if args.dir is not None:
        d = _parse_ivec(args.dir, 3)
        result = cl.classify_direction(args.fractal, d)
        if args.check_oracle:
            if sum(result.reduced) == 0:
                raise UsageError("--check-oracle needs a direction with nonzero sum")
            report = cl.cross_validate(args.fractal, d)
            oracle = report.oracle
        direction = d
    else:
        u_text, v_text = args.uv.split(",") if args.uv.count(",") == 1 else (None, None)
        if u_text is None:
            raise UsageError("--uv expects U,V")
        u, _ = _parse_decimal(u_text)
        v, _ = _parse_decimal(v_text)
        result = cl.classify_uv(args.fractal, (u, v),
                                declared_irrational=args.declared_irrational)
        direction = None
    doc = _classification_doc(args.fractal, direction, result, oracle)
    if args.json:
        _emit(doc)
    else:
        sys.stdout.write(
            f"{args.fractal} along {doc['direction'] or doc['uv']}: "
            f"{doc['verdict']} ({doc['rule']})\n")
    return 0


def _projected(fractal: str, d) -> rd.ProjectedDigits:
    return rd.project_digit_set(ds.canonical(fractal), rd.family_map(fractal, d),
                                strict=False)


def _cmd_render(args) -> int:
    d = _parse_ivec(args.dir, 3)
    proj = _projected(args.fractal, d)
    raster = rd.rasterize(proj, args.depth, args.res)
    payload = raster.to_pbm() if args.pbm else raster.to_pgm()
    with open(args.out, "wb") as fh:
        fh.write(payload)
    _emit({
        "out": args.out,
        "width": raster.width,
        "height": raster.height,
        "covered": raster.covered,
        "collided": raster.collided,
        "sha256": hashlib.sha256(payload).hexdigest(),
    })
    return 0


def _cmd_coverage(args) -> int:
    d = _parse_ivec(args.dir, 3)
    proj = _projected(args.fractal, d)
    series = rd.coverage_series(proj, args.max_depth, args.res)
    sys.stdout.write(series.to_csv())
    return 0


def _cmd_verify_lemma(args) -> int:
    pairs = None
    if args.params is not None:
        pairs = [tuple(int(x) for x in args.params.split(","))]
        if len(pairs[0]) != 2:
            raise UsageError("--params expects m,n")
    if args.which == "ds":
        window = args.window if args.window is not None else 16
        report = ex.verify_tetra_window(Window3.symmetric(window))
    else:
        window = args.window if args.window is not None else 30
        report = ex.verify_slice_window(args.which, Window2.symmetric(window), pairs)
    mismatches = list(report.mismatches)
    _emit({
        "which": report.which,
        "window": window,
        "checked": report.checked,
        "mismatches": len(mismatches),
    })
    return 0 if not mismatches else 1


def _cmd_oracle(args) -> int:
    try:
        with open(args.digits_file, "r", encoding="utf-8") as fh:
            digits = ds.digit_set_from_json(fh.read())
    except OSError as e:
        raise UsageError(f"cannot read digits file: {e}") from None
    if not isinstance(digits, ds.DigitSet2):
        raise UsageError("oracle expects a dim-2 digit set")
    if digits.k != args.k:
        raise UsageError(f"digit file has k={digits.k}, flag says k={args.k}")
    crs = ex.is_complete_residue_system(args.k, digits)
    res = ex.has_nontrivial_zero_expansion(args.k, digits)
    witness = [[int(a), int(b)] for a, b in res.witness] if res.witness else None
    _emit({
        "k": args.k,
        "digits": len(digits.points),
        "complete_residue_system": crs,
        "zero_expansion": res.found,
        "witness": witness,
        "verdict": "null" if res.found else "positive",
    })
    return 0


def _cmd_enumerate(args) -> int:
    classes = en.congruence_classes(args.degree)
    squares = sum(c.orbit_size for c in classes)
    _emit({
        "k": args.degree,
        "latin_squares": squares,
        "classes": len(classes),
        "group_order": en.GROUP_ORDER,
        "representatives": [[list(cell) for cell in c.representative]
                            for c in classes],
    })
    return 0


def _cmd_probe(args) -> int:
    u, eps_u = _parse_decimal(args.u)
    v, eps_v = _parse_decimal(args.v)
    witness = cl.probe_discreteness(args.fractal, u, v, args.l,
                                    eps=max(eps_u, eps_v))
    bound_sq = Fraction(2, witness.k ** (2 * args.l))
    _emit({
        "k": witness.k,
        "l": args.l,
        "i": witness.i,
        "j": witness.j,
        "y": [int(c) for c in witness.y],
        "phi_norm_sq": f"{witness.phi_norm_sq.numerator}/{witness.phi_norm_sq.denominator}",
        "bound_sq": f"{bound_sq.numerator}/{bound_sq.denominator}",
        "within_bound": witness.phi_norm_sq <= bound_sq,
        "samples": witness.samples,
    })
    return 0


def build_parser() -> _Parser:
    top = _Parser(prog="icube", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="measure positivity of a projection")
    p.add_argument("--fractal", required=True, choices=("S", "H", "T"))
    p.add_argument("--dir", help="integer direction a,b,c")
    p.add_argument("--uv", help="planar parameters U,V as decimals or p/q")
    p.add_argument("--declared-irrational", action="store_true")
    p.add_argument("--check-oracle", action="store_true",
                   help="also run the zero-expansion cross-check")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("render", help="write a PGM bitmap of the projected fractal")
    p.add_argument("--fractal", required=True, choices=("S", "H", "T"))
    p.add_argument("--dir", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--res", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--pbm", action="store_true", help="plain PBM instead of PGM")
    p.set_defaults(fn=_cmd_render)

    p = sub.add_parser("coverage", help="covered-area fractions per depth (CSV)")
    p.add_argument("--fractal", required=True, choices=("S", "H", "T"))
    p.add_argument("--dir", required=True)
    p.add_argument("--max-depth", type=int, required=True)
    p.add_argument("--res", type=int, required=True)
    p.set_defaults(fn=_cmd_coverage)

    p = sub.add_parser("verify-lemma", help="window checks of the expansion-set identities")
    p.add_argument("--which", required=True, choices=("ds", "t0", "h0"))
    p.add_argument("--window", type=int)
    p.add_argument("--params", help="single m,n pair instead of the default grid")
    p.set_defaults(fn=_cmd_verify_lemma)

    p = sub.add_parser("oracle", help="zero-expansion decision for a digit-set file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--digits-file", required=True)
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("enumerate", help="count fractal imaginary cubes of a degree")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("probe", help="uniform-discreteness pigeonhole witness")
    p.add_argument("--fractal", required=True, choices=("S", "H", "T"))
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(fn=_cmd_probe)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        _threads()
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as e:
        sys.stderr.write(json.dumps({"error": str(e)}) + "\n")
        return 2
    except AssertionError as e:
        sys.stderr.write(json.dumps({"error": str(e)}) + "\n")
        return 1
    except ValueError as e:
        sys.stderr.write(json.dumps({"error": str(e)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
