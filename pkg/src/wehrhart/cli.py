"""Command-line front end.

Exit codes: 0 success, 2 unparsable input, 3 non-smooth or degenerate
polytope, 4 right-hand side outside the type cone, 5 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .alcoved import AlcovedSpec, random_alcoved
from .errors import Degenerate, EhrhartError, NotHomogeneous, NotSmooth, OutsideTypeCone, Unbounded
from .geometry import HPolytope, in_type_cone
from .integration import WeightPoly
from .oracle import ehrhart_by_interpolation, lattice_points, weighted_count_oracle
from .pipeline import (
    ParametricCount,
    dilation_scan,
    hstar_dilated,
    hstar_roots,
    parametric_weighted_count,
    same_sign_threshold,
    sign_pattern,
    weighted_ehrhart,
)
from .poly import MPoly, X, format_rational

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_GEOMETRY = 3
EXIT_CONE = 4
EXIT_MISMATCH = 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# -- input --------------------------------------------------------------------

def _load_json(arg: str):
    """Inline JSON, or a path to a JSON file."""
    text = arg
    if not arg.lstrip().startswith(("{", "[")):
        with open(arg) as fh:
            text = fh.read()
    return json.loads(text)


def _parse_ints(text: str) -> List[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def load_polytope(args) -> tuple:
    """``(HPolytope, weight spec or None)`` from ``--input`` or ``--alcoved``."""
    if bool(args.input) == bool(args.alcoved):
        raise ValueError("give exactly one of --input or --alcoved")
    weight = None
    if args.alcoved:
        P = AlcovedSpec.parse(args.alcoved).polytope()
    else:
        obj = _load_json(args.input)
        P = HPolytope(obj["A"], obj["b0"], obj.get("labels"))
        weight = obj.get("weight")
    if args.labels:
        labels = [s.strip() for s in args.labels.split(",")]
        P = HPolytope(P.A, P.b0, labels)
    return P, weight


def parse_weight(spec, d: int) -> WeightPoly:
    """A weight from JSON ``{"d", "terms"}``, a file holding it, or text like
    ``"-3*x1 + 2*x2"``."""
    if spec is None:
        return WeightPoly.one(d)
    if isinstance(spec, dict):
        w = WeightPoly.from_json(spec)
    elif spec.lstrip().startswith("{") or os.path.exists(spec):
        w = WeightPoly.from_json(_load_json(spec))
    else:
        w = WeightPoly(MPoly.parse(spec), d)
    if w.d != d:
        raise ValueError(f"weight is for dimension {w.d}, polytope has dimension {d}")
    return w


def _load(args):
    P, embedded = load_polytope(args)
    w = parse_weight(args.weight if args.weight is not None else embedded, P.d)
    return P, w


def _rhs(args, P: HPolytope) -> tuple:
    if getattr(args, "b", None) is None:
        return P.b0
    b = tuple(_parse_ints(args.b))
    if len(b) != P.n:
        raise ValueError(f"--b has {len(b)} entries, the polytope has {P.n} facets")
    return b


# -- formatting ---------------------------------------------------------------

def _q(c) -> str:
    return format_rational(Fraction(c))


def _count_json(pc: ParametricCount) -> dict:
    names = pc.polytope.names()
    return {
        "count": pc.poly.to_json(names),
        "formula": pc.to_str(),
        "labels": [names.get(v) or v.default_name for v in pc.polytope.b_vars()],
        "d": pc.d,
        "m": pc.m,
    }


def _hstar_json(hs, roots: bool) -> dict:
    out = {
        "hstar": {
            "z_coeffs": [_q(c) for c in hs.coeffs],
            "denom_exp": hs.denom_exponent,
            "formula": hs.to_str(),
        },
        "signs": ",".join(sign_pattern(hs)),
        "degree_drop": hs.at_one() == 0,
    }
    if roots:
        out["roots"] = [[z.real, z.imag] for z in hstar_roots(hs)]
    return out


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        indent = 2 if args.pretty else None
        print(json.dumps(payload, indent=indent))
    else:
        print(text)


# -- commands -----------------------------------------------------------------

def cmd_count(args) -> int:
    P, w = _load(args)
    pc = parametric_weighted_count(P, w)
    _emit(args, _count_json(pc), pc.to_str())
    return EXIT_OK


def cmd_ehrhart(args) -> int:
    P, w = _load(args)
    b = _rhs(args, P)
    e = weighted_ehrhart(parametric_weighted_count(P, w), b)
    payload = {"b": list(b), "ehrhart": {"t_coeffs": [_q(c) for c in e.coeffs]}}
    if args.check:
        payload["interpolation_agrees"] = ehrhart_by_interpolation(P, b, w) == e
    text = " + ".join(f"({_q(c)})*t^{i}" for i, c in enumerate(e.coeffs) if c) or "0"
    if args.check:
        text += f"\ninterpolation agrees: {payload['interpolation_agrees']}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_hstar(args) -> int:
    P, w = _load(args)
    b = _rhs(args, P)
    e = weighted_ehrhart(parametric_weighted_count(P, w), b)
    hs = hstar_dilated(e, args.r, w.m)
    payload = {"b": list(b), "r": args.r, "ehrhart": {"t_coeffs": [_q(c) for c in e.coeffs]}}
    payload.update(_hstar_json(hs, args.roots))
    lines = [hs.to_str(), f"signs: {payload['signs']}"]
    if payload["degree_drop"]:
        lines.append("note: h*(1) = 0, the h*-polynomial drops degree")
    if args.roots:
        lines.append("roots: " + ", ".join(f"{z[0]:.12g}{z[1]:+.12g}i" for z in payload["roots"]))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_oracle(args) -> int:
    P, w = _load(args)
    b = _rhs(args, P)
    pts = lattice_points(P, b)
    total = sum((w(p) for p in pts), Fraction(0))
    payload = {"b": list(b), "points": len(pts), "count": _q(total)}
    text = f"{len(pts)} lattice points, weighted count {_q(total)}"
    if args.ehrhart:
        e = ehrhart_by_interpolation(P, b, w)
        payload["ehrhart"] = {"t_coeffs": [_q(c) for c in e.coeffs]}
        text += "\nehrhart t-coefficients: " + ", ".join(payload["ehrhart"]["t_coeffs"])
    _emit(args, payload, text)
    return EXIT_OK


def random_cone_points(pc: ParametricCount, samples: int, rng: random.Random) -> List[tuple]:
    """Random right-hand sides in the closed type cone of ``pc``.

    Dilates and lattice translates of ``b0`` always qualify; a small random
    nudge is added and kept when the cone test accepts it.
    """
    P = pc.polytope
    out = []
    for _ in range(samples):
        s = rng.randint(1, 3)
        v = [rng.randint(-3, 3) for _ in range(P.d)]
        base = [s * b + sum(a * x for a, x in zip(row, v)) for row, b in zip(P.A, P.b0)]
        chosen = tuple(base)
        for _ in range(50):
            cand = tuple(x + rng.randint(0, 2) for x in base)
            if in_type_cone(P, pc.bases, cand):
                chosen = cand
                break
        out.append(chosen)
    return out


def cmd_verify(args) -> int:
    P, w = _load(args)
    pc = parametric_weighted_count(P, w)
    poly = pc.poly
    if args.count_json:
        obj = _load_json(args.count_json)
        poly = MPoly.from_json(obj.get("count", obj), P.name_lookup())
    rng = random.Random(args.seed)
    failures = []
    for b in random_cone_points(pc, args.samples, rng):
        got = poly.eval(P.b_point(b))
        want = weighted_count_oracle(P, b, w)
        if got != want:
            failures.append({"b": list(b), "polynomial": _q(got), "oracle": _q(want)})
    payload = {"samples": args.samples, "seed": args.seed, "failures": failures, "ok": not failures}
    if failures:
        text = "\n".join(f"MISMATCH b={f['b']}: polynomial {f['polynomial']} != oracle {f['oracle']}"
                         for f in failures)
    else:
        text = f"ok: {args.samples} samples agree with the oracle"
    _emit(args, payload, text)
    return EXIT_MISMATCH if failures else EXIT_OK


def random_weight(d: int, m: int, rng: random.Random, coeff_range: int = 3) -> WeightPoly:
    """Random homogeneous degree-``m`` weight with small nonzero integer coefficients."""
    while True:
        w = MPoly()
        for _ in range(rng.randint(1, 3)):
            exps = [0] * d
            for _ in range(m):
                exps[rng.randrange(d)] += 1
            c = rng.choice([c for c in range(-coeff_range, coeff_range + 1) if c])
            w = w + MPoly.monomial({X(j): e for j, e in enumerate(exps) if e}, c)
        if not w.is_zero():
            return WeightPoly(w, d)


def sign_census(d: int, m: int, samples: int, seed: int, range_: int = 10) -> dict:
    """Sign patterns of weighted h* over random maximal alcoved polytopes."""
    rng = random.Random(seed)
    census: dict = {}
    for _ in range(samples):
        spec = random_alcoved(d, range_, rng.getrandbits(32))
        w = random_weight(d, m, rng)
        e = weighted_ehrhart(parametric_weighted_count(spec.polytope(), w), None)
        hs = hstar_dilated(e.evaluate_at(spec.polytope().b_point(spec.vector())), 1, m)
        key = ",".join(sign_pattern(hs))
        entry = census.setdefault(key, {"count": 0, "witness": None})
        entry["count"] += 1
        if entry["witness"] is None:
            entry["witness"] = {"alcoved": str(spec), "weight": w.to_json(),
                                "hstar": [_q(c) for c in hs.coeffs]}
    return dict(sorted(census.items()))


def cmd_signs(args) -> int:
    census = sign_census(args.d, args.m, args.samples, args.seed, args.range)
    payload = {"d": args.d, "m": args.m, "samples": args.samples, "seed": args.seed,
               "patterns": census}
    text = "\n".join(f"{k:<20} {v['count']:>5}  e.g. {v['witness']['alcoved']}" for k, v in census.items())
    _emit(args, payload, text or "no samples")
    return EXIT_OK


def cmd_dilate(args) -> int:
    P, w = _load(args)
    b = _rhs(args, P)
    e = weighted_ehrhart(parametric_weighted_count(P, w), b)
    rs = _parse_ints(args.r) if args.r else list(range(1, args.r_max + 1))
    rows = []
    for r, hs, pat in dilation_scan(e, rs, w.m):
        row = {"r": r, "z_coeffs": [_q(c) for c in hs.coeffs], "signs": ",".join(pat)}
        if args.roots:
            row["roots"] = [[z.real, z.imag] for z in hstar_roots(hs)]
        rows.append(row)
    payload = {"b": list(b), "scan": rows}
    if args.r_max:
        payload["R0"] = same_sign_threshold(e, args.r_max, w.m)
    lines = [f"{row['r']:>6}  {row['signs']}" for row in rows]
    if args.r_max:
        lines.append(f"R0 = {payload['R0']}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# -- wiring -------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--pretty", action="store_true", help="indent JSON output")
    p.add_argument("--seed", type=int, help="RNG seed (required by randomized commands)")
    p.add_argument("--labels", help="comma-separated names for the right-hand side variables")
    return p


def _inputs(p: argparse.ArgumentParser, rhs: bool = False) -> None:
    p.add_argument("--input", help="polytope JSON {A, b0, labels?, weight?} (path or inline)")
    p.add_argument("--alcoved", help='alcoved shorthand, e.g. "d=2 b12=3,b13=5,b21=4,b23=8,b31=3,b32=0"')
    p.add_argument("--weight", help='weight JSON {d, terms} (path or inline) or text like "x1*x2"')
    if rhs:
        p.add_argument("--b", help="right-hand side vector (default: b0)")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="wehrhart", parents=[common],
                                     description="Parametric weighted lattice-point counts of smooth polytopes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="weighted count as a polynomial in b")
    _inputs(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("ehrhart", parents=[common], help="weighted Ehrhart polynomial at b")
    _inputs(p, rhs=True)
    p.add_argument("--check", action="store_true", help="compare with interpolation of oracle counts")
    p.set_defaults(func=cmd_ehrhart)

    p = sub.add_parser("hstar", parents=[common], help="weighted h*-polynomial at b")
    _inputs(p, rhs=True)
    p.add_argument("--r", type=int, default=1, help="dilation factor")
    p.add_argument("--roots", action="store_true", help="report complex roots")
    p.set_defaults(func=cmd_hstar)

    p = sub.add_parser("oracle", parents=[common], help="brute-force weighted count at b")
    _inputs(p, rhs=True)
    p.add_argument("--ehrhart", action="store_true", help="also interpolate the Ehrhart polynomial")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", parents=[common], help="compare the count with the oracle at random b")
    _inputs(p)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--count-json", help="check this count JSON instead of a fresh computation")
    p.set_defaults(func=cmd_verify, needs_seed=True)

    p = sub.add_parser("signs", parents=[common], help="census of h* sign patterns")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--range", type=int, default=10, help="upper bound for random b entries")
    p.set_defaults(func=cmd_signs, needs_seed=True)

    p = sub.add_parser("dilate", parents=[common], help="h* of dilates rP and the same-sign threshold")
    _inputs(p, rhs=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--r", help="comma-separated dilation factors")
    g.add_argument("--r-max", type=int, help="scan r = 1..R and report R0")
    p.add_argument("--roots", action="store_true")
    p.set_defaults(func=cmd_dilate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "needs_seed", False) and args.seed is None:
        parser.error(f"{args.command} requires --seed")
    try:
        return args.func(args)
    except (NotSmooth, Degenerate, Unbounded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except OutsideTypeCone as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONE
    except (ValueError, KeyError, OSError, NotHomogeneous, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EhrhartError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
