"""Command-line front end.

Exit codes: 0 success, 1 mathematical refusal, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import constructions as cons
from .cache import WitnessCache, cache_key
from .correspondence import generate_triangles, point_to_triangle, triangle_new
from .elliptic import CurveEn, certify_infinite_order
from .errors import CongruentError, ExceptionalTorsionPair
from .exact import as_rational, format_rational
from .number_field import QQ
from .tunnell import INAPPLICABLE, tunnell_scan, tunnell_verdict

log = logging.getLogger("congruent")

EXIT_OK, EXIT_REFUSED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def _positive_rational(text: str) -> Fraction:
    v = _rational(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _nonzero_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v == 0:
        raise argparse.ArgumentTypeError("must be nonzero")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer: {text!r}")
    return v


def _range(text: str) -> range:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return range(lo, hi + 1)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS lets the flags sit either before or after the subcommand
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON (one document per line)")
    common.add_argument("--cache", metavar="PATH", default=argparse.SUPPRESS,
                        help="witness cache file (overridden by $CONGRUENT_CACHE)")
    common.add_argument("--approx-digits", type=int, metavar="D", default=argparse.SUPPRESS,
                        help="decimal digits for displayed approximations (default 10)")

    parser = _Parser(prog="congruent", parents=[common],
                     description="Congruent-number witnesses over Q, quadratic and cubic fields.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("tunnell", parents=[common], help="Tunnell counts and verdict")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("n", nargs="?", type=_positive_int)
    g.add_argument("--range", type=_range, metavar="A..B")
    p.add_argument("--jobs", type=_positive_int, default=1, help="worker processes for --range")

    p = sub.add_parser("quad", parents=[common], help="witness over a real quadratic field")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--b", type=_positive_rational, default=None, metavar="P/Q")

    p = sub.add_parser("cubic", parents=[common], help="witness over the cubic field Q(lambda)")
    p.add_argument("n", type=_positive_int)

    p = sub.add_parser("triangles", parents=[common], help="triangles from multiples of a point")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--count", type=_positive_int, default=3)
    p.add_argument("--via", nargs="+", default=["quad"], metavar="quad|cubic|point X Y")

    p = sub.add_parser("cnm", parents=[common], help="search m*y^2 = x^4 + 4n^2")
    p.add_argument("n", type=_positive_int)
    p.add_argument("m", type=_nonzero_int)
    p.add_argument("--height", type=_positive_int, default=20)

    p = sub.add_parser("check-identity", parents=[common], help="verify the polynomial identities")
    p.add_argument("--samples", type=_positive_int, default=100)

    p = sub.add_parser("verify", parents=[common], help="validate a rational triangle or point")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--triangle", nargs=3, type=_rational, metavar=("A", "B", "C"))
    g.add_argument("--point", nargs=2, type=_rational, metavar=("X", "Y"))
    p.add_argument("--n", type=_positive_int, required=True)
    return parser


class Runner:
    def __init__(self, args):
        self.args = args
        self.json = getattr(args, "json", False)
        self.digits = getattr(args, "approx_digits", 10)
        path = os.environ.get("CONGRUENT_CACHE") or getattr(args, "cache", None)
        self.cache = WitnessCache(path) if path else None
        self.out = sys.stdout

    def emit(self, doc: dict, text: str):
        if self.json:
            print(json.dumps(doc), file=self.out)
        else:
            print(text, file=self.out)

    def cached(self, n: int, kind: str, compute, **params) -> dict:
        params["approx_digits"] = self.digits
        if self.cache is None:
            return compute()
        return self.cache.get_or_compute(cache_key(n, kind, **params), compute)

    # -- subcommands --------------------------------------------------------

    def cmd_tunnell(self):
        a = self.args
        if a.range is not None:
            for res in tunnell_scan(a.range, jobs=a.jobs):
                self.emit(res.to_json(), _tunnell_text(res))
            return EXIT_OK
        res = tunnell_verdict(a.n)
        self.emit(res.to_json(), _tunnell_text(res))
        return EXIT_REFUSED if res.verdict == INAPPLICABLE else EXIT_OK

    def _quad_bundle(self, n: int, b: Fraction) -> dict:
        return self.cached(n, "quadratic",
                           lambda: cons.quadratic_witness(n, b).to_json(self.digits),
                           b=format_rational(b))

    def quad_with_retry(self, n: int, b: Optional[Fraction]):
        """Bundle for the first usable b: the given one, else 1, 2, 3, ..."""
        retries = []
        tried = set()
        candidates = ([b] if b is not None else []) + [Fraction(k) for k in range(1, 1000)]
        for cand in candidates:
            if cand in tried:
                continue
            tried.add(cand)
            try:
                return self._quad_bundle(n, cand), retries
            except ExceptionalTorsionPair as exc:
                retries.append({"b": format_rational(cand), **exc.to_dict()})
        raise CongruentError("no admissible b found")

    def cmd_quad(self):
        n = self.args.n
        bundle, retries = self.quad_with_retry(n, self.args.b)
        doc = dict(bundle)
        if retries:
            doc["retries"] = retries
        lines = [f"{r['error']}: b = {r['b']} gives s = {r['s']}; retrying" for r in retries]
        lines.append(_bundle_text(bundle))
        self.emit(doc, "\n".join(lines))
        return EXIT_OK

    def cmd_cubic(self):
        n = self.args.n
        bundle = self.cached(n, "cubic", lambda: cons.cubic_witness(n).to_json(self.digits))
        self.emit(bundle, _bundle_text(bundle))
        return EXIT_OK

    def cmd_triangles(self):
        a = self.args
        via = a.via
        kind = via[0]
        if kind == "point":
            if len(via) != 3:
                raise UsageError("--via point takes X Y")
            x, y = (_parse_or_usage(v) for v in via[1:])
            base = CurveEn(a.n).point(x, y)
        elif kind == "quad" and len(via) == 1:
            base = _first_quadratic_point(a.n)
        elif kind == "cubic" and len(via) == 1:
            base = cons.cubic_witness(a.n, closed_form=False).point
        else:
            raise UsageError("--via must be quad, cubic, or point X Y")
        tris = generate_triangles(base, a.count)
        doc = {"n": a.n, "via": kind, "base_point": base.to_json(),
               "field": base.curve.field.to_json(),
               "triangles": [t.to_json(self.digits) for t in tris]}
        text = "\n".join(f"{i + 1}: a = {t.a}, b = {t.b}, c = {t.c}" for i, t in enumerate(tris))
        self.emit(doc, text)
        return EXIT_OK

    def cmd_cnm(self):
        a = self.args
        hit = cons.cnm_point_search(a.n, a.m, a.height)
        doc = {"n": a.n, "m": a.m, "height": a.height, "found": hit is not None,
               "point": hit.to_json() if hit else None, "witness": None}
        if hit is None:
            text = f"no rational point on {a.m}*y^2 = x^4 + {4 * a.n * a.n} with height <= {a.height}"
        else:
            text = f"point x = {format_rational(hit.x)}, y = {format_rational(hit.y)}"
            if hit.convertible:
                try:
                    doc["witness"] = hit.to_witness().to_json(self.digits)
                    text += "\n" + _bundle_text(doc["witness"])
                except ExceptionalTorsionPair as exc:
                    doc["witness_error"] = exc.to_dict()
        self.emit(doc, text)
        return EXIT_OK

    def cmd_check_identity(self):
        desb = cons.desboves_identity_check(samples=self.args.samples)
        rng = random.Random(1)
        lams = [Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6)) for _ in range(50)]
        res = [cons.substituted_identity_check(v) for v in lams]
        ok = all(r == 0 for r in res)
        doc = {"desboves": desb.to_json(),
               "substituted": {"evaluations": len(res), "all_zero": ok}}
        text = (f"Desboves identity: {len(desb.points)} evaluations, all residuals zero\n"
                f"substituted identity: {len(res)} evaluations, "
                f"{'all residuals zero' if ok else 'NONZERO residuals'}")
        self.emit(doc, text)
        return EXIT_OK if ok else EXIT_REFUSED

    def cmd_verify(self):
        a = self.args
        if a.triangle is not None:
            tri = triangle_new(*a.triangle, a.n, field=QQ)
            self.emit({"valid": True, "triangle": tri.to_json(self.digits)},
                      f"valid: right triangle with area {a.n}")
            return EXIT_OK
        p = CurveEn(a.n).point(*a.point)
        cert = certify_infinite_order(p)
        doc = {"valid": True, "point": p.to_json(), "certificate": cert.to_json()}
        text = f"valid: point on E_{a.n}, {cert.verdict}"
        if not p.y.is_zero():
            tri = point_to_triangle(p).canonical()
            doc["triangle"] = tri.to_json(self.digits)
            text += f"\ntriangle: a = {tri.a}, b = {tri.b}, c = {tri.c}"
        self.emit(doc, text)
        return EXIT_OK


def _first_quadratic_point(n: int):
    for b in range(1, 1000):
        try:
            return cons.quadratic_witness(n, b).point
        except ExceptionalTorsionPair:
            continue
    raise CongruentError("no admissible b found")


def _parse_or_usage(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise UsageError(f"not an exact rational: {text!r}")


def _tunnell_text(res) -> str:
    return f"n = {res.n}: count_8 = {res.count_8}, count_32 = {res.count_32} -> {res.meaning}"


def _element_text(data: dict) -> str:
    return " + ".join(f"({c})*theta^{k}" if k else c
                      for k, c in enumerate(data["coeffs"]) if c != "0") or "0"


def _bundle_text(bundle: dict) -> str:
    tri = bundle["triangle"]
    cert = bundle["certificate"]
    lines = [
        f"{bundle['construction']} witness for n = {bundle['n']} over {bundle['field']['label']}",
        f"  point x = {_element_text(bundle['point']['x'])}",
        f"        y = {_element_text(bundle['point']['y'])}",
        f"  triangle a ~ {tri['approx']['a']}, b ~ {tri['approx']['b']}, c ~ {tri['approx']['c']}",
        f"  certificate: {cert['verdict']} ({sum(c['value_nonzero'] for c in cert['checks'])}"
        f"/{len(cert['checks'])} division-polynomial checks nonzero)",
    ]
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    want_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        runner = Runner(args)
        handler = getattr(runner, "cmd_" + args.command.replace("-", "_"))
        return handler()
    except (UsageError, ValueError) as exc:
        # ValueError here means an argument the library itself rejected
        _report({"error": "UsageError", "message": str(exc)}, want_json)
        return EXIT_USAGE
    except CongruentError as exc:
        _report(exc.to_dict(), want_json)
        return EXIT_REFUSED


def _report(doc: dict, want_json: bool):
    if want_json:
        print(json.dumps(doc))
    else:
        print(f"{doc['error']}: {doc['message']}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
