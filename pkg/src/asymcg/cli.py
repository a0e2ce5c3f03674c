"""Command-line front end.

Words are composed right to left: in ``"t_a1 t_b1"`` the twist ``t_b1`` acts
first.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import fock, suites, thompson as tv
from .errors import AsymcgError, InvalidInput, ParseError
from .homology import word_shadow
from .words import format_word, parse

DEFAULT_MAX_SUPPORT = 64

EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_LIMIT = 3
EXIT_BRANCH = 4

_EXIT_CODES = {"support-limit": EXIT_LIMIT, "branch-ambiguous": EXIT_BRANCH}

WORD_HELP = """\
Words: space-separated terms name[^k] over alpha, beta, pi, t, t0, t_a1,
t_b1, t_wc, t_vc and the parametrized twists tw[j,k], tv[k;v], td[loop],
where loop is a[k], b[k], wc[j,k], vc[k;v] or pl[c]. The rightmost term acts
first, so "t_a1 t_b1" means t_a1 after t_b1.
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def max_support() -> int:
    raw = os.environ.get("ASYMCG_MAX_SUPPORT")
    if raw is None or raw == "":
        return DEFAULT_MAX_SUPPORT
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInput(f"ASYMCG_MAX_SUPPORT must be an integer, got {raw!r}") from None
    if value < 1:
        raise InvalidInput("ASYMCG_MAX_SUPPORT must be positive")
    return value


def _shadow(text: str):
    return word_shadow(parse(text), max_support())


def _fraction_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def _complex_json(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def cmd_project_v(args) -> tuple[dict, str]:
    word = parse(args.word)
    g = tv.project(word)
    out = {"word": format_word(word), "treePair": tv.serialize(g),
           "identity": tv.is_identity(g), "circular": tv.is_circular(g)}
    dot = tv.pair_to_dot(g)
    if args.dot:
        out["dot"] = dot
    text = dot if args.dot else ("identity" if out["identity"] else out["treePair"])
    return out, text


def cmd_matrix(args):
    f = _shadow(args.word)
    out = f.to_json()
    lines = [f"support {out['support']} -> range {out['range']}",
             f"end map {out['endMap']}",
             "columns " + " ".join(out["basis"]),
             "rows    " + " ".join(out["rangeBasis"])]
    lines += ["  " + " ".join(f"{x:>3}" for x in row) for row in out["block"]]
    return out, "\n".join(lines)


def cmd_blocks(args):
    b = fock.to_blocks(_shadow(args.word))
    hs = fock.hs_norm_sq(b)
    out = b.to_json()
    out.update({"relations": fock.check_relations(b), "hsNormSq": _fraction_json(hs),
                "psiRank": fock.psi_rank(b)})
    lines = ["Phi:"] + ["  " + "  ".join(map(str, row)) for row in b.phi]
    lines += ["Psi:"] + ["  " + "  ".join(map(str, row)) for row in b.psi]
    lines += [f"relations {'hold' if out['relations'] else 'FAIL'}",
              f"hs_norm_sq {hs}", f"psi_rank {out['psiRank']}"]
    return out, "\n".join(lines)


def cmd_cocycle(args):
    g, h = _shadow(args.g), _shadow(args.h)
    c1 = fock.c1_cocycle(g, h)
    out = {"g": args.g, "h": args.h, "c1": c1.to_json(), "c1Text": str(c1)}
    text = f"C_1 = {c1}"
    if args.n is not None:
        try:
            n = Fraction(args.n)
        except (ValueError, ZeroDivisionError):
            raise InvalidInput(f"--n expects a rational number, got {args.n!r}") from None
        cn = fock.cn_cocycle(g, h, n)
        out["n"] = str(n)
        out["cn"] = _complex_json(cn)
        text += f"\nC_{n} = {cn.real:.15g} {'+' if cn.imag >= 0 else '-'} {abs(cn.imag):.15g}i"
    return out, text


def cmd_kernel(args):
    word = parse(args.word)
    g = tv.project(word)
    f = word_shadow(word, max_support())
    inside = tv.is_identity(f.end_map)
    out = {"word": format_word(word), "inKernel": inside, "endMap": tv.serialize(g)}
    return out, f"in-kernel: {'true' if inside else 'false'}"


def cmd_verify(args):
    if args.seed < 0 or args.seed >= 2 ** 64:
        raise InvalidInput("--seed must be an unsigned 64-bit integer")
    if args.count is not None and args.count < 0:
        raise InvalidInput("--count must be nonnegative")
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    results = [suites.run(n, args.seed, args.count, args.shards, args.workers) for n in names]
    out = {"seed": args.seed, "passed": all(r.passed for r in results),
           "results": [r.to_json() for r in results]}
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.checks} checks, "
                     f"{r.seconds:.2f}s)")
        lines += [f"  {m}" for m in r.failures]
    return out, "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    parser = _Parser(prog="asymcg", description=__doc__.strip(), epilog=WORD_HELP,
                     formatter_class=argparse.RawDescriptionHelpFormatter,
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("project-v", parents=[common], help="reduced tree pair of the V-image")
    p.add_argument("word")
    p.add_argument("--dot", action="store_true", help="emit a Graphviz diagram")
    p.set_defaults(run=cmd_project_v)

    p = sub.add_parser("matrix", parents=[common], help="finite symplectic block")
    p.add_argument("word")
    p.set_defaults(run=cmd_matrix)

    p = sub.add_parser("blocks", parents=[common], help="Phi/Psi blocks and their checks")
    p.add_argument("word")
    p.set_defaults(run=cmd_blocks)

    p = sub.add_parser("cocycle", parents=[common], help="determinant cocycle of two words")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--n", help="also evaluate the 1/n-th root cocycle "
                               "(rational n; write --n=-1/2 for negatives)")
    p.set_defaults(run=cmd_cocycle)

    p = sub.add_parser("verify", parents=[common], help="run a seeded property suite")
    p.add_argument("--suite", required=True, choices=[*suites.SUITES, "all"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=None,
                   help="sample count (defaults to the acceptance size)")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("kernel", parents=[common], help="is the V-image trivial?")
    p.add_argument("word")
    p.set_defaults(run=cmd_kernel)
    return parser


def _emit_error(kind: str, message: str, offset: int | None = None) -> None:
    err = {"error": {"kind": kind, "message": message}}
    if offset is not None:
        err["error"]["offset"] = offset
    print(json.dumps(err))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _emit_error("usage", str(exc))
        return EXIT_INVALID
    try:
        out, text = args.run(args)
    except ParseError as exc:
        _emit_error(exc.kind, exc.message, exc.offset)
        return EXIT_INVALID
    except AsymcgError as exc:
        _emit_error(exc.kind, str(exc))
        return _EXIT_CODES.get(exc.kind, EXIT_INVALID)
    print(json.dumps(out) if args.json else text)
    if args.command == "verify" and not out["passed"]:
        return EXIT_FAILED
    return 0


if __name__ == "__main__":
    sys.exit(main())
