"""Command-line front end: ``taut <command> [args] [flags]``.

Exit status: 0 ok, 1 when ``--assert`` fails, 2 usage, 3 parse, 4 computation.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .cache import frac_to_str
from .graphs import ModuliType
from .parser import Atom, ParseError, evaluate_expression, graph_from_atom, parse

EXIT_OK, EXIT_ASSERT, EXIT_USAGE, EXIT_PARSE, EXIT_COMPUTE = 0, 1, 2, 3, 4

MODULI = [m.value for m in ModuliType]


class UsageError(Exception):
    pass


def _threads(text):
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError("--threads must be at least 1")
    return k


def _markings(text):
    try:
        out = [int(x) for x in text.replace("{", "").replace("}", "").split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad marking list {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty marking list")
    return out


def _common(top: bool) -> argparse.ArgumentParser:
    # flags may precede or follow the command; only the top level sets defaults
    def d(value):
        return value if top else argparse.SUPPRESS

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=d(False),
                        help="machine-readable output")
    common.add_argument("--moduli", choices=MODULI, default=d("st"),
                        help="open locus for gens/basis/iszero (default: st)")
    common.add_argument("--cache", metavar="PATH", default=d(None),
                        help="persistent cache file (default: $TAUTRING_CACHE, else none)")
    common.add_argument("--threads", type=_threads, default=d(1), metavar="N",
                        help="worker processes for pairing tables")
    common.add_argument("--assert", dest="assert_", action="store_true", default=d(False),
                        help="iszero: exit with status 1 unless the class is zero")
    return common


def build_parser() -> argparse.ArgumentParser:
    top = _common(True)
    common = _common(False)
    ap = argparse.ArgumentParser(prog="taut", parents=[top],
                                 description="Computations in the tautological ring of M̄_g,n.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("gens", parents=[common], help="list generators of RH^r(M̄_g,n)")
    p.add_argument("g", type=int)
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)

    p = sub.add_parser("eval", parents=[common], help="integrate a class over M̄_g,n")
    p.add_argument("expr")

    p = sub.add_parser("basis", parents=[common], help="coordinates in the generating basis")
    p.add_argument("expr")
    p.add_argument("--degree", type=int, help="degree to extract (default: the class degree)")

    p = sub.add_parser("iszero", parents=[common], help="test a class for vanishing")
    p.add_argument("expr")

    p = sub.add_parser("pair", parents=[common], help="intersection number of two classes")
    p.add_argument("expr1")
    p.add_argument("expr2")

    p = sub.add_parser("dr", parents=[common], help="double ramification cycle DR_g(A)")
    p.add_argument("g", type=int)
    p.add_argument("A", type=int, nargs="+")
    p.add_argument("--degree", type=int, help="degree part of Pixton's class (default: g)")
    p.add_argument("--rpoly", action="store_true", help="keep the r-polynomial coefficients")

    p = sub.add_parser("pullback", parents=[common],
                       help="forgetful or boundary pullback of a class")
    p.add_argument("expr")
    how = p.add_mutually_exclusive_group(required=True)
    how.add_argument("--forget", type=_markings, metavar="I,J,..",
                     help="new markings added by the forgetful map")
    how.add_argument("--graph", metavar="GRAPH",
                     help="boundary graph, e.g. 'graph([2,2],[[1],[2]],[(1,2)])'")
    p.add_argument("--tensor", type=int, metavar="R",
                   help="with --graph: print degree-R coefficients in tensor bases")

    p = sub.add_parser("pushforward", parents=[common],
                       help="forgetful pushforward of a class")
    p.add_argument("expr")
    p.add_argument("--forget", type=_markings, required=True, metavar="I,J,..",
                   help="markings to forget")
    return ap


# -- helpers -------------------------------------------------------------------

def _class(text):
    from .decor import TautClass
    value = evaluate_expression(parse(text))
    if not isinstance(value, TautClass):
        raise UsageError("expression has no classes; add an 'on (g,n)' clause and atoms")
    return value


def _graph(text):
    node = parse(text).body
    if not isinstance(node, Atom) or node.name != "graph":
        raise ParseError("expected a single graph(...) atom", 0)
    return graph_from_atom(node)


def _vec(v) -> str:
    return "(" + ", ".join(str(Fraction(x)) for x in v) + ")"


def _emit(args, text, data):
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


# -- commands ------------------------------------------------------------------

def cmd_gens(args):
    from .decor import decorated_class, list_tautgens, tautgen_list
    gens = tautgen_list(args.g, args.n, args.r, args.moduli)
    data = {"g": args.g, "n": args.n, "degree": args.r, "moduli": args.moduli,
            "generators": [decorated_class(G, m).to_json() for G, m in gens]}
    _emit(args, list_tautgens(args.g, args.n, args.r, args.moduli), data)


def cmd_eval(args):
    from .calculus import evaluate
    value = evaluate_expression(parse(args.expr))
    if not isinstance(value, Fraction):
        value = evaluate(value)
    _emit(args, str(value), {"value": frac_to_str(value)})


def cmd_basis(args):
    from .relations import generating_indices, to_basis, _single_degree
    T = _class(args.expr)
    r = _single_degree(T, args.degree)
    vec = to_basis(T, r=r, moduli=args.moduli)
    data = {"g": T.g, "n": T.n, "degree": r, "moduli": args.moduli,
            "generating_indices": generating_indices(T.g, T.n, r, args.moduli),
            "vector": [frac_to_str(x) for x in vec]}
    _emit(args, _vec(vec), data)


def cmd_iszero(args):
    from .relations import is_zero
    T = _class(args.expr)
    z = is_zero(T, moduli=args.moduli)
    _emit(args, "true" if z else "false", {"is_zero": z, "moduli": args.moduli})
    if args.assert_ and not z:
        return EXIT_ASSERT
    return EXIT_OK


def cmd_pair(args):
    from .calculus import evaluate
    T1, T2 = _class(args.expr1), _class(args.expr2)
    value = evaluate(T1 * T2)
    _emit(args, str(value), {"value": frac_to_str(value)})


def cmd_dr(args):
    from .dr import DR_cycle
    T = DR_cycle(args.g, args.A, args.degree, rpoly=args.rpoly)
    if not args.rpoly:
        T = T.simplify()
    _emit(args, str(T), T.to_json())


def cmd_pullback(args):
    from .calculus import boundary_pullback, forgetful_pullback
    T = _class(args.expr)
    if args.forget:
        # unsimplified: keeps the bubble labels n+1, n+2 readable
        P = forgetful_pullback(T, args.forget)
        _emit(args, str(P), P.to_json())
        return
    if args.tensor is not None:
        P = boundary_pullback(_graph(args.graph), T)
        blocks = P.totensor_basis(args.tensor, moduli=args.moduli)
        vector = [x for mat in blocks for row in mat for x in row]
        text = "\n".join(
            f"block {k}: {len(mat)}x{len(mat[0]) if mat else 0}\n"
            + "\n".join("  " + _vec(row) for row in mat)
            for k, mat in enumerate(blocks))
        text += "\nvector: " + _vec(vector)
        data = {"blocks": [[[frac_to_str(x) for x in row] for row in mat] for mat in blocks],
                "vector": [frac_to_str(x) for x in vector]}
        _emit(args, text, data)
        return
    P = boundary_pullback(_graph(args.graph), T).simplify()
    _emit(args, str(P), P.to_json())


def cmd_pushforward(args):
    from .calculus import forgetful_pushforward
    T = _class(args.expr)
    P = forgetful_pushforward(T, args.forget)
    _emit(args, str(P), P.to_json())


COMMANDS = {
    "gens": cmd_gens, "eval": cmd_eval, "basis": cmd_basis, "iszero": cmd_iszero,
    "pair": cmd_pair, "dr": cmd_dr, "pullback": cmd_pullback, "pushforward": cmd_pushforward,
}


def _tag(exc) -> str:
    mod = type(exc).__module__
    return mod.rsplit(".", 1)[-1] if mod.startswith("tautring") else "compute"


def main(argv=None) -> int:
    from . import relations
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "tensor", None) is not None and not args.graph:
        print("taut: usage: --tensor needs --graph", file=sys.stderr)
        return EXIT_USAGE
    relations.set_threads(args.threads)
    cache = args.cache or relations.cache_path_from_env()
    try:
        if cache:
            relations.load_cache(cache)
        code = COMMANDS[args.command](args) or EXIT_OK
        if cache:
            relations.save_cache(cache)
        return code
    except ParseError as exc:
        print(f"taut: parse: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"taut: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, RuntimeError, ArithmeticError, KeyError) as exc:
        print(f"taut: {_tag(exc)}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
