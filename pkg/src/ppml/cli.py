"""``ppml`` command-line front end.

Every subcommand prints a line-oriented ``key: value`` document; structures
are embedded as single-line JSON.  Exit status: 0 true/sat, 1 false/unsat,
2 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import __version__
from .canonical import canonical_model, nu_formula
from .comonad import check_comonad_laws, dump_unravelling, to_dot, unravel, unravel_at_chain
from .core import PPMLError, PointedStructure, as_pp_tree, canonical_code, dump_structure, \
    load_structure
from .decision import bml_sat, brute_force_ppml_sat, decide_k_bisim, model_check, ppml_sat
from .games import (build_bisim_span, decide_bisim_game, decide_graded_bisim,
                    strategy_to_kleisli)
from .semantics import eval_datagl, eval_ppml, load_model
from .syntax import And, modal_debt, modal_depth, parse, parse_path, signature_for, to_text
from .translations import (phi_k, standard_translation, tilde_signature, tr1, tr1_cdxp, tr2)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")

    def exit(self, status=0, message=None):
        raise UsageError(message or "")


def _bool(v: bool) -> str:
    return "true" if v else "false"


def render(pairs: Sequence[tuple[str, object]]) -> str:
    """Format a result document."""
    lines = []
    for key, value in pairs:
        if isinstance(value, bool):
            value = _bool(value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _formula_text(arg: str) -> str:
    return _read(arg[1:]).strip() if arg.startswith("@") else arg


def _arities(items: Sequence[str] | None) -> dict[str, int]:
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        # names such as R_= contain '=' themselves
        if name.endswith("_") and value.startswith("="):
            name, _, value = item.rpartition("=")
        if not sep or not value.isdigit():
            raise UsageError(f"bad --arity {item!r}; expected NAME=N")
        out[name] = int(value)
    return out


def _chain(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad chain {text!r}; expected comma-separated indices") from None


def _structure(path: str) -> PointedStructure:
    return load_structure(_read(path))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ppml", description="Path predicate modal logic toolkit")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def cmd(name, help_text, model=False, formula=False, k=False, pair=False):
        sp = sub.add_parser(name, help=help_text)
        if pair:
            sp.add_argument("a")
            sp.add_argument("b")
        if model:
            sp.add_argument("-m", "--model", required=True)
        if formula:
            sp.add_argument("formula")
        if k:
            sp.add_argument("-k", type=int, required=True)
        sp.add_argument("--arity", action="append", metavar="R=N")
        sp.add_argument("--seed", type=int, default=0)
        return sp

    sp = cmd("parse", "parse and pretty-print a formula", formula=True)
    sp.add_argument("--dialect", choices=["ppml", "datagl"], default="ppml")
    sp = cmd("eval", "evaluate a formula at a valuation", model=True, formula=True)
    sp.add_argument("--valuation", help="comma-separated elements (default: basepoint)")
    sp.add_argument("--dialect", choices=["ppml", "datagl"], default="ppml")
    sp.add_argument("-w", "--world", type=int, default=0)
    sp = cmd("mc", "model check at the basepoint", model=True, formula=True)
    sp.add_argument("--method", choices=["direct", "reduction"], default="direct")
    sp = cmd("unravel", "k-unravelling of a structure", model=True, k=True)
    sp.add_argument("--at", help="unravel at this E-chain")
    sp.add_argument("--dot")
    sp = cmd("canon", "canonical code of a pp-tree or of an unravelling", model=True)
    sp.add_argument("-k", type=int)
    sp = cmd("bisim", "decide k-bisimilarity", pair=True, k=True)
    sp.add_argument("--mode", choices=["game", "reduction", "graded"], default="game")
    sp.add_argument("--strategy", action="store_true")
    sp = cmd("sim", "decide k-simulation", pair=True, k=True)
    sp.add_argument("--kleisli", action="store_true")
    cmd("span", "span of bounded morphisms witnessing k-bisimilarity", pair=True, k=True)
    sp = cmd("sat", "PPML satisfiability", formula=True)
    sp.add_argument("--brute-force", action="store_true")
    sp.add_argument("--max-nodes", type=int, default=5)
    cmd("bml-sat", "basic modal satisfiability", formula=True)
    sp = cmd("translate", "translate between logics", formula=True)
    sp.add_argument("--from", dest="source", choices=["ppml", "datagl", "cdxp"], default="ppml")
    sp.add_argument("--to", dest="target", choices=["fol", "bml", "datagl", "ppml"])
    cmd("nu", "formula of a finite pp-tree", model=True)
    sp = cmd("model", "canonical model of a positive well-nested formula", formula=True)
    sp.add_argument("--dot")
    cmd("laws", "check the comonad laws", model=True, k=True)
    return p


def _run(args) -> tuple[int, str]:
    c = args.command
    arities = _arities(getattr(args, "arity", None))

    if c == "parse":
        f = parse(_formula_text(args.formula), args.dialect)
        doc = [("formula", to_text(f)), ("depth", modal_depth(f))]
        if args.dialect == "ppml":
            sig = signature_for(f, arities)
            doc.append(("debt", modal_debt(f, sig)))
        return 0, render(doc)

    if c == "eval":
        if args.dialect == "datagl":
            m = load_model(_read(args.model))
            v = eval_datagl(m, args.world, parse(_formula_text(args.formula), "datagl"))
            return (0 if v else 1), render([("result", v)])
        a = _structure(args.model)
        s = _chain(args.valuation) or (a.basepoint,)
        v = eval_ppml(a, s, parse(_formula_text(args.formula)))
        return (0 if v else 1), render([("result", v)])

    if c == "mc":
        a = _structure(args.model)
        v = model_check(a, parse(_formula_text(args.formula)), args.method)
        return (0 if v else 1), render([("method", args.method), ("result", v)])

    if c == "unravel":
        a = _structure(args.model)
        at = _chain(args.at)
        u = unravel_at_chain(a, at, args.k) if at else unravel(a, args.k)
        if args.dot:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(to_dot(u.tree, u.node_chain))
        return 0, render([("nodes", len(u)), ("height", u.tree.tree_height),
                          ("structure", dump_unravelling(u))])

    if c == "canon":
        a = _structure(args.model)
        t = unravel(a, args.k).tree if args.k is not None else as_pp_tree(a)
        return 0, render([("code", canonical_code(t).decode())])

    if c == "bisim":
        a, b = _structure(args.a), _structure(args.b)
        doc = [("mode", args.mode), ("k", args.k)]
        if args.mode == "graded":
            v = decide_graded_bisim(a, b, args.k)
            doc.append(("result", v))
        elif args.mode == "reduction":
            v = decide_k_bisim(a, b, args.k, "reduction")
            doc.append(("result", v))
        else:
            v, st = decide_bisim_game(a, b, args.k)
            doc.append(("result", v))
            if args.strategy and st is not None:
                for s, t, side, x, y in st.records():
                    doc.append(("move", json.dumps([list(s), list(t), side, x, y])))
        return (0 if v else 1), render(doc)

    if c == "sim":
        a, b = _structure(args.a), _structure(args.b)
        v, st = decide_bisim_game(a, b, args.k, "sim")
        doc = [("mode", "sim"), ("k", args.k), ("result", v)]
        if args.kleisli and st is not None:
            h = strategy_to_kleisli(st, a, b, args.k)
            doc.append(("kleisli", json.dumps(list(h.mapping))))
        return (0 if v else 1), render(doc)

    if c == "span":
        a, b = _structure(args.a), _structure(args.b)
        sp = build_bisim_span(a, b, args.k)
        if sp is None:
            return 1, render([("result", False)])
        doc = [("result", True), ("apex_nodes", sp.apex.size),
               ("pairs", json.dumps([[list(s), list(t)] for s, t in sp.pairs])),
               ("left", json.dumps(list(sp.left.mapping))),
               ("right", json.dumps(list(sp.right.mapping))),
               ("apex", dump_structure(sp.apex.underlying))]
        return 0, render(doc)

    if c in ("sat", "bml-sat"):
        f = parse(_formula_text(args.formula))
        sig = signature_for(f, arities)
        if c == "bml-sat":
            res = bml_sat(f, sig)
        elif args.brute_force:
            res = brute_force_ppml_sat(f, sig, args.max_nodes)
        else:
            res = ppml_sat(f, sig)
        doc = [("result", "sat" if res.verdict else "unsat")]
        if res.model is not None:
            doc.append(("model", dump_structure(res.model.underlying)))
        return (0 if res.verdict else 1), render(doc)

    if c == "translate":
        text = _formula_text(args.formula)
        if args.source == "cdxp":
            out = tr1_cdxp(parse_path(text))
            return 0, render([("formula", to_text(out))])
        if args.source == "datagl":
            if args.target not in (None, "ppml"):
                raise UsageError("DataGL translates to ppml only")
            return 0, render([("formula", to_text(tr1(parse(text, "datagl"))))])
        f = parse(text)
        sig = signature_for(f, arities)
        if args.target == "fol":
            return 0, render([("formula", to_text(standard_translation(f, sig)))])
        if args.target == "bml":
            flat = tilde_signature(sig)
            return 0, render([("formula", to_text(And(f, phi_k(sig)))),
                              ("signature", json.dumps(flat.to_dict()))])
        if args.target == "datagl":
            return 0, render([("formula", to_text(tr2(f)))])
        raise UsageError("translate from ppml needs --to fol|bml|datagl")

    if c == "nu":
        t = as_pp_tree(_structure(args.model))
        return 0, render([("formula", to_text(nu_formula(t)))])

    if c == "model":
        f = parse(_formula_text(args.formula))
        t = canonical_model(f, signature_for(f, arities))
        if args.dot:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(to_dot(t))
        return 0, render([("nodes", t.size), ("height", t.tree_height),
                          ("structure", dump_structure(t.underlying))])

    if c == "laws":
        rep = check_comonad_laws(_structure(args.model), args.k)
        doc = [tuple(line.split(": ", 1)) for line in rep.lines()]
        doc.append(("result", rep.ok))
        return (0 if rep.ok else 1), render(doc)

    raise UsageError(build_parser().format_usage())


def execute(argv: Sequence[str]) -> tuple[int, str]:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command is None:
            raise UsageError(parser.format_help())
        random.seed(args.seed)
        return _run(args)
    except UsageError as exc:
        return 2, str(exc) if str(exc).endswith("\n") else f"{exc}\n"
    except (PPMLError, OSError, ValueError, KeyError) as exc:
        return 2, render([("error", str(exc))])


def main(argv: Sequence[str] | None = None) -> int:
    code, text = execute(sys.argv[1:] if argv is None else argv)
    (sys.stdout if code != 2 else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
