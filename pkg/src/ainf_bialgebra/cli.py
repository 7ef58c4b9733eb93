"""Command-line front end: ``verify``, ``enumerate`` and ``show``.

Exit status: 0 pass, 1 relation failure, 2 input or parse error,
3 degree-condition failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path

from .algebra import Element
from .catalog import (
    HopfStructure,
    degree_condition,
    enumerate_types,
    load_structure,
    make_ex1,
    make_theorem1,
    q_of_n,
)
from .errors import AlgebraError
from .ops import (
    MultiOp,
    bar_component,
    cobar_component,
    identity,
    iterated_coproduct,
    iterated_product,
    sigma,
    tensor,
)
from .relations import RELATION2_CONVENTIONS, verify

EXIT_OK = 0
EXIT_RELATION = 1
EXIT_INPUT = 2
EXIT_DEGREE = 3


class InputError(Exception):
    """Bad command-line input; maps to exit status 2."""


class DegreeFailure(Exception):
    """Requested parameters violate the degree condition; exit status 3."""


def builtin_structure(name: str, m=None, n=None, p=None, q=None, base=None) -> HopfStructure:
    if name == "ex1":
        return make_ex1()
    if name == "theorem1":
        if None in (m, n, p, q):
            raise InputError("theorem1 needs --m, --n, --p and --q")
        if min(m, n, p, q) < 1:
            raise InputError("m, n, p, q must be positive")
        if not degree_condition(m, n, p, q):
            raise DegreeFailure(
                f"(m,n,p,q)=({m},{n},{p},{q}) violates m(q+1) = n(q-1) + p + 3"
            )
        return make_theorem1((m, n, p, q), base=base)
    raise InputError(f"unknown builtin {name!r}")


def resolve_source(source: str) -> HopfStructure:
    """``ex1``, ``theorem1:m,n,p,q`` or a structure file path."""
    if source == "ex1":
        return make_ex1()
    if source.startswith("theorem1:"):
        try:
            m, n, p, q = (int(t) for t in source.split(":", 1)[1].split(","))
        except ValueError:
            raise InputError(f"expected theorem1:m,n,p,q, got {source!r}") from None
        return builtin_structure("theorem1", m, n, p, q)
    path = Path(source)
    if not path.is_file():
        raise InputError(f"no such structure file: {source}")
    return load_structure(path)


# expression mini-language for ``show``

_OP_ATOM = re.compile(
    r"(mu|Delta|omega|id(\d+)|f(\d+)|g(\d+)|delta(\d+)|partial(\d+)|sigma(\d+)_(\d+))"
)
_OP_EXPR = re.compile(rf"\s*{_OP_ATOM.pattern}(\s*\*\s*{_OP_ATOM.pattern})*\s*\(")


def named_op(h: HopfStructure, name: str) -> MultiOp:
    module = h.module
    m = _OP_ATOM.fullmatch(name)
    if m is None:
        raise InputError(f"unknown operation {name!r}")
    if name == "mu":
        return h.mu
    if name == "Delta":
        return h.delta
    if name == "omega":
        if h.omega is None:
            raise InputError("this structure has no ω")
        return h.omega
    if name.startswith("sigma"):
        return sigma(module, int(m.group(7)), int(m.group(8)))
    k = int(re.search(r"\d+", name).group())
    if k < 1:
        raise InputError(f"{name}: index must be positive")
    if name.startswith("id"):
        return identity(module, k)
    if name.startswith("f"):
        return iterated_coproduct(h.delta, k)
    if name.startswith("g"):
        return iterated_product(h.mu, k)
    if name.startswith("delta"):
        return cobar_component(h.delta, k)
    return bar_component(h.mu, k)


def _closing(text: str, start: int) -> int:
    depth = 0
    for i in range(start, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    raise InputError(f"unbalanced parentheses in {text!r}")


def evaluate_expression(h: HopfStructure, text: str) -> Element:
    """Evaluate ``op(expr)`` where ``op`` is ``name`` or ``name*name*…`` (tensor)."""
    text = text.strip()
    head = _OP_EXPR.match(text)
    if head is not None:
        open_at = head.end() - 1
        close_at = _closing(text, open_at)
        if close_at == len(text) - 1:
            names = [s.strip() for s in text[:open_at].split("*")]
            ops = [named_op(h, s) for s in names]
            op = ops[0] if len(ops) == 1 else tensor(*ops)
            arg = evaluate_expression(h, text[open_at + 1:close_at])
            return op.apply(arg)
    return h.module.element(text)


# commands

def cmd_verify(args) -> int:
    if args.builtin and args.file:
        raise InputError("give either --builtin or --file, not both")
    if args.file:
        path = Path(args.file)
        if not path.is_file():
            raise InputError(f"no such structure file: {args.file}")
        h = load_structure(path)
    elif args.builtin:
        h = builtin_structure(args.builtin, args.m, args.n, args.p, args.q, args.base)
    else:
        raise InputError("verify needs --builtin or --file")
    if h.omega is None:
        raise InputError("the structure has no ω")
    result = verify(h, mode=args.mode, relation2=args.relation2, bar_sign=args.bar_sign,
                    exhaustive=args.exhaustive)
    if args.json:
        print(json.dumps(result.to_dict(), indent=2, ensure_ascii=False))
    else:
        print(result.to_text())
    if not result.degree_ok and not args.no_degree_check:
        return EXIT_DEGREE
    return EXIT_OK if all(r.passed for r in result.reports) else EXIT_RELATION


def cmd_enumerate(args) -> int:
    if args.m_max < 2:
        raise InputError("--m-max must be at least 2")
    rows = enumerate_types(args.m_max, q_cap=args.q_cap, n_max=args.n_max)
    records = []
    for t in rows:
        qn = None if t.n == t.m else str(q_of_n(t.m, t.p, t.n))
        records.append({"m": t.m, "n": t.n, "p": t.p, "q": t.q, "case": t.case, "q_of_n": qn})
    if args.json:
        print(json.dumps(records, indent=2))
        return EXIT_OK
    print(f"{'m':>3} {'n':>3} {'p':>3} {'q':>3}  {'case':<7} q(n)")
    for r in records:
        print(f"{r['m']:>3} {r['n']:>3} {r['p']:>3} {r['q']:>3}  {r['case']:<7} {r['q_of_n'] or '-'}")
    print(f"{len(records)} types")
    return EXIT_OK


def cmd_show(args) -> int:
    h = resolve_source(args.source)
    print(evaluate_expression(h, args.expression))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ainf-bialgebra",
        description="Verify structure relations of A-infinity bialgebras of type (m, n).",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log extra verdicts to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check every applicable relation")
    v.add_argument("--builtin", choices=["ex1", "theorem1"])
    v.add_argument("--file", help="structure description file")
    for flag in ("m", "n", "p", "q"):
        v.add_argument(f"--{flag}", type=int)
    v.add_argument("--base", choices=["Z2", "Q"], help="coefficient base for theorem1")
    v.add_argument("--mode", choices=["auto", "exact", "termwise"], default="auto")
    v.add_argument("--relation2", choices=RELATION2_CONVENTIONS, default="definition")
    v.add_argument("--bar-sign", type=int, choices=[1, -1], default=1)
    v.add_argument("--exhaustive", action="store_true",
                   help="evaluate every basis word, not only the support candidates")
    v.add_argument("--json", action="store_true", help="machine-readable output")
    v.add_argument("--no-degree-check", action="store_true",
                   help="do not let a degree mismatch decide the exit status")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", help="list admissible (m, n, p, q)")
    e.add_argument("--m-max", type=int, required=True)
    e.add_argument("--q-cap", type=int, default=6)
    e.add_argument("--n-max", type=int)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("show", help="evaluate an expression such as 'delta3(omega(y|y))'")
    s.add_argument("source", help="ex1, theorem1:m,n,p,q or a structure file")
    s.add_argument("expression")
    s.set_defaults(func=cmd_show)
    return parser


def _configure_logging(verbose: bool):
    logger = logging.getLogger("ainf_bialgebra")
    for handler in [h for h in logger.handlers if getattr(h, "_cli", False)]:
        logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler._cli = True
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.INFO if verbose else logging.WARNING)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return args.func(args)
    except DegreeFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGREE
    except (InputError, AlgebraError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
