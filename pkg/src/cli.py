"""Command-line front end.

    qva expand --g "(z-2)/(1-2*z)" --at 0 --trunc 8
    qva verify ah --g "(z-2)/(1-2*z)" --degree 4 --window -4 5
    qva classify-aalpha --alpha -1
    qva verma --g g.json --module u.json --degree 2 --word-cap 3
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional

import config
from .ding_iohara import classify_aalpha
from .errors import (
    InvalidConfig,
    IrrationalRoots,
    QVAError,
    RelationInconsistency,
    SymmetryViolated,
    TruncationError,
    UnsupportedG,
    ZeroAlpha,
)
from .evaluation import SUITES, RunConfig, run_suite
from .phi import apply_phi
from .ratfunc import canonicalize, factor_h, parse_rational_function
from .report import Report
from .serialization import (
    monomial_to_json,
    module_from_json,
    scalar_from_json,
    series_to_json,
    vector_from_json,
    vector_to_json,
)
from .series import iota_exp, iota_z0, iota_zinf
from .vacuum import AhContext, apply_mode, pbw_vectors

logger = logging.getLogger(__name__)

# checked in order, so subclasses must precede their bases
EXIT_CODES = (
    (RelationInconsistency, 1),
    (InvalidConfig, 2),
    (SymmetryViolated, 3),
    (IrrationalRoots, 4),
    (TruncationError, 5),
    (UnsupportedG, 6),
    (ZeroAlpha, 7),
)


def exit_code_for(error: Exception) -> int:
    for cls, code in EXIT_CODES:
        if isinstance(error, cls):
            return code
    if isinstance(error, (QVAError, ValueError)):
        return 2
    return 1


def _read_json_arg(value: str) -> Any:
    """A JSON document given inline or as a path."""
    text = value
    if os.path.isfile(value):
        with open(value) as handle:
            text = handle.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidConfig(f"could not read JSON from {value!r}: {e}") from e


def _dump(data: Dict[str, Any]) -> str:
    return json.dumps(data, indent=2, sort_keys=True, default=str)


def _emit(data: Dict[str, Any], args) -> None:
    text = _dump(data)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text + "\n")
    print(text)


def _emit_report(report: Report, args) -> int:
    data = report.to_dict(include_timing=args.timing)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(_dump(data) + "\n")
    if args.json:
        print(_dump(data))
    else:
        print(f"\n📊 {report.suite}")
        print("=" * 80)
        frame = report.to_frame()
        if not frame.empty:
            print(frame.to_string(index=False))
        if report.passed:
            print("\n✅ PASS")
        else:
            print(f"\n❌ FAIL ({report.failures} failing checks)")
            for rec in report.all_records():
                if not rec.passed:
                    print(f"  - {rec.check} modes={rec.modes} witness={rec.witness}")
    return 0 if report.passed else 1


def _context_for(args, degree_bound: int, window) -> AhContext:
    cg = canonicalize(parse_rational_function(args.g))
    return AhContext.build(cg, degree_bound, window, trunc=args.trunc)


def cmd_expand(args) -> int:
    g = parse_rational_function(args.g)
    canonicalize(g)
    expand = {"0": iota_z0, "inf": iota_zinf, "exp": iota_exp}[args.at]
    _emit({"at": args.at, "series": series_to_json(expand(g, args.trunc or config.DEFAULT_TRUNC))}, args)
    return 0


def cmd_factor(args) -> int:
    cg = canonicalize(parse_rational_function(args.g))
    fact = factor_h(cg, args.trunc or config.DEFAULT_TRUNC)
    _emit({
        "sign": cg.sign,
        "l": cg.l,
        "roots": [str(r) for r in cg.roots],
        "epsilon": fact.epsilon,
        "h": series_to_json(fact.h),
        "q": series_to_json(fact.q),
    }, args)
    return 0


def cmd_vacuum_basis(args) -> int:
    ctx = _context_for(args, args.degree, (-1, 1))
    basis = {}
    for d in range(args.degree + 1):
        basis[str(d)] = [
            {"mono": monomial_to_json(mono), "vector": vector_to_json(vec)} for mono, vec in pbw_vectors(ctx, d)
        ]
    _emit({"super": ctx.super, "basis": basis}, args)
    return 0


def _vector_weight(v) -> int:
    return 0 if v.is_zero() else v.weight()


def cmd_act(args) -> int:
    base_ctx = _context_for(args, 0, (-1, 1))
    v = vector_from_json(_read_json_arg(args.vector), base_ctx.space)
    ctx = _context_for(args, _vector_weight(v), (min(args.m, 0), max(args.m, 1)))
    result = apply_mode(ctx, args.gen, args.m, v)
    _emit({"gen": args.gen, "m": args.m, "vector": vector_to_json(result)}, args)
    return 0


def cmd_phi(args) -> int:
    base_ctx = _context_for(args, 0, (-1, 1))
    v = vector_from_json(_read_json_arg(args.vector), base_ctx.space)
    ctx = _context_for(args, max(_vector_weight(v), args.i), (-1, 1))
    result = apply_phi(ctx.phi, args.i, v)
    _emit({"i": args.i, "vector": vector_to_json(result)}, args)
    return 0


def _run_config(args, suites) -> RunConfig:
    window = tuple(args.window) if args.window else config.parse_window(config.DEFAULT_WINDOW)
    cfg = RunConfig(
        g=parse_rational_function(args.g),
        degree_bound=args.degree if args.degree is not None else config.DEFAULT_DEGREE,
        series_trunc=args.trunc,
        mode_window=window,
        word_cap=args.word_cap,
        suites=tuple(suites),
        seed=args.seed,
        output=args.out,
        include_timing=args.timing,
    )
    if getattr(args, "module", None):
        cfg.module = module_from_json(_read_json_arg(args.module))
    if getattr(args, "alpha", None) is not None:
        cfg.alpha = scalar_from_json(args.alpha)
    return cfg


def cmd_verify(args) -> int:
    cfg = _run_config(args, [args.suite])
    if args.degree is not None and args.suite in ("atilde", "verma"):
        cfg.verma_degree = args.degree
    elif args.degree is not None:
        cfg.verma_degree = min(args.degree, config.DEFAULT_VERMA_DEGREE)
    return _emit_report(run_suite(cfg), args)


def cmd_verma(args) -> int:
    cfg = _run_config(args, ["verma"])
    cfg.verma_degree = args.degree if args.degree is not None else config.DEFAULT_VERMA_DEGREE
    cfg.degree_bound = 0
    return _emit_report(run_suite(cfg), args)


def cmd_classify(args) -> int:
    return _emit_report(classify_aalpha(scalar_from_json(args.alpha)), args)


def _add_common(p: argparse.ArgumentParser, with_g: bool = True) -> None:
    if with_g:
        p.add_argument("--g", required=True, help="g(z): JSON, a JSON file, or an expression in z")
        p.add_argument("--trunc", type=int, default=None, help="series truncation")
    p.add_argument("--out", default=None, help="also write the JSON result to this path")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of a table")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")
    p.add_argument("--log-level", default=None, help="overrides QVA_LOG_LEVEL")


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--window", type=int, nargs=2, metavar=("A", "B"), default=None)
    p.add_argument(
        "--word-cap", type=int, default=config.DEFAULT_WORD_CAP,
        help="relation headroom for M(U), at least 2: instances are imposed up to degree "
             "degree + word_cap - 2; verma sweeps the caps 2..word_cap",
    )
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--module", default=None, help="A[alpha]-module JSON or file")
    p.add_argument("--alpha", default=None, help="alpha for the aalpha suite (defaults to g(0))")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qva", description="Exact checks for A(h) and A~(g).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="iota expansions of g")
    _add_common(p)
    p.add_argument("--at", choices=["0", "inf", "exp"], default="0")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("factor", help="canonical form of g and h = eps q(x)/q(-x)")
    _add_common(p)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("vacuum-basis", help="P-B-W vectors of the vacuum module")
    _add_common(p)
    p.add_argument("--degree", type=int, default=config.DEFAULT_DEGREE)
    p.set_defaults(func=cmd_vacuum_basis)

    p = sub.add_parser("act", help="apply e(m), f(m) or psi(m) to a Fock vector")
    _add_common(p)
    p.add_argument("--gen", choices=["e", "f", "psi"], required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--vector", required=True)
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("phi", help="apply phi_i to a Fock vector")
    _add_common(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--vector", required=True)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", choices=list(SUITES) + ["all"])
    _add_common(p)
    _add_run_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify-aalpha", help="irreducible A[alpha]-modules")
    _add_common(p, with_g=False)
    p.add_argument("--alpha", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verma", help="truncated M(U) over a word-cap sweep")
    _add_common(p)
    _add_run_flags(p)
    p.set_defaults(func=cmd_verma)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config.configure_logging(args.log_level)
    try:
        return args.func(args)
    except (QVAError, ValueError, ArithmeticError) as e:
        code = exit_code_for(e)
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        witness = getattr(e, "witness", None)
        if witness:
            print(f"   witness: {witness}", file=sys.stderr)
        return code


if __name__ == "__main__":
    exit(main())
