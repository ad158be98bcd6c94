"""Command-line driver.

Exit status: 0 success, 1 type error or NotRelated, 2 bad input or
configuration, 3 Unknown or fuel exhausted.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import demo
from .dc import normalize_dc, typecheck_dc
from .dccpc import (
    dc_to_dpc, dc_type_to_dpc, dpc_to_dc, dpc_type_to_dc, normalize_dpc, typecheck_dpc, unprotect,
)
from .equivalence import (
    Limits, Status, ctx_equiv_test, lr_dc, lr_stlc, noninterference_check, reps_dc, reps_stlc,
)
from .errors import ConfigError, FuelExhausted, OpenTerm, ParseError, SealError, UnsupportedContext
from .grammar import parse_context, parse_term, parse_type, show, show_type
from .levels import CHAIN, parse_poset
from .stlc import normalize_stlc, typecheck_stlc
from .translate import build_kc, default_keys, target_context, translate_dc_to_stlc, translate_type
from .untranslate import realize

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2, 3


class Output:
    def __init__(self, machine: bool, stream):
        self.machine = machine
        self.stream = stream

    def emit(self, **fields):
        if self.machine:
            line = ";".join(f"{k}={_escape(str(v))}" for k, v in fields.items())
        else:
            line = "\n".join(f"{v}" if k in ("term", "verdict") else f"{k}: {v}" for k, v in fields.items())
        print(line, file=self.stream)

    def text(self, s: str):
        print(s, file=self.stream, end="" if s.endswith("\n") else "\n")


def _escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace(";", "\\;").replace("\n", "\\n")


def _read(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def _term(arg):
    return parse_term(_read(arg))


def _obs(P, text):
    obs = frozenset(x.strip() for x in text.split(",") if x.strip())
    P.check(*obs)
    return obs


def _ctx_line(ctx):
    return ", ".join(f"{x}:{show_type(t)}" for x, t in ctx.items())


def _stlc_ctx(P, args):
    return {**build_kc(P), **parse_context(args.ctx)}


def _limits(args):
    for name in ("term_size", "fuel", "bound"):
        if getattr(args, name) <= 0:
            raise ConfigError(f"--{name.replace('_', '-')} must be positive")
    return Limits(term_size=args.term_size, fuel=args.fuel, distinguisher_bound=args.bound)


def _verdict(out, v, **extra):
    fields = {"verdict": v.status.value, **extra}
    if v.detail:
        fields["witness" if v.is_not_related else "reason"] = v.detail
    out.emit(**fields)
    return {Status.RELATED: EXIT_OK, Status.NOT_RELATED: EXIT_FAIL, Status.UNKNOWN: EXIT_UNKNOWN}[v.status]


# subcommands


def cmd_typecheck(P, args, out):
    e, obs, ctx = _term(args.term), _obs(P, args.obs), parse_context(args.ctx)
    expected = parse_type(args.type) if args.type else None
    if args.calc == "dc":
        t, _ = typecheck_dc(P, ctx, obs, e, expected)
    elif args.calc == "dccpc":
        t, _ = typecheck_dpc(P, ctx, obs, e, expected)
    else:
        t, _ = typecheck_stlc(P, _stlc_ctx(P, args), e, expected)
    out.emit(type=show_type(t))
    return EXIT_OK


def cmd_normalize(P, args, out):
    e, obs, ctx = _term(args.term), _obs(P, args.obs), parse_context(args.ctx)
    if args.calc == "dc":
        t, _ = typecheck_dc(P, ctx, obs, e)
        v = normalize_dc(e, args.fuel)
    elif args.calc == "dccpc":
        t, _ = typecheck_dpc(P, ctx, obs, e)
        v = normalize_dpc(e, args.fuel)
    else:
        t, _ = typecheck_stlc(P, _stlc_ctx(P, args), e)
        v = normalize_stlc(e, args.fuel)
    out.emit(term=show(v), type=show_type(t))
    return EXIT_OK


def cmd_translate(P, args, out):
    e, obs, ctx = _term(args.term), _obs(P, args.obs), parse_context(args.ctx)
    sigma = default_keys(obs)
    M = translate_dc_to_stlc(P, ctx, sigma, e)
    t, _ = typecheck_dc(P, ctx, obs, e)
    out.emit(context=_ctx_line(target_context(P, ctx, sigma)), term=show(M),
             type=show_type(translate_type(t)))
    return EXIT_OK


def cmd_untranslate(P, args, out):
    if not args.type:
        raise ConfigError("untranslate needs --type (the source type)")
    M, obs, ctx = _term(args.term), _obs(P, args.obs), parse_context(args.ctx)
    t = parse_type(args.type)
    e = realize(P, ctx, default_keys(obs), M, t, args.fuel)
    out.emit(term=show(e), type=show_type(t))
    return EXIT_OK


def cmd_to_dccpc(P, args, out):
    e, obs, ctx = _term(args.term), _obs(P, args.obs), parse_context(args.ctx)
    typecheck_dc(P, ctx, obs, e)
    d = dc_to_dpc(e)
    t, _ = typecheck_dpc(P, {x: dc_type_to_dpc(ty) for x, ty in ctx.items()}, obs, d)
    out.emit(term=show(d), type=show_type(t))
    return EXIT_OK


def cmd_from_dccpc(P, args, out):
    d, obs, ctx = _term(args.term), _obs(P, args.obs), parse_context(args.ctx)
    _, deriv = typecheck_dpc(P, ctx, obs, d)
    e = dpc_to_dc(P, deriv)
    dctx = {x: dpc_type_to_dc(t) for x, t in ctx.items()}
    t, _ = typecheck_dc(P, dctx, obs, e)
    out.emit(term=show(e), type=show_type(t))
    return EXIT_OK


def cmd_unprotect(P, args, out):
    if not args.type:
        raise ConfigError("unprotect needs --type (a DCC_pc type)")
    P.check(args.level)
    e = unprotect(P, args.level, parse_type(args.type))
    t, _ = typecheck_dc(P, {}, frozenset(), e)
    out.emit(term=show(e), type=show_type(t))
    return EXIT_OK


def cmd_equiv(P, args, out):
    if not args.type:
        raise ConfigError("equiv needs --type")
    e1, e2, t = _term(args.left), _term(args.right), parse_type(args.type)
    if args.calc == "stlc":
        v = lr_stlc(P, _stlc_ctx(P, args), e1, e2, t, _limits(args))
    else:
        v = lr_dc(P, _obs(P, args.obs), e1, e2, t, _limits(args))
    return _verdict(out, v)


def cmd_ni_check(P, args, out):
    e, obs, ctx = _term(args.term), _obs(P, args.obs), parse_context(args.ctx)
    expected = parse_type(args.type) if args.type else None
    return _verdict(out, noninterference_check(P, ctx, obs, e, _limits(args), expected))


def cmd_ctx_equiv(P, args, out):
    if not args.type:
        raise ConfigError("ctx-equiv needs --type")
    e1, e2, t = _term(args.left), _term(args.right), parse_type(args.type)
    _limits(args)
    v = ctx_equiv_test(P, _obs(P, args.obs), e1, e2, t, args.bound, args.strict, args.fuel)
    return _verdict(out, v)


def cmd_reps(P, args, out):
    t = parse_type(args.type)
    if args.calc == "stlc":
        r = reps_stlc(P, _stlc_ctx(P, args), t, _limits(args))
    else:
        r = reps_dc(P, t, _obs(P, args.obs), _limits(args))
    for i, rep in enumerate(r.reps):
        out.emit(index=i, term=show(rep))
    out.emit(count=len(r), exact=str(r.exact).lower())
    return EXIT_OK


def cmd_demo(P, args, out):
    out.text(demo.counterexample_transcript())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poset", help="poset file (default: the chain L <= H)")
    common.add_argument("--obs", default="", help="comma-separated observer labels")
    common.add_argument("--ctx", default="", help='context, e.g. "x:[bool]@L, y:unit"')
    common.add_argument("--type", help="type annotation")
    common.add_argument("--calc", choices=["dc", "stlc", "dccpc"], default="dc")
    common.add_argument("--machine", action="store_true", help="key=value;... output")
    common.add_argument("--term-size", type=int, default=Limits.term_size)
    common.add_argument("--fuel", type=int, default=Limits.fuel)
    common.add_argument("--bound", type=int, default=Limits.distinguisher_bound)

    parser = argparse.ArgumentParser(prog="sealtc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, *positional, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        for pos in positional:
            p.add_argument(pos, help="term text or a file containing it")
        p.set_defaults(fn=fn)
        return p

    add("typecheck", cmd_typecheck, "term")
    add("normalize", cmd_normalize, "term")
    add("translate", cmd_translate, "term")
    add("untranslate", cmd_untranslate, "term")
    add("to-dccpc", cmd_to_dccpc, "term")
    add("from-dccpc", cmd_from_dccpc, "term")
    add("unprotect", cmd_unprotect).add_argument("--level", required=True)
    add("equiv", cmd_equiv, "left", "right")
    add("ni-check", cmd_ni_check, "term")
    add("ctx-equiv", cmd_ctx_equiv, "left", "right").add_argument(
        "--strict", action="store_true", help="report Unknown instead of Related-up-to-bound")
    add("reps", cmd_reps)
    add("demo", cmd_demo).add_argument("name", choices=["tz-counterexample"])
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = Output(args.machine, stdout)
    try:
        P = parse_poset(_read(args.poset)) if args.poset else CHAIN
        return args.fn(P, args, out)
    except Exception as err:
        code = _exit_code(err)
        if code is None:
            raise
        print(f"error: {type(err).__name__}: {err}", file=stderr)
        return code


def _exit_code(err):
    if isinstance(err, (ParseError, ConfigError, UnsupportedContext, OpenTerm, ValueError, OSError)):
        return EXIT_INPUT
    if isinstance(err, FuelExhausted):
        return EXIT_UNKNOWN
    if isinstance(err, SealError):
        return EXIT_FAIL
    return None


if __name__ == "__main__":
    sys.exit(main())
