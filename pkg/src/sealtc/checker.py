"""One syntax-directed checker parameterized by calculus ("dc", "stlc", "dpc").

Injections carry no annotation, so the checker infers with unification
variables and defaults whatever is still unknown at the end to ``unit``.
Passing ``expected`` pins the root type before defaulting.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import errors as E
from .levels import LevelPoset
from .syntax import (
    UNIT, App, Arrow, Base, Bind, Bound, Case, Eta, Inj, Lam, Meta, Monad, Pair,
    Prod, Proj, Protect, Seal, Sealed, Sum, Term, Type, Unit, UnitTy, Unseal, Var,
    open_body, fresh, type_levels,
)


@dataclass(frozen=True)
class Derivation:
    rule: str
    context: tuple[tuple[str, Type], ...]
    obs: frozenset
    term: Term
    type: Type
    premises: tuple["Derivation", ...] = ()
    binders: tuple[str, ...] = ()  # names used to open binder premises
    level: str | None = None

    def nodes(self):
        yield self
        for p in self.premises:
            yield from p.nodes()


_TYPE_FORMS = {
    "dc": (UnitTy, Arrow, Prod, Sum, Sealed),
    "stlc": (UnitTy, Arrow, Prod, Sum, Base),
    "dpc": (UnitTy, Arrow, Prod, Sum, Monad),
}
_TERM_FORMS = {
    "dc": (Var, Unit, Lam, App, Pair, Proj, Inj, Case, Seal, Unseal),
    "stlc": (Var, Unit, Lam, App, Pair, Proj, Inj, Case),
    "dpc": (Var, Unit, Lam, App, Pair, Proj, Inj, Case, Eta, Bind, Protect),
}
_AT = {"dc": "the sealing calculus", "stlc": "STLC", "dpc": "DCC_pc"}


def protected(P: LevelPoset, l: str, t: Type) -> bool:
    """Whether a value of DCC_pc type ``t`` reveals nothing to observers below ``l``."""
    P.check(l)
    match t:
        case UnitTy():
            return True
        case Prod(a, b):
            return protected(P, l, a) and protected(P, l, b)
        case Arrow(_, b):
            return protected(P, l, b)
        case Monad(l2, b):
            return P.leq(l, l2) or protected(P, l, b)
        case Sum():
            return False
    raise E.ForeignConstruct(f"protection is defined on DCC_pc types, not {t!r}")


class Checker:
    def __init__(self, poset: LevelPoset, calculus: str):
        self.P = poset
        self.calc = calculus
        self.subst: dict[int, Type] = {}
        self.ids = itertools.count()
        self.deferred: list = []

    # unification
    def meta(self):
        return Meta(next(self.ids))

    def resolve(self, t: Type) -> Type:
        while isinstance(t, Meta) and t.id in self.subst:
            t = self.subst[t.id]
        return t

    def zonk(self, t: Type, default: Type | None = None) -> Type:
        t = self.resolve(t)
        match t:
            case Meta():
                return t if default is None else default
            case Arrow(a, b):
                return Arrow(self.zonk(a, default), self.zonk(b, default))
            case Prod(a, b):
                return Prod(self.zonk(a, default), self.zonk(b, default))
            case Sum(a, b):
                return Sum(self.zonk(a, default), self.zonk(b, default))
            case Sealed(l, b):
                return Sealed(l, self.zonk(b, default))
            case Monad(l, b):
                return Monad(l, self.zonk(b, default))
        return t

    def occurs(self, m: Meta, t: Type) -> bool:
        t = self.resolve(t)
        if t == m:
            return True
        match t:
            case Arrow(a, b) | Prod(a, b) | Sum(a, b):
                return self.occurs(m, a) or self.occurs(m, b)
            case Sealed(_, b) | Monad(_, b):
                return self.occurs(m, b)
        return False

    def unify(self, a: Type, b: Type, what: str = "") -> None:
        a, b = self.resolve(a), self.resolve(b)
        if a == b:
            return
        if isinstance(a, Meta) or isinstance(b, Meta):
            m, t = (a, b) if isinstance(a, Meta) else (b, a)
            if self.occurs(m, t):
                raise E.TypeMismatch(f"cyclic type{what}")
            self.subst[m.id] = t
            return
        match a, b:
            case (Arrow(a1, a2), Arrow(b1, b2)) | (Prod(a1, a2), Prod(b1, b2)) | (Sum(a1, a2), Sum(b1, b2)):
                self.unify(a1, b1, what)
                self.unify(a2, b2, what)
                return
            case (Sealed(l1, a1), Sealed(l2, b1)) | (Monad(l1, a1), Monad(l2, b1)) if l1 == l2:
                self.unify(a1, b1, what)
                return
        raise E.TypeMismatch(f"cannot match {_show(self.zonk(a))} with {_show(self.zonk(b))}{what}")

    # validation
    def check_type(self, t: Type) -> None:
        forms = _TYPE_FORMS[self.calc]
        match t:
            case Arrow(a, b) | Prod(a, b) | Sum(a, b):
                self.check_type(a)
                self.check_type(b)
            case Sealed(_, b) | Monad(_, b):
                self.check_type(b)
        if not isinstance(t, forms):
            raise E.ForeignConstruct(f"type {_show(t)} is not part of {_AT[self.calc]}")
        self.P.check(*type_levels(t))

    # entry point
    def run(self, ctx: dict[str, Type], obs, term: Term, expected: Type | None = None):
        obs = frozenset(obs)
        self.P.check(*obs)
        for ty in ctx.values():
            self.check_type(ty)
        if expected is not None:
            self.check_type(expected)
        d = self.infer(dict(ctx), obs, term)
        if expected is not None:
            self.unify(d.type, expected, " against the expected type")
        d = self.finish(d)
        for check in self.deferred:
            check()
        return d.type, d

    def finish(self, d: Derivation) -> Derivation:
        return Derivation(
            d.rule,
            tuple((n, self.zonk(t, UNIT)) for n, t in d.context),
            d.obs,
            d.term,
            self.zonk(d.type, UNIT),
            tuple(self.finish(p) for p in d.premises),
            d.binders,
            d.level,
        )

    def node(self, rule, ctx, obs, term, ty, premises=(), binders=(), level=None):
        return Derivation(rule, tuple(ctx.items()), obs, term, ty, tuple(premises), tuple(binders), level)

    def infer(self, ctx, obs, t: Term) -> Derivation:
        if not isinstance(t, _TERM_FORMS[self.calc]):
            if isinstance(t, Bound):
                raise E.TypeCheckError(f"dangling bound index {t.index}")
            raise E.ForeignConstruct(f"{type(t).__name__} is not part of {_AT[self.calc]}")
        match t:
            case Var(x):
                if x not in ctx:
                    raise E.UnboundVariable(f"unbound variable {x}")
                return self.node("Var", ctx, obs, t, ctx[x])
            case Unit():
                return self.node("Unit", ctx, obs, t, UNIT)
            case Lam(h, ty, body):
                self.check_type(ty)
                x = fresh(h)
                d = self.infer({**ctx, x: ty}, obs, open_body(body, x))
                return self.node("Lam", ctx, obs, t, Arrow(ty, d.type), [d], [x])
            case App(f, a):
                df = self.infer(ctx, obs, f)
                da = self.infer(ctx, obs, a)
                ft = self.resolve(df.type)
                if isinstance(ft, Meta):
                    ft = Arrow(self.meta(), self.meta())
                    self.unify(df.type, ft)
                if not isinstance(ft, Arrow):
                    raise E.NotAFunction(f"applying a term of type {_show(self.zonk(ft))}")
                self.unify(ft.dom, da.type, " in an argument position")
                return self.node("App", ctx, obs, t, ft.cod, [df, da])
            case Pair(a, b):
                da = self.infer(ctx, obs, a)
                db = self.infer(ctx, obs, b)
                return self.node("Pair", ctx, obs, t, Prod(da.type, db.type), [da, db])
            case Proj(i, e):
                de = self.infer(ctx, obs, e)
                et = self.resolve(de.type)
                if isinstance(et, Meta):
                    et = Prod(self.meta(), self.meta())
                    self.unify(de.type, et)
                if not isinstance(et, Prod):
                    raise E.NotAPair(f"projecting from type {_show(self.zonk(et))}")
                return self.node("Proj", ctx, obs, t, et.left if i == 1 else et.right, [de])
            case Inj(i, e):
                de = self.infer(ctx, obs, e)
                ty = Sum(de.type, self.meta()) if i == 1 else Sum(self.meta(), de.type)
                return self.node("Inj", ctx, obs, t, ty, [de])
            case Case(s, h1, l, h2, r):
                ds = self.infer(ctx, obs, s)
                st = self.resolve(ds.type)
                if isinstance(st, Meta):
                    st = Sum(self.meta(), self.meta())
                    self.unify(ds.type, st)
                if not isinstance(st, Sum):
                    raise E.NotASum(f"case analysis on type {_show(self.zonk(st))}")
                x1, x2 = fresh(h1), fresh(h2)
                dl = self.infer({**ctx, x1: st.left}, obs, open_body(l, x1))
                dr = self.infer({**ctx, x2: st.right}, obs, open_body(r, x2))
                self.unify(dl.type, dr.type, " between case branches")
                return self.node("Case", ctx, obs, t, dl.type, [ds, dl, dr], [x1, x2])
            case Seal(l, e):
                self.P.check(l)
                de = self.infer(ctx, obs | {l}, e)
                return self.node("Labs", ctx, obs, t, Sealed(l, de.type), [de], level=l)
            case Unseal(e, l):
                self.P.check(l)
                de = self.infer(ctx, obs, e)
                et = self.resolve(de.type)
                if isinstance(et, Meta):
                    et = Sealed(l, self.meta())
                    self.unify(de.type, et)
                if not isinstance(et, Sealed):
                    raise E.NotASeal(f"unsealing a term of type {_show(self.zonk(et))}")
                if et.level != l:
                    raise E.TypeMismatch(f"unsealing at {l} a value sealed at {et.level}")
                if not self.P.below(l, obs):
                    raise E.UnauthorizedUnseal(f"{l} is not below the observer level {_show_obs(obs)}")
                return self.node("Lapp", ctx, obs, t, et.body, [de], level=l)
            case Eta(l, e):
                self.P.check(l)
                de = self.infer(ctx, obs | {l}, e)
                return self.node("Eta", ctx, obs, t, Monad(l, de.type), [de], level=l)
            case Bind(h, e1, e2):
                d1 = self.infer(ctx, obs, e1)
                mt = self.resolve(d1.type)
                if not isinstance(mt, Monad):
                    raise E.NotAMonad(f"bind expects a monadic type, got {_show(self.zonk(mt))}")
                l = mt.level
                x = fresh(h)
                d2 = self.infer({**ctx, x: mt.body}, obs | {l}, open_body(e2, x))
                if self.P.below(l, obs):
                    rule = "Bind1"
                else:
                    rule = "Bind2"
                    self.defer_protected(l, d2.type, E.BindNotPermitted,
                                         f"bind at {l} needs {l} below {_show_obs(obs)} or a protected result")
                return self.node(rule, ctx, obs, t, d2.type, [d1, d2], [x], level=l)
            case Protect(l, e):
                self.P.check(l)
                de = self.infer(ctx, obs | {l}, e)
                self.defer_protected(l, de.type, E.NotProtected, f"result is not protected at {l}")
                return self.node("Protect", ctx, obs, t, de.type, [de], level=l)
        raise E.ForeignConstruct(f"unexpected term {t!r}")

    def defer_protected(self, l, ty, exc, msg):
        def check():
            if not protected(self.P, l, self.zonk(ty, UNIT)):
                raise exc(msg)
        self.deferred.append(check)


def _show(t):
    from .grammar import show_type
    return show_type(t)


def _show_obs(obs):
    return "{" + ",".join(sorted(obs)) + "}"


def typecheck(P, calculus, ctx, obs, term, expected=None):
    return Checker(P, calculus).run(ctx, obs, term, expected)
