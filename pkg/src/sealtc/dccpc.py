"""DCC_pc: a monadic calculus whose judgments also carry an observer level,
and its translations to and from the sealing calculus."""
from __future__ import annotations

from .checker import Derivation, protected, typecheck
from .dc import DEFAULT_FUEL, contract, normalize_with
from .errors import InvalidDerivation, NotProtected
from .levels import LevelPoset
from .syntax import (
    App, Arrow, Bind, Bound, Case, Eta, Inj, Lam, Monad, Pair, Prod, Proj, Seal, Sealed,
    Sum, Term, Type, Unit, UnitTy, Unseal, Var, close, fresh, lam,
)

__all__ = ["protected", "typecheck_dpc", "normalize_dpc", "unprotect", "dpc_to_dc",
           "dc_to_dpc", "dpc_type_to_dc", "dc_type_to_dpc"]


def typecheck_dpc(P: LevelPoset, G: dict[str, Type], pi, e: Term,
                  expected: Type | None = None) -> tuple[Type, Derivation]:
    return typecheck(P, "dpc", G, pi, e, expected)


def normalize_dpc(e: Term, fuel: int = DEFAULT_FUEL) -> Term:
    return normalize_with(e, contract, fuel)


def dpc_type_to_dc(t: Type) -> Type:
    match t:
        case UnitTy():
            return t
        case Arrow(a, b):
            return Arrow(dpc_type_to_dc(a), dpc_type_to_dc(b))
        case Prod(a, b):
            return Prod(dpc_type_to_dc(a), dpc_type_to_dc(b))
        case Sum(a, b):
            return Sum(dpc_type_to_dc(a), dpc_type_to_dc(b))
        case Monad(l, b):
            return Sealed(l, dpc_type_to_dc(b))
    raise TypeError(f"not a DCC_pc type: {t!r}")


def dc_type_to_dpc(t: Type) -> Type:
    match t:
        case UnitTy():
            return t
        case Arrow(a, b):
            return Arrow(dc_type_to_dpc(a), dc_type_to_dpc(b))
        case Prod(a, b):
            return Prod(dc_type_to_dpc(a), dc_type_to_dpc(b))
        case Sum(a, b):
            return Sum(dc_type_to_dpc(a), dc_type_to_dpc(b))
        case Sealed(l, b):
            return Monad(l, dc_type_to_dpc(b))
    raise TypeError(f"not a sealing-calculus type: {t!r}")


def unprotect(P: LevelPoset, l: str, t: Type) -> Term:
    """A closed term of type ``[t']@l -> t'`` (``t'`` the image of ``t``), typable at any observer."""
    if not protected(P, l, t):
        raise NotProtected(f"type is not protected at {l}")
    body = dpc_type_to_dc(t)
    x = fresh("x")
    xv = Var(x)
    match t:
        case UnitTy():
            out = Unit()
        case Prod(a, b):
            out = Pair(App(unprotect(P, l, a), Seal(l, Proj(1, Unseal(xv, l)))),
                       App(unprotect(P, l, b), Seal(l, Proj(2, Unseal(xv, l)))))
        case Arrow(a, b):
            y = fresh("y")
            out = lam(y, dpc_type_to_dc(a), App(unprotect(P, l, b), Seal(l, App(Unseal(xv, l), Var(y)))))
        case Monad(l2, b) if P.leq(l, l2):
            out = Seal(l2, Unseal(Unseal(xv, l), l2))
        case Monad(l2, b):
            out = Seal(l2, App(unprotect(P, l, b), Seal(l, Unseal(Unseal(xv, l), l2))))
    return lam(x, Sealed(l, body), out)


def dpc_to_dc(P: LevelPoset, d: Derivation) -> Term:
    """Follow the derivation; the bind rule used decides the shape of the output."""
    t = d.term
    ps = d.premises

    def sub(i):
        return dpc_to_dc(P, ps[i])

    def unprot(l, ty):
        try:
            return unprotect(P, l, ty)
        except NotProtected as err:
            raise InvalidDerivation(str(err)) from err

    match d.rule:
        case "Var" | "Unit":
            return t
        case "Lam":
            return Lam(t.hint, dpc_type_to_dc(t.ty), close(sub(0), d.binders[0]))
        case "App":
            return App(sub(0), sub(1))
        case "Pair":
            return Pair(sub(0), sub(1))
        case "Proj":
            return Proj(t.index, sub(0))
        case "Inj":
            return Inj(t.index, sub(0))
        case "Case":
            x1, x2 = d.binders
            return Case(sub(0), t.hint1, close(sub(1), x1), t.hint2, close(sub(2), x2))
        case "Eta":
            return Seal(d.level, sub(0))
        case "Bind1" | "Bind2":
            l = d.level
            mt = ps[0].type
            if not isinstance(mt, Monad) or mt.level != l:
                raise InvalidDerivation("bind premise is not monadic at the bind level")
            inner = App(Lam(t.hint, dpc_type_to_dc(mt.body), close(sub(1), d.binders[0])),
                        Unseal(sub(0), l))
            if d.rule == "Bind1":
                return inner
            return App(unprot(l, d.type), Seal(l, inner))
        case "Protect":
            return App(unprot(d.level, d.type), Seal(d.level, sub(0)))
    raise InvalidDerivation(f"unknown rule {d.rule!r}")


def dc_to_dpc(e: Term) -> Term:
    match e:
        case Seal(l, b):
            return Eta(l, dc_to_dpc(b))
        case Unseal(b, _):
            return Bind("z", dc_to_dpc(b), Bound(0))
        case Lam(h, ty, b):
            return Lam(h, dc_type_to_dpc(ty), dc_to_dpc(b))
        case App(f, a):
            return App(dc_to_dpc(f), dc_to_dpc(a))
        case Pair(a, b):
            return Pair(dc_to_dpc(a), dc_to_dpc(b))
        case Proj(i, b):
            return Proj(i, dc_to_dpc(b))
        case Inj(i, b):
            return Inj(i, dc_to_dpc(b))
        case Case(s, h1, l, h2, r):
            return Case(dc_to_dpc(s), h1, dc_to_dpc(l), h2, dc_to_dpc(r))
    return e
