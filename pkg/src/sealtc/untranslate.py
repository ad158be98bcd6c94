"""From STLC back to the sealing calculus, directed by the target type.

A lambda over a key becomes a seal; an application to a key becomes an
unseal and the key itself is dropped.  Translated types never mention a
bare base type, which is what makes decoding STLC types unambiguous.
"""
from __future__ import annotations

from .errors import (
    IllTyped, InternalSubformulaFailure, NoApplicableRule, SubformulaViolation,
    TypeCheckError, TypeMismatch,
)
from .levels import LevelPoset
from .dc import DEFAULT_FUEL
from .stlc import normalize_stlc, subformula_ok, typecheck_stlc
from .syntax import (
    App, Arrow, Base, Case, Inj, Lam, Pair, Prod, Proj, Seal, Sealed, Sum, Term, Type,
    Unit, UnitTy, Unseal, Var, close, fresh, open_body, substitute,
)
from .grammar import show_type
from .translate import check_key_map, target_context, translate_type


def decode_type(A: Type) -> Type:
    """The unique sealing-calculus type whose translation is ``A``."""
    match A:
        case UnitTy():
            return A
        case Arrow(Base(l), b):
            return Sealed(l, decode_type(b))
        case Arrow(a, b):
            return Arrow(decode_type(a), decode_type(b))
        case Prod(a, b):
            return Prod(decode_type(a), decode_type(b))
        case Sum(a, b):
            return Sum(decode_type(a), decode_type(b))
    raise NoApplicableRule(f"{show_type(A)} is not the image of any type")


class _Inverter:
    def __init__(self, P, G, sigma):
        self.P = P
        self.dc_ctx = dict(G)
        self.stlc_ctx = target_context(P, G, sigma)
        self.sigma = dict(sigma)

    def infer(self, ctx, N):
        try:
            return typecheck_stlc(self.P, ctx, N)[0]
        except TypeCheckError as err:
            raise TypeMismatch(str(err)) from err

    def go(self, N: Term, t: Type, dctx, sctx, sigma) -> Term:
        match N:
            case Var(x):
                if x in dctx:
                    if dctx[x] != t:
                        raise TypeMismatch(f"{x} has type {show_type(dctx[x])}, wanted {show_type(t)}")
                    return N
                raise NoApplicableRule(f"{x} is not a source variable")
            case Unit():
                if t != UnitTy():
                    raise TypeMismatch(f"() at type {show_type(t)}")
                return N
            case Lam(h, A1, body):
                x = fresh(h)
                inner = open_body(body, x)
                match t:
                    case Arrow(t1, t2):
                        if A1 != translate_type(t1):
                            raise TypeMismatch(f"binder type {show_type(A1)} does not encode {show_type(t1)}")
                        e0 = self.go(inner, t2, {**dctx, x: t1}, {**sctx, x: A1}, sigma)
                        return Lam(h, t1, close(e0, x))
                    case Sealed(l, t0):
                        if A1 != Base(l):
                            raise TypeMismatch(f"seal at {l} needs a key binder, got {show_type(A1)}")
                        sctx = dict(sctx)
                        if l in sigma:
                            # the new key replaces the old one everywhere
                            inner = substitute(inner, sigma[l], Var(x))
                            sctx.pop(sigma[l], None)
                        sctx[x] = A1
                        e0 = self.go(inner, t0, dctx, sctx, {**sigma, l: x})
                        return Seal(l, e0)
                raise NoApplicableRule(f"lambda at type {show_type(t)}")
            case App(N1, N2):
                ft = self.infer(sctx, N1)
                if not isinstance(ft, Arrow):
                    raise TypeMismatch("application of a non-function")
                if isinstance(ft.dom, Base):
                    l = ft.dom.level
                    try:
                        typecheck_stlc(self.P, sctx, N2, expected=ft.dom)
                    except TypeCheckError as err:
                        raise TypeMismatch(str(err)) from err
                    return Unseal(self.go(N1, Sealed(l, t), dctx, sctx, sigma), l)
                t1 = decode_type(ft.dom)
                return App(self.go(N1, Arrow(t1, t), dctx, sctx, sigma),
                           self.go(N2, t1, dctx, sctx, sigma))
            case Pair(a, b):
                if not isinstance(t, Prod):
                    raise TypeMismatch(f"pair at type {show_type(t)}")
                return Pair(self.go(a, t.left, dctx, sctx, sigma),
                            self.go(b, t.right, dctx, sctx, sigma))
            case Proj(i, N0):
                pt = self.infer(sctx, N0)
                if not isinstance(pt, Prod):
                    raise TypeMismatch("projection from a non-pair")
                whole = Prod(t, decode_type(pt.right)) if i == 1 else Prod(decode_type(pt.left), t)
                return Proj(i, self.go(N0, whole, dctx, sctx, sigma))
            case Inj(i, N0):
                if not isinstance(t, Sum):
                    raise TypeMismatch(f"injection at type {show_type(t)}")
                return Inj(i, self.go(N0, t.left if i == 1 else t.right, dctx, sctx, sigma))
            case Case(N0, h1, l, h2, r):
                st = self.infer(sctx, N0)
                if not isinstance(st, Sum):
                    raise TypeMismatch("case on a non-sum")
                t1, t2 = decode_type(st.left), decode_type(st.right)
                x1, x2 = fresh(h1), fresh(h2)
                e0 = self.go(N0, Sum(t1, t2), dctx, sctx, sigma)
                el = self.go(open_body(l, x1), t, {**dctx, x1: t1}, {**sctx, x1: st.left}, sigma)
                er = self.go(open_body(r, x2), t, {**dctx, x2: t2}, {**sctx, x2: st.right}, sigma)
                return Case(e0, h1, close(el, x1), h2, close(er, x2))
        raise NoApplicableRule(f"no inverse rule for {type(N).__name__}")


def invert_stlc_to_dc(P: LevelPoset, G: dict[str, Type], sigma: dict[str, str], N: Term, t: Type,
                      check_subformula: bool = False) -> Term:
    """Invert ``N : t†``.

    By default the subformula precondition is not re-checked, so a junk
    term is reported by the rule it gets stuck on; ``check_subformula``
    turns the precondition into an explicit ``SubformulaViolation``.
    """
    check_key_map(P, G, sigma)
    inv = _Inverter(P, G, sigma)
    try:
        _, d = typecheck_stlc(P, inv.stlc_ctx, N, expected=translate_type(t))
    except TypeCheckError as err:
        raise TypeMismatch(str(err)) from err
    if check_subformula and not subformula_ok(d):
        raise SubformulaViolation("derivation mentions a type outside the subformulas of its judgment")
    return inv.go(N, t, inv.dc_ctx, inv.stlc_ctx, inv.sigma)


def realize(P: LevelPoset, G: dict[str, Type], sigma: dict[str, str], M: Term, t: Type,
            fuel: int = DEFAULT_FUEL) -> Term:
    """Normalize, recheck, and invert: a source term whose image is ``M`` up to keys."""
    check_key_map(P, G, sigma)
    ctx = target_context(P, G, sigma)
    target = translate_type(t)
    try:
        typecheck_stlc(P, ctx, M, expected=target)
    except TypeCheckError as err:
        raise IllTyped(str(err)) from err
    N = normalize_stlc(M, fuel)
    _, d = typecheck_stlc(P, ctx, N, expected=target)
    if not subformula_ok(d):
        raise InternalSubformulaFailure("normal form violates the subformula property")
    return invert_stlc_to_dc(P, G, sigma, N, t)
