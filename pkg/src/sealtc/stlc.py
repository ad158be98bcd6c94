"""STLC with one empty base type per level.

Normalization adds commuting conversions that push an elimination frame
(application, projection, case) into the branches of a case, so normal
forms never eliminate a case expression.
"""
from __future__ import annotations

from .checker import Derivation, typecheck
from .dc import DEFAULT_FUEL, contract as beta, normalize_with, step
from .errors import IllTyped, InvalidDerivation, TypeCheckError
from .levels import LevelPoset
from .syntax import (
    App, Base, Case, Hole, Inj, Lam, Pair, Proj, Term, Type,
    close, shift, subtypes,
)


def typecheck_stlc(P: LevelPoset, G: dict[str, Type], M: Term,
                   expected: Type | None = None) -> tuple[Type, Derivation]:
    return typecheck(P, "stlc", G, (), M, expected)


def infer_stlc(P, G, M) -> Type:
    return typecheck_stlc(P, G, M)[0]


def commute(t: Term) -> Term | None:
    match t:
        case App(Case(s, h1, l, h2, r), n):
            n = shift(n, 1)
            return Case(s, h1, App(l, n), h2, App(r, n))
        case Proj(i, Case(s, h1, l, h2, r)):
            return Case(s, h1, Proj(i, l), h2, Proj(i, r))
        case Case(Case(s, h1, l, h2, r), g1, m1, g2, m2):
            # the outer branches move under one more binder (just above their own)
            m1, m2 = shift(m1, 1, 1), shift(m2, 1, 1)
            return Case(s, h1, Case(l, g1, m1, g2, m2), h2, Case(r, g1, m1, g2, m2))
    return None


def contract_stlc(t: Term) -> Term | None:
    r = beta(t)
    return r if r is not None else commute(t)


def reduce_once_stlc(M: Term, innermost: bool = False) -> Term | None:
    return step(M, contract_stlc, innermost)


def normalize_stlc(M: Term, fuel: int = DEFAULT_FUEL, innermost: bool = False) -> Term:
    return normalize_with(M, contract_stlc, fuel, innermost)


def subformula_ok(d: Derivation) -> bool:
    allowed = subtypes(d.type)
    for _, ty in d.context:
        allowed |= subtypes(ty)
    for node in d.nodes():
        if node.type not in allowed:
            return False
        if any(ty not in allowed for _, ty in node.context):
            return False
    return True


def canonicalize_derivation(d: Derivation) -> Term:
    if isinstance(d.type, Base):
        return Hole(d.type.level)
    t, ps = d.term, [canonicalize_derivation(p) for p in d.premises]
    match d.rule:
        case "Var" | "Unit":
            return t
        case "Lam":
            return Lam(t.hint, t.ty, close(ps[0], d.binders[0]))
        case "App":
            return App(ps[0], ps[1])
        case "Pair":
            return Pair(ps[0], ps[1])
        case "Proj":
            return Proj(t.index, ps[0])
        case "Inj":
            return Inj(t.index, ps[0])
        case "Case":
            x1, x2 = d.binders
            return Case(ps[0], t.hint1, close(ps[1], x1), t.hint2, close(ps[2], x2))
    raise InvalidDerivation(f"unexpected rule {d.rule} in an STLC derivation")


def key_canonicalize(P: LevelPoset, G: dict[str, Type], M: Term) -> Term:
    try:
        _, d = typecheck_stlc(P, G, M)
    except TypeCheckError as err:
        raise IllTyped(str(err)) from err
    return canonicalize_derivation(d)


def key_equiv(P: LevelPoset, G: dict[str, Type], M1: Term, M2: Term, A: Type) -> bool:
    """Equal once every outermost key-typed subterm is made opaque."""
    canon = []
    for M in (M1, M2):
        _, d = typecheck_stlc(P, G, M, expected=A)
        canon.append(canonicalize_derivation(d))
    return canon[0] == canon[1]

