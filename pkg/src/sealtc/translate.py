"""From the sealing calculus to STLC.

A sealed type becomes a function from a key of its level.  Unsealing at
``l`` applies the sealed value to a key coerced down from some level the
observer holds; the keys on hand are tracked by a key map (level -> name).
"""
from __future__ import annotations

from .dc import typecheck_dc
from .errors import IllTyped, NoEligibleKey, TypeCheckError
from .levels import LevelPoset
from .syntax import (
    UNIT, App, Arrow, Base, Case, Inj, Lam, Pair, Prod, Proj, Seal, Sealed, Sum, Term,
    Type, Unit, UnitTy, Unseal, Var, close, fresh, open_body, shift,
)


def coercion_name(hi: str, lo: str) -> str:
    return f"c${hi}${lo}"


def build_kc(P: LevelPoset) -> dict[str, Type]:
    """One coercion ``c$hi$lo : a@hi -> a@lo`` per pair ``lo <= hi``."""
    kc = {}
    for hi in P.labels:
        for lo in P.labels:
            if P.leq(lo, hi):
                kc[coercion_name(hi, lo)] = Arrow(Base(hi), Base(lo))
    return kc


def default_keys(levels) -> dict[str, str]:
    return {l: f"k${l}$0" for l in sorted(levels)}


def key_context(sigma: dict[str, str]) -> dict[str, Type]:
    return {k: Base(l) for l, k in sigma.items()}


def translate_type(t: Type) -> Type:
    match t:
        case UnitTy():
            return t
        case Arrow(a, b):
            return Arrow(translate_type(a), translate_type(b))
        case Prod(a, b):
            return Prod(translate_type(a), translate_type(b))
        case Sum(a, b):
            return Sum(translate_type(a), translate_type(b))
        case Sealed(l, b):
            return Arrow(Base(l), translate_type(b))
    raise TypeError(f"not a sealing-calculus type: {t!r}")


def translate_context(G: dict[str, Type]) -> dict[str, Type]:
    return {x: translate_type(t) for x, t in G.items()}


def target_context(P: LevelPoset, G: dict[str, Type], sigma: dict[str, str]) -> dict[str, Type]:
    """The STLC context a translated term lives in: translated variables, coercions, keys."""
    return {**translate_context(G), **build_kc(P), **key_context(sigma)}


def check_key_map(P: LevelPoset, G: dict[str, Type], sigma: dict[str, str]) -> None:
    P.check(*sigma)
    names = list(sigma.values())
    if len(set(names)) != len(names):
        raise ValueError("key map is not injective")
    clash = set(names) & (set(G) | set(build_kc(P)))
    if clash:
        raise ValueError(f"key names clash with context variables: {sorted(clash)}")
    bad = [x for x in G if "$" in x or "%" in x]
    if bad:
        raise ValueError(f"user variables may not contain '$': {bad}")


def translate_dc_to_stlc(P: LevelPoset, G: dict[str, Type], sigma: dict[str, str], e: Term) -> Term:
    check_key_map(P, G, sigma)
    try:
        typecheck_dc(P, G, frozenset(sigma), e)
    except TypeCheckError as err:
        raise IllTyped(str(err)) from err
    used = set(G) | set(sigma.values())
    counter = [0]

    def key_for(l):
        while True:
            counter[0] += 1
            name = f"k${l}${counter[0]}"
            if name not in used:
                used.add(name)
                return name

    def tr(t: Term, sig: dict[str, str]) -> Term:
        match t:
            case Var() | Unit():
                return t
            case Lam(h, ty, body):
                x = fresh(h)
                return Lam(h, translate_type(ty), close(tr(open_body(body, x), sig), x))
            case App(f, a):
                return App(tr(f, sig), tr(a, sig))
            case Pair(a, b):
                return Pair(tr(a, sig), tr(b, sig))
            case Proj(i, b):
                return Proj(i, tr(b, sig))
            case Inj(i, b):
                return Inj(i, tr(b, sig))
            case Case(s, h1, l, h2, r):
                x1, x2 = fresh(h1), fresh(h2)
                return Case(tr(s, sig), h1, close(tr(open_body(l, x1), sig), x1),
                            h2, close(tr(open_body(r, x2), sig), x2))
            case Seal(l, b):
                k = key_for(l)
                return Lam(k, Base(l), close(tr(b, {**sig, l: k}), k))
            case Unseal(b, l):
                eligible = sorted(l2 for l2 in sig if P.leq(l, l2))
                if not eligible:
                    raise NoEligibleKey(f"no key at or above {l}")
                hi = eligible[0]
                return App(tr(b, sig), App(Var(coercion_name(hi, l)), Var(sig[hi])))
        raise TypeError(f"not a sealing-calculus term: {t!r}")

    return tr(e, dict(sigma))


def erase_type(t: Type) -> Type:
    match t:
        case UnitTy():
            return t
        case Arrow(a, b):
            return Arrow(erase_type(a), erase_type(b))
        case Prod(a, b):
            return Prod(erase_type(a), erase_type(b))
        case Sum(a, b):
            return Sum(erase_type(a), erase_type(b))
        case Sealed(_, b):
            return Arrow(UNIT, erase_type(b))
    raise TypeError(f"not a sealing-calculus type: {t!r}")


def erase_seals(e: Term) -> Term:
    """Forget levels: a seal becomes a thunk, an unseal forces it."""
    match e:
        case Seal(_, b):
            return Lam("_", UNIT, shift(erase_seals(b), 1))
        case Unseal(b, _):
            return App(erase_seals(b), Unit())
        case Lam(h, ty, b):
            return Lam(h, erase_type(ty), erase_seals(b))
        case App(f, a):
            return App(erase_seals(f), erase_seals(a))
        case Pair(a, b):
            return Pair(erase_seals(a), erase_seals(b))
        case Proj(i, b):
            return Proj(i, erase_seals(b))
        case Inj(i, b):
            return Inj(i, erase_seals(b))
        case Case(s, h1, l, h2, r):
            return Case(erase_seals(s), h1, erase_seals(l), h2, erase_seals(r))
    return e
