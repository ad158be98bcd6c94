"""The sealing calculus: typing at an observer level and full reduction."""
from __future__ import annotations

from .checker import Derivation, typecheck
from .errors import FuelExhausted
from .levels import LevelPoset
from .syntax import (
    App, Bind, Case, Eta, Inj, Lam, Pair, Proj, Seal, Term, Type, Unseal,
    children, instantiate, rebuild, substitute,
)

DEFAULT_FUEL = 10**6

__all__ = ["typecheck_dc", "reduce_once_dc", "normalize_dc", "substitute", "DEFAULT_FUEL"]


def typecheck_dc(P: LevelPoset, G: dict[str, Type], pi, e: Term,
                 expected: Type | None = None) -> tuple[Type, Derivation]:
    return typecheck(P, "dc", G, pi, e, expected)


def contract(t: Term) -> Term | None:
    """Contract ``t`` if it is itself a redex.

    Covers the sealing calculus and the bind rule of DCC_pc; the two never
    share terms, so one function serves both.
    """
    match t:
        case App(Lam(_, _, body), arg):
            return instantiate(body, arg)
        case Proj(i, Pair(a, b)):
            return a if i == 1 else b
        case Case(Inj(i, v), _, left, _, right):
            return instantiate(left if i == 1 else right, v)
        case Unseal(Seal(l1, e), l2) if l1 == l2:
            return e
        case Bind(_, Eta(_, e), body):
            return instantiate(body, e)
    return None


def step(t: Term, contract_fn, innermost: bool = False) -> Term | None:
    """One step: leftmost-outermost, or rightmost-innermost when asked."""
    if not innermost:
        r = contract_fn(t)
        if r is not None:
            return r
    kids = [c for c, _ in children(t)]
    order = range(len(kids) - 1, -1, -1) if innermost else range(len(kids))
    for i in order:
        r = step(kids[i], contract_fn, innermost)
        if r is not None:
            kids[i] = r
            return rebuild(t, kids)
    if innermost:
        return contract_fn(t)
    return None


def normalize_with(t: Term, contract_fn, fuel: int, innermost: bool = False) -> Term:
    for _ in range(fuel):
        r = step(t, contract_fn, innermost)
        if r is None:
            return t
        t = r
    if step(t, contract_fn, innermost) is None:
        return t
    raise FuelExhausted(f"no normal form within {fuel} steps")


def reduce_once_dc(e: Term, innermost: bool = False) -> Term | None:
    return step(e, contract, innermost)


def normalize_dc(e: Term, fuel: int = DEFAULT_FUEL, innermost: bool = False) -> Term:
    return normalize_with(e, contract, fuel, innermost)


def reduction_sequence(e: Term, fuel: int = DEFAULT_FUEL, innermost: bool = False) -> list[Term]:
    """Every term on the way to the normal form, ``e`` first."""
    seq = [e]
    for _ in range(fuel):
        r = step(seq[-1], contract, innermost)
        if r is None:
            return seq
        seq.append(r)
    raise FuelExhausted(f"no normal form within {fuel} steps")
