"""Exhaustive enumeration of normal forms by size.

Normal forms are generated in commuting-normal shape: a case expression is
never itself eliminated.  For STLC this is exactly the set of normal forms.
For the sealing calculus every term is equivalent to one of this shape,
which is what the enumeration-based checks need.

Free variables (``free``) may head neutral terms; bound variables are
de Bruijn indices into ``stack`` (innermost first).
"""
from __future__ import annotations

from typing import Iterator

from .levels import LevelPoset
from .syntax import (
    App, Arrow, Base, Bound, Case, Inj, Lam, Pair, Prod, Proj, Seal, Sealed, Sum, Term,
    Type, Unit, UnitTy, Unseal, Var,
)


def _hint(ty: Type) -> str:
    match ty:
        case Base():
            return "k"
        case Arrow():
            return "f"
    return "x"


class Enumerator:
    def __init__(self, P: LevelPoset, calculus: str = "dc", free: dict[str, Type] | None = None):
        assert calculus in ("dc", "stlc")
        self.P = P
        self.calc = calculus
        self.free = dict(free or {})
        self._nf = {}
        self._ne = {}

    def neutral(self, stack: tuple, obs: frozenset, n: int) -> list[tuple[Term, Type]]:
        key = (stack, obs, n)
        if key in self._ne:
            return self._ne[key]
        out = []
        if n == 1:
            out += [(Bound(i), ty) for i, ty in enumerate(stack)]
            out += [(Var(x), ty) for x, ty in self.free.items()]
        else:
            for s1 in range(1, n - 1):
                for f, ft in self.neutral(stack, obs, s1):
                    if isinstance(ft, Arrow):
                        out += [(App(f, a), ft.cod) for a in self.normal(stack, obs, ft.dom, n - 1 - s1)]
            for e, et in self.neutral(stack, obs, n - 1):
                if isinstance(et, Prod):
                    out += [(Proj(1, e), et.left), (Proj(2, e), et.right)]
                elif isinstance(et, Sealed) and self.calc == "dc" and self.P.below(et.level, obs):
                    out.append((Unseal(e, et.level), et.body))
        self._ne[key] = out
        return out

    def normal(self, stack: tuple, obs: frozenset, ty: Type, n: int) -> list[Term]:
        """All normal forms of exactly ``n`` nodes at ``ty``."""
        key = (stack, obs, ty, n)
        if key in self._nf:
            return self._nf[key]
        out: list[Term] = []
        if n >= 1:
            match ty:
                case UnitTy():
                    if n == 1:
                        out.append(Unit())
                case Arrow(a, b):
                    out += [Lam(_hint(a), a, body) for body in self.normal((a,) + stack, obs, b, n - 1)]
                case Prod(a, b):
                    for s1 in range(1, n - 1):
                        for x in self.normal(stack, obs, a, s1):
                            out += [Pair(x, y) for y in self.normal(stack, obs, b, n - 1 - s1)]
                case Sum(a, b):
                    out += [Inj(1, x) for x in self.normal(stack, obs, a, n - 1)]
                    out += [Inj(2, x) for x in self.normal(stack, obs, b, n - 1)]
                case Sealed(l, b):
                    out += [Seal(l, x) for x in self.normal(stack, obs | {l}, b, n - 1)]
            out += [e for e, et in self.neutral(stack, obs, n) if et == ty]
            for s0 in range(1, n - 2):
                for s, st in self.neutral(stack, obs, s0):
                    if not isinstance(st, Sum):
                        continue
                    for s1 in range(1, n - s0 - 1):
                        s2 = n - 1 - s0 - s1
                        lefts = self.normal((st.left,) + stack, obs, ty, s1)
                        if not lefts:
                            continue
                        rights = self.normal((st.right,) + stack, obs, ty, s2)
                        out += [Case(s, "y", l, "y", r) for l in lefts for r in rights]
        self._nf[key] = out
        return out

    def upto(self, ty: Type, max_size: int, obs=frozenset()) -> Iterator[Term]:
        """Closed (up to ``free``) normal forms at ``ty``, smallest first."""
        obs = frozenset(obs)
        for n in range(1, max_size + 1):
            yield from self.normal((), obs, ty, n)


def enumerate_dc(P: LevelPoset, obs, ty: Type, max_size: int) -> Iterator[Term]:
    return Enumerator(P, "dc").upto(ty, max_size, obs)


def enumerate_stlc(P: LevelPoset, G: dict[str, Type], ty: Type, max_size: int) -> Iterator[Term]:
    return Enumerator(P, "stlc", G).upto(ty, max_size)
