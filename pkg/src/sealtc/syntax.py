"""Abstract syntax shared by the sealing calculus, STLC and DCC_pc.

Bound variables are de Bruijn indices (``Bound(0)`` is the nearest binder);
free variables are names (``Var``).  Binder hints are kept only for printing
and are excluded from equality, so alpha-equivalent terms compare equal.

Each checker accepts only the constructors of its own calculus.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

# types


class Type:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class UnitTy(Type):
    pass


@dataclass(frozen=True, slots=True)
class Arrow(Type):
    dom: Type
    cod: Type


@dataclass(frozen=True, slots=True)
class Prod(Type):
    left: Type
    right: Type


@dataclass(frozen=True, slots=True)
class Sum(Type):
    left: Type
    right: Type


@dataclass(frozen=True, slots=True)
class Sealed(Type):
    level: str
    body: Type


@dataclass(frozen=True, slots=True)
class Base(Type):
    """STLC base type with no closed inhabitants, one per level."""
    level: str


@dataclass(frozen=True, slots=True)
class Monad(Type):
    level: str
    body: Type


@dataclass(frozen=True, slots=True)
class Meta(Type):
    """Unification variable; only ever seen inside the checkers."""
    id: int


UNIT = UnitTy()
BOOL = Sum(UNIT, UNIT)


def type_levels(t: Type) -> set[str]:
    match t:
        case Arrow(a, b) | Prod(a, b) | Sum(a, b):
            return type_levels(a) | type_levels(b)
        case Sealed(l, b) | Monad(l, b):
            return {l} | type_levels(b)
        case Base(l):
            return {l}
    return set()


def subtypes(t: Type) -> set[Type]:
    """Every subexpression of ``t``, including ``t``."""
    out = {t}
    match t:
        case Arrow(a, b) | Prod(a, b) | Sum(a, b):
            out |= subtypes(a) | subtypes(b)
        case Sealed(_, b) | Monad(_, b):
            out |= subtypes(b)
    return out


# terms


class Term:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str


@dataclass(frozen=True, slots=True)
class Bound(Term):
    index: int


@dataclass(frozen=True, slots=True)
class Unit(Term):
    pass


@dataclass(frozen=True, slots=True)
class Lam(Term):
    hint: str = field(compare=False)
    ty: Type
    body: Term


@dataclass(frozen=True, slots=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True, slots=True)
class Pair(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Proj(Term):
    index: int  # 1 or 2
    body: Term


@dataclass(frozen=True, slots=True)
class Inj(Term):
    index: int  # 1 or 2
    body: Term


@dataclass(frozen=True, slots=True)
class Case(Term):
    scrutinee: Term
    hint1: str = field(compare=False)
    left: Term
    hint2: str = field(compare=False)
    right: Term


@dataclass(frozen=True, slots=True)
class Seal(Term):
    level: str
    body: Term


@dataclass(frozen=True, slots=True)
class Unseal(Term):
    body: Term
    level: str


@dataclass(frozen=True, slots=True)
class Eta(Term):
    level: str
    body: Term


@dataclass(frozen=True, slots=True)
class Bind(Term):
    hint: str = field(compare=False)
    bound: Term
    body: Term


@dataclass(frozen=True, slots=True)
class Protect(Term):
    level: str
    body: Term


@dataclass(frozen=True, slots=True)
class Hole(Term):
    """Opaque placeholder for a key-typed subterm after canonicalization."""
    level: str


TRUE = Inj(1, Unit())
FALSE = Inj(2, Unit())


def children(t: Term) -> list[tuple[Term, int]]:
    """Direct subterms paired with the number of binders they sit under."""
    match t:
        case Lam(_, _, b):
            return [(b, 1)]
        case App(a, b) | Pair(a, b):
            return [(a, 0), (b, 0)]
        case Proj(_, b) | Inj(_, b) | Seal(_, b) | Unseal(b, _) | Eta(_, b) | Protect(_, b):
            return [(b, 0)]
        case Case(s, _, l, _, r):
            return [(s, 0), (l, 1), (r, 1)]
        case Bind(_, e, b):
            return [(e, 0), (b, 1)]
    return []


def rebuild(t: Term, kids: list[Term]) -> Term:
    """``t`` with its direct subterms replaced, in the order of ``children``."""
    match t:
        case Lam(h, ty, _):
            return Lam(h, ty, kids[0])
        case App():
            return App(kids[0], kids[1])
        case Pair():
            return Pair(kids[0], kids[1])
        case Proj(i, _):
            return Proj(i, kids[0])
        case Inj(i, _):
            return Inj(i, kids[0])
        case Seal(l, _):
            return Seal(l, kids[0])
        case Unseal(_, l):
            return Unseal(kids[0], l)
        case Eta(l, _):
            return Eta(l, kids[0])
        case Protect(l, _):
            return Protect(l, kids[0])
        case Case(_, h1, _, h2, _):
            return Case(kids[0], h1, kids[1], h2, kids[2])
        case Bind(h, _, _):
            return Bind(h, kids[0], kids[1])
    return t


def map_children(t: Term, f) -> Term:
    kids = children(t)
    if not kids:
        return t
    return rebuild(t, [f(c, n) for c, n in kids])


def shift(t: Term, d: int, cutoff: int = 0) -> Term:
    if d == 0:
        return t

    def go(t, c):
        if isinstance(t, Bound):
            return Bound(t.index + d) if t.index >= c else t
        return map_children(t, lambda ch, n: go(ch, c + n))

    return go(t, cutoff)


def instantiate(body: Term, s: Term) -> Term:
    """Replace index 0 of a binder body by ``s`` and drop the binder."""

    def go(t, depth):
        if isinstance(t, Bound):
            if t.index == depth:
                return shift(s, depth)
            if t.index > depth:
                return Bound(t.index - 1)
            return t
        return map_children(t, lambda ch, n: go(ch, depth + n))

    return go(body, 0)


def close(t: Term, name: str) -> Term:
    """Abstract the free variable ``name``, producing a binder body."""

    def go(t, depth):
        match t:
            case Var(n) if n == name:
                return Bound(depth)
            case Bound(k) if k >= depth:
                return Bound(k + 1)
        return map_children(t, lambda ch, n: go(ch, depth + n))

    return go(t, 0)


def open_body(body: Term, name: str) -> Term:
    return instantiate(body, Var(name))


def substitute(e: Term, x: str, s: Term) -> Term:
    """Capture-avoiding ``[s/x]e``; capture cannot happen with indices."""

    def go(t, depth):
        if isinstance(t, Var):
            return shift(s, depth) if t.name == x else t
        return map_children(t, lambda ch, n: go(ch, depth + n))

    return go(e, 0)


def free_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    out = set()
    for c, _ in children(t):
        out |= free_vars(c)
    return out


def is_locally_closed(t: Term, depth: int = 0) -> bool:
    if isinstance(t, Bound):
        return t.index < depth
    return all(is_locally_closed(c, depth + n) for c, n in children(t))


def size(t: Term) -> int:
    return 1 + sum(size(c) for c, _ in children(t))


def term_levels(t: Term) -> set[str]:
    out = set()
    match t:
        case Seal(l, _) | Unseal(_, l) | Eta(l, _) | Protect(l, _) | Hole(l):
            out.add(l)
        case Lam(_, ty, _):
            out |= type_levels(ty)
    for c, _ in children(t):
        out |= term_levels(c)
    return out


# fresh names carry a '%', which user identifiers and key names never contain

_counter = itertools.count()


def fresh(hint: str = "x") -> str:
    return f"{base_name(hint)}%{next(_counter)}"


def base_name(name: str) -> str:
    return name.split("%", 1)[0] or "x"


# builders that take named bodies and abstract them


def lam(name: str, ty: Type, body: Term) -> Lam:
    return Lam(base_name(name), ty, close(body, name))


def case(scrutinee: Term, n1: str, left: Term, n2: str, right: Term) -> Case:
    return Case(scrutinee, base_name(n1), close(left, n1), base_name(n2), close(right, n2))


def bind(name: str, bound: Term, body: Term) -> Bind:
    return Bind(base_name(name), bound, close(body, name))


def app(f: Term, *args: Term) -> Term:
    for a in args:
        f = App(f, a)
    return f
