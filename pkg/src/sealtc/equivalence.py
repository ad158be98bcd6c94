"""Deciding the logical relations by one representative per class.

At an observer level, the values of a type split into finitely many
classes whenever every arrow domain involved can be case-analyzed.  Two
functions are related iff they agree on one representative of each class
of the domain; well-typed functions cannot tell members of a class apart,
which is why inputs are always typechecked first.

``Unknown`` is returned rather than guessed whenever a quantifier would
have to range over a bounded enumeration.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .dc import DEFAULT_FUEL, normalize_dc, typecheck_dc
from .enumerate import enumerate_dc
from .errors import IllTyped, OpenTerm, TypeCheckError, UnsupportedContext
from .generate import inhabitant
from .grammar import show, show_type
from .levels import LevelPoset
from .stlc import normalize_stlc, typecheck_stlc
from .syntax import (
    BOOL, App, Arrow, Base, Inj, Pair, Prod, Proj, Seal, Sealed, Sum, Term, Type, Unit,
    UnitTy, Unseal, Var, case, fresh, free_vars, lam, substitute,
)
from .translate import build_kc, coercion_name


@dataclass(frozen=True)
class Limits:
    term_size: int = 12
    distinguisher_bound: int = 10
    fuel: int = DEFAULT_FUEL
    max_classes: int = 4096
    max_members: int = 8
    max_substitutions: int = 4096


class Status(Enum):
    RELATED = "Related"
    NOT_RELATED = "NotRelated"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    status: Status
    detail: str = ""  # witness for NotRelated, reason for Unknown, note for Related

    @classmethod
    def related(cls, note=""):
        return cls(Status.RELATED, note)

    @classmethod
    def not_related(cls, witness):
        return cls(Status.NOT_RELATED, witness)

    @classmethod
    def unknown(cls, reason):
        return cls(Status.UNKNOWN, reason)

    @property
    def is_related(self):
        return self.status is Status.RELATED

    @property
    def is_not_related(self):
        return self.status is Status.NOT_RELATED

    @property
    def is_unknown(self):
        return self.status is Status.UNKNOWN

    def __str__(self):
        if self.status is Status.RELATED or not self.detail:
            return self.status.value
        return f"{self.status.value}({self.detail})"

    def within(self, step: str) -> "Verdict":
        if self.status is Status.NOT_RELATED:
            return Verdict.not_related(f"{step}; {self.detail}")
        return self


def _combine(verdicts) -> Verdict:
    """First NotRelated wins; otherwise any Unknown; otherwise Related."""
    unknown = None
    for v in verdicts:
        if v.is_not_related:
            return v
        if v.is_unknown and unknown is None:
            unknown = v
    return unknown or Verdict.related()


@dataclass(frozen=True)
class RepSet:
    type: Type
    obs: frozenset
    reps: tuple
    exact: bool

    def __len__(self):
        return len(self.reps)


# sealing calculus


def splittable(P: LevelPoset, t: Type, pi, limits: Limits = Limits()) -> bool:
    pi = frozenset(pi)
    match t:
        case UnitTy():
            return True
        case Sum(a, b) | Prod(a, b):
            return splittable(P, a, pi, limits) and splittable(P, b, pi, limits)
        case Sealed(l, b):
            return splittable(P, b, pi | {l}, limits) if P.below(l, pi) else True
        case Arrow(_, b):
            # a non-empty domain makes the function space a single class
            # exactly when the codomain is one
            r = reps_dc(P, b, pi, limits)
            return r.exact and len(r) == 1
    return False


def reps_dc(P: LevelPoset, t: Type, pi, limits: Limits = Limits()) -> RepSet:
    return _reps_dc(P, t, frozenset(pi), limits)


@lru_cache(maxsize=None)
def _reps_dc(P, t, pi, limits) -> RepSet:
    def done(reps, exact=True):
        return RepSet(t, pi, tuple(reps), exact)

    match t:
        case UnitTy():
            return done([Unit()])
        case Sum(a, b):
            ra, rb = _reps_dc(P, a, pi, limits), _reps_dc(P, b, pi, limits)
            return done([Inj(1, r) for r in ra.reps] + [Inj(2, r) for r in rb.reps], ra.exact and rb.exact)
        case Prod(a, b):
            ra, rb = _reps_dc(P, a, pi, limits), _reps_dc(P, b, pi, limits)
            return done([Pair(x, y) for x in ra.reps for y in rb.reps], ra.exact and rb.exact)
        case Sealed(l, b):
            if P.below(l, pi):
                rb = _reps_dc(P, b, pi | {l}, limits)
                return done([Seal(l, r) for r in rb.reps], rb.exact)
            return done([Seal(l, inhabitant(b))])
        case Arrow(a, b):
            rb = _reps_dc(P, b, pi, limits)
            if rb.exact and len(rb) == 1:
                return done([lam("x", a, rb.reps[0])])
            if splittable(P, a, pi, limits):
                ra = _reps_dc(P, a, pi, limits)
                if len(rb) ** len(ra) <= limits.max_classes:
                    funcs = []
                    for table in itertools.product(range(len(rb)), repeat=len(ra)):
                        x = fresh("x")
                        body = _analyze_dc(P, Var(x), a, pi, limits, lambda i: rb.reps[table[i]])
                        funcs.append(lam(x, a, body))
                    return done(funcs, rb.exact)
            return done(_bounded_classes(P, t, pi, limits), False)
    raise TypeError(f"not a sealing-calculus type: {t!r}")


def _analyze_dc(P, x: Term, t: Type, pi, limits, k):
    """A term that inspects ``x : t`` and continues with ``k(class index)``."""
    match t:
        case Sum(a, b):
            na = len(_reps_dc(P, a, pi, limits))
            y1, y2 = fresh("y"), fresh("y")
            return case(x, y1, _analyze_dc(P, Var(y1), a, pi, limits, k),
                        y2, _analyze_dc(P, Var(y2), b, pi, limits, lambda j: k(na + j)))
        case Prod(a, b):
            nb = len(_reps_dc(P, b, pi, limits))
            return _analyze_dc(P, Proj(1, x), a, pi, limits,
                               lambda i: _analyze_dc(P, Proj(2, x), b, pi, limits, lambda j: k(i * nb + j)))
        case Sealed(l, b) if P.below(l, pi):
            return _analyze_dc(P, Unseal(x, l), b, pi | {l}, limits, k)
    return k(0)


def _bounded_classes(P, t, pi, limits):
    found = []
    for e in enumerate_dc(P, pi, t, limits.term_size):
        if all(not _lr_values(P, pi, e, r, t, limits).is_related for r in found):
            found.append(e)
    return found


def lr_dc(P: LevelPoset, pi, e1: Term, e2: Term, t: Type, limits: Limits = Limits()) -> Verdict:
    pi = frozenset(pi)
    for e in (e1, e2):
        if free_vars(e):
            raise OpenTerm(f"free variables {sorted(free_vars(e))}")
        try:
            typecheck_dc(P, {}, pi, e, expected=t)
        except TypeCheckError as err:
            raise IllTyped(str(err)) from err
    return _lr_values(P, pi, e1, e2, t, limits)


def _lr_values(P, pi, e1, e2, t, limits) -> Verdict:
    v1, v2 = normalize_dc(e1, limits.fuel), normalize_dc(e2, limits.fuel)
    match t:
        case UnitTy():
            return Verdict.related()
        case Sum(a, b):
            if not (isinstance(v1, Inj) and isinstance(v2, Inj)):
                raise ValueError("closed normal form of a sum is not an injection")
            if v1.index != v2.index:
                return Verdict.not_related(f"{show(v1)} vs {show(v2)}")
            return _lr_values(P, pi, v1.body, v2.body, a if v1.index == 1 else b, limits).within(f"i{v1.index}")
        case Prod(a, b):
            return _combine([
                _lr_values(P, pi, Proj(1, v1), Proj(1, v2), a, limits).within("p1"),
                _lr_values(P, pi, Proj(2, v1), Proj(2, v2), b, limits).within("p2"),
            ])
        case Sealed(l, b):
            if not P.below(l, pi):
                return Verdict.related()
            return _lr_values(P, pi | {l}, Unseal(v1, l), Unseal(v2, l), b, limits).within(f"unseal@{l}")
        case Arrow(a, b):
            ra = _reps_dc(P, a, pi, limits)
            if not ra.exact:
                return Verdict.unknown(f"domain {show_type(a)} has no exact classes at {_obs(pi)}")
            return _combine(
                _lr_values(P, pi, App(v1, r), App(v2, r), b, limits).within(f"apply to {show(r)}")
                for r in ra.reps)
    raise TypeError(f"not a sealing-calculus type: {t!r}")


def class_members(P: LevelPoset, t: Type, pi, limits: Limits = Limits()) -> list[list[Term]] | None:
    """Per class, a few distinct members; ``None`` if the classes are not exact."""
    pi = frozenset(pi)
    cap = limits.max_members
    match t:
        case UnitTy():
            return [[Unit()]]
        case Sum(a, b):
            ca, cb = class_members(P, a, pi, limits), class_members(P, b, pi, limits)
            if ca is None or cb is None:
                return None
            return [[Inj(1, m) for m in c] for c in ca] + [[Inj(2, m) for m in c] for c in cb]
        case Prod(a, b):
            ca, cb = class_members(P, a, pi, limits), class_members(P, b, pi, limits)
            if ca is None or cb is None:
                return None
            return [[Pair(x, y) for x in c1 for y in c2][:cap] for c1 in ca for c2 in cb]
        case Sealed(l, b):
            inner = class_members(P, b, pi | {l}, limits)
            if inner is None:
                return None
            if P.below(l, pi):
                return [[Seal(l, m) for m in c] for c in inner]
            return [[Seal(l, m) for c in inner for m in c][:cap]]
        case Arrow():
            r = reps_dc(P, t, pi, limits)
            return [[x] for x in r.reps] if r.exact else None
    raise TypeError(f"not a sealing-calculus type: {t!r}")


def noninterference_check(P: LevelPoset, G: dict[str, Type], pi, e: Term, limits: Limits = Limits(),
                          expected: Type | None = None) -> Verdict:
    """Related inputs in, related outputs out, over every pair of closing substitutions."""
    pi = frozenset(pi)
    try:
        t, _ = typecheck_dc(P, G, pi, e, expected=expected)
    except TypeCheckError as err:
        raise IllTyped(str(err)) from err
    names = sorted(G)
    choices = []
    for x in names:
        members = class_members(P, G[x], pi, limits)
        if members is None:
            return Verdict.unknown(f"classes of {show_type(G[x])} are not exact")
        choices.append([(m1, m2) for c in members for m1 in c for m2 in c])
    total = 1
    for c in choices:
        total *= len(c)
    if total > limits.max_substitutions:
        return Verdict.unknown(f"{total} substitution pairs exceed the limit")
    verdicts = []
    for combo in itertools.product(*choices):
        e1, e2 = e, e
        for x, (m1, m2) in zip(names, combo):
            e1, e2 = substitute(e1, x, m1), substitute(e2, x, m2)
        v = _lr_values(P, pi, e1, e2, t, limits)
        if v.is_not_related:
            shown = ", ".join(f"{x}:={show(a)}|{show(b)}" for x, (a, b) in zip(names, combo))
            return v.within(shown)
        verdicts.append(v)
    return _combine(verdicts)


def ctx_equiv_test(P: LevelPoset, pi, e1: Term, e2: Term, t: Type, size_bound: int = 10,
                   strict: bool = False, fuel: int = DEFAULT_FUEL) -> Verdict:
    """Search for a boolean observer at ``pi`` that tells the terms apart."""
    pi = frozenset(pi)
    for e in (e1, e2):
        if free_vars(e):
            raise OpenTerm(f"free variables {sorted(free_vars(e))}")
        try:
            typecheck_dc(P, {}, pi, e, expected=t)
        except TypeCheckError as err:
            raise IllTyped(str(err)) from err
    for f in enumerate_dc(P, pi, Arrow(t, BOOL), size_bound):
        if normalize_dc(App(f, e1), fuel) != normalize_dc(App(f, e2), fuel):
            return Verdict.not_related(show(f))
    note = f"no distinguisher up to size {size_bound}"
    return Verdict.unknown(note) if strict else Verdict.related(note)


# STLC under coercions and keys


class KeyedContext:
    """A context made of the coercions for ``P`` plus at most one key per level."""

    def __init__(self, P: LevelPoset, G: dict[str, Type]):
        kc = build_kc(P)
        self.P = P
        self.G = dict(G)
        self.keys: dict[str, str] = {}
        for x, ty in G.items():
            if x in kc:
                if kc[x] != ty:
                    raise UnsupportedContext(f"{x} does not have its coercion type")
                continue
            if not isinstance(ty, Base):
                raise UnsupportedContext(f"{x} : {show_type(ty)} is neither a coercion nor a key")
            if ty.level in self.keys:
                raise UnsupportedContext(f"two keys for level {ty.level}")
            self.keys[ty.level] = x
        missing = set(kc) - set(G)
        if missing:
            raise UnsupportedContext(f"missing coercions {sorted(missing)}")
        self._reps = {}

    def key(self, l: str) -> Term | None:
        eligible = sorted(h for h in self.keys if self.P.leq(l, h))
        if not eligible:
            return None
        return App(Var(coercion_name(eligible[0], l)), Var(self.keys[eligible[0]]))

    def reps(self, A: Type, limits: Limits) -> RepSet:
        if A in self._reps:
            return self._reps[A]

        def done(reps, exact=True):
            r = RepSet(A, frozenset(self.keys), tuple(reps), exact)
            self._reps[A] = r
            return r

        match A:
            case Base(l):
                k = self.key(l)
                return done([] if k is None else [k])
            case UnitTy():
                return done([Unit()])
            case Sum(a, b):
                ra, rb = self.reps(a, limits), self.reps(b, limits)
                return done([Inj(1, r) for r in ra.reps] + [Inj(2, r) for r in rb.reps], ra.exact and rb.exact)
            case Prod(a, b):
                ra, rb = self.reps(a, limits), self.reps(b, limits)
                return done([Pair(x, y) for x in ra.reps for y in rb.reps], ra.exact and rb.exact)
            case Arrow(a, b):
                ra, rb = self.reps(a, limits), self.reps(b, limits)
                if not (ra.exact and rb.exact):
                    return done([], False)
                if not ra.reps:
                    # all functions are vacuously related; one is needed to exist
                    return done([lam("x", a, rb.reps[0])]) if rb.reps else done([], False)
                if not rb.reps:
                    return done([])
                if len(rb) == 1:
                    return done([lam("x", a, rb.reps[0])])
                if self.splittable(a, limits) and len(rb) ** len(ra) <= limits.max_classes:
                    funcs = []
                    for table in itertools.product(range(len(rb)), repeat=len(ra)):
                        x = fresh(_key_hint(a))
                        body = self.analyze(Var(x), a, limits, lambda i: rb.reps[table[i]])
                        funcs.append(lam(x, a, body))
                    return done(funcs)
                return done([], False)
        raise TypeError(f"not an STLC type: {A!r}")

    def splittable(self, A: Type, limits: Limits) -> bool:
        match A:
            case UnitTy() | Base():
                return True
            case Sum(a, b) | Prod(a, b):
                return self.splittable(a, limits) and self.splittable(b, limits)
            case Arrow(Base(l), b) if self.key(l) is not None:
                return self.splittable(b, limits)
            case Arrow():
                r = self.reps(A, limits)
                return r.exact and len(r) <= 1
        return False

    def analyze(self, x: Term, A: Type, limits: Limits, k):
        match A:
            case Sum(a, b):
                na = len(self.reps(a, limits))
                y1, y2 = fresh("y"), fresh("y")
                return case(x, y1, self.analyze(Var(y1), a, limits, k),
                            y2, self.analyze(Var(y2), b, limits, lambda j: k(na + j)))
            case Prod(a, b):
                nb = len(self.reps(b, limits))
                return self.analyze(Proj(1, x), a, limits,
                                    lambda i: self.analyze(Proj(2, x), b, limits, lambda j: k(i * nb + j)))
            case Arrow(Base(l), b) if self.key(l) is not None and len(self.reps(A, limits)) > 1:
                return self.analyze(App(x, self.key(l)), b, limits, k)
        return k(0)

    def relate(self, M1: Term, M2: Term, A: Type, limits: Limits) -> Verdict:
        v1, v2 = normalize_stlc(M1, limits.fuel), normalize_stlc(M2, limits.fuel)
        match A:
            case Base() | UnitTy():
                return Verdict.related()
            case Sum(a, b):
                if not (isinstance(v1, Inj) and isinstance(v2, Inj)):
                    raise ValueError("normal form of a sum under keys is not an injection")
                if v1.index != v2.index:
                    return Verdict.not_related(f"{show(v1)} vs {show(v2)}")
                return self.relate(v1.body, v2.body, a if v1.index == 1 else b, limits).within(f"i{v1.index}")
            case Prod(a, b):
                return _combine([
                    self.relate(Proj(1, v1), Proj(1, v2), a, limits).within("p1"),
                    self.relate(Proj(2, v1), Proj(2, v2), b, limits).within("p2"),
                ])
            case Arrow(a, b):
                ra = self.reps(a, limits)
                if not ra.exact:
                    return Verdict.unknown(f"domain {show_type(a)} has no exact classes")
                return _combine(
                    self.relate(App(v1, r), App(v2, r), b, limits).within(f"apply to {show(r)}")
                    for r in ra.reps)
        raise TypeError(f"not an STLC type: {A!r}")


def _key_hint(A):
    return "k" if isinstance(A, Base) else "x"


def reps_stlc(P: LevelPoset, G: dict[str, Type], A: Type, limits: Limits = Limits()) -> RepSet:
    return KeyedContext(P, G).reps(A, limits)


def lr_stlc(P: LevelPoset, G: dict[str, Type], M1: Term, M2: Term, A: Type,
            limits: Limits = Limits()) -> Verdict:
    kctx = KeyedContext(P, G)
    for M in (M1, M2):
        try:
            typecheck_stlc(P, G, M, expected=A)
        except TypeCheckError as err:
            raise IllTyped(str(err)) from err
    return kctx.relate(M1, M2, A, limits)


def _obs(pi):
    return "{" + ",".join(sorted(pi)) + "}"
