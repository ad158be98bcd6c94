"""Random well-typed terms of the sealing calculus, redexes included.

Generation is type-directed: pick a goal type, then build an introduction,
a variable elimination, or a deliberate redex that has that type.  Sizes
are soft budgets; ``corpus`` rejects anything over its size limit.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .dc import typecheck_dc
from .levels import LevelPoset
from .syntax import (
    BOOL, UNIT, App, Arrow, Inj, Pair, Prod, Proj, Seal, Sealed, Sum, Term, Type,
    Unit, UnitTy, Unseal, Var, case, fresh, lam, size,
)
from .syntax import free_vars as term_free_vars


def inhabitant(t: Type) -> Term:
    """Smallest canonical closed inhabitant, well typed at every observer level."""
    match t:
        case UnitTy():
            return Unit()
        case Sum(a, _):
            return Inj(1, inhabitant(a))
        case Prod(a, b):
            return Pair(inhabitant(a), inhabitant(b))
        case Arrow(a, b):
            return lam("x", a, inhabitant(b))
        case Sealed(l, b):
            return Seal(l, inhabitant(b))
    raise TypeError(f"no canonical inhabitant for {t!r}")


def is_first_order(t: Type) -> bool:
    match t:
        case Arrow():
            return False
        case Prod(a, b) | Sum(a, b):
            return is_first_order(a) and is_first_order(b)
        case Sealed(_, b):
            return is_first_order(b)
    return True


def random_type(rng: random.Random, levels, depth: int = 2, first_order: bool = False,
                first_order_domains: bool = True) -> Type:
    """A small random type; arrow domains are first order unless told otherwise."""
    levels = list(levels)
    if depth <= 0:
        return rng.choice([UNIT, BOOL, BOOL])
    kinds = ["unit", "bool", "seal", "seal", "prod", "sum"]
    if not first_order:
        kinds += ["arrow", "arrow"]
    match rng.choice(kinds):
        case "unit":
            return UNIT
        case "bool":
            return BOOL
        case "seal":
            return Sealed(rng.choice(levels), random_type(rng, levels, depth - 1, first_order, first_order_domains))
        case "prod":
            return Prod(random_type(rng, levels, depth - 1, True), random_type(rng, levels, depth - 1, True))
        case "sum":
            return Sum(random_type(rng, levels, depth - 1, True), random_type(rng, levels, depth - 1, True))
    dom = random_type(rng, levels, depth - 1, first_order_domains, first_order_domains)
    return Arrow(dom, random_type(rng, levels, depth - 1, first_order, first_order_domains))


class Generator:
    def __init__(self, P: LevelPoset, rng: random.Random, var_bias: float = 0.35):
        self.P = P
        self.rng = rng
        self.var_bias = var_bias

    def small_type(self) -> Type:
        return random_type(self.rng, self.P.labels, 1)

    def term(self, env: dict[str, Type], obs: frozenset, t: Type, budget: int) -> Term:
        rng = self.rng
        exact = [x for x, ty in env.items() if ty == t]
        if budget <= 1 or budget <= size(inhabitant(t)):
            return Var(rng.choice(exact)) if exact else inhabitant(t)
        if exact and rng.random() < self.var_bias:
            return Var(rng.choice(exact))
        options = ["intro", "intro", "redex", "redex", "elim"]
        choice = rng.choice(options)
        if choice == "elim":
            r = self.eliminate(env, obs, t, budget)
            if r is not None:
                return r
            choice = rng.choice(["intro", "redex"])
        if choice == "redex":
            return self.redex(env, obs, t, budget)
        return self.intro(env, obs, t, budget)

    def intro(self, env, obs, t, budget):
        b = budget - 1
        match t:
            case UnitTy():
                return Unit()
            case Sum(a, c):
                i = self.rng.choice([1, 2])
                return Inj(i, self.term(env, obs, a if i == 1 else c, b))
            case Prod(a, c):
                k = self.rng.randint(1, max(1, b - 1))
                return Pair(self.term(env, obs, a, k), self.term(env, obs, c, b - k))
            case Arrow(a, c):
                x = fresh("x")
                return lam(x, a, self.term({**env, x: a}, obs, c, b))
            case Sealed(l, c):
                return Seal(l, self.term(env, obs | {l}, c, b))
        raise TypeError(t)

    def redex(self, env, obs, t, budget):
        rng = self.rng
        b = budget - 1
        kinds = ["beta", "proj", "case"]
        openable = [l for l in self.P.labels if self.P.below(l, obs)]
        if openable:
            kinds.append("unseal")
        kind = rng.choice(kinds)
        k = rng.randint(1, max(1, b - 1))
        if kind == "beta":
            a = self.small_type()
            x = fresh("x")
            return App(lam(x, a, self.term({**env, x: a}, obs, t, k)), self.term(env, obs, a, b - k))
        if kind == "proj":
            other = self.small_type()
            if rng.random() < 0.5:
                return Proj(1, Pair(self.term(env, obs, t, k), self.term(env, obs, other, b - k)))
            return Proj(2, Pair(self.term(env, obs, other, b - k), self.term(env, obs, t, k)))
        if kind == "case":
            a, c = self.small_type(), self.small_type()
            scrut = self.term(env, obs, Sum(a, c), max(2, b // 3))
            x1, x2 = fresh("y"), fresh("y")
            rest = max(1, b - size(scrut))
            return case(scrut, x1, self.term({**env, x1: a}, obs, t, rest // 2),
                        x2, self.term({**env, x2: c}, obs, t, rest - rest // 2))
        l = rng.choice(openable)
        return Unseal(self.term(env, obs, Sealed(l, t), b), l)

    def eliminate(self, env, obs, t, budget):
        """Use a variable whose type has ``t`` somewhere in an elimination path."""
        rng = self.rng
        cands = []
        for x, ty in env.items():
            match ty:
                case Arrow(a, c) if c == t:
                    cands.append(("app", x, a))
                case Prod(a, c) if a == t or c == t:
                    cands.append(("proj", x, 1 if a == t else 2))
                case Sealed(l, c) if c == t and self.P.below(l, obs):
                    cands.append(("unseal", x, l))
                case Sealed(l, Sum(a, c)) if self.P.below(l, obs):
                    cands.append(("case-unseal", x, (l, a, c)))
                case Sum(a, c):
                    cands.append(("case", x, (a, c)))
        if not cands:
            return None
        kind, x, extra = rng.choice(cands)
        b = budget - 1
        if kind == "app":
            return App(Var(x), self.term(env, obs, extra, b - 1))
        if kind == "proj":
            return Proj(extra, Var(x))
        if kind == "unseal":
            return Unseal(Var(x), extra)
        if kind == "case-unseal":
            l, a, c = extra
            scrut = Unseal(Var(x), l)
        else:
            a, c = extra
            scrut = Var(x)
        y1, y2 = fresh("y"), fresh("y")
        return case(scrut, y1, self.term({**env, y1: a}, obs, t, b // 2),
                    y2, self.term({**env, y2: c}, obs, t, b - b // 2))


@dataclass(frozen=True)
class Sample:
    context: dict
    obs: frozenset
    term: Term
    type: Type


def corpus(P: LevelPoset, count: int, seed: int = 0, max_size: int = 12, context=None, obs=None,
           ty=None, free_vars: int = 2, first_order_domains: bool = True,
           must_use=()) -> list[Sample]:
    """``count`` well-typed samples, each at most ``max_size`` nodes.

    ``context``, ``obs`` and ``ty`` fix those parts; otherwise they are drawn.
    The result type is drawn with first-order arrow domains by default so
    the logical relation is decidable on it.  Samples that do not mention
    every variable in ``must_use`` are redrawn.
    """
    rng = random.Random(seed)
    gen = Generator(P, rng)
    out = []
    while len(out) < count:
        G = dict(context) if context is not None else {
            f"v{i}": random_type(rng, P.labels, 2) for i in range(rng.randint(0, free_vars))}
        pi = frozenset(obs) if obs is not None else frozenset(
            l for l in P.labels if rng.random() < 0.5)
        t = ty if ty is not None else random_type(rng, P.labels, 2, first_order_domains=first_order_domains)
        e = gen.term(G, pi, t, rng.randint(3, max_size))
        if size(e) > max_size or not set(must_use) <= term_free_vars(e):
            continue
        typecheck_dc(P, G, pi, e, expected=t)  # generator bugs surface here
        out.append(Sample(G, pi, e, t))
    return out
