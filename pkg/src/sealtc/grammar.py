"""Concrete syntax for types and terms of all three calculi.

Types::

    unit | bool | a@L | [t]@L | T@L t | t -> t | t * t | t + t | (t)

``->`` is right-associative; ``*`` binds tighter than ``+`` and both bind
tighter than ``->``.  ``T@L`` applies to an atomic type.

Terms::

    x | () | \\x:t. e | e e | <e, e> | p1 e | p2 e | i1 e | i2 e
      | case e of x => e | y => e | seal@L e | unseal@L e | eta@L e
      | bind x = e in e | protect@L e | (e)

Application is left-associative and binds tightest; the prefix forms take
one argument, so ``p1 x y`` is ``(p1 x) y``.  Binder forms extend as far to
the right as possible.
"""
from __future__ import annotations

import re

from .errors import ParseError
from .syntax import (
    BOOL, UNIT, App, Arrow, Base, Bind, Bound, Case, Eta, Hole, Inj, Lam, Monad, Pair,
    Prod, Proj, Protect, Seal, Sealed, Sum, Term, Type, Unit, UnitTy, Unseal, Var,
    base_name, children, free_vars,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<sym>->|=>|[()\[\]<>,\\λ:.*+|=@])|(?P<id>[A-Za-z_][A-Za-z0-9_$]*))"
)
KEYWORDS = {"case", "of", "bind", "in", "p1", "p2", "i1", "i2",
            "seal", "unseal", "eta", "protect"}
_PREFIX_LEVEL = {"seal", "unseal", "eta", "protect"}
_PREFIX_INDEX = {"p1", "p2", "i1", "i2"}


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} at offset {pos}")
        out.append(m.group("sym") or m.group("id"))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0
        self.scope: list[str] = []

    # helpers
    def peek(self, k=0):
        i = self.pos + k
        return self.toks[i] if i < len(self.toks) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, tok):
        got = self.next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}")

    def ident(self):
        tok = self.next()
        if not re.match(r"[A-Za-z_]", tok) or tok in KEYWORDS:
            raise ParseError(f"expected an identifier, got {tok!r}")
        return tok

    def level(self):
        self.expect("@")
        tok = self.next()
        if not re.match(r"[A-Za-z][A-Za-z0-9_]*\Z", tok):
            raise ParseError(f"bad level label {tok!r}")
        return tok

    def done(self):
        if self.peek() is not None:
            raise ParseError(f"trailing input starting at {self.peek()!r}")

    # types
    def type(self) -> Type:
        left = self.sum_type()
        if self.peek() == "->":
            self.next()
            return Arrow(left, self.type())
        return left

    def sum_type(self):
        t = self.prod_type()
        while self.peek() == "+":
            self.next()
            t = Sum(t, self.prod_type())
        return t

    def prod_type(self):
        t = self.atom_type()
        while self.peek() == "*":
            self.next()
            t = Prod(t, self.atom_type())
        return t

    def atom_type(self):
        tok = self.next()
        if tok == "unit":
            return UNIT
        if tok == "bool":
            return BOOL
        if tok == "a" and self.peek() == "@":
            return Base(self.level())
        if tok == "T" and self.peek() == "@":
            lvl = self.level()
            return Monad(lvl, self.atom_type())
        if tok == "[":
            body = self.type()
            self.expect("]")
            return Sealed(self.level(), body)
        if tok == "(":
            t = self.type()
            self.expect(")")
            return t
        raise ParseError(f"unexpected {tok!r} in a type")

    # terms
    def term(self) -> Term:
        tok = self.peek()
        if tok in ("\\", "λ", "case", "bind"):
            return self.binder()
        items = [self.item()]
        while True:
            tok = self.peek()
            if tok in ("\\", "λ", "case", "bind"):
                items.append(self.binder())
                break
            if self._starts_item(tok):
                items.append(self.item())
            else:
                break
        t = items[0]
        for a in items[1:]:
            t = App(t, a)
        return t

    def _starts_item(self, tok):
        if tok is None:
            return False
        if tok in ("(", "<"):
            return True
        if tok in _PREFIX_INDEX or tok in _PREFIX_LEVEL:
            return True
        return re.match(r"[A-Za-z_]", tok) is not None and tok not in KEYWORDS

    def under(self, name, parse):
        self.scope.append(name)
        try:
            return parse()
        finally:
            self.scope.pop()

    def binder(self):
        tok = self.next()
        if tok in ("\\", "λ"):
            name = self.ident()
            self.expect(":")
            ty = self.type()
            self.expect(".")
            return Lam(name, ty, self.under(name, self.term))
        if tok == "case":
            scrut = self.term()
            self.expect("of")
            n1 = self.ident()
            self.expect("=>")
            left = self.under(n1, self.term)
            self.expect("|")
            n2 = self.ident()
            self.expect("=>")
            right = self.under(n2, self.term)
            return Case(scrut, n1, left, n2, right)
        name = self.ident()  # bind
        self.expect("=")
        bound = self.term()
        self.expect("in")
        return Bind(name, bound, self.under(name, self.term))

    def item(self):
        tok = self.peek()
        if tok in _PREFIX_INDEX:
            self.next()
            arg = self.item_or_binder()
            return (Proj if tok[0] == "p" else Inj)(int(tok[1]), arg)
        if tok in _PREFIX_LEVEL and self.peek(1) == "@":
            self.next()
            lvl = self.level()
            arg = self.item_or_binder()
            return {"seal": lambda: Seal(lvl, arg), "unseal": lambda: Unseal(arg, lvl),
                    "eta": lambda: Eta(lvl, arg), "protect": lambda: Protect(lvl, arg)}[tok]()
        return self.atom()

    def item_or_binder(self):
        if self.peek() in ("\\", "λ", "case", "bind"):
            return self.binder()
        return self.item()

    def atom(self):
        tok = self.next()
        if tok == "(":
            if self.peek() == ")":
                self.next()
                return Unit()
            t = self.term()
            self.expect(")")
            return t
        if tok == "<":
            a = self.term()
            self.expect(",")
            b = self.term()
            self.expect(">")
            return Pair(a, b)
        if re.match(r"[A-Za-z_]", tok) and tok not in KEYWORDS:
            for i, name in enumerate(reversed(self.scope)):
                if name == tok:
                    return Bound(i)
            return Var(tok)
        raise ParseError(f"unexpected {tok!r} in a term")


def parse_type(text: str) -> Type:
    p = _Parser(text)
    t = p.type()
    p.done()
    return t


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.done()
    return t


def parse_context(text: str) -> dict[str, Type]:
    """``"x:[bool]@L, y:unit"``; types never contain commas."""
    ctx = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, sep, ty = part.partition(":")
        name = name.strip()
        if not sep or not re.match(r"[A-Za-z_][A-Za-z0-9_$]*\Z", name):
            raise ParseError(f"bad context entry {part!r}")
        if name in ctx:
            raise ParseError(f"variable {name!r} declared twice")
        ctx[name] = parse_type(ty)
    return ctx


# printing


def show_type(t: Type, prec: int = 0) -> str:
    match t:
        case UnitTy():
            return "unit"
        case Sum(UnitTy(), UnitTy()):
            return "bool"
        case Base(l):
            return f"a@{l}"
        case Sealed(l, b):
            return f"[{show_type(b)}]@{l}"
        case Monad(l, b):
            return f"T@{l} {show_type(b, 3)}"
        case Arrow(a, b):
            s = f"{show_type(a, 1)} -> {show_type(b, 0)}"
            return s if prec <= 0 else f"({s})"
        case Sum(a, b):
            s = f"{show_type(a, 1)} + {show_type(b, 2)}"
            return s if prec <= 1 else f"({s})"
        case Prod(a, b):
            s = f"{show_type(a, 2)} * {show_type(b, 3)}"
            return s if prec <= 2 else f"({s})"
    return f"?{getattr(t, 'id', '')}"


def show(t: Term) -> str:
    return _Printer(free_vars(t)).go(t, [], 0)


class _Printer:
    def __init__(self, free: set[str]):
        self.free = free

    def pick(self, hint: str, scope: list[str], body: Term) -> str:
        base = base_name(hint)
        if base == "_" and not _uses_index(body, 0):
            return "_"
        if base == "_":
            base = "x"
        taken = self.free | set(scope)
        name, n = base, 0
        while name in taken or name in KEYWORDS:
            n += 1
            name = f"{base}{n}"
        return name

    def go(self, t: Term, scope: list[str], prec: int) -> str:
        # prec: 0 anything, 1 application operand on the left, 2 atom
        match t:
            case Var(n):
                return n
            case Bound(k):
                return scope[-1 - k] if k < len(scope) else f"#{k}"
            case Unit():
                return "()"
            case Hole(l):
                return f"<key@{l}>"
            case Pair(a, b):
                return f"<{self.go(a, scope, 0)}, {self.go(b, scope, 0)}>"
            case Lam(h, ty, b):
                x = self.pick(h, scope, b)
                s = f"\\{x}:{show_type(ty)}. {self.go(b, scope + [x], 0)}"
                return s if prec == 0 else f"({s})"
            case Case(e, h1, l, h2, r):
                x1 = self.pick(h1, scope, l)
                x2 = self.pick(h2, scope, r)
                s = (f"case {self.go(e, scope, 1)} of {x1} => {self.go(l, scope + [x1], 1)}"
                     f" | {x2} => {self.go(r, scope + [x2], 0)}")
                return s if prec == 0 else f"({s})"
            case Bind(h, e, b):
                x = self.pick(h, scope, b)
                s = f"bind {x} = {self.go(e, scope, 1)} in {self.go(b, scope + [x], 0)}"
                return s if prec == 0 else f"({s})"
            case App(f, a):
                s = f"{self.go(f, scope, 1)} {self.go(a, scope, 2)}"
            case Proj(i, b):
                s = f"p{i} {self.go(b, scope, 2)}"
            case Inj(i, b):
                s = f"i{i} {self.go(b, scope, 2)}"
            case Seal(l, b):
                s = f"seal@{l} {self.go(b, scope, 2)}"
            case Unseal(b, l):
                s = f"unseal@{l} {self.go(b, scope, 2)}"
            case Eta(l, b):
                s = f"eta@{l} {self.go(b, scope, 2)}"
            case Protect(l, b):
                s = f"protect@{l} {self.go(b, scope, 2)}"
            case _:
                raise TypeError(f"not a term: {t!r}")
        return s if prec < 2 else f"({s})"


def _uses_index(t: Term, k: int) -> bool:
    if isinstance(t, Bound):
        return t.index == k
    return any(_uses_index(c, k + n) for c, n in children(t))
