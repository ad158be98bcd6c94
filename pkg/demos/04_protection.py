"""The monadic calculus: bind rules, protection, and the translations."""
from sealtc.dccpc import dc_to_dpc, dpc_to_dc, typecheck_dpc, unprotect
from sealtc.errors import BindNotPermitted
from sealtc.grammar import parse_context, parse_term, parse_type, show, show_type
from sealtc.levels import make_poset

P = make_poset(["L", "H"], [("L", "H")])

# Binding an H value is fine when the result stays protected at H ...
G = parse_context("y:T@H bool")
t, d = typecheck_dpc(P, G, set(), parse_term("bind x = y in eta@H x"))
print(show_type(t), "via", d.rule)

# ... but not when it would produce a visible boolean.
try:
    typecheck_dpc(P, G, set(), parse_term("bind x = y in x"))
except BindNotPermitted as err:
    print("rejected:", err)

# Translate both ways; Bind2 needs an unprotect combinator on the way back.
print("back to seals:", show(dpc_to_dc(P, d)))
print("unprotect at L for T@H bool:", show(unprotect(P, "L", parse_type("T@H bool"))))
print("to monads:", show(dc_to_dpc(parse_term(r"\x:[bool]@L. unseal@L x"))))
