"""Seals as functions of keys: translate to STLC and read the result back."""
from sealtc.grammar import parse_context, parse_term, parse_type, show, show_type
from sealtc.levels import make_poset
from sealtc.stlc import key_equiv, normalize_stlc
from sealtc.translate import default_keys, target_context, translate_dc_to_stlc, translate_type
from sealtc.untranslate import realize

P = make_poset(["L", "H"], [("L", "H")])
G = parse_context("x:[bool]@L")
sigma = default_keys({"H"})  # the observer holds a key for H

e = parse_term(r"seal@H (unseal@L x)")
M = translate_dc_to_stlc(P, G, sigma, e)
print("source:    ", show(e))
print("translated:", show(M))
print("context:   ", ", ".join(f"{k}:{show_type(v)}" for k, v in target_context(P, G, sigma).items()))

# Any STLC term of a translated type can be read back as a source term.
back = realize(P, G, sigma, M, parse_type("[bool]@H"))
print("read back: ", show(back))
ctx = target_context(P, G, sigma)
A = translate_type(parse_type("[bool]@H"))
print("same up to keys:", key_equiv(P, ctx, translate_dc_to_stlc(P, G, sigma, back), normalize_stlc(M), A))

# A key-passing function nobody wrote as a source program.
witness = parse_term(r"\k:a@L. \f:a@L -> bool. f k")
print("read back:", show(realize(P, {}, {}, witness, parse_type("[[bool]@L -> bool]@L"))))
