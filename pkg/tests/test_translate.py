import pytest
from hypothesis import given, settings, strategies as st

from conftest import P0, PFLAT
from helpers import one_step_reducts
from sealtc.dc import contract
from sealtc.errors import IllTyped
from sealtc.generate import corpus
from sealtc.grammar import parse_context, parse_term as T, parse_type as Ty, show
from sealtc.levels import make_poset
from sealtc.stlc import contract_stlc, key_equiv, typecheck_stlc
from sealtc.syntax import App, Var, children
from sealtc.translate import (
    build_kc, default_keys, erase_seals, erase_type, target_context, translate_dc_to_stlc,
    translate_type,
)


def test_build_kc():
    assert build_kc(P0) == {"c$L$L": Ty("a@L -> a@L"), "c$H$H": Ty("a@H -> a@H"),
                            "c$H$L": Ty("a@H -> a@L")}
    assert set(build_kc(PFLAT)) == {"c$L$L", "c$H$H"}
    assert build_kc(make_poset(["M"])) == {"c$M$M": Ty("a@M -> a@M")}


@pytest.mark.parametrize("t, expected", [
    ("[bool]@H", "a@H -> unit + unit"),
    ("unit", "unit"),
    ("[[unit]@L]@H", "a@H -> a@L -> unit"),
])
def test_translate_type(t, expected):
    assert translate_type(Ty(t)) == Ty(expected)


def test_unseal_uses_a_coerced_key():
    M = translate_dc_to_stlc(P0, parse_context("x:[bool]@L"), {"H": "k$H$0"}, T("unseal@L x"))
    assert show(M) == "x (c$H$L k$H$0)"


def test_inner_key_shadows_outer():
    P = make_poset(["L", "H1", "H2"], [("L", "H1"), ("L", "H2")])
    G = parse_context("x:[bool]@L")
    M = translate_dc_to_stlc(P, G, {"H1": "k1", "H2": "k2"}, T("seal@H1 (unseal@L x)"))
    assert show(M) == r"\k$H1$1:a@H1. x (c$H1$L k$H1$1)"
    # the other admissible choice is equivalent up to keys
    alt = T(r"\k:a@H1. x (c$H2$L k2)")
    ctx = target_context(P, G, {"H1": "k1", "H2": "k2"})
    assert key_equiv(P, ctx, M, alt, Ty("a@H1 -> bool"))


def test_seal_becomes_key_abstraction():
    assert translate_dc_to_stlc(P0, {}, {}, T("seal@L ()")) == T(r"\k:a@L. ()")


def test_ill_typed_input():
    with pytest.raises(IllTyped):
        translate_dc_to_stlc(P0, parse_context("x:[bool]@H"), {"L": "k"}, T("unseal@H x"))


def test_user_names_may_not_contain_dollar():
    with pytest.raises(ValueError):
        translate_dc_to_stlc(P0, {"k$H$0": Ty("unit")}, default_keys({"H"}), T("k$H$0"))


def test_erasure_clauses():
    assert erase_seals(T("seal@L ()")) == T(r"\_:unit. ()")
    assert erase_seals(T("unseal@L x")) == T("x ()")
    assert erase_seals(T(r"(\x:unit. x) ()")) == T(r"(\x:unit. x) ()")
    assert erase_type(Ty("[bool]@L")) == Ty("unit -> bool")


def _key_uses(M, keys):
    """Every occurrence of a key variable sits directly under a coercion."""
    match M:
        case App(Var(c), Var(k)) if k in keys:
            return c.startswith("c$")
        case Var(k) if k in keys:
            return False
    return all(_key_uses(c, keys) for c, _ in children(M))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_translation_typing_and_key_discipline(seed):
    for s in corpus(P0, 5, seed=seed):
        sigma = default_keys(s.obs)
        M = translate_dc_to_stlc(P0, s.context, sigma, s.term)
        ctx = target_context(P0, s.context, sigma)
        A = translate_type(s.type)
        assert typecheck_stlc(P0, ctx, M, expected=A)[0] == A
        assert _key_uses(M, set(sigma.values()))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_erasure_simulates_each_step(seed):
    for s in corpus(P0, 5, seed=seed):
        for r in one_step_reducts(s.term, contract):
            # each step is matched by exactly one step after erasure
            assert erase_seals(r) in one_step_reducts(erase_seals(s.term), contract_stlc)
        G = {x: erase_type(t) for x, t in s.context.items()}
        assert typecheck_stlc(P0, G, erase_seals(s.term), expected=erase_type(s.type))
