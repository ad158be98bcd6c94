import pytest
from hypothesis import given, settings, strategies as st

from conftest import P0
from helpers import all_normal_forms, one_step_reducts
from sealtc.errors import ForeignConstruct, TypeMismatch, UnboundVariable
from sealtc.generate import corpus
from sealtc.grammar import parse_context, parse_term as T, parse_type as Ty
from sealtc.stlc import (
    contract_stlc, key_canonicalize, key_equiv, normalize_stlc, subformula_ok, typecheck_stlc,
)
from sealtc.syntax import App, Bound, Hole, Lam
from sealtc.translate import build_kc, default_keys, target_context, translate_dc_to_stlc, translate_type

KH = {**build_kc(P0), "k": Ty("a@H")}


def test_typing_examples():
    G = parse_context("k:a@H, c:a@H -> a@L")
    assert typecheck_stlc(P0, G, T("c k"))[0] == Ty("a@L")
    assert typecheck_stlc(P0, {}, T(r"\x:unit. x"))[0] == Ty("unit -> unit")
    with pytest.raises(UnboundVariable):
        typecheck_stlc(P0, {}, T("x"))
    with pytest.raises(ForeignConstruct):
        typecheck_stlc(P0, {}, T("seal@L ()"))


def test_commuting_conversion_example():
    G = parse_context("u1:unit+unit -> unit*unit, u2:unit+unit -> unit*unit")
    M = T(r"\z:unit+unit. p1 ((case z of y1 => u1 | y2 => u2) z)")
    N = normalize_stlc(M)
    assert N == T(r"\z:unit+unit. case z of y1 => p1 (u1 z) | y2 => p1 (u2 z)")
    assert typecheck_stlc(P0, G, N)[0] == typecheck_stlc(P0, G, M)[0]


def test_commuting_respects_the_argument_binding():
    # the argument is the outer y; the branch binders are also called y
    M = T(r"\y:unit+unit. (case y of y => \w:unit+unit. w | y => \w:unit+unit. y) y")
    N = normalize_stlc(M)
    assert N == T(r"\y:unit+unit. case y of a => y | b => b")


def test_case_of_case():
    M = T(r"\x:unit+unit. case (case x of a => i2 a | b => i1 b) of c => i1 c | d => i2 ()")
    N = normalize_stlc(M)
    assert N == T(r"\x:unit+unit. case x of a => i2 () | b => i1 b")


CASE_APPLIED = r"\x:unit+unit. (case x of _ => \y:unit. () | _ => \y:unit. ()) ()"


def test_applied_case_leaves_the_subformulas_until_normalized():
    M = T(CASE_APPLIED)
    _, d = typecheck_stlc(P0, {}, M)
    assert not subformula_ok(d)
    N = normalize_stlc(M)
    assert N == T(r"\x:unit+unit. case x of _ => () | _ => ()")
    assert subformula_ok(typecheck_stlc(P0, {}, N)[1])


def test_subformula_identity():
    assert subformula_ok(typecheck_stlc(P0, {}, T(r"\x:unit. x"))[1])


def test_key_canonicalize():
    assert key_canonicalize(P0, KH, T("c$H$L k")) == Hole("L")
    f = key_canonicalize(P0, KH, T(r"\f:a@L -> unit. f (c$H$L k)"))
    assert isinstance(f, Lam) and f.body == App(Bound(0), Hole("L"))
    assert key_canonicalize(P0, KH, T("()")) == T("()")


def test_key_equiv():
    assert key_equiv(P0, KH, T("c$H$L k"), T("c$L$L (c$H$L k)"), Ty("a@L"))
    assert key_equiv(P0, KH, T(r"\f:a@L -> unit. f (c$H$L k)"),
                     T(r"\f:a@L -> unit. f (c$L$L (c$H$L k))"), Ty("(a@L -> unit) -> unit"))
    assert key_equiv(P0, KH, T("()"), T("()"), Ty("unit"))
    assert not key_equiv(P0, KH, T(r"\k2:a@H. i1 ()"), T(r"\k2:a@H. i2 ()"), Ty("a@H -> bool"))
    with pytest.raises(TypeMismatch):
        key_equiv(P0, KH, T("()"), T("i1 ()"), Ty("unit"))


def _translated_corpus(seed, n=5):
    for s in corpus(P0, n, seed=seed):
        sigma = default_keys(s.obs)
        yield (target_context(P0, s.context, sigma), translate_dc_to_stlc(P0, s.context, sigma, s.term),
               translate_type(s.type))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_subject_reduction_and_confluence(seed):
    for G, M, A in _translated_corpus(seed):
        for r in one_step_reducts(M, contract_stlc):
            assert typecheck_stlc(P0, G, r, expected=A)[0] == A
        N = normalize_stlc(M)
        assert normalize_stlc(M, innermost=True) == N
        nfs = all_normal_forms(M, contract_stlc, limit=500)
        if nfs is not None:
            assert nfs == {N}
        assert subformula_ok(typecheck_stlc(P0, G, N, expected=A)[1])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_key_equiv_is_an_equivalence(seed):
    items = list(_translated_corpus(seed, 6))
    for G, M, A in items:
        assert key_equiv(P0, G, M, M, A)
    for G1, M1, A1 in items:
        for G2, M2, A2 in items:
            if G1 == G2 and A1 == A2:
                assert key_equiv(P0, G1, M1, M2, A1) == key_equiv(P0, G1, M2, M1, A1)
