import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import P0
from sealtc.dc import normalize_dc
from sealtc.enumerate import enumerate_dc, enumerate_stlc
from sealtc.equivalence import (
    ctx_equiv_test, lr_dc, lr_stlc, noninterference_check, reps_dc, reps_stlc, splittable,
)
from sealtc.errors import IllTyped, OpenTerm, UnsupportedContext
from sealtc.generate import corpus
from sealtc.grammar import parse_term as T, parse_type as Ty, show
from sealtc.syntax import BOOL, App, substitute
from sealtc.translate import build_kc, default_keys, target_context, translate_dc_to_stlc, translate_type

SEALED_TRUE, SEALED_FALSE = T("seal@H (i1 ())"), T("seal@H (i2 ())")
HB = Ty("[bool]@H")


def test_splittable():
    assert splittable(P0, BOOL, set())
    assert splittable(P0, HB, {"L"})
    assert not splittable(P0, Ty("bool -> bool"), {"L"})
    assert splittable(P0, Ty("bool -> [bool]@H"), {"L"})


def test_reps_examples():
    r = reps_dc(P0, BOOL, set())
    assert r.exact and r.reps == (T("i1 ()"), T("i2 ()"))
    r = reps_dc(P0, HB, {"L"})
    assert r.exact and len(r) == 1
    r = reps_dc(P0, Ty("bool -> bool"), {"L"})
    assert r.exact and len(r) == 4


def _brute_classes(P, t, obs, size):
    # independent oracle: partition enumerated inhabitants by extensional behaviour
    terms = list(enumerate_dc(P, obs, t, size))
    classes = []
    for e in terms:
        for c in classes:
            if lr_dc(P, obs, e, c[0], t).is_related:
                c.append(e)
                break
        else:
            classes.append([e])
    return classes


@pytest.mark.parametrize("ts, obs", [
    ("[bool]@H", {"L"}), ("[bool]@H", {"H"}), ("bool * [bool]@L", {"L"}), ("[[bool]@L]@H", {"H"}),
])
def test_class_count_matches_brute_force(ts, obs):
    t = Ty(ts)
    assert len(_brute_classes(P0, t, obs, 8)) == len(reps_dc(P0, t, obs))


def test_function_classes_by_truth_table():
    # four boolean functions, told apart by their table
    t = Ty("bool -> bool")
    tables = set()
    for f in enumerate_dc(P0, set(), t, 9):
        tables.add(tuple(normalize_dc(App(f, b)) for b in (T("i1 ()"), T("i2 ()"))))
    assert len(tables) == len(reps_dc(P0, t, set())) == 4


def test_rep_sets_are_well_typed_and_pairwise_distinct():
    from sealtc.dc import typecheck_dc
    for ts in ["bool -> bool", "[bool]@L -> bool", "bool * [bool]@H", "[bool -> bool]@L"]:
        t = Ty(ts)
        for obs in P0.observers():
            r = reps_dc(P0, t, obs)
            assert r.exact
            for x in r.reps:
                typecheck_dc(P0, {}, obs, x, expected=t)
            for x, y in itertools.combinations(r.reps, 2):
                assert lr_dc(P0, obs, x, y, t).is_not_related


def test_sealed_booleans():
    assert lr_dc(P0, {"L"}, SEALED_TRUE, SEALED_FALSE, HB).is_related
    v = lr_dc(P0, {"H"}, SEALED_TRUE, SEALED_FALSE, HB)
    assert v.is_not_related and "i1 () vs i2 ()" in v.detail


def test_constant_function():
    f = T(r"\x:[bool]@H. seal@L (i1 ())")
    assert lr_dc(P0, {"L"}, f, f, Ty("[bool]@H -> [bool]@L")).is_related


def test_precondition_errors():
    with pytest.raises(OpenTerm):
        lr_dc(P0, set(), T("x"), T("x"), BOOL)
    with pytest.raises(IllTyped):
        lr_dc(P0, set(), T("()"), T("i1 ()"), BOOL)
    with pytest.raises(IllTyped):
        lr_dc(P0, {"L"}, T("unseal@H (seal@H (i1 ()))"), T("i1 ()"), BOOL)


def test_unknown_for_higher_order_domains():
    # the domain (bool -> bool) -> bool cannot be split into exact classes
    v = lr_dc(P0, set(), T(r"\h:(bool -> bool) -> bool. i1 ()"), T(r"\h:(bool -> bool) -> bool. i1 ()"),
              Ty("((bool -> bool) -> bool) -> bool"))
    assert v.is_unknown


KC_L = {**build_kc(P0), "k": Ty("a@L")}
KC_H = {**build_kc(P0), "k": Ty("a@H")}


def test_stlc_no_key_means_everything_related():
    A = Ty("a@H -> bool")
    for M1 in enumerate_stlc(P0, KC_L, A, 6):
        for M2 in enumerate_stlc(P0, KC_L, A, 6):
            assert lr_stlc(P0, KC_L, M1, M2, A).is_related


def test_stlc_key_distinguishes():
    v = lr_stlc(P0, KC_H, T(r"\k2:a@H. i1 ()"), T(r"\k2:a@H. i2 ()"), Ty("a@H -> bool"))
    assert v.is_not_related and "c$H$H k" in v.detail
    assert lr_stlc(P0, KC_H, T("()"), T("()"), Ty("unit")).is_related


def test_stlc_context_shape():
    with pytest.raises(UnsupportedContext):
        lr_stlc(P0, {"x": Ty("unit")}, T("()"), T("()"), Ty("unit"))
    with pytest.raises(UnsupportedContext):
        lr_stlc(P0, {**build_kc(P0), "k1": Ty("a@L"), "k2": Ty("a@L")}, T("()"), T("()"), Ty("unit"))


def test_stlc_reps():
    r = reps_stlc(P0, KC_H, Ty("a@L"))
    assert r.reps == (T("c$H$L k"),)
    assert len(reps_stlc(P0, KC_L, Ty("a@H"))) == 0
    assert len(reps_stlc(P0, KC_L, Ty("a@H -> bool"))) == 1


def test_noninterference_examples():
    G = {"x": HB}
    e = T("seal@H (case unseal@H x of _ => i2 () | _ => i1 ())")
    assert noninterference_check(P0, G, {"L"}, e).is_related
    assert noninterference_check(P0, {"x": BOOL}, set(), T("x")).is_related
    # at H the secret is observable, but the map still respects classes
    assert noninterference_check(P0, G, {"H"}, e).is_related


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_no_boolean_reveals_the_secret(seed):
    G = {"x": HB}
    for s in corpus(P0, 10, seed=seed, context=G, obs={"L"}, ty=BOOL):
        v = lr_dc(P0, {"L"}, substitute(s.term, "x", SEALED_TRUE), substitute(s.term, "x", SEALED_FALSE), BOOL)
        assert v.is_related, show(s.term)
        assert not noninterference_check(P0, G, {"L"}, s.term, expected=BOOL).is_not_related


def test_ctx_equiv_examples():
    v = ctx_equiv_test(P0, {"H"}, SEALED_TRUE, SEALED_FALSE, HB, size_bound=8)
    assert v.is_not_related
    f = T(v.detail)
    assert normalize_dc(App(f, SEALED_TRUE)) != normalize_dc(App(f, SEALED_FALSE))
    assert ctx_equiv_test(P0, {"L"}, SEALED_TRUE, SEALED_FALSE, HB, size_bound=10).is_related
    assert ctx_equiv_test(P0, {"L"}, SEALED_TRUE, SEALED_FALSE, HB, size_bound=6, strict=True).is_unknown
    assert ctx_equiv_test(P0, set(), T("()"), T("()"), Ty("unit")).is_related


def _closed(seed, n=6):
    return corpus(P0, n, seed=seed, context={})


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_lr_is_an_equivalence(seed):
    samples = _closed(seed)
    for s in samples:
        assert lr_dc(P0, s.obs, s.term, s.term, s.type).is_related
    by_key = {}
    for s in samples:
        by_key.setdefault((s.obs, s.type), []).append(s.term)
    for (obs, t), terms in by_key.items():
        for x, y in itertools.product(terms, repeat=2):
            assert lr_dc(P0, obs, x, y, t).status == lr_dc(P0, obs, y, x, t).status


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["bool", "[bool]@H", "[bool]@L * bool", "bool -> [bool]@H",
                                               "[[bool]@L]@H"]))
def test_lower_observers_distinguish_less(seed, ts):
    t = Ty(ts)
    pairs = corpus(P0, 4, seed=seed, context={}, ty=t, obs={"L", "H"})
    for a, b in itertools.combinations(pairs, 2):
        verdicts = {}
        for obs in P0.observers():
            try:
                verdicts[obs] = lr_dc(P0, obs, a.term, b.term, t)
            except IllTyped:
                pass  # the pair only typechecks higher up
        for hi, v in verdicts.items():
            if v.is_related:
                for lo, w in verdicts.items():
                    if P0.obs_leq(lo, hi):
                        assert w.is_related, (sorted(lo), sorted(hi), show(a.term), show(b.term))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_translation_preserves_verdicts(seed):
    for s in _closed(seed, 4):
        pairs = corpus(P0, 3, seed=seed + 1, context={}, ty=s.type, obs=s.obs)
        sigma = default_keys(s.obs)
        G = target_context(P0, {}, sigma)
        for other in pairs:
            v1 = lr_dc(P0, s.obs, s.term, other.term, s.type)
            v2 = lr_stlc(P0, G, translate_dc_to_stlc(P0, {}, sigma, s.term),
                         translate_dc_to_stlc(P0, {}, sigma, other.term), translate_type(s.type))
            assert not v1.is_unknown and v1.status == v2.status


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_related_keys_give_related_results(seed):
    # related key substitutions: any two keys of a level are interchangeable
    sigma = {"H": "k"}
    G = target_context(P0, {}, sigma)
    for s in corpus(P0, 5, seed=seed, context={"v": Ty("[bool]@L")}, obs={"H"}):
        M = translate_dc_to_stlc(P0, s.context, sigma, s.term)
        A = translate_type(s.type)
        for r1, r2 in itertools.product(reps_stlc(P0, G, Ty("a@L -> bool")).reps, repeat=2):
            if lr_stlc(P0, G, r1, r2, Ty("a@L -> bool")).is_related:
                v = lr_stlc(P0, G, substitute(M, "v", r1), substitute(M, "v", r2), A)
                assert v.is_related
