"""A pair of sealed programs that are related to a low observer but not to
an observer who holds the key, and the STLC function that tells them apart,
read back as a source term."""
from __future__ import annotations

from .equivalence import lr_dc
from .grammar import parse_term, parse_type, show, show_type
from .levels import make_poset
from .translate import translate_type
from .untranslate import realize

SINGLE = make_poset(["L"])

ARG_TYPE = "[[bool]@L -> bool]@L"
LEFT = r"\f:[[bool]@L -> bool]@L. seal@L (unseal@L f (seal@L (i1 ())))"
RIGHT = r"\f:[[bool]@L -> bool]@L. seal@L (unseal@L f (seal@L (i2 ())))"
WITNESS = r"\k:a@L. \y:a@L -> bool. y k"


def counterexample_transcript() -> str:
    P = SINGLE
    arg = parse_type(ARG_TYPE)
    t = parse_type(f"{ARG_TYPE} -> [bool]@L")
    e1, e2 = parse_term(LEFT), parse_term(RIGHT)
    M = parse_term(WITNESS)
    lines = [
        f"poset: {P}",
        f"type:  {show_type(t)}",
        f"e1' = {show(e1)}",
        f"e2' = {show(e2)}",
        "",
        f"STLC witness at {show_type(translate_type(arg))}:",
        f"M = {show(M)}",
        f"realize(M) = {show(realize(P, {}, {}, M, arg))}",
        "",
    ]
    for obs in (frozenset(), frozenset({"L"})):
        label = "{" + ",".join(sorted(obs)) + "}"
        lines.append(f"lr at {label}: {lr_dc(P, obs, e1, e2, t)}")
    lines += [
        "",
        "note: relatedness of the corresponding DCC terms is not rechecked here;",
        "only the sealing-calculus side of the pair is decided.",
    ]
    return "\n".join(lines) + "\n"
