"""Deciding indistinguishability at an observer level."""
from sealtc.equivalence import ctx_equiv_test, lr_dc, noninterference_check, reps_dc
from sealtc.grammar import parse_term, parse_type, show
from sealtc.levels import make_poset

P = make_poset(["L", "H"], [("L", "H")])
yes, no = parse_term("seal@H (i1 ())"), parse_term("seal@H (i2 ())")
secret = parse_type("[bool]@H")

for obs in ({"L"}, {"H"}):
    print(f"at {sorted(obs)}: logical relation says {lr_dc(P, obs, yes, no, secret)}")
    print(f"at {sorted(obs)}: searching contexts says {ctx_equiv_test(P, obs, yes, no, secret)}")

# One representative per class is enough to decide function equivalence.
for rep in reps_dc(P, parse_type("bool -> bool"), {"L"}).reps:
    print("  class of", show(rep))

# Low-visible results cannot depend on the secret.
e = parse_term("seal@H (case unseal@H x of _ => i2 () | _ => i1 ())")
print("noninterference:", noninterference_check(P, {"x": secret}, {"L"}, e))
