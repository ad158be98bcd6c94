"""Sealing, unsealing, and what an observer is allowed to open."""
from sealtc.dc import normalize_dc, reduction_sequence, typecheck_dc
from sealtc.errors import UnauthorizedUnseal
from sealtc.grammar import parse_term, show, show_type
from sealtc.levels import make_poset

chain = make_poset(["L", "H"], [("L", "H")])
flat = make_poset(["L", "H"])

# Re-sealing low data at a higher level is fine even for an observer with no
# authority: inside seal@H the observer temporarily holds H, and L is below H.
relabel = parse_term(
    r"\x:[bool]@L. seal@H (case unseal@L x of y => i1 (seal@H y) | z => i2 (seal@H z))")
t, _ = typecheck_dc(chain, {}, set(), relabel)
print("on the chain:", show_type(t))

# Without the order between L and H the same program is rejected.
try:
    typecheck_dc(flat, {}, set(), relabel)
except UnauthorizedUnseal as err:
    print("on the flat poset:", err)

# Reduction is full, so redexes under binders and seals are contracted too.
e = parse_term(r"\x:unit. seal@H (unseal@L (seal@L ((\y:unit. y) x)))")
for step in reduction_sequence(e):
    print("  ", show(step))
print("normal form:", show(normalize_dc(e)))
