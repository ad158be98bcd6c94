"""Small independent oracles shared by the unit tests."""
from sealtc.syntax import children, rebuild


def one_step_reducts(t, contract_fn):
    """Every term reachable by contracting exactly one redex, anywhere."""
    out = []
    r = contract_fn(t)
    if r is not None:
        out.append(r)
    kids = [c for c, _ in children(t)]
    for i, k in enumerate(kids):
        for r in one_step_reducts(k, contract_fn):
            out.append(rebuild(t, kids[:i] + [r] + kids[i + 1:]))
    return out


def all_normal_forms(t, contract_fn, limit=2000):
    """Normal forms reachable under every reduction order (breadth-first)."""
    seen, frontier, normal = {t}, [t], set()
    while frontier:
        nxt = []
        for u in frontier:
            rs = one_step_reducts(u, contract_fn)
            if not rs:
                normal.add(u)
            for r in rs:
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        if len(seen) > limit:
            return None
        frontier = nxt
    return normal
