"""Full search over differential patterns, and what it leaves standing."""

from orbitcoh.graded_rings import lens_mod2, real_projective, sphere
from orbitcoh.scenario_search import classify, replay_paper_case

for fiber in (sphere(3), real_projective(5), lens_mod2(3), lens_mod2(6)):
    rep = classify(fiber)
    print(fiber)
    for sc in rep.scenarios:
        if sc.survived:
            fams = ", ".join(c.name for c in sc.matches) or "no listed algebra"
            print(f"  survived  {sc.label}: totals {sc.totals}, x-nil {sc.nilpotency} -> {fams}")
        else:
            print(f"  pruned    {sc.label}: {sc.reason}")

# the d_2 = 0 survivor for even m has x^3 = 0; S^1 x CP^(m-1) with the
# involution on the second factor has exactly this cohomology
print()
c2 = replay_paper_case("c", 2)
print("case c at m=2:", c2.status, [(s.label, s.status) for s in c2.scenarios])
