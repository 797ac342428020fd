"""Rank profiles of the Gysin sequence of a double cover, then co-index bounds."""

from orbitcoh.cli import RunConfig, run
from orbitcoh.exact_sequences import GysinInstance, char_class_zero_composite, enumerate_exact_profiles
from orbitcoh.reconstruct import borsuk_bound, candidate_list, coindex

# orbit space and cover both with all-ones dims: a single profile, and v^2 = 0
inst = GysinInstance.of([1] * 6, [1] * 6)
(prof,) = enumerate_exact_profiles(inst)
print("eta", prof.eta, "transfer", prof.transfer, "cup v", prof.cup_v)
print("v^2:", char_class_zero_composite(prof, 1).value)

# totals with gaps admit no exact profile at all
print("profiles for (1,1,0,0,1,1,0,0):", enumerate_exact_profiles(GysinInstance.of([1, 1, 0, 0] * 2, [1] * 8)))

for c in candidate_list(6):
    ci = coindex(c)
    print(f"{c.name}: co-index {ci}, no equivariant map from S^{borsuk_bound(ci)}")

code, text = run(RunConfig("coindex", presentation="ring F2[x:1]/(x^6) cap 7"))
print(text)
