"""Truncated graded rings: dimensions, products and nilpotency degree by degree."""

from orbitcoh.graded_rings import (
    compute_basis,
    integral_homology_lens,
    lens_mod2,
    nilpotency_order,
    parse_presentation,
    poincare,
)

# mod-2 cohomology of L_4^7: an exterior class v in degree 1 times a truncated
# polynomial on w in degree 2; the cap is raised so w^4 can be formed
lens = lens_mod2(4, cap=9)
print(lens)
print("dims:", poincare(lens))
print("integral homology of L_4^7:", integral_homology_lens(4, 4))

ring = compute_basis(lens)
v, w = ring.gen("v"), ring.gen("w")
print("v*w^3 =", v * w**3, " w^4 =", w**4)
print("v squares to zero:", (v * v).is_zero())

# a ring from text; x^3 = x^2 y is the binomial relation
fam = parse_presentation("ring F2[x:1,y:1,z:4]/(x^4, y^2, z^3, x^3 + x^2*y) cap 11")
print(fam)
print("dims:", poincare(fam))
print("x is nilpotent of order", nilpotency_order(compute_basis(fam).gen("x")))
