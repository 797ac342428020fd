"""Turning pages of the spectral sequence for the lens fibre by hand.

The three d_2 patterns on the degree-one and degree-two generators are
replayed one at a time; an impossible pattern raises with a witness.
"""

from orbitcoh.errors import IllDefined, NotSquareZero
from orbitcoh.graded_rings import lens_mod2
from orbitcoh.spectral import DifferentialAssignment, build_E2, extend_leibniz, total_dims, turn_page


def grid(page, kshow=6):
    rows = []
    for l in range(page.window.lmax, -1, -1):
        rows.append(f"{l:>2} | " + " ".join(str(page.dim(k, l) or ".") for k in range(kshow)))
    return "\n".join(rows)


m = 6
e2 = build_E2(lens_mod2(m))
print("generators of E_2:", [g.label for g in e2.generators])

for name, images in [("a", (1, 0, 1)), ("b", (1, 0, 0)), ("c", (0, 0, 1))]:
    try:
        d = extend_leibniz(e2, DifferentialAssignment(2, images))
    except (IllDefined, NotSquareZero) as exc:
        print(f"case {name}: {type(exc).__name__}: {exc}")
        continue
    e3 = turn_page(e2, d)
    print(f"case {name}: E_3")
    print(grid(e3))
    if name == "b":
        print("totals:", total_dims(e3, 2 * m - 1))
