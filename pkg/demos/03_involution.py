"""The lifted involution on a lens space, checked exactly and on a whole grid.

A point of S^(2m-1) is recorded by the phase of each coordinate (or "zero" if
the coordinate vanishes).  The Z_p action rotates coordinate j by q_j/p; the
involution rotates by q_j/(2p), so its square is the generator of Z_p.
"""

import time

from orbitcoh.lens_geometry import (
    ActionParams,
    PhasePoint,
    alpha,
    alpha_power,
    grid_checks,
    odd_coprime_residues,
    orbit_equal,
    phase_grid,
    zp_act,
)

a = ActionParams(4, (1, 3))
pt = PhasePoint.of("1/5", "zero")
print("point", pt, "-> alpha", alpha(pt, a))
print("alpha^2 equals the Z_4 generator:", alpha_power(pt, 2, a) == zp_act(pt, 1, a))
print("alpha fixes the orbit of the point:", orbit_equal(alpha(pt, a), pt, a))

t0 = time.perf_counter()
grid = phase_grid(3, 48)
for q in [(1, 1, 1), (1, 3, 5), (3, 5, 7)]:
    rep = grid_checks(grid, ActionParams(8, q))
    print(f"p=8 q={q}: {rep.points} points, passed={rep.passed}")
print(f"grid checks took {time.perf_counter() - t0:.2f}s")
print("odd residues coprime to 6:", odd_coprime_residues(6))
