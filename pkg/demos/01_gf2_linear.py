"""Linear algebra over GF(2) with rows packed into Python ints.

Column j of a row is bit j.  Everything the spectral machinery needs is a
kernel, an image and a quotient of one by the other.
"""

from orbitcoh.f2_linear import BitMatrix, Quotient, image, kernel, rank

# the boundary map of a triangle: rows are vertices, columns are edges
boundary = BitMatrix.from_strings(["110", "011", "101"])
print("rank over GF(2):", rank(boundary))  # 2, the rows sum to zero

# edge combinations with zero boundary form the cycle space
cycles = kernel(boundary)
print("kernel dimension:", cycles.dim, "basis", [f"{v:03b}"[::-1] for v in cycles.basis])

# H = ker / im for a two-step complex whose second map is zero
zero_in = image(BitMatrix.zeros(3, 3))
h = Quotient(zero_in, cycles)
print("homology dimension:", h.dim)
