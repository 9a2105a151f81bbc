"""The rotation factor of a circular system.

A coherent offset tuple (r_0, ..., r_N) pins a point of the system; the
rescaled positions rho_n = (p_n r_n mod q_n)/q_n increase to the angle
of the underlying rotation.  Shifting the point advances every rho_n by
alpha_n exactly, until a word boundary is crossed.
"""

from circlesys import (SymbolicPoint, derive_params, enumerate_coherent,
                       rho_trace, shift_point)

params = derive_params([2, 2], [4, 4], [2, 2, 4])

pt = SymbolicPoint(params, (0, 1, 9))
tr = rho_trace(pt)
print("offsets:", pt.offsets)
print("rho:", tr.rhos)
print("gaps:", tr.gaps, "(each below 1/q_n)")

nxt = shift_point(pt)
print("shifted offsets:", nxt.offsets)
print("rho advance:", [b - a for a, b in zip(tr.rhos, rho_trace(nxt).rhos)])

pts = list(enumerate_coherent(params, 2))
print("coherent depth-2 points:", len(pts))
