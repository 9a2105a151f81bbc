"""Periodic processes: towers, composition, and eps-approximation.

Each stage is a permutation Z_n of a finite grid, built by composing
relabelings h_m that commute with the previous rotation.  The stage-n
transformation Z_n R Z_n^{-1} cycles s_n towers of q_n levels; the next
stage approximates it off a set of measure 1/l_n.
"""

from circlesys import (compose_stage, check_requirements, derive_params,
                       eps_approx, h_from_words, initial_process,
                       rotation_perm)

params = derive_params([2, 2], [4, 4], [2, 2, 4])
W1 = [(0, 1), (1, 0)]
W2 = [(0, 1), (1, 0), (0, 1), (1, 0)]

p0 = initial_process(params)
h1 = h_from_words(params, 0, W1)
p1 = compose_stage(p0, h1)
h2 = h_from_words(params, 1, W2)
p2 = compose_stage(p1, h2)

print("stage-2 grid: %d x %d = %d atoms" % (p2.cols, p2.rows, p2.atoms))
print("towers:", len(p2.towers()), "of length", params.q[2])

rot = rotation_perm(params, 0, h1.cols, h1.rows)
print("h commutes with the previous rotation:",
      h1.compose(rot) == rot.compose(h1))

rep = eps_approx(p1, p2)
print("eps-approximation: eps=%s deleted=%d blocks=%d subordinate=%s"
      % (rep.eps, rep.deleted, rep.blocks, rep.subordinate))

req = check_requirements(params, [W1, W2])
print("requirements: 1=%s 2=%s 3=%s (duplicate witness %s)"
      % (req.req1, req.req2, req.req3, req.req3_witness))
