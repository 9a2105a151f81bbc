"""Smooth area-preserving realization of grid permutations.

Any cell permutation factors into adjacent transpositions along the
boustrophedon path; each transposition is realized by a smooth twist of
a disk hidden inside the cell pair (unit Jacobian everywhere, exact
identity near the pair boundary).  Composing them gives a map obeying
the permutation off a small exceptional set.
"""

import numpy as np

from circlesys import (derive_params, h_from_words, map_distance,
                       perm_to_swaps, realize_perm, sample_jacobian,
                       stage_map)
from circlesys.smoothreal import StandardSwap

rng = np.random.default_rng(0)

sigma = [int(v) for v in rng.permutation(16)]
print("target permutation:", sigma)
print("adjacent swaps needed:", len(perm_to_swaps(sigma)))

rep = realize_perm(sigma, (4, 4), eps=0.1, seed=1, samples=50000)
print("obedient fraction: %.4f (budget eps = 0.1)" % rep.obedient)

sw = StandardSwap(0.05)
dets = sample_jacobian(sw, sw.smooth_samples(rng, 2000))
print("max |Jacobian - 1| on smooth samples: %.2e"
      % float(np.max(np.abs(np.abs(dets) - 1))))

# the conjugated rotations S_n = H R H^{-1} approach each other as l grows
pts = rng.random((2000, 2))
W1, W2 = [(0, 1), (1, 0)], [(0, 1), (1, 0), (0, 1), (1, 0)]
for l1 in (4, 64):
    params = derive_params([2, 2], [l1, 4], [2, 2, 4])
    g1 = h_from_words(params, 0, W1)
    g2 = h_from_words(params, 1, W2)
    S1, _ = stage_map(params, [g1], eps=0.02, seed=5)
    S2, _ = stage_map(params, [g1, g2], eps=0.02, seed=5)
    print("l_1 = %2d: mean distance S_1 to S_2 = %.5f"
          % (l1, map_distance(S1, S2, pts)[0]))
