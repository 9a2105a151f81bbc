"""Construction sequences: unique readability and uniformity.

A construction sequence nests word levels, each built by the circular
operator from tuples of previous-level words.  Strong uniformity (each
child appearing equally often in each parent) gives exactly equal
cylinder proportions, the engine behind unique ergodicity.
"""

from circlesys import (build_sequence, check_unique_readability,
                       derive_params, estimate_cylinder, in_S_window,
                       verify_uniformity)

params = derive_params([2, 2], [4, 4], [2, 2, 4])
cs = build_sequence(2, params, [[(0, 1), (1, 0)], [(0, 1), (1, 0)]])

print("levels:", [(len(lv), len(lv[0])) for lv in cs.levels])
print("stage-2 readability violations:", check_unique_readability(cs, 2))

for n in (0, 1):
    rep = verify_uniformity(cs, n)
    print("stage %d -> %d: strong=%s f=%s densities=%s"
          % (n, n + 1, rep.strong, rep.f_value, rep.densities))

est = estimate_cylinder(cs, 0, 1, 1)
print("cylinder proportions:", est.proportions, "gap:", est.gap)

# growth certificate: a window of a genuine orbit parses at every stage
window = tuple(cs.levels[2][0])
cert = in_S_window(window, cs, 9)
print("S-window witnesses:", cert.witnesses)

# an all-spacer window is refused at stage 1 already
from circlesys.words import B
print("all-b window fails at stage:",
      in_S_window((B,) * 12, cs, 3).failed_stage)
