"""Tower names computed two independent ways.

The simulated route reads partition labels along a tower of the grid
process.  The symbolic route takes the circular product of the child
names.  They must agree letter for letter; the crosscheck raises on the
first mismatch.
"""

from circlesys import (compose_stage, crosscheck_tower, derive_params,
                       distinct_names, h_from_words, initial_process,
                       name_stability, simulate_tower_name, word_to_text)

params = derive_params([2, 2], [4, 4], [2, 2, 4])
W1 = [(0, 1), (1, 0)]
W2 = [(0, 1), (1, 0), (0, 1), (1, 0)]

p0 = initial_process(params)
h1 = h_from_words(params, 0, W1)
p1 = compose_stage(p0, h1)
h2 = h_from_words(params, 1, W2)
p2 = compose_stage(p1, h2)

name = simulate_tower_name(p1, 0)
print("tower 0, stage 1:", word_to_text(tuple(int(x) for x in name)))

for s in range(4):
    crosscheck_tower(p2, p1, h2, s)
print("all stage-2 tower names match their circular products")

rep = name_stability(p1, p2)
print("stability: %s of atoms keep their [-q, q] name (bound %s)"
      % (rep.fraction, rep.bound))

dup = distinct_names(p2)
print("distinct names:", dup.distinct, "- duplicated tuples leave towers",
      dup.witness, "with identical names")
