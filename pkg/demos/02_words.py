"""The circular operator and its word combinatorics.

Applying the operator to child words interleaves l-1 copies with b/e
spacers whose lengths follow the dynamical ordering.  The new word has
length k*l*q^2, exactly 1/l of it spacers.
"""

from circlesys import (boundary_stats, circ, decode_position, derive_params,
                       dyn_order, word_to_text)
from circlesys.words import LazyCircularWord

params = derive_params([2, 2], [4, 4], [2, 2, 4])

w0 = circ([(0,), (1,)], k=2, l=4, q=1, order=dyn_order(params, 0))
w1 = circ([(1,), (0,)], k=2, l=4, q=1, order=dyn_order(params, 0))
print("stage-1 words:")
print(" ", word_to_text(w0))
print(" ", word_to_text(w1))

# stage 2 lazily: positions decode without materializing the word
lazy = LazyCircularWord([w0, w1], k=2, l=4, q=8, order=dyn_order(params, 1))
print("stage-2 length:", 2 * 4 * 8 * 8)
print("position 511 decodes to:", decode_position(lazy, 511))

stats = boundary_stats(lazy)
print("boundary fraction:", stats.boundary_fraction, "(= 1/l)")
print("within q of a boundary:", stats.near_fraction, "(<= 3/l)")
