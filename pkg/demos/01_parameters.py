"""Derive the rational parameter tower from coefficient sequences.

p_{n+1} = p_n q_n k_n l_n + 1 and q_{n+1} = k_n l_n q_n^2 drive the
whole construction; the convergents p_n/q_n approach the limit rotation
number from below with gaps of exactly 1/q_{n+1}.
"""

from circlesys import derive_params, dyn_order

params = derive_params(k=[2, 2], l=[4, 4], s=[2, 2, 4])
print("p:", params.p)
print("q:", params.q)
for n in range(len(params.q)):
    print("alpha_%d = %s" % (n, params.alpha(n)))

# the dynamical ordering at stage 2: geometric column i is visited at
# step j_i = p^{-1} i mod q of the rotation orbit
order = dyn_order(params, 2)
print("j_1 =", order[1], " j_511 =", order[511], "(their sum is q = 512)")
