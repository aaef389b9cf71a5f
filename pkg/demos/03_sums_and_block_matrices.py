"""
Sums a + b and 2x2 block matrices
=================================

A sum factors as (I, b) col(a, I), so (a + b)^d follows from an
anti-triangular matrix of twice the size. Block matrices [[A, B], [C, D]]
are split as P + Q and fed to the additive routes.
"""

from gdrazin import GenConfig, drazin, generate_instance
from gdrazin.formulas import (additive_d, additive_series_L21, operator_matrix_d,
                              pq_block_formula)
from gdrazin.formulas.operator import block_matrix, split

# the plain two-series case ab = 0
a, b = generate_instance(GenConfig("H21", 4, seed=3)).mats
print("ab == 0:", (a @ b).is_zero())
print("L2.1 equals oracle:", additive_series_L21(a, b).inverse == drazin(a + b).inverse)

for route, hid in (("T3.1", "H31"), ("C3.2", "H32"), ("T3.3", "H33"), ("C3.5", "H35")):
    a, b = generate_instance(GenConfig(hid, 3, seed=5)).mats
    res = additive_d(a, b, route)
    print(f"{route}: (a+b)^d matches oracle {res.inverse == drazin(a + b).inverse}")

# block matrices; PQ has its Drazin inverse in closed form from (BC)^d
A, B, C, D = generate_instance(GenConfig("H41", 2, seed=9)).mats
m = block_matrix(A, B, C, D)
print("M =", m)
p, q = split(A, B, C, D, "T4.1")
pqd, pqpi = pq_block_formula(A, B, C, D)
print("(PQ)^d closed form equals oracle:", pqd == drazin(p @ q).inverse)
res = operator_matrix_d(A, B, C, D, "T4.1")
print("T4.1 equals oracle:", res.inverse == drazin(m).inverse)
print("oracle calls:", res.oracle_steps())
