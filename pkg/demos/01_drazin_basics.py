"""
Drazin inverses with the reference oracle
=========================================

The oracle computes A^d by iterating full-rank factorizations, in exact
complex-rational arithmetic. Here we look at a matrix with an invertible
core and a nilpotent tail, then at Cline's transport across a factor swap.
"""

from gdrazin import Matrix, drazin
from gdrazin.matrix import inverse
from gdrazin.oracle import cline_transport, group_inverse, satisfies_axioms

# core [[2, 1], [0, 3]] and a nilpotent Jordan block of size 2, mixed by a
# unimodular change of basis
core_nil = Matrix.from_rows([[2, 1, 0, 0],
                             [0, 3, 0, 0],
                             [0, 0, 0, 1],
                             [0, 0, 0, 0]])
s = Matrix.from_rows([[1, 0, 0, 0], [1, 1, 0, 0], [0, 2, 1, 0], [1, 0, -1, 1]])
a = s @ core_nil @ inverse(s)
print("A =", a)

d = drazin(a)
print("index:", d.index)
print("A^d =", d.inverse)
print("A^pi = I - A A^d =", d.projector)

# the three axioms hold exactly, no tolerances involved
x = d.inverse
print("x A x == x:", x @ a @ x == x)
print("A x == x A:", a @ x == x @ a)
print("(A - A^2 x)^index == 0:", (a - a @ a @ x) ** d.index == Matrix.zeros(4))
print("satisfies_axioms:", satisfies_axioms(a, x, d.index))

# index <= 1 means the group inverse exists
b = Matrix.from_rows([[1, 1], [1, 1]])
print("group inverse of [[1, 1], [1, 1]]:", group_inverse(b))

# Cline: (ba)^d = b ((ab)^d)^2 a, also for rectangular factors
f = Matrix.from_rows([[1, 2, 0], [0, 1, "1/2"]])
g = Matrix.from_rows([[1, 0], [2, 1], [0, "1+i"]])
fg_d = drazin(f @ g).inverse
gf_d = cline_transport(f, g, fg_d)
print("(gf)^d via Cline equals oracle:", gf_d == drazin(g @ f).inverse)
