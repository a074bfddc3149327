# # Torsion pairings on small lattices
#
# A lattice with isometry is a triple (l, G, S): a prime, a symmetric integer
# Gram matrix that is invertible at l, and an integer matrix S with
# S^T G S = G.  The l-primary torsion of H/(1 - S)H carries a pairing with
# values in Q_l/Z_l.  This script walks through the four smallest examples.

# %%
from fractions import Fraction

from torsform import analyze, coinvariants, pairing_value, validate
from torsform.pairing import TorsionClass

U = [[0, 1], [1, 0]]

# ## Rank one, S = -1
#
# I - S = 2, so the coinvariants are Z/2.  The class of e is killed by 2, and
# (1 - S)v = e has the solution v = e/2.  The pairing value is (e, e/2) = 1/2.

# %%
L = validate(2, [[1]], [[-1]], name="rank1-minus")
report = analyze(L)
print(report.torsion_exponents, report.pairing_matrix)
print(report.verdicts)

# The pairing is skewsymmetric (1/2 = -1/2 mod Z_2) but not alternating,
# and the group has order 2, which is not a square.

# ## The hyperbolic plane with S = -I
#
# Same torsion computation in each coordinate: (Z/2)^2.  The pairing matrix is
# G/2 reduced mod Z_2, so the diagonal vanishes and the form alternates.

# %%
L = validate(2, U, [[-1, 0], [0, -1]], name="u-minusI")
report = analyze(L)
for row in report.pairing_matrix:
    print(row)
print("alternating:", report.verdicts["alternating"], " square order:", report.verdicts["square_order"])

# The pairing can be evaluated on any pair of classes directly.

# %%
d = coinvariants(L)
e, f = TorsionClass((1, 0), 1), TorsionClass((0, 1), 1)
print(pairing_value(L, d, e, f), pairing_value(L, d, e, e))

# ## I_2 with a quarter turn
#
# Here I - S = [[1, 1], [-1, 1]] has Smith form diag(1, 2): one copy of Z/2.
# The witness for e1 is v = (1/2, 1/2), and (e1, v) = 1/2.

# %%
L = validate(2, [[1, 0], [0, 1]], [[0, -1], [1, 0]], name="i2-rot90")
report = analyze(L)
print(report.torsion_exponents, report.pairing_matrix, report.verdicts["alternating"])

# ## The swap on U
#
# I - S has rank one and unit elementary divisor, so there is no torsion at
# all, only a free summand of rank one.

# %%
L = validate(2, U, [[0, 1], [1, 0]], name="u-swap")
report = analyze(L)
print("free rank", report.free_rank, "torsion", report.torsion_exponents)

# ## An odd prime
#
# At l = 3 an order-three block on U^2 gives (Z/3)^2.  Skewsymmetric and
# alternating coincide away from 2, and the order is automatically a square.

# %%
from torsform.corpus import InstanceSpec, build_instance

L = build_instance(InstanceSpec("U^2", 3, "block:0,-1,1,-1"))
report = analyze(L)
print(report.torsion_exponents, report.pairing_matrix)
print(report.verdicts)
print(Fraction(1, 3) + Fraction(2, 3))  # the two off-diagonal values sum to an integer
