# # Characteristic elements and the case l = 2
#
# At l = 2 a skewsymmetric pairing need not alternate.  Whether it does is
# decided by how the form behaves on the complement of the fixed sublattice,
# and characteristic vectors give a sufficient condition that is easy to
# test: a characteristic w (x.x = x.w mod 2 for all x) that S fixes, or that
# some odd power of S fixes.

# %%
from torsform import analyze, validate
from torsform.criteria import (
    characteristic_base,
    charpoly,
    find_invariant_characteristic,
    find_odd_period_characteristic,
    h0_evenness,
    odd_cyclotomic_period,
    symmetrize_characteristic,
)

I3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
CYCLE = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]

# ## The base solution
#
# w0 solves G w0 = diag(G) mod 2.  It is zero exactly for even forms.

# %%
print(characteristic_base(validate(2, [[0, 1], [1, 0]], [[-1, 0], [0, -1]])))
print(characteristic_base(validate(2, [[1, 0], [0, 1]], [[0, -1], [1, 0]])))

# ## A permutation of I_3
#
# (1, 1, 1) is characteristic for I_3 and fixed by the 3-cycle, so the
# invariant search succeeds.  The characteristic polynomial is x^3 - 1, so the
# odd period is 3.

# %%
L = validate(2, I3, CYCLE, name="i3-cycle")
print("charpoly (constant term first):", charpoly(CYCLE))
print("odd period:", odd_cyclotomic_period(CYCLE))
print("invariant witness:", find_invariant_characteristic(L))
w, n = find_odd_period_characteristic(L)
print("odd-period witness:", w, "n =", n)
print("symmetrized:", symmetrize_characteristic(L, w, n))

# The criterion on the complement of the fixed sublattice agrees with the
# computed pairing.

# %%
report = analyze(L)
print("H0 even:", h0_evenness(L), " alternating:", report.verdicts["alternating"])

# ## No witness
#
# Adding a -1 on an odd summand destroys every candidate: the last coordinate
# of a characteristic vector must be odd, and neither S nor S^3 fixes it.

# %%
G = [[int(i == j) for j in range(4)] for i in range(4)]
S = [[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1]]
L = validate(2, G, S, name="i4-cycle-minus")
report = analyze(L)
print(report.criteria)
print(report.verdicts)
