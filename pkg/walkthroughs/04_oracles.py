# # Independent cross-checks
#
# Each main-path computation has a second route that shares no code with it:
# elementary divisors from gcds of minors, pairing values from random rational
# solutions of (I - S)v = t, and nondegeneracy by listing the whole group.

# %%
import random

from torsform import coinvariants, smith_form, validate
from torsform.analysis import run_analysis
from torsform.corpus import InstanceSpec, build_instance
from torsform.oracle import BoundExceeded, OracleConfig, exhaustive_nondegeneracy, resample_instance, snf_oracle

# ## Smith form two ways

# %%
rng = random.Random(1)
M = [[rng.randint(-9, 9) for _ in range(5)] for _ in range(4)]
print(smith_form(M, 5).diagonal, snf_oracle(M))

# ## Resampling the pairing
#
# Every trial moves both classes by random elements of (1 - S)H and picks a
# different rational witness, then compares with the main path.

# %%
L = build_instance(InstanceSpec("E8+U^2", 5, "torsion:6", seed=99))
d = coinvariants(L)
print("torsion exponents at 5:", d.torsion_exponents)
print("resampling agrees:", resample_instance(L, d, OracleConfig(trials=200, seed=3)))

# ## Listing the group

# %%
a = run_analysis(L)
print("Smith decider:", a.verdicts.nondegenerate,
      " enumeration:", exhaustive_nondegeneracy(a.matrix, L.prime, OracleConfig()))

big = validate(2, [[int(i == j) for j in range(22)] for i in range(22)], [[-int(i == j) for j in range(22)] for i in range(22)])
try:
    exhaustive_nondegeneracy(run_analysis(big).matrix, 2, OracleConfig(enumeration_bound=2**16))
except BoundExceeded as exc:
    print("skipped:", exc)
