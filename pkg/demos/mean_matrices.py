"""
Matrices of means
=================

Reciprocal arithmetic, harmonic, Heinz and binomial mean matrices on a
small grid, with their TP / TN verdicts.
"""

# %%
from fractions import Fraction

from tnfactor import MeanKind, MeanSpec, check_mean_matrices, check_tp, gen_mean

lam = (1, 2, 3, 4)
print(gen_mean(MeanKind.HARMONIC, lam, 1))

# %%
for row in check_mean_matrices(lam, 1.5):
    print(f"{row.spec.label():32s} expected {row.expected.value}  "
          f"TP {row.tp.verdict.value:6s} TN {row.tn.verdict.value:6s} agrees={row.agrees}")

# %%
# Heinz with nu = 3/10 is totally positive, but its full determinant is
# tiny next to its entries; in binary64 it falls inside the 1e-10 band.
a = gen_mean(MeanSpec(MeanKind.HEINZ_RECIPROCAL, nu=Fraction(3, 10)), lam, 1.0)

print(check_tp(a, 4, "float").to_dict())
