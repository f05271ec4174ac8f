"""
Bidiagonal factors of S = [1 + x_i y_j]
=======================================

Build the elementary bidiagonal factorization of ``S``, look at its
parameters, and check it against the matrix by exact multiplication.
"""

# %%
from fractions import Fraction

from tnfactor import GridParams, bidiagonal_decomposition_S, gen_S, neville_intermediates_S, verify_certificate

p = GridParams.symmetric(range(1, 6))
S = gen_S(p)
print(S)

# %%
# Lower factors first, then the diagonal, then the upper ones.  On the
# integer grid the multipliers are (i+1)/i and (j-1)/j.
cert = bidiagonal_decomposition_S(p)
for f in cert.factors:
    print(f.to_dict())

# %%
# Only two diagonal entries survive, so S has rank 2.
print(next(f for f in cert.factors if f.form == "diag").diag)
print(verify_certificate(cert, S).status)

# %%
# Same thing on an uneven rational grid.  Every parameter stays >= 0.
q = GridParams((Fraction(1, 3), 2, Fraction(7, 2), 9), (1, Fraction(3, 2), 4, 10))
cert = bidiagonal_decomposition_S(q)
print(min(cert.parameters()) >= 0, cert.product() == gen_S(q))

# %%
# The triangular intermediates behind the factorization.
inter = neville_intermediates_S(q)
print(inter.Y1)
print(inter.identities(gen_S(q)))
