"""
Integer Hadamard powers through Vandermonde factors
===================================================

``S^{∘m}`` splits as ``V_x D_m V_y^T`` with a binomial diagonal.  The
Vandermonde matrices themselves come out as products of bidiagonals.
"""

# %%
from tnfactor import (
    GridParams,
    binomial_diagonal,
    gen_S_hadamard_int,
    gen_vandermonde,
    hadamard_power_decomposition,
    rank_of_hadamard_power,
    vandermonde_bidiagonal,
)

x = (1, 2, 3, 5)
print(gen_vandermonde(x))
vc = vandermonde_bidiagonal(x)
print(len(vc.factors), "bidiagonal factors, product matches:", vc.product() == gen_vandermonde(x))

# %%
p = GridParams.symmetric(x)
for m in range(1, p.n):
    cert = hadamard_power_decomposition(p, m)
    print(m, binomial_diagonal(m, p.n), cert.product() == gen_S_hadamard_int(p, m))

# %%
# The rank grows by one with each power until it is full.
print([rank_of_hadamard_power(p, m) for m in range(p.n - 1)])
