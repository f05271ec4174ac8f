"""Invariant suite run by ``tnfactor selftest``."""

from __future__ import annotations

import random
from fractions import Fraction

from .factorizations import (
    bidiagonal_decomposition_S,
    hadamard_power_decomposition,
    min_matrix_lu,
    neville_elimination_generic,
    neville_intermediates_S,
    vandermonde_bidiagonal,
    verify_certificate,
    lu_certificate,
    NevilleBreakdown,
)
from .generators import gen_min_matrix, gen_S, gen_S_hadamard_int, gen_vandermonde
from .positivity import check_tn, rank_of_hadamard_power
from .sampling import random_grid_params, random_rational_grid


def run_selftest(seed: int = 20240101, grids: int = 25, max_n: int = 6) -> dict:
    rng = random.Random(seed)
    failures: list[str] = []
    counts: dict[str, int] = {}

    def check(name: str, ok: bool, context: str):
        counts[name] = counts.get(name, 0) + 1
        if not ok:
            failures.append(f"{name}: {context}")

    for _ in range(grids):
        n = rng.randint(2, max_n)
        p = random_grid_params(rng, n, bound=20)
        ctx = str(p.to_dict())
        S = gen_S(p)
        cert = bidiagonal_decomposition_S(p)
        check("bidiagonal reconstructs S", verify_certificate(cert, S).status == "exact-equal", ctx)
        check("bidiagonal factors nonnegative", all(v >= 0 for v in cert.parameters()), ctx)
        check("LU display form", verify_certificate(lu_certificate(p), S).ok, ctx)
        neville_intermediates_S(p)  # raises on failure
        counts["intermediate identities"] = counts.get("intermediate identities", 0) + 1
        for m in range(1, n):
            hc = hadamard_power_decomposition(p, m)
            check("Hadamard power reconstructs", verify_certificate(hc, gen_S_hadamard_int(p, m)).status == "exact-equal", f"{ctx} m={m}")
            check("Hadamard factors nonnegative", all(v >= 0 for v in hc.parameters()), f"{ctx} m={m}")
        for m in range(0, n - 1):
            check("rank law", rank_of_hadamard_power(p, m) == m + 1, f"{ctx} m={m}")
        vc = vandermonde_bidiagonal(p.x)
        check("Vandermonde reconstructs", verify_certificate(vc, gen_vandermonde(p.x)).status == "exact-equal", ctx)
        mu = random_rational_grid(rng, n, bound=20)
        mc = min_matrix_lu(mu)
        check("min matrix reconstructs", verify_certificate(mc, gen_min_matrix(mu)).status == "exact-equal", ctx)
        if n <= 5:
            check("S is TN", check_tn(S).holds, ctx)
        try:
            nc = neville_elimination_generic(S)
            check("Neville product", verify_certificate(nc, S).status == "exact-equal", ctx)
        except NevilleBreakdown:
            counts["Neville breakdowns"] = counts.get("Neville breakdowns", 0) + 1

    return {"seed": seed, "grids": grids, "checks": counts, "failures": failures, "passed": not failures}
