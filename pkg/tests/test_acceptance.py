"""Acceptance run: one PASS/FAIL line per criterion.

Run with ``pytest -v tests/test_acceptance.py`` or ``python -m tests.test_acceptance``.
Grids are drawn from a fixed seed so every run sees the same inputs.
"""

import math
import random
import sys
import time
from fractions import Fraction as F

import numpy as np

from tnfactor import (
    GridParams,
    Matrix,
    MeanKind,
    MeanSpec,
    PSDVerdict,
    Verdict,
    bidiagonal_decomposition_S,
    binomial_diagonal,
    check_tn,
    check_tp,
    gen_mean,
    gen_min_matrix,
    gen_S,
    gen_S_hadamard_int,
    gen_S_hadamard_real,
    hadamard_power_decomposition,
    is_psd_float,
    lu_certificate,
    min_matrix_lu,
    rank_exact,
    verify_certificate,
)
from tnfactor.sampling import random_grid_params, random_rational_grid, spread_grid_params

from .oracles import naive_verdict

SEED = 20240101
TOL = 1e-10
# criterion number -> result line, printed by the conftest summary hook
LINES = {}


def report(number, ok, elapsed, budget, detail):
    in_time = budget is None or elapsed < budget
    status = "PASS" if ok and in_time else "FAIL"
    timing = f"{elapsed:.2f}s" + (f" (budget {budget:g}s)" if budget else "")
    line = f"CRITERION {number:>2}: {status}  [{timing}]  {detail}"
    LINES[number] = line
    print(line)
    return ok and in_time


def criterion1_grids():
    rng = random.Random(SEED)
    return [random_grid_params(rng, 2 + i % 6) for i in range(200)]


GRIDS = criterion1_grids()


def test_criterion_01_bidiagonal_reconstruction():
    t0 = time.perf_counter()
    bad = [p for p in GRIDS if verify_certificate(bidiagonal_decomposition_S(p), gen_S(p)).status != "exact-equal"]
    ok = report(1, not bad, time.perf_counter() - t0, 10,
                f"{len(GRIDS) - len(bad)}/{len(GRIDS)} certificates reconstruct S exactly")
    assert ok, bad[:3]


def test_criterion_02_hadamard_reconstruction():
    t0 = time.perf_counter()
    checked, bad = 0, []
    for p in GRIDS:
        for m in range(1, p.n):
            cert = hadamard_power_decomposition(p, m)
            d = next(f for f in cert.factors if f.form == "diag").diag
            want_d = [F(1)] + [F(math.comb(m, k)) for k in range(1, m)] + [F(1)] + [F(0)] * (p.n - m - 1)
            checked += 1
            if list(d) != want_d or list(d) != binomial_diagonal(m, p.n) \
                    or verify_certificate(cert, gen_S_hadamard_int(p, m)).status != "exact-equal":
                bad.append((p, m))
    ok = report(2, not bad, time.perf_counter() - t0, 30,
                f"{checked - len(bad)}/{checked} (grid, m) pairs reconstruct with the binomial diagonal")
    assert ok, bad[:3]


def test_criterion_03_lu_display_form():
    t0 = time.perf_counter()
    worst, bad = 0.0, []
    for p in GRIDS:
        rep = verify_certificate(lu_certificate(p), gen_S(p))
        worst = max(worst, rep.max_rel_deviation or 0.0)
        if not (rep.details["squared_form"] == "exact-equal" and rep.max_rel_deviation <= 1e-12):
            bad.append(p)
    ok = report(3, not bad, time.perf_counter() - t0, None,
                f"squared form exact on {len(GRIDS) - len(bad)}/{len(GRIDS)} grids; worst float rel. deviation {worst:.2e} (limit 1e-12)")
    assert ok, bad[:3]


def test_criterion_04_golden_vector():
    t0 = time.perf_counter()
    n = 5
    cert = bidiagonal_decomposition_S(GridParams.symmetric(range(1, n + 1)))
    lows = [f.value for f in cert.factors if f.form == "elem-lower"]
    ups = [f.value for f in cert.factors if f.form == "elem-upper"]
    diag = next(f for f in cert.factors if f.form == "diag").diag
    first = [F(i + 1, i) for i in range(n, 1, -1)]   # 6/5 .. 3/2
    second = [F(j - 1, j) for j in range(n, 2, -1)]  # 4/5 .. 2/3
    ok = (
        lows == first + second
        and ups == list(reversed(second)) + list(reversed(first))
        and list(diag) == [2, F(1, 2), 0, 0, 0]
        and cert.product() == Matrix([[1 + i * j for j in range(1, n + 1)] for i in range(1, n + 1)])
    )
    shown = ", ".join(str(v) for v in lows)
    ok = report(4, ok, time.perf_counter() - t0, None, f"lower parameters [{shown}], D = diag(2, 1/2, 0, 0, 0)")
    assert ok


def test_criterion_05_rank_law():
    t0 = time.perf_counter()
    rng = random.Random(SEED + 5)
    checked, bad = 0, []
    for i in range(50):
        p = random_grid_params(rng, 3 + i % 5)
        for m in range(p.n - 1):
            checked += 1
            if rank_exact(gen_S_hadamard_int(p, m)) != m + 1:
                bad.append((p, m))
    ok = report(5, not bad, time.perf_counter() - t0, 20, f"rank = m + 1 for {checked - len(bad)}/{checked} (grid, m) pairs")
    assert ok, bad[:3]


def test_criterion_06_threshold():
    t0 = time.perf_counter()
    rng = random.Random(SEED + 6)
    samples, bad = 0, []
    for n in (3, 4):
        tp_rs = [n - 2 + 0.25, n - 2 + 1.0]
        tn_rs = sorted({r for r in (0.5, n - 2 - 0.5) if r > 0 and not float(r).is_integer()})
        for _ in range(20):
            p = spread_grid_params(rng, n)
            for r in tp_rs:
                v = check_tp(gen_S_hadamard_real(p, r), n, "float", TOL)
                samples += 1
                if not (v.holds and v.indeterminate_count == 0):
                    bad.append(("TP", n, r, v.to_dict()))
            for r in tn_rs:
                v = check_tn(gen_S_hadamard_real(p, r), n, "float", TOL)
                samples += 1
                if not (v.verdict is Verdict.FAILS and v.witness.reason == "negative" and v.indeterminate_count == 0):
                    bad.append(("TN", n, r, v.to_dict()))
    ok = report(6, not bad, time.perf_counter() - t0, 30,
                f"{samples - len(bad)}/{samples} samples as expected with zero indeterminate minors (tol {TOL:g})")
    assert ok, bad[:3]


def test_criterion_07_psd_boundary():
    t0 = time.perf_counter()
    p = GridParams.symmetric((1, 2, 3))
    got = {r: is_psd_float(gen_S_hadamard_real(p, r)) for r in (1.0, 2.0, 0.5)}
    ok = got[1.0] is PSDVerdict.PSD and got[2.0] is PSDVerdict.PSD and got[0.5] is PSDVerdict.NOT_PSD
    shown = ", ".join(f"r={r:g}: {v.value}" for r, v in got.items())
    ok = report(7, ok, time.perf_counter() - t0, 1, shown)
    assert ok


def test_criterion_08_mean_matrices():
    t0 = time.perf_counter()
    lam = (1, 2, 3, 4)
    tp_specs = [MeanSpec(MeanKind.ARITHMETIC_RECIPROCAL), MeanSpec(MeanKind.HARMONIC)]
    tp_specs += [MeanSpec(MeanKind.HEINZ_RECIPROCAL, nu=nu) for nu in (F(0), F(3, 10), F(1))]
    tp_specs += [MeanSpec(MeanKind.BINOMIAL, alpha=a) for a in (F(1, 2), F(1), F(3))]
    tp_specs += [MeanSpec(MeanKind.BINOMIAL, alpha=-a) for a in (F(1, 2), F(1), F(3))]
    tn_specs = [MeanSpec(MeanKind.HEINZ_RECIPROCAL, nu=F(1, 2))]
    tn_specs += [MeanSpec(MeanKind.BINOMIAL, alpha=a) for a in (F(0), math.inf, -math.inf)]
    total, bad = 0, []
    for r in (0.5, 1.0, 2.0, 3.7):
        for spec in tp_specs + tn_specs:
            a = gen_mean(spec, lam, r).to_float()
            tp = check_tp(a, 4, "float", TOL)
            tn = check_tn(a, 4, "float", TOL)
            ok = tp.holds if spec in tp_specs else tn.holds and not tp.holds
            total += 1
            if not ok:
                w = tp.witness
                bad.append(f"{spec.label()} r={r:g}: TP_4 {tp.verdict.value} ({w.reason}, minor {w.value:.3g})")
    detail = f"{total - len(bad)}/{total} (family, r) cases as expected"
    if bad:
        detail += "; failing: " + "; ".join(bad)
    ok = report(8, not bad, time.perf_counter() - t0, 30, detail)
    assert ok, bad


def test_criterion_09_min_matrix():
    t0 = time.perf_counter()
    rng = random.Random(SEED + 9)
    grids = [(F(1), F(2), F(3))] + [random_rational_grid(rng, rng.randint(3, 7)) for _ in range(20)]
    bad = []
    for mu in grids:
        cert = min_matrix_lu(mu)
        if verify_certificate(cert, gen_min_matrix(mu)).status != "exact-equal" or not check_tn(cert.product(), 3).holds:
            bad.append(mu)
    ok = report(9, not bad, time.perf_counter() - t0, 5,
                f"{len(grids) - len(bad)}/{len(grids)} grids reconstruct exactly with TN_3 HOLDS (exact)")
    assert ok, bad[:3]


def _random_exact_matrix(rng, n):
    kind = rng.randrange(3)
    if kind == 0:  # arbitrary signs
        return [[F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)] for _ in range(n)]
    if kind == 1:  # positive entries
        return [[F(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(n)] for _ in range(n)]
    # product of nonnegative bidiagonal factors: TN, often TP
    a = [[F(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(2 * n):
        lo = [[F(int(i == j)) * rng.randint(1, 3) for j in range(n)] for i in range(n)]
        for i in range(1, n):
            lo[i][i - 1] = F(rng.randint(0, 3))
        a = [[sum(a[i][k] * lo[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        a = [list(col) for col in zip(*a)]
    return a


def test_criterion_10_oracle_agreement():
    t0 = time.perf_counter()
    rng = random.Random(SEED + 10)
    bad, holds = [], 0
    for _ in range(100):
        rows = _random_exact_matrix(rng, rng.randint(1, 5))
        a = Matrix(rows, "exact")
        for strict, fn in ((True, check_tp), (False, check_tn)):
            want, where = naive_verdict(rows, a.rows, strict)
            got = fn(a)
            holds += got.holds
            same_witness = want or (got.witness.spec.row_indices, got.witness.spec.col_indices) == where
            if got.holds != want or not same_witness:
                bad.append(rows)
    ok = report(10, not bad, time.perf_counter() - t0, 20,
                f"{200 - len(bad)}/200 verdicts (100 matrices x TP/TN) match the cofactor enumerator; {holds} HOLDS")
    assert ok, bad[:3]


def test_criterion_11_factor_nonnegativity():
    t0 = time.perf_counter()
    certs, bad = 0, []
    for p in GRIDS:
        for cert in [bidiagonal_decomposition_S(p)] + [hadamard_power_decomposition(p, m) for m in range(1, p.n)]:
            certs += 1
            if any(v < 0 for v in cert.parameters()):
                bad.append(p)
    ok = report(11, not bad, time.perf_counter() - t0, None,
                f"all parameters >= 0 in {certs - len(bad)}/{certs} certificates")
    assert ok, bad[:3]


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
