"""
Where real Hadamard powers of S stop being totally nonnegative
==============================================================

For a grid of size n, ``S^{∘r}`` is totally positive once ``r > n - 2``
and totally nonnegative only at the integers below that.  The scan samples
exponents and reports a witness minor whenever a check fails.
"""

# %%
import random

import numpy as np

from tnfactor import GridParams, gen_S_hadamard_real, is_psd_float, scan_hadamard_threshold
from tnfactor.sampling import spread_grid_params


def show(report):
    for s in report.samples:
        w = s.tn.witness
        where = f" witness {w.spec.to_dict()} = {w.value:.3g}" if w else ""
        print(f"r={s.r:4.2f}  TP={s.tp.verdict.value:6s} TN={s.tn.verdict.value:6s} "
              f"in-band={s.tn.indeterminate_count}  agrees={s.agrees}{where}")


rs = np.arange(0.25, 3.01, 0.25)
show(scan_hadamard_threshold(GridParams.symmetric((1, 2, 3, 4)), rs))

# %%
# On 1, 2, 3, 4 the 4x4 minors for 1 < r < 2 are around 1e-12 of their
# entries, inside the 1e-10 band, so the float check cannot see their sign
# (note the in-band count).  Spreading the nodes geometrically moves those
# minors well clear of the band.
p = spread_grid_params(random.Random(3), 4)
print([str(v) for v in p.x])
show(scan_hadamard_threshold(p, rs))

# %%
# Positive semidefiniteness on a three point grid.
q = GridParams.symmetric((1, 2, 3))
for r in (0.5, 1.0, 1.5, 2.0):
    print(r, is_psd_float(gen_S_hadamard_real(q, r)).value)
