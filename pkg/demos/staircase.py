"""Random basic configurations: detection, reconstruction and supporting lines."""
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from helpers import lift, random_chart, random_staircase  # noqa: E402

from lamhull.lamination import _planar  # noqa: E402
from lamhull.quasiconvex import quasiconvex_hull, supporting_functionals  # noqa: E402

rng = np.random.default_rng(11)
for _ in range(5):
    d, slots = random_staircase(rng)
    wells = lift([p for _, p in slots], random_chart(rng))
    r = quasiconvex_hull(wells)
    dd = r.certificate.decomposition
    low, high = supporting_functionals(dd)
    pts = _planar(wells, r.chart)
    print(f"{len(wells)} wells, {d.blocks} blocks, dropped {d.missing or 'none'}: "
          f"{r.certificate.kind.value}; recovered missing {dd.missing}; "
          f"min l = {min(low(p) for p in pts):.12f}, max l~ = {max(high(p) for p in pts):.12f}")
