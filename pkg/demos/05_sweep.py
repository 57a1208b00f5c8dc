"""
Concealment versus cheating across a family
===========================================

Sweep the temperature of Bob's second state in the thermal family. Better
concealment (smaller eps) always means a better cheat (smaller delta).
"""

import numpy as np

from gaussbc import sweep
from gaussbc.families import family_sweep
from gaussbc.io import rows_to_csv

grid = np.linspace(0.0, 0.9, 10)
rows = sweep(family_sweep("thermal-pair", {"x0": 0.3}), grid)
print(f"{'x1':>5} {'eps_lo':>8} {'eps_up':>8} {'delta':>8} {'bound':>8}")
for row in rows:
    print(f"{row.param:5.2f} {row.eps_lower:8.4f} {row.eps_upper:8.4f} "
          f"{row.delta:8.4f} {row.bound_rhs:8.4f}")

###############################################################################
# The same table as CSV, the format the ``gaussbc sweep`` command writes.
print(rows_to_csv(rows[:3]))
