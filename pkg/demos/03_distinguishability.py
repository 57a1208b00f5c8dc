"""
How well can two Gaussian states be told apart?
===============================================

The trace distance of two mixed Gaussian states has no closed form, but it is
bracketed by ``1 - B <= D <= sqrt(1 - F)`` with the Bhattacharyya
coefficient ``B = Tr(sqrt(rho) sqrt(sigma))`` and the fidelity ``F``. Both
are computed in closed form.
"""

import numpy as np

from gaussbc import GaussianState, bhattacharyya, distinguishability, fidelity, oracle_commuting
from gaussbc.state import sqrt_state
from gaussbc.metrics import overlap
from gaussbc.purification import intrinsic_purify


def thermal(x):
    return GaussianState.thermal((1 + x) / (1 - x))


###############################################################################
# Two thermal states are diagonal in the number basis, so a direct series
# gives the exact answer.
x0, x1 = 0.0, 0.5
exact = oracle_commuting(x0, x1)
print(f"series:      B={exact.B:.6f}  F={exact.F:.6f}  D={exact.D:.6f}")
print(f"closed form: B={bhattacharyya(thermal(x0), thermal(x1)):.6f}  "
      f"F={fidelity(thermal(x0), thermal(x1)):.6f}")

###############################################################################
# For generic states the report collects all measures and the resulting
# range for the optimal guessing probability.
rng = np.random.default_rng(0)
a = GaussianState(rng.normal(size=2), np.array([[2.0, 0.5], [0.5, 1.5]]))
b = GaussianState(rng.normal(size=2), np.array([[1.2, -0.2], [-0.2, 3.0]]))
for key, value in distinguishability(a, b).to_dict().items():
    print(f"{key:>28}: {value}")

###############################################################################
# The Bhattacharyya coefficient equals the overlap of the two square roots,
# and also the (root) fidelity of the intrinsic purifications.
print("Tr(sqrt a sqrt b):", overlap(sqrt_state(a), sqrt_state(b)))
print("sqrt F(purifications):",
      np.sqrt(fidelity(intrinsic_purify(a).state, intrinsic_purify(b).state)))
