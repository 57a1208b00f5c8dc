"""
Symplectic eigenvalues and the Williamson normal form
======================================================

Every covariance matrix can be brought to a diagonal "thermal" form by a
symplectic transformation. The diagonal entries (the symplectic eigenvalues)
decide whether the state is pure and how mixed it is.
"""

import numpy as np

from gaussbc import GaussianState, random_covariance, symplectic_eigenvalues, williamson
from gaussbc.symplectic import random_symplectic, williamson_residuals

np.set_printoptions(precision=4, suppress=True)

###############################################################################
# A squeezed thermal state: diag(3 e^{2r}, 3 e^{-2r}) has symplectic
# eigenvalue 3, whatever the squeezing.
r = 0.4
gamma = np.diag([3 * np.exp(2 * r), 3 * np.exp(-2 * r)])
dec = williamson(gamma)
print("nu =", dec.nu)
print("S gamma S^T =\n", dec.S @ gamma @ dec.S.T)

###############################################################################
# A random three-mode state. The residuals measure how symplectic ``S`` is
# and how well ``S gamma S^T`` reproduces the diagonal form.
gamma = random_covariance(3, squeeze_bound=1.5, temp_bound=10, seed=1)
dec = williamson(gamma)
print("nu =", dec.nu)
print("residuals (symplecticity, reconstruction):", williamson_residuals(gamma, dec))

###############################################################################
# The spectrum is a symplectic invariant, and a second route through the
# eigenvalues of i Omega gamma gives the same numbers.
T = random_symplectic(3, 1.0, seed=2)
print("after conjugation:", williamson(T @ gamma @ T.T).nu)
print("via |eig(i Omega gamma)|:", symplectic_eigenvalues(gamma))

###############################################################################
# Purity is ``1 / prod(nu)``.
state = GaussianState(None, gamma)
print("purity:", state.purity(), "=", 1 / np.prod(dec.nu))
