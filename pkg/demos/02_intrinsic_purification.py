"""
Purifying a mixed Gaussian state
================================

A mixed state ``rho = V (thermal) V^dagger`` has a canonical Gaussian
purification: two-mode squeezed vacua with the right temperatures, then the
star conjugate of ``V`` on the purifying side and ``V`` itself on the other.
"""

import numpy as np

from gaussbc import GaussianState, intrinsic_purify, relate_purifications, random_covariance
from gaussbc.state import apply_unitary, moment_residual
from gaussbc.symplectic import GaussianUnitary, random_symplectic, sigma_z

np.set_printoptions(precision=4, suppress=True)

rng = np.random.default_rng(7)
rho = GaussianState(rng.normal(size=4), random_covariance(2, temp_bound=6, seed=rng))
print("symplectic spectrum of rho:", rho.symplectic_spectrum())

###############################################################################
# The purification is a pure four-mode state. Tracing out side A gives back
# ``rho``; tracing out side B gives its momentum-reflected mirror.
psi = intrinsic_purify(rho)
print("global spectrum:", psi.state.symplectic_spectrum())
print("Tr_A residual:", moment_residual(psi.reduced_b(), rho))
Z = sigma_z(2)
mirror = GaussianState(Z @ rho.mu, Z @ rho.gamma @ Z)
print("Tr_B is the mirror:", moment_residual(psi.reduced_a(), mirror))

###############################################################################
# Any other purification differs by a Gaussian unitary on side A alone.
# Hide one, then recover it.
hidden = GaussianUnitary(random_symplectic(2, 1.0, seed=rng), rng.normal(size=4))
other = psi.apply_a(hidden)
U = relate_purifications(psi, other)
print("recovered unitary reproduces the target:",
      moment_residual(psi.apply_a(U).state, other.state))

###############################################################################
# The purification does not depend on which Williamson frame was picked:
# a passive rotation that leaves rho invariant gives the same state.
thermal = GaussianState.thermal([2.0, 2.0])
K = GaussianUnitary(random_symplectic(2, 0.0, seed=3), None)
print("gauge independence:",
      moment_residual(intrinsic_purify(apply_unitary(thermal, K)).state,
                      intrinsic_purify(thermal).state))
