"""Pure bipartite Gaussian states and the two purification constructions:
the Gaussian intrinsic purification of a mixed state, and the local
Gaussian unitary relating two purifications of the same reduced state.

Side A holds the first ``n`` modes, side B the last ``n``.
"""

import dataclasses

import numpy as np

from . import tolerances
from .errors import DimensionError, GaugeError, PhysicalityError, PreconditionError
from .state import GaussianState, apply_unitary, moment_residual, partial_trace, thermal_form
from .symplectic import (
    GaussianUnitary,
    normal_mode_decompose,
    star_conjugate,
    symplectic_inverse,
    tmsv_normal_form,
    williamson,
)


@dataclasses.dataclass(frozen=True, eq=False)
class BipartiteGaussianState:
    """A pure ``2n``-mode Gaussian state split as A (first ``n``) | B (last ``n``)."""

    state: GaussianState

    def __post_init__(self):
        if self.state.n % 2:
            raise DimensionError(f"bipartite state needs an even mode count, got {self.state.n}")
        tol_eig = tolerances.get().eig
        nu = self.state.symplectic_spectrum()
        worst = float(np.max(np.abs(nu - 1.0)))
        if worst > tol_eig:
            raise PhysicalityError(f"bipartite state is not pure (max |nu - 1| = {worst:.3e})", worst)

    @property
    def n(self):
        """Modes per side."""
        return self.state.n // 2

    @property
    def modes_a(self):
        return list(range(self.n))

    @property
    def modes_b(self):
        return list(range(self.n, 2 * self.n))

    @property
    def gamma_a(self):
        return self.state.gamma[:2 * self.n, :2 * self.n]

    @property
    def gamma_b(self):
        return self.state.gamma[2 * self.n:, 2 * self.n:]

    @property
    def cross(self):
        return self.state.gamma[:2 * self.n, 2 * self.n:]

    @property
    def mu_a(self):
        return self.state.mu[:2 * self.n]

    @property
    def mu_b(self):
        return self.state.mu[2 * self.n:]

    def reduced_a(self):
        """State of side A (B traced out)."""
        return partial_trace(self.state, self.modes_a)

    def reduced_b(self):
        """State of side B (A traced out), i.e. what Bob holds."""
        return partial_trace(self.state, self.modes_b)

    def apply_a(self, U):
        return BipartiteGaussianState(apply_unitary(self.state, U, self.modes_a))

    def apply_b(self, U):
        return BipartiteGaussianState(apply_unitary(self.state, U, self.modes_b))

    @classmethod
    def from_moments(cls, mu, gamma):
        return cls(GaussianState(mu, gamma))


def tmsv(nu):
    """Two-mode squeezed vacuum whose reduced states are thermal with ``nu``.

    A sequence of ``nu`` gives the product over pairs, mode ``k`` of A paired
    with mode ``k`` of B.
    """
    nu = np.atleast_1d(np.asarray(nu, dtype=float))
    if np.any(nu < 1.0):
        raise PhysicalityError(f"nu must be >= 1, got {nu}", float(nu.min()))
    return BipartiteGaussianState(GaussianState(None, tmsv_normal_form(nu)))


def purification_unitaries(rho, tol_eig=None):
    """Factors of the intrinsic purification of ``rho``.

    Returns:
        ``(V_star, V, nu)``: the Williamson unitary ``V`` of ``rho`` (acting on
        B), its star conjugate (acting on A) and the symplectic spectrum.
    """
    tf = thermal_form(rho, tol_eig=tol_eig)
    return star_conjugate(tf.V), tf.V, tf.nu


def intrinsic_purify(rho, tol_eig=None):
    """Gaussian intrinsic purification ``(V* (x) V) prod_k TMSV(nu_k)``.

    ``Tr_A`` of the result is ``rho``; ``Tr_B`` is its momentum-reflected
    mirror ``(Sigma_Z mu, Sigma_Z gamma Sigma_Z)``.
    """
    V_star, V, nu = purification_unitaries(rho, tol_eig=tol_eig)
    psi = tmsv(nu)
    return psi.apply_a(V_star).apply_b(V)


def _reduced_mismatch(psi0, psi1):
    g = np.linalg.norm(psi0.gamma_b - psi1.gamma_b) / np.linalg.norm(psi1.gamma_b)
    m = np.linalg.norm(psi0.mu_b - psi1.mu_b) / max(1.0, float(np.linalg.norm(psi1.mu_b)))
    return float(max(g, m))


def relate_purifications(psi0, psi1, tol_match=None):
    """Gaussian unitary ``U`` on side A with ``(U (x) I) psi0 = psi1``.

    Both states are brought to the two-mode-squeezed normal form with one
    shared B-side frame; the A-side frames then differ by the returned
    symplectic ``S1_A^-1 S0_A`` and the displacement fixes the A means.

    Raises:
        DimensionError: side sizes differ.
        PreconditionError: the B reductions differ by more than ``tol_match``.
        GaugeError: the normal form was not reached, or the resulting unitary
            misses the moment contract by more than ``tol.dec`` (plus slack
            for the measured B mismatch).
    """
    tol = tolerances.get()
    if tol_match is None:
        tol_match = tol.match
    if psi0.n != psi1.n:
        raise DimensionError(f"side sizes differ: {psi0.n} vs {psi1.n}")
    mismatch = _reduced_mismatch(psi0, psi1)
    if mismatch > tol_match:
        raise PreconditionError(
            f"reduced states on B differ (relative residual {mismatch:.3e} > {tol_match:.1e})",
            mismatch)

    wb = williamson(psi0.gamma_b)
    nm0 = normal_mode_decompose(psi0.state.gamma, side_b=wb)
    nm1 = normal_mode_decompose(psi1.state.gamma, side_b=wb)
    S = symplectic_inverse(nm1.S_A) @ nm0.S_A
    U = GaussianUnitary(S, psi1.mu_a - S @ psi0.mu_a)

    res = moment_residual(psi0.apply_a(U).state, psi1.state)
    if res > tol.dec + 4.0 * mismatch:
        raise GaugeError(f"purification relation failed (moment residual {res:.3e})", res)
    return U
