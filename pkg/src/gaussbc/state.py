"""Gaussian states as (mean, covariance) pairs.

Conventions: interleaved quadratures ``(x1, p1, ..., xn, pn)``, vacuum
covariance equal to the identity, first moments in the same units (a
coherent state ``|alpha>`` has ``mu = 2 (Re alpha, Im alpha)``).
"""

import dataclasses

import numpy as np

from . import tolerances
from .errors import DimensionError, PhysicalityError
from .symplectic import (
    GaussianUnitary,
    _quadrature_index,
    embed,
    heisenberg_min_eigenvalue,
    symplectic_eigenvalues,
    symplectic_inverse,
    williamson,
)

CONVENTION = "vacuum-gamma=I, interleaved-xp"


def _frozen(a):
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclasses.dataclass(frozen=True)
class Diagnostics:
    symmetry_residual: float
    min_eigenvalue: float
    symplectic_spectrum: np.ndarray
    purity: float
    valid: bool
    pure: bool
    problems: tuple = ()

    def to_dict(self):
        return {
            "valid": self.valid,
            "pure": self.pure,
            "symmetry_residual": self.symmetry_residual,
            "min_eigenvalue": self.min_eigenvalue,
            "symplectic_spectrum": list(map(float, self.symplectic_spectrum)),
            "purity": self.purity,
            "problems": list(self.problems),
        }


def validate(state, mu=None):
    """Diagnose a state, or a raw covariance matrix (with optional mean).

    Never raises on unphysical data; that is what the report is for.
    """
    if isinstance(state, GaussianState):
        gamma, mu = state.gamma, state.mu
    else:
        gamma = np.asarray(state, dtype=float)
    tol = tolerances.get()
    problems = []
    if gamma.ndim != 2 or gamma.shape[0] != gamma.shape[1] or gamma.shape[0] % 2:
        return Diagnostics(np.nan, np.nan, np.array([]), np.nan, False, False,
                           (f"bad covariance shape {gamma.shape}",))
    if mu is not None and np.shape(mu) != (gamma.shape[0],):
        problems.append(f"mean has shape {np.shape(mu)}, expected ({gamma.shape[0]},)")
    if not np.all(np.isfinite(gamma)):
        return Diagnostics(np.nan, np.nan, np.array([]), np.nan, False, False,
                           ("covariance has non-finite entries",))
    asym = float(np.linalg.norm(gamma - gamma.T))
    if asym > tol.sym * max(1.0, float(np.linalg.norm(gamma))):
        problems.append(f"covariance not symmetric (residual {asym:.3e})")
    lam = heisenberg_min_eigenvalue(gamma)
    if lam < -tol.eig:
        problems.append(f"Heisenberg inequality violated (min eig {lam:.3e})")
    nu = symplectic_eigenvalues(0.5 * (gamma + gamma.T))
    sign, logdet = np.linalg.slogdet(gamma)
    purity = float(np.exp(-0.5 * logdet)) if sign > 0 else np.nan
    valid = not problems
    pure = valid and bool(np.all(np.abs(nu - 1.0) <= tol.eig))
    return Diagnostics(asym, lam, nu, purity, valid, pure, tuple(problems))


@dataclasses.dataclass(frozen=True, eq=False)
class GaussianState:
    """First and second moments of an ``n``-mode Gaussian state.

    Validated on construction: symmetric covariance and the Heisenberg
    inequality ``gamma + i Omega >= -tol_eig``.
    """

    mu: np.ndarray
    gamma: np.ndarray

    def __post_init__(self):
        gamma = np.asarray(self.gamma, dtype=float)
        if gamma.ndim != 2 or gamma.shape[0] != gamma.shape[1] or gamma.shape[0] % 2:
            raise DimensionError(f"covariance must be 2n x 2n, got shape {gamma.shape}")
        mu = np.zeros(gamma.shape[0]) if self.mu is None else np.asarray(self.mu, dtype=float)
        if mu.shape != (gamma.shape[0],):
            raise DimensionError(f"mean must have length {gamma.shape[0]}, got shape {mu.shape}")
        tol = tolerances.get()
        asym = float(np.linalg.norm(gamma - gamma.T))
        if asym > tol.sym * max(1.0, float(np.linalg.norm(gamma))):
            raise DimensionError(f"covariance is not symmetric (residual {asym:.3e})")
        gamma = 0.5 * (gamma + gamma.T)
        lam = heisenberg_min_eigenvalue(gamma)
        if lam < -tol.eig:
            raise PhysicalityError(
                f"Heisenberg inequality violated: min eig(gamma + i Omega) = {lam:.3e}", lam)
        object.__setattr__(self, "mu", _frozen(mu))
        object.__setattr__(self, "gamma", _frozen(gamma))

    @property
    def n(self):
        return self.gamma.shape[0] // 2

    @classmethod
    def vacuum(cls, n=1):
        return cls(np.zeros(2 * n), np.eye(2 * n))

    @classmethod
    def thermal(cls, nu):
        nu = np.atleast_1d(np.asarray(nu, dtype=float))
        return cls(np.zeros(2 * nu.size), np.diag(np.repeat(nu, 2)))

    @classmethod
    def coherent(cls, alpha):
        alpha = np.atleast_1d(np.asarray(alpha, dtype=complex))
        mu = 2.0 * np.stack([alpha.real, alpha.imag], axis=1).ravel()
        return cls(mu, np.eye(2 * alpha.size))

    def symplectic_spectrum(self):
        return symplectic_eigenvalues(self.gamma)

    def purity(self):
        """``Tr rho^2 = 1 / sqrt(det gamma)``."""
        _, logdet = np.linalg.slogdet(self.gamma)
        return float(np.exp(-0.5 * logdet))

    def is_pure(self, tol_eig=None):
        if tol_eig is None:
            tol_eig = tolerances.get().eig
        return bool(np.all(np.abs(self.symplectic_spectrum() - 1.0) <= tol_eig))

    def to_dict(self):
        return {"mu": self.mu.tolist(), "gamma": self.gamma.tolist()}


def moment_residual(a, b):
    """Relative disagreement between the moments of two states.

    ``max(||dgamma||_F / ||gamma_b||_F, ||dmu|| / max(1, ||mu_b||))``.
    """
    if a.n != b.n:
        raise DimensionError(f"mode counts differ: {a.n} vs {b.n}")
    rg = np.linalg.norm(a.gamma - b.gamma) / np.linalg.norm(b.gamma)
    rm = np.linalg.norm(a.mu - b.mu) / max(1.0, float(np.linalg.norm(b.mu)))
    return float(max(rg, rm))


def apply_unitary(state, U, modes=None):
    """Apply a Gaussian unitary to ``modes`` (all modes by default)."""
    if modes is None:
        modes = range(state.n)
    modes = list(modes)
    if U.n != len(modes):
        raise DimensionError(f"{U.n}-mode unitary applied to {len(modes)} modes")
    idx = _quadrature_index(modes, state.n)
    S = embed(U.S, modes, state.n)
    mu = S @ state.mu
    mu[idx] += U.d
    gamma = S @ state.gamma @ S.T
    return GaussianState(mu, 0.5 * (gamma + gamma.T))


def tensor(a, b):
    """Product state ``a (x) b``; modes of ``a`` come first."""
    n = a.n + b.n
    gamma = np.zeros((2 * n, 2 * n))
    gamma[:2 * a.n, :2 * a.n] = a.gamma
    gamma[2 * a.n:, 2 * a.n:] = b.gamma
    return GaussianState(np.concatenate([a.mu, b.mu]), gamma)


def partial_trace(state, keep):
    """Reduced state on the modes in ``keep`` (in the given order)."""
    keep = list(keep)
    if not keep:
        raise DimensionError("partial trace must keep at least one mode")
    idx = _quadrature_index(keep, state.n)
    return GaussianState(state.mu[idx], state.gamma[np.ix_(idx, idx)])


@dataclasses.dataclass(frozen=True, eq=False)
class ThermalForm:
    """``rho = V (prod_k thermal(nu_k)) V^dagger`` with ``x_k = (nu_k - 1)/(nu_k + 1)``.

    ``V`` maps the normal form onto the state; its displacement is the
    state's mean.
    """

    V: GaussianUnitary
    nu: np.ndarray
    x: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "nu", _frozen(self.nu))
        object.__setattr__(self, "x", _frozen(self.x))


def thermal_parameter(nu):
    nu = np.asarray(nu, dtype=float)
    return (nu - 1.0) / (nu + 1.0)


def thermal_form(state, tol_eig=None):
    """Williamson unitary and thermal parameters of a state.

    Symplectic eigenvalues within ``tol_eig`` of 1 are snapped to exactly 1,
    so pure modes carry ``x = 0``.
    """
    if tol_eig is None:
        tol_eig = tolerances.get().eig
    dec = williamson(state.gamma, tol_eig=tol_eig)
    nu = np.where(np.abs(dec.nu - 1.0) <= tol_eig, 1.0, dec.nu)
    nu = np.maximum(nu, 1.0)
    V = GaussianUnitary(symplectic_inverse(dec.S), state.mu)
    return ThermalForm(V, nu, thermal_parameter(nu))


def from_thermal_form(V, nu):
    """State ``V thermal(nu) V^dagger``."""
    return apply_unitary(GaussianState.thermal(nu), V)


@dataclasses.dataclass(frozen=True, eq=False)
class ScaledGaussian:
    """The positive operator ``exp(log_scale) * rho_state``."""

    state: GaussianState
    log_scale: float

    @property
    def scale(self):
        return float(np.exp(self.log_scale))


def sqrt_state(state, tol_eig=None):
    """Operator square root of a Gaussian state.

    A thermal spectrum ``(1 - x) x^k`` has square root
    ``sqrt(1 - x) / (1 - sqrt x)`` times the thermal spectrum with parameter
    ``sqrt x``; the Williamson unitary and the mean are unchanged.
    """
    tf = thermal_form(state, tol_eig=tol_eig)
    rx = np.sqrt(tf.x)
    nu_root = (1.0 + rx) / (1.0 - rx)
    log_scale = float(np.sum(0.5 * np.log1p(-tf.x) - np.log1p(-rx)))
    return ScaledGaussian(from_thermal_form(tf.V, nu_root), log_scale)
