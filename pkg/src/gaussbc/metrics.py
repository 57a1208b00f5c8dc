r"""Distinguishability of Gaussian states.

Closed forms work under the vacuum-``gamma = I`` convention, where

.. math::

    \mathrm{Tr}(\rho\sigma) = \frac{2^n}{\sqrt{\det(\gamma_\rho+\gamma_\sigma)}}
        \exp\left(-\tfrac12\,\delta^T(\gamma_\rho+\gamma_\sigma)^{-1}\delta\right).

Everything near 1 (fidelity of close states, Bhattacharyya coefficient of
close states) is accumulated in log space from the generalized eigenvalues
``lambda`` of ``(gamma_1, gamma_0)``, where each factor
``2 sqrt(lambda) / (1 + lambda) = 1 - (1 - sqrt(lambda))^2 / (1 + lambda)``
is second order in ``lambda - 1``. That keeps ``sqrt(1 - F)`` accurate when
the two states nearly coincide.
"""

import dataclasses
import math

import numpy as np
import scipy.linalg

from .errors import DimensionError, NumericError, PreconditionError
from .state import ScaledGaussian, sqrt_state
from .symplectic import omega


def _log_kernel(mu0, g0, mu1, g1):
    """``log[2^n (det g0 det g1)^(1/4) / sqrt(det(g0 + g1)) exp(-d^T (g0 + g1)^-1 d / 2)]``."""
    lam = scipy.linalg.eigh(g1, g0, eigvals_only=True)
    lam = np.maximum(lam, 0.0)
    rl = np.sqrt(lam)
    e = (1.0 - rl) ** 2 / (1.0 + lam)
    log_det_part = 0.5 * float(np.sum(np.log1p(-e)))
    delta = mu1 - mu0
    if not np.any(delta):
        return log_det_part
    cho = scipy.linalg.cho_factor(g0 + g1)
    quad = float(delta @ scipy.linalg.cho_solve(cho, delta))
    return log_det_part - 0.5 * quad


def _unpack(a):
    if isinstance(a, ScaledGaussian):
        return a.state, a.log_scale
    return a, 0.0


def _check_modes(a, b):
    if a.n != b.n:
        raise DimensionError(f"mode counts differ: {a.n} vs {b.n}")


def _log_det(gamma, pure):
    if pure:
        return 0.0
    return float(np.linalg.slogdet(gamma)[1])


def log_overlap(a, b):
    """``log Tr(a b)`` for states or scaled states."""
    sa, la = _unpack(a)
    sb, lb = _unpack(b)
    _check_modes(sa, sb)
    return (la + lb
            - 0.25 * (_log_det(sa.gamma, False) + _log_det(sb.gamma, False))
            + _log_kernel(sa.mu, sa.gamma, sb.mu, sb.gamma))


def overlap(a, b):
    """``Tr(a b)`` for two Gaussian states or scaled Gaussian operators."""
    return float(np.exp(log_overlap(a, b)))


def log_bhattacharyya(rho, sigma):
    """``log Tr(sqrt(rho) sqrt(sigma))``.

    The prefactor of each square root is exactly ``det(gamma_root)^(1/4)``,
    which cancels against the purity factors of the overlap, leaving the
    normalized kernel only.
    """
    _check_modes(rho, sigma)
    r0 = sqrt_state(rho).state
    r1 = sqrt_state(sigma).state
    return _log_kernel(r0.mu, r0.gamma, r1.mu, r1.gamma)


def bhattacharyya(rho, sigma):
    """Bhattacharyya coefficient ``Tr(sqrt(rho) sqrt(sigma))``."""
    return float(np.exp(log_bhattacharyya(rho, sigma)))


def _banchi_root_fidelity(s0, s1):
    """Root fidelity ``Tr|sqrt(rho) sqrt(sigma)|`` of two mixed Gaussian states.

    Closed form of Banchi, Braunstein and Pirandola (PRL 115, 260501), written
    for vacuum covariance ``I/2``; inputs are rescaled accordingly.
    """
    n = s0.n
    W = omega(n)
    V0, V1 = 0.5 * s0.gamma, 0.5 * s1.gamma
    du = (s1.mu - s0.mu) / np.sqrt(2.0)
    Vsum = V0 + V1
    Vaux = W.T @ np.linalg.solve(Vsum, W / 4.0 + V1 @ W @ V0)
    M = Vaux @ W
    X = np.eye(2 * n) + 0.25 * np.linalg.inv(M @ M)
    root, err = scipy.linalg.sqrtm(X, disp=False)
    if not np.isfinite(err) or err > 1e-8:
        raise NumericError(
            f"matrix square root failed (error estimate {err:.3e}, cond {np.linalg.cond(X):.3e})")
    root = np.real_if_close(root, tol=1e6)
    if np.iscomplexobj(root):
        raise NumericError("matrix square root has a significant imaginary part")
    num = np.linalg.det(2.0 * (root + np.eye(2 * n)) @ Vaux)
    ftot4 = num / np.linalg.det(Vsum)
    if not ftot4 > 0:
        raise NumericError(f"non-positive fidelity prefactor {ftot4:.3e}")
    return ftot4 ** 0.25 * math.exp(-0.25 * float(du @ np.linalg.solve(Vsum, du)))


def log_fidelity(rho, sigma, tol_eig=None):
    """``log F(rho, sigma)``; exact log-space route if either state is pure."""
    _check_modes(rho, sigma)
    p0, p1 = rho.is_pure(tol_eig), sigma.is_pure(tol_eig)
    if p0 or p1:
        # F = <psi| sigma |psi> = Tr(rho sigma) when rho is pure
        return (-0.25 * (_log_det(rho.gamma, p0) + _log_det(sigma.gamma, p1))
                + _log_kernel(rho.mu, rho.gamma, sigma.mu, sigma.gamma))
    return 2.0 * math.log(_banchi_root_fidelity(rho, sigma))


def fidelity(rho, sigma, tol_eig=None):
    """Uhlmann fidelity ``(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2``."""
    return float(np.exp(log_fidelity(rho, sigma, tol_eig)))


def _sqrt_one_minus_exp(log_value):
    return math.sqrt(max(0.0, -math.expm1(min(log_value, 0.0))))


def trace_distance_pure(psi, phi, tol_eig=None):
    """Exact trace distance ``sqrt(1 - |<psi|phi>|^2)`` of two pure states."""
    _check_modes(psi, phi)
    if not (psi.is_pure(tol_eig) and phi.is_pure(tol_eig)):
        raise PreconditionError("trace_distance_pure requires two pure states")
    return _sqrt_one_minus_exp(_log_kernel(psi.mu, psi.gamma, phi.mu, phi.gamma))


def trace_distance_bounds(rho, sigma):
    """``(1 - B, sqrt(1 - F))``: Bhattacharyya lower and fidelity upper bound."""
    lower = max(0.0, -math.expm1(log_bhattacharyya(rho, sigma)))
    upper = _sqrt_one_minus_exp(log_fidelity(rho, sigma))
    return lower, upper


def guessing_probability(D):
    """Optimal probability of telling two states apart, ``(1 + D) / 2``."""
    if not 0.0 <= D <= 1.0:
        raise ValueError(f"trace distance must lie in [0, 1], got {D}")
    return 0.5 * (1.0 + D)


@dataclasses.dataclass(frozen=True)
class DistinguishabilityReport:
    overlap: float
    bhattacharyya_B: float
    fidelity: float
    trace_distance_lower: float
    trace_distance_upper: float
    guessing_probability_bounds: tuple

    def to_dict(self):
        return dataclasses.asdict(self) | {
            "guessing_probability_bounds": list(self.guessing_probability_bounds)}


def distinguishability(rho, sigma):
    lower, upper = trace_distance_bounds(rho, sigma)
    return DistinguishabilityReport(
        overlap=overlap(rho, sigma),
        bhattacharyya_B=bhattacharyya(rho, sigma),
        fidelity=fidelity(rho, sigma),
        trace_distance_lower=lower,
        trace_distance_upper=upper,
        guessing_probability_bounds=(guessing_probability(min(lower, 1.0)),
                                     guessing_probability(min(upper, 1.0))),
    )


@dataclasses.dataclass(frozen=True)
class OracleResult:
    B: float
    F: float
    D: float
    terms: int

    def to_dict(self):
        return dataclasses.asdict(self)


def oracle_commuting(x0, x1, tail=1e-12):
    """Brute-force Fock-series distinguishability of two single-mode thermal
    states diagonal in the same basis, with spectra ``(1 - x) x^k``.

    The series is cut at the first ``N`` with ``xmax^N / (1 - xmax) < tail``,
    which bounds the neglected mass of every sum below.
    """
    for x in (x0, x1):
        if not 0.0 <= x < 1.0:
            raise ValueError(f"thermal parameter must lie in [0, 1), got {x}")
    if tail <= 0:
        raise ValueError("tail must be positive")
    xmax = max(x0, x1)
    if xmax == 0.0:
        N = 1
    else:
        N = max(1, math.ceil(math.log(tail * (1.0 - xmax)) / math.log(xmax)))
    k = np.arange(N)
    p = (1.0 - x0) * np.power(x0, k)
    q = (1.0 - x1) * np.power(x1, k)
    B = float(np.sum(np.sqrt(p * q)))
    D = 0.5 * float(np.sum(np.abs(p - q)))
    return OracleResult(B=B, F=B * B, D=D, terms=N)
