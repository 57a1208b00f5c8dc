"""Parameterized protocol generators.

Each family returns a :class:`~gaussbc.attack.Protocol` built directly in
moment form and is deterministic for a fixed seed.
"""

import dataclasses

import numpy as np
import scipy.linalg

from .attack import Protocol
from .purification import BipartiteGaussianState, intrinsic_purify, tmsv
from .state import GaussianState
from .symplectic import GaussianUnitary, omega, random_covariance, random_symplectic


def _nu(x):
    if not 0.0 <= x < 1.0:
        raise ValueError(f"thermal parameter must lie in [0, 1), got {x}")
    return (1.0 + x) / (1.0 - x)


def thermal_pair(x0=0.0, x1=0.5, n=1, seed=None):
    """``psi_b = TMSV(nu_b)^(x n)``: Bob holds thermal states with parameters x0, x1."""
    return Protocol(tmsv([_nu(x0)] * n), tmsv([_nu(x1)] * n))


def displaced_pair(displacement=1.0, x=0.0, n=1, seed=None):
    """Same purification of a thermal state, Bob's half displaced by
    ``+displacement`` or ``-displacement`` along x on every mode."""
    base = tmsv([_nu(x)] * n)
    shift = np.tile([float(displacement), 0.0], n)

    def moved(sign):
        return base.apply_b(GaussianUnitary.displacement(sign * shift))

    return Protocol(moved(+1.0), moved(-1.0))


def _random_pure(n_total, squeeze_bound, rng):
    gamma = random_covariance(n_total, pure=True, squeeze_bound=squeeze_bound, seed=rng)
    return GaussianState(rng.normal(size=2 * n_total), gamma)


def _near_identity(n, strength, rng):
    H = rng.normal(size=(2 * n, 2 * n))
    H = strength * 0.5 * (H + H.T)
    return GaussianUnitary(scipy.linalg.expm(omega(n) @ H), strength * rng.normal(size=2 * n))


def squeezed_random(n=1, squeeze_bound=1.0, perturbation=0.3, seed=0, independent=False):
    """Random squeezed commitments.

    ``psi0`` is a random pure ``2n``-mode state. ``psi1`` is ``psi0`` with a
    random Gaussian unitary on A and a perturbation of size ``perturbation``
    on B, or, with ``independent=True``, an unrelated random pure state.
    """
    rng = np.random.default_rng(seed)
    psi0 = BipartiteGaussianState(_random_pure(2 * n, squeeze_bound, rng))
    if independent:
        return Protocol(psi0, BipartiteGaussianState(_random_pure(2 * n, squeeze_bound, rng)))
    T_a = GaussianUnitary(random_symplectic(n, squeeze_bound, seed=rng), rng.normal(size=2 * n))
    psi1 = psi0.apply_a(T_a).apply_b(_near_identity(n, perturbation, rng))
    return Protocol(psi0, psi1)


def perfectly_concealing(n=1, squeeze_bound=1.0, temp_bound=5.0, seed=0, nu=None):
    """Two purifications of one random mixed state, in independent A-side gauges."""
    rng = np.random.default_rng(seed)
    gamma = random_covariance(n, squeeze_bound=squeeze_bound, temp_bound=temp_bound,
                              seed=rng, nu=nu)
    rho = GaussianState(rng.normal(size=2 * n), gamma)
    hat = intrinsic_purify(rho)

    def gauge():
        return GaussianUnitary(random_symplectic(n, squeeze_bound, seed=rng), rng.normal(size=2 * n))

    return Protocol(hat.apply_a(gauge()), hat.apply_a(gauge()))


@dataclasses.dataclass(frozen=True)
class Family:
    build: object
    defaults: dict
    sweep_param: str


FAMILIES = {
    "thermal-pair": Family(thermal_pair, {"x0": 0.0, "x1": 0.5, "n": 1}, "x1"),
    "displaced-pair": Family(displaced_pair, {"displacement": 1.0, "x": 0.0, "n": 1},
                             "displacement"),
    "squeezed-random": Family(squeezed_random,
                              {"n": 1, "squeeze_bound": 1.0, "perturbation": 0.3},
                              "perturbation"),
    "perfectly-concealing": Family(perfectly_concealing,
                                   {"n": 1, "squeeze_bound": 1.0, "temp_bound": 5.0},
                                   "temp_bound"),
}


def resolve_params(family, params=None):
    """Family defaults updated with ``params``; unknown names are rejected."""
    if family not in FAMILIES:
        raise KeyError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    fam = FAMILIES[family]
    params = dict(params or {})
    unknown = set(params) - set(fam.defaults)
    if unknown:
        raise KeyError(f"family {family!r} has no parameter(s) {sorted(unknown)}")
    out = dict(fam.defaults)
    out.update(params)
    if "n" in out:
        out["n"] = int(out["n"])
    return out


def generate(family, params=None, seed=0):
    """Build a protocol from a family name, parameter overrides and a seed."""
    resolved = resolve_params(family, params)
    return FAMILIES[family].build(seed=seed, **resolved), resolved


def family_sweep(family, params=None, seed=0):
    """``param -> Protocol`` callable varying the family's sweep parameter."""
    resolved = resolve_params(family, params)
    fam = FAMILIES[family]

    def build(value):
        return fam.build(seed=seed, **(resolved | {fam.sweep_param: value}))

    return build
