"""Cheating attack against Gaussian bit-commitment protocols.

A (reduced) protocol is a pair of pure bipartite states ``psi_b``; Alice
keeps side A, Bob receives side B. Alice commits honestly to 0 and, to reveal
1 instead, applies the Gaussian unitary ``U1^-1 U0`` to her half, where
``U_b`` maps ``psi_b`` onto the intrinsic purification of Bob's reduced
state ``rho_b``.
"""

import concurrent.futures
import contextvars
import dataclasses
import math

import numpy as np

from . import tolerances
from .errors import CertificationError, DimensionError
from .metrics import log_bhattacharyya, trace_distance_bounds, trace_distance_pure
from .purification import BipartiteGaussianState, intrinsic_purify, relate_purifications
from .symplectic import GaussianUnitary, is_symplectic

# proof-chain equality delta = sqrt(1 - B^2)
CHAIN_TOL = 1e-7


@dataclasses.dataclass(frozen=True, eq=False)
class Protocol:
    """Commitment states ``psi0``, ``psi1`` for bits 0 and 1."""

    psi0: BipartiteGaussianState
    psi1: BipartiteGaussianState

    def __post_init__(self):
        if self.psi0.n != self.psi1.n:
            raise DimensionError(
                f"commitments have different sizes: {self.psi0.n} vs {self.psi1.n} modes per side")

    @property
    def n(self):
        return self.psi0.n

    def bob_states(self):
        return self.psi0.reduced_b(), self.psi1.reduced_b()


@dataclasses.dataclass(frozen=True, eq=False)
class AttackReport:
    """Outcome of :func:`build_attack`.

    Attributes:
        epsilon_lower, epsilon_upper: bounds on ``D(rho0, rho1)``.
        cheat_unitary: Gaussian unitary Alice applies to side A.
        delta: ``D(psi1_sharp, psi1)``, exact (both states pure).
        bound_rhs: ``min(1, sqrt(2 epsilon_upper))``.
        bound_raw: ``sqrt(2 epsilon_upper)`` unclamped; above 1 the bound is vacuous.
        certified: ``delta <= bound_rhs + tol_eig``.
        honest_zero_exact: the bit-0 reveal is ``psi0`` untouched.
        bhattacharyya: ``Tr(sqrt(rho0) sqrt(rho1))``.
        chain_residual: ``|delta - sqrt(1 - B^2)|``.
    """

    epsilon_lower: float
    epsilon_upper: float
    cheat_unitary: GaussianUnitary
    delta: float
    bound_rhs: float
    certified: bool
    honest_zero_exact: bool
    bhattacharyya: float
    chain_residual: float
    bound_raw: float = math.nan
    psi1_sharp: BipartiteGaussianState = dataclasses.field(repr=False, default=None)

    @property
    def vacuous(self):
        return self.bound_raw > 1.0

    def to_dict(self):
        return {
            "epsilon_lower": self.epsilon_lower,
            "epsilon_upper": self.epsilon_upper,
            "delta": self.delta,
            "bound_rhs": self.bound_rhs,
            "bound_raw": self.bound_raw,
            "vacuous": self.vacuous,
            "certified": self.certified,
            "honest_zero_exact": self.honest_zero_exact,
            "bhattacharyya": self.bhattacharyya,
            "chain_residual": self.chain_residual,
            "cheat_unitary": self.cheat_unitary.to_dict(),
        }


def concealment(protocol):
    """Bounds ``(lower, upper)`` on Bob's distinguishing power ``D(rho0, rho1)``."""
    rho0, rho1 = protocol.bob_states()
    return trace_distance_bounds(rho0, rho1)


def perfect_cheat(protocol, tol_match=None):
    """Alice's unitary for a perfectly concealing protocol (``rho0 = rho1``).

    Raises:
        PreconditionError: Bob's reduced states differ beyond ``tol_match``.
    """
    return relate_purifications(protocol.psi0, protocol.psi1, tol_match=tol_match)


def build_attack(protocol):
    """Synthesize and certify Alice's Gaussian cheating strategy.

    Raises:
        CertificationError: the cheat misses ``sqrt(2 epsilon)`` or the
            identity ``delta = sqrt(1 - B^2)``. Either means a bug.
    """
    tol = tolerances.get()
    rho0, rho1 = protocol.bob_states()
    eps_lo, eps_up = trace_distance_bounds(rho0, rho1)

    hat0 = intrinsic_purify(rho0)
    hat1 = intrinsic_purify(rho1)
    U0 = relate_purifications(protocol.psi0, hat0)
    U1 = relate_purifications(protocol.psi1, hat1)
    cheat = U1.inverse() @ U0

    sharp = protocol.psi0.apply_a(cheat)
    delta = trace_distance_pure(sharp.state, protocol.psi1.state)

    log_b = log_bhattacharyya(rho0, rho1)
    chain = math.sqrt(max(0.0, -math.expm1(2.0 * min(log_b, 0.0))))
    chain_residual = abs(delta - chain)
    bound_raw = math.sqrt(2.0 * eps_up)
    bound_rhs = min(1.0, bound_raw)
    certified = delta <= bound_rhs + tol.eig

    if not certified:
        raise CertificationError(
            f"cheating bound violated: delta={delta:.6g} > sqrt(2 eps)={bound_rhs:.6g}")
    if chain_residual > CHAIN_TOL:
        raise CertificationError(
            f"delta={delta:.12g} disagrees with sqrt(1 - B^2)={chain:.12g}")
    if not is_symplectic(cheat.S, tol=max(tol.sym, 1e-12 * np.linalg.norm(cheat.S) ** 2)):
        raise CertificationError("cheat unitary is not symplectic")

    return AttackReport(
        epsilon_lower=eps_lo,
        epsilon_upper=eps_up,
        cheat_unitary=cheat,
        delta=delta,
        bound_rhs=bound_rhs,
        certified=certified,
        honest_zero_exact=True,
        bhattacharyya=math.exp(log_b),
        chain_residual=chain_residual,
        bound_raw=bound_raw,
        psi1_sharp=sharp,
    )


@dataclasses.dataclass(frozen=True)
class SweepRow:
    param: float
    eps_lower: float
    eps_upper: float
    delta: float
    bound_rhs: float
    certified: bool
    error: str = ""

    def to_dict(self):
        return dataclasses.asdict(self)


SWEEP_COLUMNS = ("param", "eps_lower", "eps_upper", "delta", "bound_rhs", "certified")


def _sweep_row(family, param):
    try:
        report = build_attack(family(param))
    except Exception as exc:  # recorded per row; the sweep goes on
        nan = float("nan")
        return SweepRow(param, nan, nan, nan, nan, False, f"{type(exc).__name__}: {exc}")
    return SweepRow(param, report.epsilon_lower, report.epsilon_upper, report.delta,
                    report.bound_rhs, report.certified)


def sweep(family, grid, max_workers=None):
    """Run :func:`build_attack` on ``family(p)`` for every ``p`` in ``grid``.

    Rows come back in grid order. ``max_workers > 1`` evaluates rows on a
    thread pool; results do not depend on it.
    """
    grid = list(grid)
    if max_workers is None or max_workers <= 1 or len(grid) <= 1:
        return [_sweep_row(family, p) for p in grid]
    ctx = contextvars.copy_context()
    with concurrent.futures.ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(lambda p: ctx.copy().run(_sweep_row, family, p), grid))
