r"""Real symplectic linear algebra in the interleaved ordering
:math:`(x_1, p_1, \ldots, x_n, p_n)`.

The vacuum covariance matrix is the identity, so every covariance matrix
satisfies :math:`\gamma + i\Omega \geq 0` and has symplectic eigenvalues
:math:`\nu_k \geq 1`.
"""

import dataclasses

import numpy as np
import scipy.linalg
from scipy.stats import unitary_group

from . import tolerances
from .errors import DimensionError, GaugeError, PhysicalityError

_OMEGA1 = np.array([[0.0, 1.0], [-1.0, 0.0]])
_SIGMA_Z1 = np.diag([1.0, -1.0])


def _frozen(a):
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


def _modes_of(dim):
    if dim % 2:
        raise DimensionError(f"phase-space dimension must be even, got {dim}")
    return dim // 2


def omega(n):
    """Symplectic form on ``n`` modes, the direct sum of ``[[0, 1], [-1, 0]]``."""
    if int(n) != n or n < 1:
        raise DimensionError(f"mode count must be a positive integer, got {n}")
    return np.kron(np.eye(int(n)), _OMEGA1)


def sigma_z(n):
    """Direct sum of ``diag(1, -1)``: the phase-space image of transposition."""
    if int(n) != n or n < 1:
        raise DimensionError(f"mode count must be a positive integer, got {n}")
    return np.kron(np.eye(int(n)), _SIGMA_Z1)


def is_symplectic(S, tol=1e-10):
    """Return True iff ``||S Omega S^T - Omega||_F <= tol``."""
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {S.shape}")
    W = omega(_modes_of(S.shape[0]))
    return bool(np.linalg.norm(S @ W @ S.T - W) <= tol)


def symplectic_residual(S):
    """Frobenius norm of ``S Omega S^T - Omega``."""
    S = np.asarray(S, dtype=float)
    W = omega(_modes_of(S.shape[0]))
    return float(np.linalg.norm(S @ W @ S.T - W))


def symplectic_inverse(S):
    """Inverse of a symplectic matrix, ``Omega^T S^T Omega``.

    Exact for symplectic input and better conditioned than a generic solve.
    """
    S = np.asarray(S, dtype=float)
    W = omega(_modes_of(S.shape[0]))
    return W.T @ S.T @ W


def direct_sum(*blocks):
    return scipy.linalg.block_diag(*blocks)


def embed(S, modes, n):
    """Embed a ``2k x 2k`` matrix acting on ``modes`` into ``n`` modes."""
    S = np.asarray(S, dtype=float)
    modes = list(modes)
    if S.shape != (2 * len(modes), 2 * len(modes)):
        raise DimensionError(
            f"matrix of shape {S.shape} does not act on {len(modes)} modes")
    idx = _quadrature_index(modes, n)
    out = np.eye(2 * n)
    out[np.ix_(idx, idx)] = S
    return out


def _quadrature_index(modes, n):
    modes = list(modes)
    if len(set(modes)) != len(modes):
        raise DimensionError(f"repeated mode index in {modes}")
    for m in modes:
        if not 0 <= m < n:
            raise DimensionError(f"mode index {m} out of range for {n} modes")
    return np.array([q for m in modes for q in (2 * m, 2 * m + 1)], dtype=int)


@dataclasses.dataclass(frozen=True, eq=False)
class GaussianUnitary:
    """Phase-space action of a Gaussian unitary.

    Moments transform as ``mu -> S mu + d`` and ``gamma -> S gamma S^T``.
    Composition is ``(S2, d2) @ (S1, d1) = (S2 S1, S2 d1 + d2)``, i.e. the
    right operand acts first.
    """

    S: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        S = np.asarray(self.S, dtype=float)
        if S.ndim != 2 or S.shape[0] != S.shape[1]:
            raise DimensionError(f"S must be square, got shape {S.shape}")
        n = _modes_of(S.shape[0])
        d = np.zeros(2 * n) if self.d is None else np.asarray(self.d, dtype=float)
        if d.shape != (2 * n,):
            raise DimensionError(f"displacement must have length {2 * n}, got {d.shape}")
        # Scale-aware guard: heavily squeezed composites carry roundoff ~ eps ||S||^2.
        scale = max(1.0, float(np.linalg.norm(S)) ** 2)
        res = symplectic_residual(S)
        if res > 1e-8 * scale:
            raise PhysicalityError(f"S is not symplectic (residual {res:.3e})", res)
        object.__setattr__(self, "S", _frozen(S))
        object.__setattr__(self, "d", _frozen(d))

    @property
    def n(self):
        return self.S.shape[0] // 2

    @classmethod
    def identity(cls, n):
        return cls(np.eye(2 * n), np.zeros(2 * n))

    @classmethod
    def displacement(cls, d):
        d = np.asarray(d, dtype=float)
        return cls(np.eye(d.size), d)

    def inverse(self):
        Sinv = symplectic_inverse(self.S)
        return GaussianUnitary(Sinv, -Sinv @ self.d)

    def __matmul__(self, other):
        if not isinstance(other, GaussianUnitary):
            return NotImplemented
        if other.n != self.n:
            raise DimensionError(f"cannot compose {self.n}-mode and {other.n}-mode unitaries")
        return GaussianUnitary(self.S @ other.S, self.S @ other.d + self.d)

    def to_dict(self):
        return {"S": self.S.tolist(), "d": self.d.tolist()}


def compose(second, first):
    """``second`` after ``first``."""
    return second @ first


def star_conjugate(U):
    r"""Phase-space action of the Fock-basis complex conjugate :math:`U^*`.

    Transposition reflects momenta, so ``U*`` acts with
    ``(Sigma_Z S Sigma_Z, Sigma_Z d)``.
    """
    Z = sigma_z(U.n)
    return GaussianUnitary(Z @ U.S @ Z, Z @ U.d)


def symplectic_eigenvalues(gamma):
    """Symplectic spectrum from the moduli of the eigenvalues of ``i Omega gamma``.

    Returned sorted in descending order. Independent of :func:`williamson`.
    """
    gamma = np.asarray(gamma, dtype=float)
    n = _modes_of(gamma.shape[0])
    ev = np.abs(np.linalg.eigvals(1j * omega(n) @ gamma))
    ev = np.sort(ev)[::-1]
    # eigenvalues come in +-nu pairs; average each pair
    return 0.5 * (ev[0::2] + ev[1::2])


def heisenberg_min_eigenvalue(gamma):
    """Minimum eigenvalue of the Hermitian matrix ``gamma + i Omega``."""
    gamma = np.asarray(gamma, dtype=float)
    n = _modes_of(gamma.shape[0])
    g = 0.5 * (gamma + gamma.T)
    return float(np.linalg.eigvalsh(g + 1j * omega(n))[0])


def _check_covariance(gamma, tol_eig):
    gamma = np.asarray(gamma, dtype=float)
    if gamma.ndim != 2 or gamma.shape[0] != gamma.shape[1]:
        raise DimensionError(f"covariance must be square, got shape {gamma.shape}")
    _modes_of(gamma.shape[0])
    tol = tolerances.get()
    asym = float(np.linalg.norm(gamma - gamma.T))
    if asym > tol.sym * max(1.0, float(np.linalg.norm(gamma))):
        raise DimensionError(f"covariance is not symmetric (residual {asym:.3e})")
    lam = heisenberg_min_eigenvalue(gamma)
    if lam < -tol_eig:
        raise PhysicalityError(
            f"Heisenberg inequality violated: min eig(gamma + i Omega) = {lam:.3e}", lam)
    return 0.5 * (gamma + gamma.T)


@dataclasses.dataclass(frozen=True, eq=False)
class WilliamsonDecomposition:
    """``S gamma S^T = diag(nu_1, nu_1, ..., nu_n, nu_n)`` with ``nu`` descending."""

    S: np.ndarray
    nu: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "S", _frozen(self.S))
        object.__setattr__(self, "nu", _frozen(self.nu))

    @property
    def normal_form(self):
        return np.diag(np.repeat(self.nu, 2))


def williamson(gamma, tol_eig=None):
    r"""Williamson decomposition of a covariance matrix.

    Works through the antisymmetric matrix
    :math:`A = \gamma^{1/2}\Omega\gamma^{1/2}`: its real Schur form
    :math:`A = O T O^T` has ``2 x 2`` blocks ``[[0, nu], [-nu, 0]]``, and
    :math:`S = D^{1/2} O^T \gamma^{-1/2}` is symplectic with
    :math:`S\gamma S^T = D`.

    Args:
        gamma: real symmetric ``2n x 2n`` covariance matrix.
        tol_eig: Heisenberg slack; defaults to the active ``eig`` tolerance.

    Returns:
        WilliamsonDecomposition with ``nu`` sorted descending. Ties keep the
        Schur order, so the result is deterministic for a given input.

    Raises:
        DimensionError: non-square, odd-sized or non-symmetric input.
        PhysicalityError: ``gamma + i Omega`` has an eigenvalue below ``-tol_eig``.
    """
    if tol_eig is None:
        tol_eig = tolerances.get().eig
    gamma = _check_covariance(gamma, tol_eig)
    n = gamma.shape[0] // 2

    w, Q = np.linalg.eigh(gamma)
    if w[0] <= 0:
        raise PhysicalityError(f"covariance is not positive definite (min eig {w[0]:.3e})", w[0])
    rw = np.sqrt(w)
    g_half = (Q * rw) @ Q.T
    g_mhalf = (Q / rw) @ Q.T

    A = g_half @ omega(n) @ g_half
    A = 0.5 * (A - A.T)
    T, O = scipy.linalg.schur(A, output="real")

    nu = np.empty(n)
    O = O.copy()
    for k in range(n):
        i, j = 2 * k, 2 * k + 1
        b = 0.5 * (T[i, j] - T[j, i])
        if b < 0:
            O[:, [i, j]] = O[:, [j, i]]
            b = -b
        nu[k] = b

    order = np.argsort(-nu, kind="stable")
    nu = nu[order]
    cols = np.array([q for k in order for q in (2 * k, 2 * k + 1)])
    O = O[:, cols]

    S = np.repeat(np.sqrt(nu), 2)[:, None] * (O.T @ g_mhalf)
    return WilliamsonDecomposition(S, nu)


def williamson_residuals(gamma, dec):
    """``(symplecticity residual, relative reconstruction residual)``."""
    gamma = np.asarray(gamma, dtype=float)
    rec = dec.S @ gamma @ dec.S.T - dec.normal_form
    return symplectic_residual(dec.S), float(np.linalg.norm(rec) / np.linalg.norm(gamma))


def tmsv_normal_form(nu):
    r"""Covariance of ``prod_k TMSV(nu_k)`` in ``A|B`` ordering.

    Mode ``k`` of side A is paired with mode ``k`` of side B:
    ``[[nu I, c sigma_Z], [c sigma_Z, nu I]]`` with ``c = sqrt(nu^2 - 1)``.
    """
    nu = np.atleast_1d(np.asarray(nu, dtype=float))
    if np.any(nu < 1.0 - tolerances.get().eig):
        raise PhysicalityError(f"symplectic eigenvalues must be >= 1, got {nu}", float(nu.min()))
    nu = np.maximum(nu, 1.0)
    diag = np.repeat(nu, 2)
    c = np.sqrt(np.maximum(nu * nu - 1.0, 0.0))
    cross = np.diag(np.repeat(c, 2) * np.tile([1.0, -1.0], nu.size))
    return np.block([[np.diag(diag), cross], [cross, np.diag(diag)]])


def _passive_polar(M):
    """Orthogonal symplectic matrix closest to ``M`` (Procrustes over U(n)).

    Orthogonal symplectic matrices are the ones whose ``2 x 2`` blocks read
    ``[[a, b], [-b, a]]``, i.e. the complex matrix ``a + i b`` is unitary.
    """
    m = M.shape[0] // 2
    a = 0.5 * (M[0::2, 0::2] + M[1::2, 1::2])
    b = 0.5 * (M[0::2, 1::2] - M[1::2, 0::2])
    U, _, Vh = np.linalg.svd(a + 1j * b)
    Z = U @ Vh
    R = np.empty((2 * m, 2 * m))
    R[0::2, 0::2] = Z.real
    R[1::2, 1::2] = Z.real
    R[0::2, 1::2] = Z.imag
    R[1::2, 0::2] = -Z.imag
    return R


@dataclasses.dataclass(frozen=True, eq=False)
class NormalModeDecomposition:
    """``(S_A + S_B) gamma (S_A + S_B)^T = tmsv_normal_form(nu)``."""

    S_A: np.ndarray
    S_B: np.ndarray
    nu: np.ndarray

    def __post_init__(self):
        for name in ("S_A", "S_B", "nu"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def S(self):
        return direct_sum(self.S_A, self.S_B)

    def residual(self, gamma):
        gamma = np.asarray(gamma, dtype=float)
        S = self.S
        return float(np.linalg.norm(S @ gamma @ S.T - tmsv_normal_form(self.nu))
                     / np.linalg.norm(gamma))


def _split(gamma, n_a):
    dim = gamma.shape[0]
    k = 2 * n_a
    if gamma.shape != (dim, dim) or dim % 4 or k * 2 != dim:
        raise DimensionError(
            f"expected a {4 * n_a}x{4 * n_a} covariance with equal sides, got {gamma.shape}")
    return gamma[:k, :k], gamma[k:, k:], gamma[:k, k:]


def _align_side_a(gamma, wb, tol_eig):
    """Williamson on side A, then rotate side A so the cross block becomes
    ``sqrt(nu^2 - 1) sigma_Z`` against the fixed side-B frame ``wb``."""
    n = wb.nu.size
    g_a, _, C = _split(gamma, n)
    wa = williamson(g_a, tol_eig=tol_eig)
    Cp = wa.S @ C @ wb.S.T
    nu = 0.5 * (wa.nu + wb.nu)
    c = np.sqrt(np.maximum(nu * nu - 1.0, 0.0))
    target = np.repeat(c, 2) * np.tile([1.0, -1.0], n)
    # R Cp = diag(target): Procrustes against the target, weighted by c
    R = _passive_polar(target[:, None] * Cp.T)
    return R @ wa.S, nu


def normal_mode_decompose(gamma, n_a=None, side_b=None, tol_eig=None):
    """Normal-mode (Gaussian Schmidt) decomposition of a pure bipartite state.

    Args:
        gamma: ``4n x 4n`` covariance of a pure state, side A first.
        n_a: modes per side (default: half of the modes).
        side_b: optional precomputed :class:`WilliamsonDecomposition` of the
            B block, used to share the B-side frame between several states.
        tol_eig: purity / Heisenberg tolerance.

    Raises:
        DimensionError: unequal sides or bad shape.
        PhysicalityError: the global state is not pure within ``tol_eig``.
        GaugeError: the normal form could not be reached (residual above the
            ``dec`` tolerance, or ``match`` when ``side_b`` is borrowed).
    """
    tol = tolerances.get()
    if tol_eig is None:
        tol_eig = tol.eig
    gamma = _check_covariance(gamma, tol_eig)
    n_total = gamma.shape[0] // 2
    if n_a is None:
        n_a = n_total // 2
    if 2 * n_a != n_total:
        raise DimensionError(f"partition {n_a}|{n_total - n_a} is not balanced")
    nu_global = symplectic_eigenvalues(gamma)
    worst = float(np.max(np.abs(nu_global - 1.0)))
    if worst > tol_eig:
        raise PhysicalityError(f"global state is mixed (max |nu - 1| = {worst:.3e})", worst)

    _, g_b, _ = _split(gamma, n_a)
    wb = williamson(g_b, tol_eig=tol_eig) if side_b is None else side_b
    S_A, nu = _align_side_a(gamma, wb, tol_eig)
    dec = NormalModeDecomposition(S_A, wb.S, nu)
    res = dec.residual(gamma)
    # a borrowed B frame may come from a state that matches only to tol.match
    limit = tol.dec if side_b is None else tol.match
    if not res <= limit:
        raise GaugeError(f"normal-mode gauge unresolved (residual {res:.3e})", res)
    return dec


def _rng(seed):
    return np.random.default_rng(seed)


def passive_symplectic(U):
    """Orthogonal symplectic matrix of an ``n x n`` unitary (interleaved ordering)."""
    U = np.asarray(U)
    n = U.shape[0]
    R = np.empty((2 * n, 2 * n))
    R[0::2, 0::2] = U.real
    R[1::2, 1::2] = U.real
    R[0::2, 1::2] = -U.imag
    R[1::2, 0::2] = U.imag
    return R


def random_symplectic(n, squeeze_bound=1.0, seed=None):
    """Random symplectic matrix in Euler form ``O1 diag(e^-r, e^r) O2``.

    The passive factors come from Haar-random unitaries and the squeezing
    parameters are uniform in ``[-squeeze_bound, squeeze_bound]``.
    """
    if squeeze_bound < 0:
        raise ValueError("squeeze_bound must be non-negative")
    rng = _rng(seed)
    if n == 1:
        U1 = np.exp(1j * rng.uniform(0, 2 * np.pi, size=(1, 1)))
        U2 = np.exp(1j * rng.uniform(0, 2 * np.pi, size=(1, 1)))
    else:
        U1 = unitary_group.rvs(n, random_state=rng)
        U2 = unitary_group.rvs(n, random_state=rng)
    r = rng.uniform(-squeeze_bound, squeeze_bound, size=n)
    Z = np.diag(np.exp(np.stack([-r, r], axis=1).ravel()))
    return passive_symplectic(U1) @ Z @ passive_symplectic(U2)


def random_covariance(n, pure=False, squeeze_bound=1.0, temp_bound=10.0, seed=None, nu=None):
    """Random covariance ``S diag(nu) S^T``.

    Args:
        n: mode count.
        pure: force all symplectic eigenvalues to 1.
        squeeze_bound: bound on the squeezing of the random symplectic.
        temp_bound: symplectic eigenvalues are uniform in ``[1, temp_bound]``.
        seed: RNG seed.
        nu: explicit symplectic spectrum (overrides ``pure``/``temp_bound``);
            handy for degenerate spectra.
    """
    if temp_bound < 1:
        raise ValueError("temp_bound must be >= 1")
    rng = _rng(seed)
    S = random_symplectic(n, squeeze_bound, seed=rng)
    if nu is not None:
        nu = np.broadcast_to(np.asarray(nu, dtype=float), (n,))
    elif pure:
        nu = np.ones(n)
    else:
        nu = rng.uniform(1.0, temp_bound, size=n)
    g = S @ np.diag(np.repeat(nu, 2)) @ S.T
    return 0.5 * (g + g.T)
