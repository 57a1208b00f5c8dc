"""
Changing a committed bit
========================

In a Gaussian bit commitment Alice sends half of ``psi_b`` to Bob. If Bob's
halves ``rho_0`` and ``rho_1`` are close (the scheme conceals well), Alice
can commit to 0 and later turn her state into one close to ``psi_1`` with a
Gaussian unitary on her own modes.
"""

from gaussbc import build_attack, concealment
from gaussbc.families import displaced_pair, perfectly_concealing, squeezed_random

###############################################################################
# Bob's states are coherent states a small distance apart.
protocol = displaced_pair(displacement=0.2)
lo, up = concealment(protocol)
print(f"Bob's distinguishing power: {lo:.4f} <= D <= {up:.4f}")

report = build_attack(protocol)
print(f"Alice's reveal of 1 is off by delta = {report.delta:.4f}")
print(f"guaranteed bound sqrt(2 eps) = {report.bound_rhs:.4f}, certified: {report.certified}")
print(f"delta against sqrt(1 - B^2): residual {report.chain_residual:.2e}")

###############################################################################
# The cheat is a concrete symplectic matrix plus displacement.
print("cheat S =\n", report.cheat_unitary.S)
print("cheat d =", report.cheat_unitary.d)

###############################################################################
# When Bob's states coincide the cheat is perfect.
report = build_attack(perfectly_concealing(n=2, seed=4))
print(f"perfectly concealing: delta = {report.delta:.2e}")

###############################################################################
# Random squeezed protocols behave the same way.
for seed in range(3):
    report = build_attack(squeezed_random(n=2, seed=seed, perturbation=0.1))
    print(f"seed {seed}: eps <= {report.epsilon_upper:.4f}, delta = {report.delta:.4f}, "
          f"bound = {report.bound_rhs:.4f}")
