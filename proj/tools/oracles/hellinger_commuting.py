#!/usr/bin/env python3
"""Scalar oracle for commuting (classical) divergence quantities used in tests.

For diagonal rho = diag(1/2, 1/2) and sigma = diag(1/4, 3/4) everything
reduces to two-point probability vectors:
    Q_alpha (all three families coincide) = sum_i p_i^a q_i^(1-a)
    arc weights  t_i ~ p_i^a q_i^(1-a), normalized
    D_alpha = log(Q_alpha) / (a - 1)          (states, so psi_1 = 0)
Printed to 17 significant digits for freezing into the C++ tests.
"""

import mpmath as mp

mp.mp.dps = 50

p = [mp.mpf(1) / 2, mp.mpf(1) / 2]
q = [mp.mpf(1) / 4, mp.mpf(3) / 4]


def report(a):
    terms = [pi**a * qi ** (1 - a) for pi, qi in zip(p, q)]
    Q = sum(terms)
    arc = [t / Q for t in terms]
    print(f"alpha = {a}")
    print("  Q_alpha      =", mp.nstr(Q, 17))
    print("  D_alpha      =", mp.nstr(mp.log(Q) / (a - 1), 17))
    print("  arc weights  =", [mp.nstr(t, 17) for t in arc])


report(mp.mpf(1) / 2)
report(mp.mpf(2))

kl = sum(pi * mp.log(pi / qi) for pi, qi in zip(p, q))
print("KL(p||q)       =", mp.nstr(kl, 17), " (= 0.5*log(4/3):", mp.nstr(mp.log(mp.mpf(4) / 3) / 2, 17), ")")
