#!/usr/bin/env python3
"""Scalar references for the qubit depolarizing channel, flip weight 0.2.

The channel maps any pure input to an output with eigenvalues
(1 - q/2, q/2) = (0.9, 0.1), so its minimal output Renyi entropies reduce
to the two-point formula

    Hmin_a = (1/(1-a)) log(0.9^a + 0.1^a),

independent of the input state.  The covariant capacity-like quantity used
by the exponent bound is log 2 - Hmin_a, and the exponent curve is

    sc(R) = sup_{delta in (0,1]} delta (R - (log 2 - Hmin_{1/(1-delta)})).

Same grid + ternary location as tools/oracles/classical_bsc.py.  Values in
nats, 17 significant digits.
"""

import mpmath as mp

mp.mp.dps = 50

a_hi = mp.mpf("0.9")  # 1 - q/2 with q = 0.2
a_lo = mp.mpf("0.1")
LOG2 = mp.log(2)


def hmin(a):
    if a == mp.inf:
        return -mp.log(a_hi)
    return mp.log(a_hi**a + a_lo**a) / (1 - a)


print("Hmin_2               =", mp.nstr(hmin(mp.mpf(2)), 17))
print("Hmin_inf             =", mp.nstr(hmin(mp.inf), 17))
print("cap_2 = log2 - Hmin_2 =", mp.nstr(LOG2 - hmin(mp.mpf(2)), 17))
print("cap_1 (Holevo-like)  =", mp.nstr(LOG2 - hmin(mp.mpf(1) + mp.mpf(10) ** -30), 17))


def sc(R):
    def phi(delta):
        a = mp.inf if delta == 1 else 1 / (1 - delta)
        return delta * (R - (LOG2 - hmin(a)))

    grid = [mp.mpf(k) / 4096 for k in range(1, 4097)]
    best = max(grid, key=phi)
    lo = max(best - mp.mpf(1) / 4096, mp.mpf(1) / 1000000)
    hi = min(best + mp.mpf(1) / 4096, mp.mpf(1))
    for _ in range(200):
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if phi(m1) < phi(m2):
            lo = m1
        else:
            hi = m2
    d = (lo + hi) / 2
    return max(phi(d), phi(mp.mpf(1))), d


for R in [mp.mpf("0.5"), mp.mpf("0.6"), mp.mpf("0.8")]:
    val, ds = sc(R)
    print(f"sc(R={float(R)})          =", mp.nstr(val, 17), "  delta* =", mp.nstr(ds, 8))
