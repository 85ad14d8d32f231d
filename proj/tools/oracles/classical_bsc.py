#!/usr/bin/env python3
"""Scalar reference values for the binary symmetric channel with flip 0.1.

Everything is classical two-point probability arithmetic at 50 digits:
    h(p)        Shannon entropy in nats
    h_a(p)      Renyi entropy (1/(1-a)) log(p^a + (1-p)^a)
    C_a         Renyi capacity log 2 - h_a(p); uniform input is optimal by
                the channel symmetry (also holds for a = infinity)
    chi_a(P)    Sibson mutual information (a/(a-1)) log sum_y (sum_x P(x)
                W(y|x)^a)^(1/a) at the skewed prior P = (0.3, 0.7)
    sc(R)       sup over delta in (0,1] of delta (R - C_{1/(1-delta)}),
                located by ternary search after a dense grid
Printed to 17 significant digits for freezing into the C++ tests.
"""

import mpmath as mp

mp.mp.dps = 50

p = mp.mpf("0.1")
LOG2 = mp.log(2)


def h_renyi(a):
    if a == mp.inf:
        return -mp.log(1 - p)
    return (mp.log(p**a + (1 - p) ** a)) / (1 - a)


def cap(a):
    return LOG2 - h_renyi(a)


holevo = LOG2 - (-p * mp.log(p) - (1 - p) * mp.log(1 - p))
print("holevo (uniform MI)  =", mp.nstr(holevo, 17))
for a in [mp.mpf("1.5"), mp.mpf(2), mp.mpf(4)]:
    print(f"C_{float(a)}                =", mp.nstr(cap(a), 17))
print("C_inf                =", mp.nstr(cap(mp.inf), 17))


def sibson_chi(a, P):
    W = [[1 - p, p], [p, 1 - p]]  # W[x][y]
    inner = sum(
        (sum(P[x] * W[x][y] ** a for x in range(2))) ** (1 / a) for y in range(2)
    )
    return (a / (a - 1)) * mp.log(inner)


Pskew = [mp.mpf("0.3"), mp.mpf("0.7")]
print("chi_2(P=(0.3,0.7))   =", mp.nstr(sibson_chi(mp.mpf(2), Pskew), 17))
print("chi_1.5(P=(0.3,0.7)) =", mp.nstr(sibson_chi(mp.mpf("1.5"), Pskew), 17))


def sc(R):
    def phi(delta):
        if delta == 1:
            return delta * (R - cap(mp.inf))
        return delta * (R - cap(1 / (1 - delta)))

    grid = [mp.mpf(k) / 4096 for k in range(1, 4097)]
    best = max(grid, key=phi)
    lo = max(best - mp.mpf(1) / 4096, mp.mpf(1) / 1000000)
    hi = min(best + mp.mpf(1) / 4096, mp.mpf(1))
    for _ in range(200):  # ternary refinement
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if phi(m1) < phi(m2):
            lo = m1
        else:
            hi = m2
    delta_star = (lo + hi) / 2
    return max(phi(delta_star), phi(mp.mpf(1))), delta_star


for R in [mp.mpf("0.4"), mp.mpf("0.6"), mp.mpf("0.69")]:
    val, ds = sc(R)
    print(f"sc(R={float(R)})          =", mp.nstr(val, 17), "  delta* =", mp.nstr(ds, 8),
          " alpha* =", mp.nstr(1 / (1 - ds), 8))
print("sc(R=0.2)            =", mp.nstr(max(mp.mpf(0), sc(mp.mpf('0.2'))[0]), 17))
