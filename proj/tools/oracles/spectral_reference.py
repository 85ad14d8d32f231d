#!/usr/bin/env python3
"""Arbitrary-precision eigenvalues for the fixed 4x4 Hermitian test matrix.

The matrix is defined entrywise (no RNG, so the C++ test can rebuild it):
    re[j][k] = 1 + min(j,k) + (j+1)(k+1)/10
    im[j][k] = 0.3 (j - k)

The complex Hermitian eigenproblem is solved at 60 digits through the real
symmetric embedding [[Re, -Im], [Im, Re]], whose spectrum is that of the
original matrix with every eigenvalue doubled. Output: the four eigenvalues,
descending, grouped from the embedding, printed to 17 significant digits.
"""

import mpmath as mp

mp.mp.dps = 60

N = 4
re = [[mp.mpf(1 + min(j, k)) + mp.mpf((j + 1) * (k + 1)) / 10 for k in range(N)] for j in range(N)]
im = [[mp.mpf(3) / 10 * (j - k) for k in range(N)] for j in range(N)]

emb = mp.zeros(2 * N)
for j in range(N):
    for k in range(N):
        emb[j, k] = re[j][k]
        emb[j, k + N] = -im[j][k]
        emb[j + N, k] = im[j][k]
        emb[j + N, k + N] = re[j][k]

vals = mp.eigsy(emb, eigvals_only=True)
vals = sorted([mp.mpf(v) for v in vals], reverse=True)

# Each eigenvalue of the 4x4 problem appears exactly twice in the embedding.
out = []
i = 0
while i < 2 * N:
    a, b = vals[i], vals[i + 1]
    assert abs(a - b) < mp.mpf("1e-40"), (a, b)
    out.append((a + b) / 2)
    i += 2

for v in out:
    print(mp.nstr(v, 17))
