#!/usr/bin/env python3
"""Character table of S3 from explicit matrix representations.

Irreps realized directly: trivial (1-dim), sign (1-dim), and the standard
2-dim rep acting on the plane x+y+z=0 with basis e1-e2, e2-e3. Characters are
traces evaluated on one representative per conjugacy class (identity,
transposition (12), 3-cycle (123)). Also enumerates standard Young tableaux
to cross-check the irrep dimensions.
"""

import itertools

import numpy as np


def perm_matrix_on_plane(perm):
    """Matrix of x_i -> x_{perm^{-1}(i)} restricted to the sum-zero plane."""
    p3 = np.zeros((3, 3))
    for i in range(3):
        p3[perm[i], i] = 1.0
    basis = np.array([[1.0, -1.0, 0.0], [0.0, 1.0, -1.0]]).T  # e1-e2, e2-e3
    return np.linalg.lstsq(basis, p3 @ basis, rcond=None)[0]


def sign(perm):
    s = 1
    for i, j in itertools.combinations(range(len(perm)), 2):
        if perm[i] > perm[j]:
            s = -s
    return s


classes = {"id": (0, 1, 2), "transposition": (1, 0, 2), "3-cycle": (1, 2, 0)}
print("class         trivial  sign  standard(2-dim)")
for name, perm in classes.items():
    chi_std = np.trace(perm_matrix_on_plane(perm))
    print(f"{name:13s} {1:7d} {sign(perm):5d} {chi_std:15.10f}")


def standard_tableaux(shape):
    """Count standard Young tableaux of the given shape by brute force."""
    n = sum(shape)
    cells = [(r, c) for r, row in enumerate(shape) for c in range(row)]
    count = 0
    for order in itertools.permutations(range(n)):
        fill = {cells[i]: order[i] for i in range(n)}
        ok = all(
            fill[(r, c)] < fill[(r, c + 1)] for r, c in cells if (r, c + 1) in fill
        ) and all(fill[(r, c)] < fill[(r + 1, c)] for r, c in cells if (r + 1, c) in fill)
        count += ok
    return count


print("\nSYT counts: (3)=", standard_tableaux((3,)), " (2,1)=", standard_tableaux((2, 1)),
      " (1,1,1)=", standard_tableaux((1, 1, 1)))
