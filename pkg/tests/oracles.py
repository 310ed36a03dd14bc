"""Independent brute-force oracles used to cross-check the library.

These deliberately avoid the library's algorithms: determinants by cofactor
expansion, invariant factors from gcds of minors, Hermite forms by plain
column-at-a-time reduction, and short vectors by exhaustive box enumeration.
"""
from fractions import Fraction
from itertools import combinations, product
from math import gcd, isqrt

import numpy as np

from k3enriques.intmat import rat_inv


def naive_det(m):
    """Cofactor expansion along the first row."""
    m = [list(r) for r in m]
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * naive_det(minor)
    return total


def minors_invariant_factors(m):
    """Invariant factors d_k / d_{k-1} with d_k = gcd of all k x k minors."""
    m = [list(r) for r in m]
    r, c = len(m), len(m[0]) if m else 0
    factors = []
    prev = 1
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                sub = [[m[i][j] for j in cols] for i in rows]
                g = gcd(g, naive_det(sub))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


def naive_hnf(m):
    """Row Hermite form by repeated gcd column reduction, no transform."""
    a = [list(map(int, r)) for r in m]
    rows, cols = len(a), len(a[0]) if a else 0
    row = 0
    for col in range(cols):
        if row == rows:
            break
        while True:
            nz = [i for i in range(row, rows) if a[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][col]))
            a[row], a[piv] = a[piv], a[row]
            again = False
            for i in range(row + 1, rows):
                if a[i][col]:
                    q = a[i][col] // a[row][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[row])]
                    if a[i][col]:
                        again = True
            if not again:
                break
        if a[row][col] == 0:
            continue
        if a[row][col] < 0:
            a[row] = [-x for x in a[row]]
        for i in range(row):
            q = a[i][col] // a[row][col]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[row])]
        row += 1
    return a


def box_short_vectors(gram, bound):
    """All nonzero v with |v^T G v| <= bound in a definite lattice.

    The coordinate box is exact: |x_i| <= sqrt(bound * (Q^-1)_ii) for the
    positive form Q = +-G.
    """
    n = len(gram)
    sign = 1 if gram[0][0] > 0 else -1
    q = [[sign * int(x) for x in row] for row in gram]
    qinv = rat_inv(q)
    radii = []
    for i in range(n):
        t = Fraction(bound) * qinv[i, i]
        radii.append(isqrt(t.numerator * t.denominator) // t.denominator + 1)
    out = []
    for x in product(*(range(-r, r + 1) for r in radii)):
        if not any(x):
            continue
        norm = sum(q[i][j] * x[i] * x[j] for i in range(n) for j in range(n))
        if norm <= bound:
            out.append((x, sign * norm))
    return out


def e8_root_count_euclidean():
    """Count norm-2 vectors of the rank-8 even unimodular lattice in its
    Euclidean model: integer or all-half-integer vectors with even coordinate
    sum.  Box enumeration; for norm 2 the box is {-1, 0, 1}^8 plus the
    half-integer corners.
    """
    count = 0
    for x in product((-1, 0, 1), repeat=8):
        if any(x) and sum(v * v for v in x) == 2 and sum(x) % 2 == 0:
            count += 1
    for s in product((-1, 1), repeat=8):
        x = [Fraction(v, 2) for v in s]
        if sum(v * v for v in x) == 2 and sum(x) % 2 == 0:
            count += 1
    return count


def random_int_matrix(rng, rows, cols, lo, hi):
    return np.array(
        [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], dtype=object
    )


def random_even_symmetric(rng, n, lo, hi):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2 * rng.randint(lo, hi)
        for j in range(i + 1, n):
            a[i][j] = a[j][i] = rng.randint(lo, hi)
    return np.array(a, dtype=object)


def random_unimodular(rng, n, steps=12):
    """Product of random elementary row operations applied to the identity."""
    u = np.array([[1 if i == j else 0 for j in range(n)] for i in range(n)], dtype=object)
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        u[i] += rng.randint(-3, 3) * u[j]
    return u
