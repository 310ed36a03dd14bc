"""Exact integer matrix routines: HNF, SNF, kernels and determinants.

Matrices are numpy arrays with ``dtype=object`` holding Python ints, so every
operation is arbitrary precision.  Rational helpers use ``fractions.Fraction``.
No floating point is used anywhere in this module.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np


def intmat(rows) -> np.ndarray:
    """Build an exact integer matrix (dtype=object) from nested sequences."""
    rows = [list(r) for r in rows]
    if rows:
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("matrix must be rectangular")
    else:
        ncols = 0
    a = np.zeros((len(rows), ncols), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            a[i, j] = int(x)
    return a


def eye(n: int) -> np.ndarray:
    a = np.zeros((n, n), dtype=object)
    for i in range(n):
        a[i, i] = 1
    return a


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=object)


def hnf(m) -> tuple[np.ndarray, np.ndarray]:
    """Row Hermite normal form.

    Returns (H, U) with U unimodular and U @ m = H.  H is in row echelon
    form with positive pivots; entries above each pivot are reduced into
    [0, pivot).
    """
    a = intmat(m)
    r, c = a.shape
    u = eye(r)
    row = 0
    for col in range(c):
        if row == r:
            break
        # gcd-reduce the entries of this column below `row` onto one pivot
        while True:
            nz = [i for i in range(row, r) if a[i, col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i, col]))
            if piv != row:
                a[[row, piv]] = a[[piv, row]]
                u[[row, piv]] = u[[piv, row]]
            done = True
            for i in range(row + 1, r):
                if a[i, col] != 0:
                    q = a[i, col] // a[row, col]
                    a[i] -= q * a[row]
                    u[i] -= q * u[row]
                    if a[i, col] != 0:
                        done = False
            if done:
                break
        if a[row, col] == 0:
            continue
        if a[row, col] < 0:
            a[row] = -a[row]
            u[row] = -u[row]
        for i in range(row):
            q = a[i, col] // a[row, col]
            if q != 0:
                a[i] -= q * a[row]
                u[i] -= q * u[row]
        row += 1
    return a, u


def snf(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form.

    Returns (S, U, V) with U, V unimodular, U @ m @ V = S diagonal with
    nonnegative entries satisfying the divisor chain d1 | d2 | ...
    """
    a = intmat(m)
    r, c = a.shape
    u, v = eye(r), eye(c)
    t = 0
    while t < min(r, c):
        # move the smallest nonzero entry of the trailing block to (t, t)
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if a[i, j] != 0 and (best is None or abs(a[i, j]) < abs(a[best[0], best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            a[[t, i]] = a[[i, t]]
            u[[t, i]] = u[[i, t]]
        if j != t:
            a[:, [t, j]] = a[:, [j, t]]
            v[:, [t, j]] = v[:, [j, t]]
        while True:
            # clear column t
            clean = True
            for i in range(t + 1, r):
                if a[i, t] != 0:
                    q = a[i, t] // a[t, t]
                    a[i] -= q * a[t]
                    u[i] -= q * u[t]
                    if a[i, t] != 0:
                        a[[t, i]] = a[[i, t]]
                        u[[t, i]] = u[[i, t]]
                        clean = False
            if not clean:
                continue
            # clear row t
            for j in range(t + 1, c):
                if a[t, j] != 0:
                    q = a[t, j] // a[t, t]
                    a[:, j] -= q * a[:, t]
                    v[:, j] -= q * v[:, t]
                    if a[t, j] != 0:
                        a[:, [t, j]] = a[:, [j, t]]
                        v[:, [t, j]] = v[:, [j, t]]
                        clean = False
            if not clean:
                continue
            # enforce divisibility of the trailing block by the pivot
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i, j] % a[t, t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] += a[bad]
            u[t] += u[bad]
        if a[t, t] < 0:
            a[t] = -a[t]
            u[t] = -u[t]
        t += 1
    return a, u, v


def kernel_basis(m) -> np.ndarray:
    """Basis of the saturated left integer kernel {x : x @ m = 0} (rows)."""
    a = intmat(m)
    h, u = hnf(a)
    rows = [i for i in range(a.shape[0]) if all(x == 0 for x in h[i])]
    out = zeros(len(rows), a.shape[0])
    for k, i in enumerate(rows):
        out[k] = u[i]
    return out


def det(m):
    """Exact determinant via fraction-free (Bareiss) elimination."""
    a = intmat(m)
    n, c = a.shape
    if n != c:
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def ratmat(rows) -> np.ndarray:
    """Build an exact rational matrix (dtype=object, Fraction entries)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    a = np.zeros((len(rows), ncols), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            a[i, j] = Fraction(x)
    return a


def rat_inv(m) -> np.ndarray:
    """Exact inverse of a square matrix, entries as Fractions."""
    a = ratmat(m)
    n, c = a.shape
    if n != c:
        raise ValueError("inverse requires a square matrix")
    inv = ratmat(eye(n))
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i, col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            inv[[col, piv]] = inv[[piv, col]]
        f = a[col, col]
        a[col] = a[col] / f
        inv[col] = inv[col] / f
        for i in range(n):
            if i != col and a[i, col] != 0:
                f = a[i, col]
                a[i] -= f * a[col]
                inv[i] -= f * inv[col]
    return inv


def unimodular_inv(u) -> np.ndarray:
    """Integer inverse of a unimodular integer matrix."""
    inv = rat_inv(u)
    out = zeros(*inv.shape)
    for i in range(inv.shape[0]):
        for j in range(inv.shape[1]):
            x = inv[i, j]
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            out[i, j] = int(x)
    return out
