"""Integral even lattices given by Gram matrices, and their discriminant groups.

A lattice is a free Z-module with an integer-valued symmetric bilinear form,
presented by the Gram matrix on a fixed basis.  The discriminant group is the
finite quotient of the dual lattice by the lattice, carrying a torsion
bilinear form (values in Q/Z) and quadratic form (values in Q/2Z).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import prod

import numpy as np

from .intmat import det, intmat, rat_inv, ratmat, snf, unimodular_inv, zeros


class IntegralLattice:
    """An integral lattice presented by a symmetric integer Gram matrix."""

    def __init__(self, gram, label: str | None = None):
        g = intmat(gram)
        if g.shape[0] != g.shape[1]:
            raise ValueError("Gram matrix must be square")
        if not (g == g.T).all():
            raise ValueError("Gram matrix must be symmetric")
        self.gram = g
        self.label = label

    @property
    def rank(self) -> int:
        return self.gram.shape[0]

    def __eq__(self, other):
        return isinstance(other, IntegralLattice) and bool((self.gram == other.gram).all())

    def __repr__(self):
        name = self.label or f"lattice of rank {self.rank}"
        return f"<IntegralLattice {name}>"


_U_GRAM = [[0, 1], [1, 0]]

# Negative-definite E8 Cartan form; doubling it gives the E8(2) matrix used
# throughout the rank-10 ambient constructions.
_E8_GRAM = [
    [-2, 1, 0, 0, 0, 0, 0, 0],
    [1, -2, 1, 0, 0, 0, 0, 0],
    [0, 1, -2, 1, 1, 0, 0, 0],
    [0, 0, 1, -2, 0, 0, 0, 0],
    [0, 0, 1, 0, -2, 1, 0, 0],
    [0, 0, 0, 0, 1, -2, 1, 0],
    [0, 0, 0, 0, 0, 1, -2, 1],
    [0, 0, 0, 0, 0, 0, 1, -2],
]


def builtin(name: str) -> IntegralLattice:
    """Standard lattices: U, E8, Gamma = U + E8, LambdaK3 = U^3 + E8^2."""
    if name == "U":
        return IntegralLattice(_U_GRAM, "U")
    if name == "E8":
        return IntegralLattice(_E8_GRAM, "E8")
    if name == "Gamma":
        L = direct_sum(builtin("U"), builtin("E8"))
        L.label = "Gamma"
        return L
    if name == "LambdaK3":
        L = builtin("U")
        for part in ("U", "U", "E8", "E8"):
            L = direct_sum(L, builtin(part))
        L.label = "LambdaK3"
        return L
    raise ValueError(f"unknown builtin lattice {name!r}")


def diag_lattice(entries, label: str | None = None) -> IntegralLattice:
    """Diagonal lattice diag(entries); zero entries are rejected."""
    entries = [int(e) for e in entries]
    if any(e == 0 for e in entries):
        raise ValueError("diagonal entries must be nonzero")
    g = zeros(len(entries), len(entries))
    for i, e in enumerate(entries):
        g[i, i] = e
    return IntegralLattice(g, label)


def twist(L: IntegralLattice, n: int) -> IntegralLattice:
    """The lattice L(n): same module, form multiplied by n."""
    if n < 1:
        raise ValueError("twist factor must be positive")
    label = f"{L.label}({n})" if L.label and n != 1 else L.label
    return IntegralLattice(n * L.gram, label)


def direct_sum(L1: IntegralLattice, L2: IntegralLattice) -> IntegralLattice:
    """Orthogonal direct sum, block-diagonal Gram."""
    r1, r2 = L1.rank, L2.rank
    g = zeros(r1 + r2, r1 + r2)
    g[:r1, :r1] = L1.gram
    g[r1:, r1:] = L2.gram
    return IntegralLattice(g)


def discriminant(L: IntegralLattice):
    """Signed determinant of the Gram matrix."""
    return det(L.gram)


def is_even(L: IntegralLattice) -> bool:
    return all(L.gram[i, i] % 2 == 0 for i in range(L.rank))


def signature(L: IntegralLattice) -> tuple[int, int]:
    """Sylvester signature (plus, minus) via exact congruence diagonalization.

    Pivots on nonzero diagonal entries; when the remaining block has an
    all-zero diagonal, a row/column addition creates one (this handles
    hyperbolic blocks such as U exactly).
    """
    n = L.rank
    a = ratmat(L.gram)
    plus = minus = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i, i] != 0), None)
        if piv is None:
            off = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i, j] != 0),
                None,
            )
            if off is None:
                raise ValueError("degenerate form has no signature")
            i, j = off
            a[i] += a[j]
            a[:, i] += a[:, j]
            continue
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            a[:, [k, piv]] = a[:, [piv, k]]
        p = a[k, k]
        if p > 0:
            plus += 1
        else:
            minus += 1
        for i in range(k + 1, n):
            if a[i, k] != 0:
                f = a[i, k] / p
                a[i] -= f * a[k]
                a[:, i] -= f * a[:, k]
        k += 1
    return plus, minus


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def _mod2(x: Fraction) -> Fraction:
    return x - 2 * (x.numerator // (2 * x.denominator))


def _prime_powers(n: int) -> list[int]:
    """Prime-power factorization of n as a list [p^e, ...], p ascending."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                q *= p
                n //= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class DiscriminantGroup:
    """The finite group L*/L with its torsion bilinear and quadratic forms.

    divisors   -- orders of the generators (> 1); divisor-chain order when
                  produced by discriminant_group, prime-power order when
                  produced by a formal direct sum.
    generators -- coset representatives in L (x) Q, coordinates mod 1 in [0,1)
    bform      -- matrix of b(g_i, g_j) values, reduced mod 1 into [0,1)
    qvals      -- q(g_i) values, reduced mod 2 into [0,2)
    """

    divisors: tuple
    generators: tuple
    bform: tuple
    qvals: tuple

    @property
    def order(self) -> int:
        return prod(self.divisors, start=1)

    def structure(self) -> tuple:
        """Canonical prime-power multiset of the group, for comparisons."""
        return tuple(sorted(q for d in self.divisors for q in _prime_powers(d)))

    def prime_power_components(self):
        """Split each generator into prime-power components.

        Returns a list of (order, generator, qval) triples sorted by prime,
        then ascending order, then lexicographic on coordinates; the component
        of order p^e inside an order-d generator g is (d / p^e) * g.
        """
        comps = []
        for d, g, q in zip(self.divisors, self.generators, self.qvals):
            for pe in _prime_powers(d):
                a = d // pe
                gen = tuple(_mod1(a * x) for x in g)
                comps.append((pe, gen, _mod2(a * a * q)))
        comps.sort(key=lambda c: (_prime_powers(c[0])[0], c[0], c[1]))
        return comps


def discriminant_group(L: IntegralLattice) -> DiscriminantGroup:
    """Elementary divisors and generators of L*/L, with b and q values.

    Generators are read off the SNF transforms: with U G V = S, the classes
    of the columns of G^-1 U^-1 generate, the i-th having order S[i, i].
    """
    n = L.rank
    if n == 0 or det(L.gram) == 0:
        if n > 0 and det(L.gram) == 0:
            raise ValueError("degenerate form has no discriminant group")
        return DiscriminantGroup((), (), (), ())
    s, u, _ = snf(L.gram)
    t = rat_inv(L.gram) @ ratmat(unimodular_inv(u))
    pairs = []
    for i in range(n):
        d = int(s[i, i])
        if d > 1:
            g = tuple(_mod1(t[j, i]) for j in range(n))
            pairs.append((d, g))
    pairs.sort(key=lambda p: (p[0], p[1]))
    gens = [np.array([Fraction(x) for x in g], dtype=object) for _, g in pairs]
    G = ratmat(L.gram)
    bform = tuple(
        tuple(_mod1(gi @ G @ gj) for gj in gens) for gi in gens
    )
    qvals = tuple(_mod2(gi @ G @ gi) for gi in gens)
    return DiscriminantGroup(
        tuple(d for d, _ in pairs),
        tuple(g for _, g in pairs),
        bform,
        qvals,
    )


def save_lattice(L: IntegralLattice, path) -> None:
    """Write a lattice file: rank and row-major integer Gram array."""
    doc = {
        "label": L.label,
        "rank": L.rank,
        "gram": [int(x) for row in L.gram for x in row],
    }
    with open(path, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


def load_lattice(path) -> IntegralLattice:
    """Read a lattice file produced by save_lattice (or the shipped fixtures)."""
    with open(path) as f:
        doc = json.load(f)
    n = int(doc["rank"])
    flat = doc["gram"]
    if len(flat) != n * n:
        raise ValueError(f"gram array has {len(flat)} entries, expected {n * n}")
    gram = [flat[i * n : (i + 1) * n] for i in range(n)]
    return IntegralLattice(gram, doc.get("label"))


FIXTURES = ("U", "E8", "E8_2", "Gamma", "Gamma_2", "LambdaK3")


def fixture_path(name: str):
    """Filesystem path of a shipped lattice fixture (U, E8, E8_2, ...)."""
    if name not in FIXTURES:
        raise ValueError(f"unknown fixture {name!r}; have {FIXTURES}")
    return resources.files("k3enriques") / "fixtures" / f"{name}.json"
