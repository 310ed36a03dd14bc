"""Quadratic residues, the embedding obstruction, and slope polygon bookkeeping.

The residue side drives the existence criterion: the obstruction condition
asks a twisted discriminant to be a non-square mod p, and the d-search looks
for the smallest twist parameter below p/8 with the prescribed residue class.
The polygon side records the Newton/Hodge slope constraints for the second
cohomology of a K3 surface (rank 22, slopes symmetric about 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

K3_RANK = 22
HODGE_SLOPES = ((Fraction(0), 1), (Fraction(1), 20), (Fraction(2), 1))


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) via Euler's criterion; p an odd prime."""
    if not is_odd_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else 1


def arth(p: int, sigma: int, d: int) -> bool:
    """The non-square obstruction: ((-1)^(sigma+1) d / p) = -1."""
    if not 1 <= sigma <= 10:
        raise ValueError("sigma must be in 1..10")
    if d == 0:
        raise ValueError("d must be nonzero")
    if not is_odd_prime(p) or (2 * d) % p == 0:
        raise ValueError(f"p = {p} must be an odd prime not dividing 2d")
    return legendre((-1) ** (sigma + 1) * d, p) == -1


def find_d(p: int, sigma: int) -> int | None:
    """Smallest d with 0 < 8d < p and the residue class required for sigma.

    -d must be a square mod p for sigma in {2, 4} and a non-square for
    sigma in {3, 5}; returns None when no d below p/8 qualifies.
    """
    if sigma not in (2, 3, 4, 5):
        raise ValueError("sigma must be in 2..5")
    if not is_odd_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    want = 1 if sigma in (2, 4) else -1
    d = 1
    while 8 * d < p:
        if d % p != 0 and legendre(-d, p) == want:
            return d
        d += 1
    return None


def verify_norm_bound(p: int, d: int) -> bool:
    """p > 8d: a norm divisible by 4dp, scaled by 1/(4d)^2, is below -2."""
    if d < 1:
        raise ValueError("d must be positive")
    return p > 8 * d


@dataclass(frozen=True)
class FrobeniusBounds:
    """Bounds on the Frobenius invariants of a K3 covering an Enriques surface."""

    max_height: int
    max_artin: int
    height_reason: str
    artin_reason: str


def frobenius_bounds_enriques() -> FrobeniusBounds:
    """Height <= 6 and Artin invariant <= 5, with their derivations.

    The slope-1 multiplicity 22 - 2h must accommodate a Picard number of at
    least 10, so h <= 6; the rank bound 22 - 2*sigma >= 10 gives sigma <= 6,
    and sigma = 6 is excluded because the twisted discriminant 2^10 is a
    perfect square, so the non-square obstruction fails for every p.
    """
    assert K3_RANK - 2 * 6 >= 10 > K3_RANK - 2 * 7
    return FrobeniusBounds(
        max_height=6,
        max_artin=5,
        height_reason="slope-1 multiplicity 22 - 2h >= 10 forces h <= 6",
        artin_reason="rank 22 - 2*sigma >= 10 plus the sigma = 6 square obstruction",
    )


@dataclass(frozen=True)
class NewtonPolygon:
    """Slope/multiplicity data for the 22-dimensional second cohomology."""

    slopes: tuple  # ((slope, multiplicity), ...) ascending by slope

    def __post_init__(self):
        mults = [m for _, m in self.slopes]
        if any(m < 1 for m in mults) or sum(mults) != K3_RANK:
            raise ValueError("multiplicities must be positive and sum to 22")
        s = [x for x, _ in self.slopes]
        if s != sorted(s):
            raise ValueError("slopes must be ascending")
        by_slope = {x: m for x, m in self.slopes}
        for x, m in self.slopes:
            if by_slope.get(2 - x) != m:
                raise ValueError("slopes must be symmetric about 1")


def newton_slopes(h) -> NewtonPolygon:
    """Newton polygon of a K3 surface of height h (finite or infinity).

    For finite h: slopes 1 - 1/h and 1 + 1/h each with multiplicity h, and
    slope 1 with multiplicity 22 - 2h.  Heights above 10 are rejected since
    the slope-1 multiplicity 22 - 2h would be nonpositive.
    """
    if h == math.inf:
        return NewtonPolygon(((Fraction(1), K3_RANK),))
    h = int(h)
    if h < 1:
        raise ValueError("height must be positive")
    if h >= 11:
        raise ValueError(
            f"height {h} rejected: slope-1 multiplicity 22 - 2h = {K3_RANK - 2 * h} <= 0"
        )
    if h == 1:
        return NewtonPolygon(((Fraction(0), 1), (Fraction(1), 20), (Fraction(2), 1)))
    return NewtonPolygon(
        (
            (Fraction(h - 1, h), h),
            (Fraction(1), K3_RANK - 2 * h),
            (Fraction(h + 1, h), h),
        )
    )


def _heights(slopes) -> list[Fraction]:
    """Polygon heights at integer abscissas 0..22 (sum of the x smallest slopes)."""
    ys = [Fraction(0)]
    for s, m in slopes:
        for _ in range(m):
            ys.append(ys[-1] + s)
    return ys


def polygon_lies_above(np_: NewtonPolygon) -> bool:
    """Whether the polygon lies weakly above the K3 Hodge polygon."""
    newton = _heights(np_.slopes)
    hodge = _heights(HODGE_SLOPES)
    return all(a >= b for a, b in zip(newton, hodge))
