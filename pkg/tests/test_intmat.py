import random

import numpy as np
import pytest

from k3enriques.intmat import det, hnf, intmat, kernel_basis, snf, unimodular_inv
from k3enriques.lattice import _E8_GRAM

from oracles import minors_invariant_factors, naive_det, naive_hnf, random_int_matrix


def test_hnf_already_reduced():
    h, u = hnf([[2, 0], [0, 3]])
    assert h.tolist() == [[2, 0], [0, 3]]
    assert u.tolist() == [[1, 0], [0, 1]]


def test_hnf_unimodular_input():
    h, _ = hnf([[0, 1], [1, 0]])
    assert h.tolist() == [[1, 0], [0, 1]]


def test_hnf_hand_example():
    h, u = hnf([[2, 4], [1, 3]])
    # canonical form with the above-pivot entry reduced mod 2; the row
    # lattice is the same one spanned by (1,3) and (0,2)
    assert h.tolist() == [[1, 1], [0, 2]]
    h2, _ = hnf([[1, 3], [0, 2]])
    assert h2.tolist() == h.tolist()
    assert (u @ intmat([[2, 4], [1, 3]]) == h).all()


def test_snf_divisor_chain_kept():
    s, _, _ = snf([[2, 0], [0, 4]])
    assert s.tolist() == [[2, 0], [0, 4]]


def test_snf_unimodular():
    s, _, _ = snf([[0, 1], [1, 0]])
    assert s.tolist() == [[1, 0], [0, 1]]


def test_snf_hand_example():
    m = intmat([[2, 1], [1, 2]])
    s, u, v = snf(m)
    assert s.tolist() == [[1, 0], [0, 3]]
    assert (u @ m @ v == s).all()


def test_kernel_rank_one():
    k = kernel_basis([[1], [1]])
    assert k.shape == (1, 2)
    assert k[0].tolist() in ([1, -1], [-1, 1])


def test_kernel_injective():
    k = kernel_basis([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert k.shape == (0, 3)


def test_kernel_saturated():
    k = kernel_basis([[2], [4]])
    assert k.shape == (1, 2)
    assert k[0].tolist() in ([2, -1], [-2, 1])


def test_det_examples():
    assert det([[0, 1], [1, 0]]) == -1
    assert det(_E8_GRAM) == 1
    assert det(_E8_GRAM) == naive_det(_E8_GRAM)
    e8_2 = (2 * intmat(_E8_GRAM)).tolist()
    assert det(e8_2) == 256


def test_det_nonsquare_rejected():
    with pytest.raises(ValueError):
        det([[1, 2, 3], [4, 5, 6]])


def test_snf_random_properties():
    rng = random.Random(20240824)
    for _ in range(60):
        r = rng.randint(1, 6)
        c = rng.randint(1, 6)
        m = random_int_matrix(rng, r, c, -10, 10)
        s, u, v = snf(m)
        assert (u @ m @ v == s).all()
        assert abs(det(u)) == 1 and abs(det(v)) == 1
        diag = [int(s[i, i]) for i in range(min(r, c))]
        assert all(d >= 0 for d in diag)
        for a, b in zip(diag, diag[1:]):
            assert b == 0 or (a != 0 and b % a == 0) or (a == 0 and b == 0)


def test_hnf_snf_against_naive_oracles():
    rng = random.Random(7)
    for _ in range(120):
        r = rng.randint(1, 4)
        c = rng.randint(1, 4)
        m = random_int_matrix(rng, r, c, -3, 3)
        h, u = hnf(m)
        assert h.tolist() == naive_hnf(m.tolist())
        assert (u @ m == h).all()
        assert abs(det(u)) == 1
        s, _, _ = snf(m)
        diag = [int(s[i, i]) for i in range(min(r, c)) if s[i, i] != 0]
        assert diag == minors_invariant_factors(m.tolist())


def test_kernel_random_properties():
    rng = random.Random(99)
    for _ in range(60):
        r = rng.randint(1, 5)
        c = rng.randint(1, 5)
        m = random_int_matrix(rng, r, c, -6, 6)
        k = kernel_basis(m)
        assert (k @ m == np.zeros((k.shape[0], c), dtype=object)).all()
        s, _, _ = snf(m)
        rank = sum(1 for i in range(min(r, c)) if s[i, i] != 0)
        assert k.shape[0] + rank == r
        if k.shape[0]:
            sk, _, _ = snf(k)
            assert all(sk[i, i] == 1 for i in range(k.shape[0]))


def test_det_multiplicative():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 5)
        a = random_int_matrix(rng, n, n, -5, 5)
        b = random_int_matrix(rng, n, n, -5, 5)
        assert det(a @ b) == det(a) * det(b)


def test_unimodular_inverse():
    m = intmat([[1, 2], [1, 3]])
    inv = unimodular_inv(m)
    assert (m @ inv == intmat([[1, 0], [0, 1]])).all()
    with pytest.raises(ValueError):
        unimodular_inv([[2, 0], [0, 1]])
