import random
from fractions import Fraction

import pytest

from k3enriques.intmat import det
from k3enriques.lattice import (
    IntegralLattice,
    builtin,
    diag_lattice,
    direct_sum,
    discriminant,
    discriminant_group,
    fixture_path,
    is_even,
    load_lattice,
    save_lattice,
    signature,
    twist,
)

from oracles import random_even_symmetric, random_unimodular


def test_builtin_u():
    assert builtin("U").gram.tolist() == [[0, 1], [1, 0]]
    assert signature(builtin("U")) == (1, 1)


def test_builtin_gamma():
    g = builtin("Gamma")
    assert g.rank == 10
    assert discriminant(g) == -1


def test_builtin_lambda():
    lam = builtin("LambdaK3")
    assert lam.rank == 22
    assert signature(lam) == (3, 19)
    assert discriminant(lam) == -1


def test_builtin_unknown():
    with pytest.raises(ValueError):
        builtin("D4")


def test_diag_lattice():
    m21 = diag_lattice([4, -4])
    assert m21.gram.tolist() == [[4, 0], [0, -4]]
    assert diag_lattice([-4, -4, -4, -4]).rank == 4
    with pytest.raises(ValueError):
        diag_lattice([4, 0])


def test_twist():
    assert twist(builtin("U"), 2).gram.tolist() == [[0, 2], [2, 0]]
    e8_2 = twist(builtin("E8"), 2)
    assert all(e8_2.gram[i, i] == -4 for i in range(8))
    assert all(x in (0, 2, -4) for row in e8_2.gram for x in row)
    assert twist(builtin("E8"), 1) == builtin("E8")


def test_direct_sum():
    g = direct_sum(builtin("U"), builtin("E8"))
    assert g.rank == 10 and discriminant(g) == -1
    g2 = direct_sum(twist(builtin("U"), 2), twist(builtin("E8"), 2))
    assert discriminant(g2) == -(2**10)
    empty = IntegralLattice([])
    assert direct_sum(builtin("U"), empty) == builtin("U")


def test_signature_examples():
    assert signature(builtin("E8")) == (0, 8)
    gamma2 = twist(direct_sum(builtin("U"), builtin("E8")), 2)
    assert signature(gamma2) == (1, 9)
    with pytest.raises(ValueError):
        signature(IntegralLattice([[1, 1], [1, 1]]))


def test_signature_congruence_invariant():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(1, 6)
        g = random_even_symmetric(rng, n, -3, 3)
        if det(g) == 0:
            continue
        L = IntegralLattice(g)
        u = random_unimodular(rng, n)
        assert signature(IntegralLattice(u @ g @ u.T)) == signature(L)


def test_is_even():
    assert is_even(builtin("U"))
    assert not is_even(IntegralLattice([[1]]))
    assert is_even(twist(builtin("E8"), 2))


def test_discriminant_examples():
    gamma2 = twist(direct_sum(builtin("U"), builtin("E8")), 2)
    assert discriminant(gamma2) == -1024
    assert discriminant(builtin("LambdaK3")) == -1
    assert discriminant(diag_lattice([4 * 3, -4])) == -48


def test_discriminant_group_unimodular_trivial():
    dg = discriminant_group(builtin("Gamma"))
    assert dg.divisors == () and dg.order == 1


def test_discriminant_group_u2():
    dg = discriminant_group(twist(builtin("U"), 2))
    assert dg.divisors == (2, 2)
    assert set(dg.generators) == {
        (Fraction(1, 2), Fraction(0)),
        (Fraction(0), Fraction(1, 2)),
    }
    assert dg.qvals == (Fraction(0), Fraction(0))
    assert dg.bform[0][1] == Fraction(1, 2)


def test_discriminant_group_gamma2():
    gamma2 = twist(direct_sum(builtin("U"), builtin("E8")), 2)
    dg = discriminant_group(gamma2)
    assert dg.divisors == (2,) * 10
    assert dg.order == 1024


def test_discriminant_group_degenerate_rejected():
    with pytest.raises(ValueError):
        discriminant_group(IntegralLattice([[2, 2], [2, 2]]))


def test_generator_orders_and_forms():
    L = diag_lattice([4, -4])
    dg = discriminant_group(L)
    assert dg.divisors == (4, 4)
    for d, g, q in zip(dg.divisors, dg.generators, dg.qvals):
        assert all((d * x).denominator == 1 for x in g)
        assert 0 <= q < 2
    for i, row in enumerate(dg.bform):
        for j, b in enumerate(row):
            assert 0 <= b < 1
            assert b == dg.bform[j][i]
            if i == j:
                # q(g) reduces to b(g, g) mod 1
                assert (dg.qvals[i] - b) % 1 == 0


def test_order_equals_det_random():
    rng = random.Random(13)
    done = 0
    while done < 40:
        n = rng.randint(1, 5)
        g = random_even_symmetric(rng, n, -3, 3)
        d = det(g)
        if d == 0:
            continue
        dg = discriminant_group(IntegralLattice(g))
        assert dg.order == abs(d)
        done += 1


def test_twist_scales_discriminant():
    rng = random.Random(5)
    for _ in range(15):
        n = rng.randint(1, 4)
        g = random_even_symmetric(rng, n, -3, 3)
        if det(g) == 0:
            continue
        L = IntegralLattice(g)
        for m in (2, 3):
            Lm = twist(L, m)
            assert discriminant(Lm) == m**n * discriminant(L)
            assert signature(Lm) == signature(L)


def test_direct_sum_divisor_structure():
    a = diag_lattice([4, -4])
    b = diag_lattice([-2, 6])
    dg = discriminant_group(direct_sum(a, b))
    combined = discriminant_group(a).structure() + discriminant_group(b).structure()
    assert dg.structure() == tuple(sorted(combined))


def test_file_roundtrip(tmp_path):
    L = twist(builtin("U"), 2)
    path = tmp_path / "u2.json"
    save_lattice(L, path)
    back = load_lattice(path)
    assert back == L


def test_fixtures_match_builtins():
    assert load_lattice(fixture_path("U")) == builtin("U")
    assert load_lattice(fixture_path("E8")) == builtin("E8")
    assert load_lattice(fixture_path("E8_2")) == twist(builtin("E8"), 2)
    assert load_lattice(fixture_path("Gamma")) == builtin("Gamma")
    gamma2 = direct_sum(twist(builtin("U"), 2), twist(builtin("E8"), 2))
    assert load_lattice(fixture_path("Gamma_2")) == gamma2
    assert load_lattice(fixture_path("LambdaK3")) == builtin("LambdaK3")


def test_load_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"rank": 2, "gram": [1, 2, 3]}')
    with pytest.raises(ValueError):
        load_lattice(path)
