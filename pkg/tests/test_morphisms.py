import random

import pytest

from awgb.errors import AlphabetMismatch, IndexOutOfRange
from awgb.ideal import IdealOracle
from awgb.morphisms import (GenMap, apply, braid_pairs, check_equal_mod_ideal, check_homomorphism,
                            check_inverses, compose, compose_all, delta, delta_prime, identity, maps_for)
from awgb.ncpoly import A, NcPoly, alphabet, qcomm
from awgb.presentation import relations


def gens(n):
    al = alphabet("A", n)
    return al, (lambda i, j: NcPoly.gen(al, A(i, j)))


def test_delta0_at_rank_four():
    _, a = gens(4)
    d = delta(4, 0)
    assert d[1, 1] == a(1, 4)
    assert d[1, 4] == a(1, 1)
    assert d[1, 2] == -qcomm(a(2, 4), a(1, 2)) + a(3, 4) * a(1, 1) + a(2, 2) * a(1, 4)
    assert d[2, 3] == a(2, 3)
    assert d.label == "delta[0]"


def test_delta2_at_rank_four():
    _, a = gens(4)
    d = delta(4, 2)
    assert d[2, 2] == a(3, 3) and d[3, 3] == a(2, 2)
    assert d[1, 2] == -qcomm(a(2, 3), a(1, 2)) + a(3, 3) * a(1, 1) + a(2, 2) * a(1, 3)
    assert d[3, 4] == -qcomm(a(2, 3), a(3, 4)) + a(2, 2) * a(4, 4) + a(3, 3) * a(2, 4)
    assert d[2, 3] == a(2, 3)
    assert d[1, 3] == a(1, 3)


def test_delta_prime_literal_and_reversed():
    _, a = gens(3)
    lit = delta_prime(3, 1, literal=True)
    assert lit[2, 3] == -qcomm(a(1, 2), a(2, 3)) + a(1, 1) * a(3, 3) + a(2, 2) * a(1, 3)
    rev = delta_prime(3, 1)
    assert rev[2, 3] == -qcomm(a(2, 3), a(1, 2)) + a(1, 1) * a(3, 3) + a(2, 2) * a(1, 3)
    assert rev.label == "delta'[1]"


def test_last_index_has_empty_row_range():
    _, a = gens(4)
    d = delta(4, 3)
    assert d[4, 4] == a(3, 3)
    assert set(d.moved()) == {A(3, 3), A(4, 4), A(1, 3), A(2, 3)}


def test_delta0_at_rank_two_is_a_swap():
    _, a = gens(2)
    d = delta(2, 0)
    assert d[1, 1] == a(1, 2) and d[1, 2] == a(1, 1)
    assert d[2, 2] == a(2, 2)


def test_index_errors():
    for n, i in [(3, 3), (3, -1), (1, 0)]:
        with pytest.raises(IndexOutOfRange):
            delta(n, i)
    with pytest.raises(ValueError):
        GenMap(alphabet("A", 2), {}, "empty")


def test_apply_examples():
    _, a = gens(4)
    assert apply(delta(4, 0), a(2, 3)) == a(2, 3)
    p = a(1, 1) * a(3, 4) - a(2, 2)
    assert apply(identity(4), p) == p
    _, b = gens(3)
    d = delta(3, 1)
    assert apply(d, b(1, 1) * b(2, 3)) == b(2, 2) * d[2, 3]
    assert apply(d, b(2, 2) * b(2, 3)) == b(1, 1) * d[2, 3]
    with pytest.raises(AlphabetMismatch):
        apply(d, a(1, 1))


def test_compose_with_identity():
    f = delta(4, 1)
    assert compose(identity(4), f).same_table(f)
    assert compose(f, identity(4)).same_table(f)
    assert compose(identity(4), f).label == f.label


def test_compose_order():
    _, a = gens(4)
    f, g = delta(4, 0), delta(4, 1)
    h = compose(f, g)
    assert h.label == "delta[0]*delta[1]"
    for s in h.alph.symbols:
        assert h.images[s] == apply(f, g.images[s])
    with pytest.raises(AlphabetMismatch):
        compose(f, delta(3, 1))


def test_compose_associative():
    rng = random.Random(4)
    maps = [delta(4, i) for i in range(4)] + [delta_prime(4, i) for i in range(4)]
    for _ in range(3):
        f, g, h = (rng.choice(maps) for _ in range(3))
        assert compose(f, compose(g, h)).same_table(compose(compose(f, g), h))
    assert compose_all([maps[0], maps[1], maps[2]]).same_table(compose(maps[0], compose(maps[1], maps[2])))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_diagonal_permutation(n):
    _, a = gens(n)
    for i in range(1, n):
        for primed in (False, True):
            d = delta_prime(n, i) if primed else delta(n, i)
            for k in range(1, n + 1):
                want = {i: i + 1, i + 1: i}.get(k, k)
                assert d[k, k] == a(want, want)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_fixed_set(n):
    for i in range(1, n):
        d = delta(n, i)
        for s in d.alph.symbols:
            if s.j != i and s.i != i + 1:
                assert s not in d.moved() or s in (A(i, i), A(i + 1, i + 1)), (i, s)
    d0 = delta(n, 0)
    assert all(s.i == 1 for s in d0.moved())


@pytest.mark.parametrize("n", [3, 4])
def test_image_degrees_at_most_two(n):
    for d, dp in maps_for(n):
        assert all(p.degree() <= 2 for p in d.images.values())
        assert all(p.degree() <= 2 for p in dp.images.values())


def test_braid_pair_enumeration():
    assert braid_pairs(4) == ([0, 1, 2], [(0, 2), (0, 3), (1, 3)])
    assert braid_pairs(3) == ([0, 1], [(0, 2)])


# verdict batteries

def test_identity_is_a_homomorphism(oracle4):
    rep = check_homomorphism(identity(4), relations(4), oracle4)
    assert rep.ok and len(rep.items) == len(relations(4))


def test_delta1_is_a_homomorphism_at_rank_three(oracle3):
    rep = check_homomorphism(delta(3, 1), relations(3), oracle3)
    assert rep.ok


def test_perturbed_map_is_not_a_homomorphism():
    al, a = gens(3)
    img = {s: NcPoly.gen(al, s) for s in al.symbols}
    img[A(1, 2)] = a(1, 2) + NcPoly.one(al)
    bad = GenMap(al, img, "shift")
    oracle = IdealOracle(relations(3), 5, cap=5)
    rep = check_homomorphism(bad, relations(3), oracle)
    assert not rep.ok
    assert any(it.residual_terms > 0 for it in rep.items)


def test_equal_maps_give_zero_residuals(oracle4):
    rep = check_equal_mod_ideal(delta(4, 2), delta(4, 2), oracle4)
    assert rep.ok and all(it.residual_terms == 0 for it in rep.items)


def test_distinct_maps_differ(oracle4):
    # no escalation: a non-member would otherwise climb to the cap
    flat = IdealOracle(relations(4), 6, cap=6, system=oracle4.sys)
    rep = check_equal_mod_ideal(delta(4, 1), delta(4, 2), flat, only=[A(1, 1), A(2, 2)])
    assert not rep.ok


def test_inverse_at_rank_three(oracle3):
    assert check_inverses(3, oracle3).ok


def test_delta0_inverse_on_a12(oracle4):
    _, a = gens(4)
    h = compose(delta(4, 0), delta_prime(4, 0))
    assert oracle4.member(h[1, 2] - a(1, 2)).in_ideal


def test_unreversed_delta_prime_does_not_invert(oracle3):
    lit = delta_prime(3, 1, literal=True)
    rep = check_equal_mod_ideal(compose(delta(3, 1), lit), identity(3), oracle3)
    assert not rep.ok
    bad = [it.name for it in rep.items if not it.ok]
    assert bad == ["delta[1]*delta'literal[1] = id @ a[2,3]"]


def test_braid_triple_on_a11_is_literal():
    _, a = gens(4)
    d0, d1 = delta(4, 0), delta(4, 1)
    assert compose_all([d0, d1, d0])[1, 1] == a(1, 1)
    assert compose_all([d1, d0, d1])[1, 1] == a(1, 1)


def test_distant_pair_mostly_literal(oracle4):
    d0, d2 = delta(4, 0), delta(4, 2)
    lhs, rhs = compose(d0, d2), compose(d2, d0)
    differ = [s for s in lhs.alph.symbols if lhs.images[s] != rhs.images[s]]
    touched = set(d0.moved()) & set(d2.moved())
    assert set(differ) <= touched | set(d0.moved()) | set(d2.moved())
    assert check_equal_mod_ideal(lhs, rhs, oracle4, only=differ).ok


def test_adjacent_braid_on_a12(oracle4):
    _, a = gens(4)
    d0, d1 = delta(4, 0), delta(4, 1)
    lhs = compose_all([d0, d1, d0])
    rhs = compose_all([d1, d0, d1])
    assert oracle4.member(lhs[1, 2] - rhs[1, 2]).in_ideal
