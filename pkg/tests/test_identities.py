import random

from hypothesis import given, strategies as st

from awgb.identities import (CONDITIONAL, GENERIC, check_free_algebra, id_q_cyclic, id_q_cyclic_literal,
                             random_poly)
from awgb.ncpoly import NcPoly, alphabet


def test_battery_verifies():
    rep = check_free_algebra(seed=0)
    assert rep.ok
    assert len(rep.items) == len(GENERIC) + len(CONDITIONAL)
    assert [it.paper_anchor for it in rep.items][:5] == ["(2.1)", "(2.2)", "(2.3)", "(2.4)", "(2.5)"]


def test_battery_other_seed():
    assert check_free_algebra(seed=17, triples=20, instances=10).ok


def test_printed_q2_identity_fails_on_letters():
    al = alphabet("A", 2)
    a, b, c = (NcPoly.word(al, (x,)) for x in range(3))
    assert id_q_cyclic(a, b, c).is_zero()
    assert not id_q_cyclic_literal(a, b, c).is_zero()


@given(st.integers(0, 10 ** 6))
def test_generic_identities_property(seed):
    rng = random.Random(seed)
    al = alphabet("A", 3)
    a, b, c = (random_poly(rng, al) for _ in range(3))
    for name, _, f in GENERIC:
        assert f(a, b, c).is_zero(), name
