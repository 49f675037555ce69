import math

import pytest
from hypothesis import given, settings, strategies as st

from awgb.coeff import ONE, Q, QINV, RatFunc
from awgb.errors import AlphabetMismatch, DegenerateParameter, IndexOutOfRange, UnmappedGenerator
from awgb.ncpoly import A, C, NEG_INF, NcPoly, alphabet, comm, gen, qcomm, substitute, word_key

AL = alphabet("A", 3)
x, y, z = gen(AL, 1, 2), gen(AL, 2, 3), gen(AL, 1, 3)
u, v = gen(AL, 1, 1), gen(AL, 2, 2)


def test_alphabet_order_and_bounds():
    assert [str(s) for s in AL.symbols] == ["a[1,1]", "a[1,2]", "a[1,3]", "a[2,2]", "a[2,3]", "a[3,3]"]
    assert [str(s) for s in alphabet("C", 2).symbols] == ["C[1..1]", "C[1..2]", "C[2..2]"]
    with pytest.raises(IndexOutOfRange):
        AL.letter(A(3, 2))
    with pytest.raises(IndexOutOfRange):
        AL.letter(A(1, 4))


def test_mul_examples():
    p = x * y
    assert p.terms == {(AL.letter(A(1, 2)), AL.letter(A(2, 3))): ONE}
    assert (x + y) * x == x * x + y * x
    assert (x + x.scale(-1)).is_zero()


def test_zero_degree_sentinel():
    assert NcPoly.zero(AL).degree() == NEG_INF
    assert NcPoly.one(AL).degree() == 0
    assert NcPoly.zero(AL).degree() < 0 and math.isinf(NcPoly.zero(AL).degree())


def test_comm_examples():
    assert comm(x, x).is_zero()
    assert comm(x, y) == x * y - y * x


def test_qcomm_examples():
    assert qcomm(x, x) == x * x
    d = (Q - QINV).inv()
    assert qcomm(x, y) == (x * y).scale(Q * d) - (y * x).scale(QINV * d)
    with pytest.raises(DegenerateParameter):
        qcomm(x, y, 1)
    with pytest.raises(DegenerateParameter):
        qcomm(x, y, -1)


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        x + gen(alphabet("A", 4), 1, 2)
    with pytest.raises(AlphabetMismatch):
        x * NcPoly.gen(alphabet("C", 3), C(1, 2))


def test_substitute_examples():
    s = AL.symbols
    ident = {sym: NcPoly.gen(AL, sym) for sym in s}
    assert substitute(x * y, ident) == x * y
    m = dict(ident)
    m[A(1, 2)] = u + v
    assert substitute(x * x, m) == u * u + u * v + v * u + v * v
    with pytest.raises(UnmappedGenerator):
        substitute(x * y, {A(1, 2): x})


def test_canonical_text():
    p = (x * y).scale(Q) - u.scale(2) + NcPoly.scalar(AL, 3)
    assert str(p) == "q*a[1,2]a[2,3] - 2*a[1,1] + 3"
    assert str(NcPoly.zero(AL)) == "0"
    assert NcPoly.parse(str(p), AL) == p


def test_deglex_order_on_leading_term():
    p = x * y + y * x + z
    w, _ = p.leading()
    assert w == (AL.letter(A(2, 3)), AL.letter(A(1, 2)))


# random polynomials

coeffs = st.builds(lambda c, e: RatFunc.coerce(c) * (Q ** e if e >= 0 else QINV ** -e),
                   st.integers(-3, 3).filter(bool), st.integers(-2, 2))
words = st.lists(st.integers(0, len(AL) - 1), max_size=2).map(tuple)
polys = st.dictionaries(words, coeffs, min_size=1, max_size=3).map(lambda t: NcPoly(AL, t))
letters = st.integers(0, len(AL) - 1).map(lambda k: NcPoly.word(AL, (k,)))


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert (a - a).is_zero()


@given(letters, letters, letters)
def test_comm_leibniz(a, b, c):
    assert comm(a, b * c) == b * comm(a, c) + comm(a, b) * c


@settings(max_examples=100)
@given(polys, polys)
def test_comm_via_q_brackets(a, b):
    k = (Q - QINV) * (Q + QINV).inv()
    assert (comm(a, b) - (qcomm(a, b) - qcomm(b, a)).scale(k)).is_zero()


images = st.lists(polys, min_size=len(AL), max_size=len(AL)).map(lambda ps: dict(zip(AL.symbols, ps)))


@settings(max_examples=100)
@given(polys, polys, images)
def test_substitute_is_multiplicative(a, b, m):
    assert substitute(a * b, m) == substitute(a, m) * substitute(b, m)


@given(polys, polys, images)
def test_substitute_commutes_with_qcomm(a, b, m):
    assert substitute(qcomm(a, b), m) == qcomm(substitute(a, m), substitute(b, m))


@given(polys)
def test_text_round_trip(p):
    assert NcPoly.parse(str(p), AL) == p


@settings(max_examples=300)
@given(st.lists(st.integers(0, 5), max_size=4).map(tuple), st.lists(st.integers(0, 5), max_size=4).map(tuple),
       st.lists(st.integers(0, 5), max_size=3).map(tuple), st.lists(st.integers(0, 5), max_size=3).map(tuple))
def test_deglex_compatible_with_concatenation(a, b, w, w2):
    if word_key(a) < word_key(b):
        assert word_key(w + a + w2) < word_key(w + b + w2)
