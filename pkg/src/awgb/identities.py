"""Bracket calculus of the free algebra: the generic q-commutator
identities, checked on random polynomials, and the identities that
hold only once some letters commute, checked modulo those commutators.
"""

from __future__ import annotations

import random
import time
from typing import Callable, List, Tuple

from .coeff import Q, QINV, RatFunc
from .ideal import member, system_from_polys
from .ncpoly import Alphabet, NcPoly, alphabet, comm, qcomm
from .report import INCONCLUSIVE, VERIFIED, Report, ReportItem

Q2 = Q * Q


def id_antisym(a, b, c=None) -> NcPoly:
    return comm(a, b) + comm(b, a)


def id_comm_via_q(a, b, c=None) -> NcPoly:
    k = (Q - QINV) * (Q + QINV).inv()
    return comm(a, b) - (qcomm(a, b) - qcomm(b, a)).scale(k)


def id_q_jacobi(a, b, c) -> NcPoly:
    k = ((Q - QINV) ** 2).inv()
    return qcomm(qcomm(a, b), c) - qcomm(a, qcomm(b, c)) - comm(b, comm(c, a)).scale(k)


def id_q_cyclic(a, b, c) -> NcPoly:
    # second bracket taken as [B,[A,C]_q]_q; with [C,A]_q it is not an identity
    k = (Q + QINV) * (Q - QINV).inv()
    return qcomm(a, qcomm(b, c)) - qcomm(b, qcomm(a, c)) - qcomm(comm(a, b), c, Q2).scale(k)


def id_q_cyclic_literal(a, b, c) -> NcPoly:
    """The printed form, [B,[C,A]_q]_q; fails already for three letters."""
    k = (Q + QINV) * (Q - QINV).inv()
    return qcomm(a, qcomm(b, c)) - qcomm(b, qcomm(c, a)) - qcomm(comm(a, b), c, Q2).scale(k)


def id_mixed_jacobi(a, b, c) -> NcPoly:
    return comm(a, qcomm(b, c)) + comm(c, qcomm(a, b)) + comm(b, qcomm(c, a))


# (name, anchor, lhs - rhs)
GENERIC: List[Tuple[str, str, Callable]] = [
    ("antisymmetry", "(2.1)", id_antisym),
    ("commutator via q-brackets", "(2.2)", id_comm_via_q),
    ("q-Jacobi", "(2.3)", id_q_jacobi),
    ("q^2-bracket identity", "(2.4)", id_q_cyclic),
    ("mixed Jacobi", "(2.5)", id_mixed_jacobi),
]


# identities under commuting hypotheses: (name, anchor, commuting pairs, lhs - rhs)
CONDITIONAL: List[Tuple[str, str, Tuple[Tuple[int, int], ...], Callable]] = [
    ("[A,B]_q = AB", "(2.6)", ((0, 1),), lambda a, b, c: qcomm(a, b) - a * b),
    ("[A,CB]_q = [A,C]_q B", "(2.6)", ((0, 1),), lambda a, b, c: qcomm(a, c * b) - qcomm(a, c) * b),
    ("[A,BC]_q = B[A,C]_q", "(2.6)", ((0, 1),), lambda a, b, c: qcomm(a, b * c) - b * qcomm(a, c)),
    ("[A,[C,B]_q]_q = [[A,C]_q,B]_q", "(2.7)", ((0, 1),),
     lambda a, b, c: qcomm(a, qcomm(c, b)) - qcomm(qcomm(a, c), b)),
    ("[A,[B,C]_q]_q = [B,[A,C]_q]_q", "(2.7)", ((0, 1),),
     lambda a, b, c: qcomm(a, qcomm(b, c)) - qcomm(b, qcomm(a, c))),
    ("[A,[B,C]_q]_q = A[B,C]_q", "(2.8)", ((0, 1), (0, 2)),
     lambda a, b, c: qcomm(a, qcomm(b, c)) - a * qcomm(b, c)),
]


def random_coeff(rng: random.Random) -> RatFunc:
    """A small nonzero Laurent monomial multiple c*q^e."""
    c = rng.choice([x for x in range(-3, 4) if x])
    e = rng.randint(-2, 2)
    return RatFunc.coerce(c) * (Q ** e if e >= 0 else QINV ** -e)


def random_poly(rng: random.Random, alph: Alphabet, max_deg: int = 2, max_terms: int = 3) -> NcPoly:
    nl = len(alph.symbols)
    p = NcPoly.zero(alph)
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.randrange(nl) for _ in range(rng.randint(0, max_deg)))
        p = p + NcPoly.word(alph, w).scale(random_coeff(rng))
    return p


def check_free_algebra(seed: int = 0, triples: int = 100, instances: int = 50, n: int = 3) -> Report:
    """Generic identities on random triples; conditional ones on random
    distinct letters, reduced by the hypothesised commutators only."""
    rng = random.Random(seed)
    alph = alphabet("A", n)
    rep = Report("freealg", n, 0)
    samples = [tuple(random_poly(rng, alph) for _ in range(3)) for _ in range(triples)]
    for name, anchor, f in GENERIC:
        t0 = time.perf_counter()
        bad = [x for x, (a, b, c) in enumerate(samples) if not f(a, b, c).is_zero()]
        rep.items.append(ReportItem(f"{name} x{triples}", VERIFIED if not bad else INCONCLUSIVE, len(bad),
                                    time.perf_counter() - t0, anchor,
                                    note="" if not bad else f"failing samples {bad[:5]}"))
    nl = len(alph.symbols)
    letters = [rng.sample(range(nl), 3) for _ in range(instances)]
    for name, anchor, pairs, f in CONDITIONAL:
        t0 = time.perf_counter()
        bad = []
        for x, ids in enumerate(letters):
            gens = [NcPoly.word(alph, (i,)) for i in ids]
            rules = [comm(gens[u], gens[v]) for u, v in pairs]
            sys = system_from_polys(alph, rules)
            sys.run(6)
            if not member(f(*gens), sys).in_ideal:
                bad.append(x)
        rep.items.append(ReportItem(f"{name} x{instances}", VERIFIED if not bad else INCONCLUSIVE, len(bad),
                                    time.perf_counter() - t0, anchor,
                                    note="" if not bad else f"failing instances {bad[:5]}"))
    return rep
