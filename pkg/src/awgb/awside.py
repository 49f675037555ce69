"""The aw(n) presentation on generators C_I (I a connected subset of
[1, n]) and the letter maps phi: a[i,j] -> C[i..j], psi = phi^-1.
"""

from __future__ import annotations

import time
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .errors import MultipleHoles, NonMonotonic, NotDisjoint, Overlapping
from .ideal import IdealOracle
from .ncpoly import Alphabet, GenSymbol, NcPoly, alphabet, comm, qcomm
from .presentation import CLEAR, RelationSet, relations
from .report import INCONCLUSIVE, VERIFIED, Report, ReportItem


class ConnSubset(NamedTuple):
    """The interval {lo, ..., hi}."""

    lo: int
    hi: int

    def __str__(self):
        return f"{self.lo}..{self.hi}"

    def check(self):
        if self.lo > self.hi or self.lo < 1:
            raise ValueError(f"empty or invalid interval {self.lo}..{self.hi}")
        return self

    def disjoint(self, other: "ConnSubset") -> bool:
        return self.hi < other.lo or other.hi < self.lo

    def within(self, other: "ConnSubset") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def __lt__(self, other):  # I < J: every element of I below every element of J
        return self.hi < other.lo

    def __gt__(self, other):
        return other.hi < self.lo


def S(lo: int, hi: Optional[int] = None) -> ConnSubset:
    return ConnSubset(lo, lo if hi is None else hi).check()


def adjacent(a: ConnSubset, b: ConnSubset) -> bool:
    if not a.disjoint(b):
        raise NotDisjoint(f"{a} and {b} intersect")
    return a.hi + 1 == b.lo or b.hi + 1 == a.lo


def hole_between(a: ConnSubset, b: ConnSubset) -> Optional[ConnSubset]:
    if not a.disjoint(b):
        raise NotDisjoint(f"{a} and {b} intersect")
    lo, hi = (a.hi + 1, b.lo - 1) if a.hi < b.lo else (b.hi + 1, a.lo - 1)
    return ConnSubset(lo, hi) if lo <= hi else None


def _check_seq(parts: Sequence[ConnSubset]):
    for x in range(len(parts)):
        for y in range(x + 1, len(parts)):
            if not parts[x].disjoint(parts[y]):
                raise Overlapping(f"{parts[x]} and {parts[y]} overlap")
    if len(parts) > 1:
        up = all(parts[x] < parts[x + 1] for x in range(len(parts) - 1))
        down = all(parts[x] > parts[x + 1] for x in range(len(parts) - 1))
        if not (up or down):
            raise NonMonotonic("sequence is neither increasing nor decreasing")


def _letter(alph: Alphabet, iv: ConnSubset) -> NcPoly:
    return NcPoly.gen(alph, GenSymbol(alph.kind, iv.lo, iv.hi))


def c_expand(seq: Sequence[ConnSubset], target: str = "C", n: Optional[int] = None) -> NcPoly:
    """C_{I1 I2 ...} as a polynomial in generators.

    Connected union: the generator of the union.  Exactly one hole H
    between the blocks I1 (before it, in sequence order) and I2 (after):
    -[C_{I1 H}, C_{H I2}]_q + C_{I1} C_{I2} + C_H C_{I1 H I2}.
    """
    parts = [ConnSubset(*p) for p in seq]
    if not parts:
        raise ValueError("empty subset sequence")
    _check_seq(parts)
    n = n or max(p.hi for p in parts)
    alph = alphabet(target, n)
    order = sorted(parts)
    gaps = []
    for x in range(len(order) - 1):
        h = hole_between(order[x], order[x + 1])
        if h is not None:
            gaps.append((x, h))
    full = ConnSubset(order[0].lo, order[-1].hi)
    if not gaps:
        return _letter(alph, full)
    if len(gaps) > 1:
        raise MultipleHoles(f"{len(gaps)} holes in {' '.join(map(str, parts))}")
    x, H = gaps[0]
    low = ConnSubset(order[0].lo, order[x].hi)
    high = ConnSubset(order[x + 1].lo, order[-1].hi)
    ascending = len(parts) == 1 or parts[0] < parts[1]
    I1, I2 = (low, high) if ascending else (high, low)
    g = lambda iv: _letter(alph, iv)
    I1H = ConnSubset(min(I1.lo, H.lo), max(I1.hi, H.hi))
    HI2 = ConnSubset(min(I2.lo, H.lo), max(I2.hi, H.hi))
    return -qcomm(g(I1H), g(HI2)) + g(I1) * g(I2) + g(H) * g(full)


def connected_subsets(n: int) -> List[ConnSubset]:
    return [ConnSubset(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def _cuts(n: int, parts: int):
    # increasing cut points 1 <= p0 < p1 < ... < p_parts <= n + 1
    def rec(start, left):
        if left == 0:
            yield ()
            return
        for p in range(start, n + 2):
            for rest in rec(p + 1, left - 1):
                yield (p,) + rest
    for cut in rec(1, parts + 1):
        yield [ConnSubset(cut[x], cut[x + 1] - 1) for x in range(parts)]


def adjacent_sequences(n: int, parts: int) -> List[List[ConnSubset]]:
    """Monotonic sequences of adjacent intervals partitioning a window, both orders."""
    out = []
    for seq in _cuts(n, parts):
        out.append(seq)
        out.append(list(reversed(seq)))
    return out


def _tag(seq) -> str:
    return ";".join(str(p) for p in seq)


def aw_relations(n: int) -> RelationSet:
    """Defining relations of aw(n) over the C alphabet, denominators cleared."""
    alph = alphabet("C", n)
    out = []
    subs = connected_subsets(n)
    for x, I in enumerate(subs):
        for J in subs[x + 1:]:
            if I.disjoint(J) or I.within(J) or J.within(I):
                out.append((f"AW1[{I}|{J}]", comm(_letter(alph, I), _letter(alph, J))))
    C = lambda *ps: c_expand(ps, "C", n)
    for I1, I2, I3 in adjacent_sequences(n, 3):
        assert (I1 < I2 < I3) or (I1 > I2 > I3)
        lhs = C(I1, I2)
        rhs = -qcomm(C(I2, I3), C(I1, I3)) + C(I1) * C(I2) + C(I3) * C(I1, I2, I3)
        out.append((f"AW2[{_tag((I1, I2, I3))}]", (lhs - rhs).scale(CLEAR)))
    for I1, I2, I3, I4 in adjacent_sequences(n, 4):
        assert (I1 < I2 < I3 < I4) or (I1 > I2 > I3 > I4)
        lhs = C(I1, I4)
        rhs = -qcomm(C(I1, I3), C(I3, I4)) + C(I1) * C(I4) + C(I3) * C(I1, I3, I4)
        out.append((f"AW3[{_tag((I1, I2, I3, I4))}]", (lhs - rhs).scale(CLEAR)))
    return RelationSet(alph, out)


def phi_translate(p: NcPoly) -> NcPoly:
    """a[i,j] -> C[i..j], letter by letter."""
    if p.alph.kind != "A":
        raise ValueError("phi_translate expects a polynomial over the A alphabet")
    target = alphabet("C", p.alph.n)
    ids = {x: target.index[GenSymbol("C", s.i, s.j)] for x, s in enumerate(p.alph.symbols)}
    return p.relabel(target, ids)


def psi_translate(p: NcPoly) -> NcPoly:
    """C[lo..hi] -> a[lo,hi], letter by letter."""
    if p.alph.kind != "C":
        raise ValueError("psi_translate expects a polynomial over the C alphabet")
    target = alphabet("A", p.alph.n)
    ids = {x: target.index[GenSymbol("A", s.i, s.j)] for x, s in enumerate(p.alph.symbols)}
    return p.relabel(target, ids)


def check_isomorphism(n: int, maxdeg: int = 6, budget: Optional[float] = None, cap: int = 8,
                      oracle_a: Optional[IdealOracle] = None, oracle_c: Optional[IdealOracle] = None,
                      cache_dir=None) -> Report:
    """Both translation batteries plus the literal inverse check of the letter maps."""
    rels_a = relations(n)
    rels_c = aw_relations(n)
    if oracle_a is None:
        oracle_a = IdealOracle(rels_a, maxdeg, cap=cap, budget=budget, cache_dir=cache_dir)
    if oracle_c is None:
        oracle_c = IdealOracle(rels_c, maxdeg, cap=cap, budget=budget, cache_dir=cache_dir)
    rep = Report("isomorphism", n, maxdeg)
    for name, r in rels_c:
        rep.items.append(_verdict_item(f"psi({name})", psi_translate(r), oracle_a, "aw relation holds in A(n)"))
    for name, r in rels_a:
        rep.items.append(_verdict_item(f"phi({name})", phi_translate(r), oracle_c, "A(n) relation holds in aw(n)"))
    t0 = time.perf_counter()
    a_alph, c_alph = alphabet("A", n), alphabet("C", n)
    ok = all(psi_translate(phi_translate(NcPoly.gen(a_alph, s))) == NcPoly.gen(a_alph, s) for s in a_alph.symbols)
    ok = ok and all(phi_translate(psi_translate(NcPoly.gen(c_alph, s))) == NcPoly.gen(c_alph, s)
                    for s in c_alph.symbols)
    rep.items.append(ReportItem("psi*phi = id and phi*psi = id on letters", VERIFIED if ok else INCONCLUSIVE,
                                0 if ok else 1, time.perf_counter() - t0, "letter maps are inverse", 0, "",
                                "literal"))
    rep.maxdeg = max(oracle_a.sys.maxdeg, oracle_c.sys.maxdeg)
    rep.complete_upto = min(oracle_a.complete_upto, oracle_c.complete_upto)
    return rep


def _verdict_item(name: str, p: NcPoly, oracle: IdealOracle, anchor: str) -> ReportItem:
    t0 = time.perf_counter()
    v = oracle.member(p)
    status = VERIFIED if v.in_ideal else INCONCLUSIVE
    return ReportItem(name, status, len(v.residual), time.perf_counter() - t0, anchor,
                      v.degree_bound_used, "" if v.in_ideal else str(v.residual), poly=p)
