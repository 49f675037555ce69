"""The automorphisms delta_i, delta_i' of A(n) as generator maps, their
composition, and the homomorphism / inverse / braid batteries.

Composition convention: ``compose(f, g)`` is f after g, i.e. g acts
first; the label ``"f*g"`` reads the same way.
"""

from __future__ import annotations

import time
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import AlphabetMismatch, IndexOutOfRange
from .ideal import IdealOracle
from .ncpoly import A, Alphabet, GenSymbol, NcPoly, alphabet, qcomm, substitute
from .presentation import RelationSet, relations
from .report import INCONCLUSIVE, VERIFIED, Report, ReportItem


class GenMap:
    """Total map from the A-alphabet to polynomials, extended multiplicatively."""

    def __init__(self, alph: Alphabet, images: Dict[GenSymbol, NcPoly], label: str):
        missing = [s for s in alph.symbols if s not in images]
        if missing:
            raise ValueError(f"map {label} has no image for {', '.join(map(str, missing))}")
        self.alph = alph
        self.images = {s: images[s] for s in alph.symbols}
        self.label = label

    def __call__(self, p: NcPoly) -> NcPoly:
        return apply(self, p)

    def __getitem__(self, sym) -> NcPoly:
        if not isinstance(sym, GenSymbol):
            sym = A(*sym)
        return self.images[sym]

    def moved(self) -> List[GenSymbol]:
        """Generators whose image is not literally the generator itself."""
        return [s for s in self.alph.symbols if self.images[s] != NcPoly.gen(self.alph, s)]

    def same_table(self, other: "GenMap") -> bool:
        return self.alph == other.alph and self.images == other.images

    def __repr__(self):
        return f"GenMap({self.label})"


def identity(n: int) -> GenMap:
    alph = alphabet("A", n)
    return GenMap(alph, {s: NcPoly.gen(alph, s) for s in alph.symbols}, "id")


def _delta(n: int, i: int, primed: bool, literal: bool) -> GenMap:
    if n < 2 or not (0 <= i <= n - 1):
        raise IndexOutOfRange(f"delta index {i} outside [0, {n - 1}] for n={n}")
    alph = alphabet("A", n)

    def a(x, y):
        return NcPoly.gen(alph, A(x, y))

    img = {s: NcPoly.gen(alph, s) for s in alph.symbols}
    if i == 0:
        img[A(1, 1)] = a(1, n)
        img[A(1, n)] = a(1, 1)
        for j in range(2, n):
            br = qcomm(a(1, j), a(2, n)) if primed else qcomm(a(2, n), a(1, j))
            img[A(1, j)] = -br + a(j + 1, n) * a(1, 1) + a(2, j) * a(1, n)
    else:
        img[A(i, i)] = a(i + 1, i + 1)
        img[A(i + 1, i + 1)] = a(i, i)
        x = a(i, i + 1)
        for k in range(1, i):
            br = qcomm(a(k, i), x) if primed else qcomm(x, a(k, i))
            img[A(k, i)] = -br + a(i + 1, i + 1) * a(k, i - 1) + a(i, i) * a(k, i + 1)
        for l in range(i + 2, n + 1):
            if primed and not literal:
                br = qcomm(a(i + 1, l), x)
            else:
                br = qcomm(x, a(i + 1, l))
            img[A(i + 1, l)] = -br + a(i, i) * a(i + 2, l) + a(i + 1, i + 1) * a(i, l)
    name = f"delta'[{i}]" if primed else f"delta[{i}]"
    if primed and literal:
        name = f"delta'literal[{i}]"
    return GenMap(alph, img, name)


def delta(n: int, i: int) -> GenMap:
    return _delta(n, i, primed=False, literal=False)


def delta_prime(n: int, i: int, literal: bool = False) -> GenMap:
    """The inverse map of delta(n, i).

    For i >= 1 the row-(i+1) images use the bracket [a[i+1,l], a[i,i+1]]_q;
    ``literal=True`` keeps the unreversed bracket as printed instead, which
    does not invert delta (kept for the record).
    """
    return _delta(n, i, primed=True, literal=literal)


def apply(m: GenMap, p: NcPoly) -> NcPoly:
    if p.alph != m.alph:
        raise AlphabetMismatch(f"{p.alph!r} vs map over {m.alph!r}")
    return substitute(p, m.images, m.alph)


def compose(f: GenMap, g: GenMap) -> GenMap:
    """f after g: x -> f(g(x))."""
    if f.alph != g.alph:
        raise AlphabetMismatch(f"{f.alph!r} vs {g.alph!r}")
    if g.label == "id":
        label = f.label
    elif f.label == "id":
        label = g.label
    else:
        label = f"{f.label}*{g.label}"
    return GenMap(f.alph, {s: apply(f, g.images[s]) for s in f.alph.symbols}, label)


def compose_all(maps: Iterable[GenMap]) -> GenMap:
    maps = list(maps)
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out


def _item(name: str, p: NcPoly, oracle: Optional[IdealOracle], anchor: str, note: str = "") -> ReportItem:
    t0 = time.perf_counter()
    if p.is_zero():
        return ReportItem(name, VERIFIED, 0, time.perf_counter() - t0, anchor, 0, "", note or "literal", p)
    v = oracle.member(p)
    status = VERIFIED if v.in_ideal else INCONCLUSIVE
    resid = "" if v.in_ideal else str(v.residual)
    return ReportItem(name, status, len(v.residual), time.perf_counter() - t0, anchor,
                      v.degree_bound_used, resid, note, p)


def check_homomorphism(m: GenMap, rels: RelationSet, oracle: IdealOracle, anchor: str = "") -> Report:
    """Every relation must map into the ideal."""
    rep = Report(f"homomorphism {m.label}", rels.alph.n, oracle.sys.maxdeg)
    for name, r in rels:
        rep.items.append(_item(f"{m.label}({name})", apply(m, r), oracle, anchor))
    rep.complete_upto = oracle.complete_upto
    rep.maxdeg = oracle.sys.maxdeg
    return rep


def check_equal_mod_ideal(f: GenMap, g: GenMap, oracle: Optional[IdealOracle], anchor: str = "",
                          only: Optional[Iterable[GenSymbol]] = None) -> Report:
    """Per-generator verdicts on f(x) - g(x)."""
    if f.alph != g.alph:
        raise AlphabetMismatch(f"{f.alph!r} vs {g.alph!r}")
    rep = Report(f"{f.label} = {g.label}", f.alph.n, oracle.sys.maxdeg if oracle else 0)
    syms = list(only) if only is not None else f.alph.symbols
    for s in syms:
        rep.items.append(_item(f"{f.label} = {g.label} @ {s}", f.images[s] - g.images[s], oracle, anchor))
    if oracle is not None:
        rep.complete_upto = oracle.complete_upto
        rep.maxdeg = oracle.sys.maxdeg
    return rep


def maps_for(n: int) -> List[Tuple[GenMap, GenMap]]:
    return [(delta(n, i), delta_prime(n, i)) for i in range(n)]


def check_inverses(n: int, oracle: IdealOracle) -> Report:
    rep = Report("inverse", n, oracle.sys.maxdeg)
    ident = identity(n)
    for d, dp in maps_for(n):
        rep.extend(check_equal_mod_ideal(compose(d, dp), ident, oracle, "delta delta' = id"))
        rep.extend(check_equal_mod_ideal(compose(dp, d), ident, oracle, "delta' delta = id"))
    rep.maxdeg = oracle.sys.maxdeg
    return rep


def braid_pairs(n: int) -> Tuple[List[int], List[Tuple[int, int]]]:
    """Adjacent indices i (checking i, i+1) and distant pairs |i-j| >= 2, over [0, n-1]."""
    adjacent = list(range(0, n - 1))
    distant = [(i, j) for i in range(n) for j in range(i + 2, n)]
    return adjacent, distant


def check_braid(n: int, maxdeg: int = 6, budget: Optional[float] = None, oracle: Optional[IdealOracle] = None,
                cap: int = 8, adjacent: bool = True, distant: bool = True, inverses: bool = True,
                moved_only: bool = False, cache_dir=None) -> Report:
    """Braid relations among delta_0 .. delta_{n-1}, checked per generator."""
    if oracle is None:
        oracle = IdealOracle(relations(n), maxdeg, cap=cap, budget=budget, cache_dir=cache_dir)
    rep = Report("braid", n, maxdeg)
    d = [delta(n, i) for i in range(n)]
    adj, dist = braid_pairs(n)
    if adjacent:
        for i in adj:
            lhs = compose_all([d[i], d[i + 1], d[i]])
            rhs = compose_all([d[i + 1], d[i], d[i + 1]])
            rep.extend(check_equal_mod_ideal(lhs, rhs, oracle, "braid relation (adjacent)"))
    if distant:
        for i, j in dist:
            lhs = compose(d[i], d[j])
            rhs = compose(d[j], d[i])
            only = None
            if moved_only:
                touched = set(d[i].moved()) | set(d[j].moved())
                only = [s for s in lhs.alph.symbols if s in touched]
            rep.extend(check_equal_mod_ideal(lhs, rhs, oracle, "braid relation (distant)", only=only))
    if inverses:
        rep.extend(check_inverses(n, oracle))
    rep.maxdeg = oracle.sys.maxdeg
    rep.complete_upto = oracle.complete_upto
    return rep
