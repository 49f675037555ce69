"""The presentation of A(n): generators a[i,j] (1 <= i <= j <= n) and
relations R1 (commutators), R2 (f/g cubic relations) and R3 (the two
q-determinants), plus the catalogue of derived identities used as
membership fixtures.
"""

from __future__ import annotations

import hashlib
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .coeff import Q, QINV
from .errors import IndexOutOfRange, UnsupportedSize
from .ncpoly import A, Alphabet, GenSymbol, NcPoly, alphabet, comm, qcomm

# (q - q^-1)^2, the factor that clears a doubly nested q-bracket
CLEAR = (Q - QINV) ** 2


class GenMatrix(NamedTuple):
    n: int

    @property
    def alphabet(self) -> Alphabet:
        return alphabet("A", self.n)


class Sub3R2(NamedTuple):
    """Index data (i, k, j, l) with i < k <= j < l of a 3x3 submatrix."""

    i: int
    k: int
    j: int
    l: int

    def validate(self, n: int) -> "Sub3R2":
        i, k, j, l = self
        if not (1 <= i < k <= j < l <= n):
            raise IndexOutOfRange(f"need 1 <= i < k <= j < l <= {n}, got {tuple(self)}")
        return self

    def entries(self):
        """The six entries, as a 3x3 upper triangle read row by row."""
        i, k, j, l = self
        return [(i, k - 1), (i, j), (i, l), (k, j), (k, l), (j + 1, l)]


class Sub3R3(NamedTuple):
    """Index data (i, k, j, l, m) with i < k <= j < l < m."""

    i: int
    k: int
    j: int
    l: int
    m: int

    def validate(self, n: int) -> "Sub3R3":
        if not (1 <= self.i < self.k <= self.j < self.l < self.m <= n):
            raise IndexOutOfRange(f"need 1 <= i < k <= j < l < m <= {n}, got {tuple(self)}")
        return self

    def entries(self):
        i, k, j, l, m = self
        return [(i, j), (i, l), (i, m), (k, j), (k, l), (k, m), (j + 1, l), (j + 1, m)]


class RelationSet:
    """Named ideal generators over one alphabet."""

    def __init__(self, alph: Alphabet, entries: Sequence[Tuple[str, NcPoly]], label: str = ""):
        self.alph = alph
        self.entries: List[Tuple[str, NcPoly]] = list(entries)
        self.label = label or f"{alph.kind}({alph.n})"
        names = [nm for nm, _ in self.entries]
        if len(set(names)) != len(names):
            raise ValueError("relation names must be unique")
        for nm, p in self.entries:
            if p.is_zero():
                raise ValueError(f"relation {nm} is zero")
            if p.alph != alph:
                raise ValueError(f"relation {nm} lives over {p.alph!r}")

    def __iter__(self) -> Iterator[Tuple[str, NcPoly]]:
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, name: str) -> NcPoly:
        for nm, p in self.entries:
            if nm == name:
                return p
        raise KeyError(name)

    def names(self) -> List[str]:
        return [nm for nm, _ in self.entries]

    def polys(self) -> List[NcPoly]:
        return [p for _, p in self.entries]

    def canonical_text(self) -> str:
        lines = [f"{self.alph.kind} {self.alph.n}"]
        lines += [f"{nm}\t{p}" for nm, p in self.entries]
        return "\n".join(lines) + "\n"

    def provenance(self) -> str:
        """sha256 of the canonical serialization."""
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()

    def max_degree(self) -> int:
        return max((p.degree() for p in self.polys()), default=0)


# generator helpers

def _sym(n: int, g) -> GenSymbol:
    if not isinstance(g, GenSymbol):
        g = A(*g)
    if g.kind != "A" or not (1 <= g.i <= g.j <= n):
        raise IndexOutOfRange(f"{g} is not a generator of A({n})")
    return g


def commutes(n: int, g1, g2) -> bool:
    """False exactly for interleaving index pairs."""
    g1, g2 = _sym(n, g1), _sym(n, g2)
    i, j = g1.i, g1.j
    k, l = g2.i, g2.j
    return not ((k < i <= l < j) or (i < k <= j < l))


def in_blocks_12_34(n: int, g1, g2) -> bool:
    """Whether g2 lies in block A12(i-1, j-i) or A34(j-i, n-j) of g1 = a[i,j].

    A12: rows 1..i-1, columns i..j-1.  A34: rows i+1..j, columns j+1..n.
    """
    g1, g2 = _sym(n, g1), _sym(n, g2)
    i, j = g1.i, g1.j
    r, c = g2.i, g2.j
    in12 = 1 <= r <= i - 1 and i <= c <= j - 1
    in34 = i + 1 <= r <= j and j + 1 <= c <= n
    return in12 or in34


class _Gen:
    """a(i, j) -> generator polynomial.

    ``boundary`` decides out-of-triangle entries (i > j): None leaves them
    to raise, "zero" makes them all 0, "unit" reads the empty-interval
    entries a[k,k-1] as 1 and the rest as 0.
    """

    def __init__(self, n: int, boundary: Optional[str] = None):
        if boundary not in (None, "zero", "unit"):
            raise ValueError(f"unknown boundary convention {boundary!r}")
        self.alph = alphabet("A", n)
        self.n = n
        self.boundary = boundary

    def __call__(self, i: int, j: int) -> NcPoly:
        if self.boundary and i > j and 1 <= j and i <= self.n:
            if self.boundary == "unit" and i == j + 1:
                return NcPoly.one(self.alph)
            return NcPoly.zero(self.alph)
        return NcPoly.gen(self.alph, _sym(self.n, A(i, j)))


def f_elem(s: Sub3R2, n: int | None = None) -> NcPoly:
    i, k, j, l = s
    n = n or l
    s.validate(n)
    a = _Gen(n)
    return a(i, j) + a(k, l) * (a(i, k - 1) * a(j + 1, l) + a(k, j) * a(i, l)) \
        - (a(i, k - 1) * a(k, j) + a(i, l) * a(j + 1, l))


def g_elem(s: Sub3R2, n: int | None = None) -> NcPoly:
    i, k, j, l = s
    n = n or l
    s.validate(n)
    a = _Gen(n)
    return a(k, l) + a(i, j) * (a(i, k - 1) * a(j + 1, l) + a(k, j) * a(i, l)) \
        - (a(i, k - 1) * a(i, l) + a(k, j) * a(j + 1, l))


def detq_elem(s: Sub3R3, n: int | None = None) -> NcPoly:
    i, k, j, l, m = s
    n = n or m
    s.validate(n)
    a = _Gen(n)
    qb = qcomm
    return (qb(qb(a(i, j), a(k, l)), a(j + 1, m)) + qb(a(i, l), a(k, m))
            + qb(qb(a(i, m), a(k, j)), a(j + 1, l))
            - qb(qb(a(i, l), a(k, j)), a(j + 1, m))
            - qb(qb(a(i, j), a(k, m)), a(j + 1, l))
            - qb(a(i, m), a(k, l)))


def detqup_elem(s: Sub3R3, n: int | None = None) -> NcPoly:
    i, k, j, l, m = s
    n = n or m
    s.validate(n)
    a = _Gen(n)
    qb = qcomm
    return (qb(qb(a(j + 1, m), a(k, l)), a(i, j)) + qb(a(k, m), a(i, l))
            + qb(qb(a(j + 1, l), a(k, j)), a(i, m))
            - qb(qb(a(j + 1, m), a(k, j)), a(i, l))
            - qb(qb(a(j + 1, l), a(k, m)), a(i, j))
            - qb(a(k, l), a(i, m)))


def r2_relation_f(s: Sub3R2, n: int) -> NcPoly:
    a = _Gen(n)
    x, y = a(s.i, s.j), a(s.k, s.l)
    return (qcomm(y, qcomm(x, y)) - f_elem(s, n)).scale(CLEAR)


def r2_relation_g(s: Sub3R2, n: int) -> NcPoly:
    a = _Gen(n)
    x, y = a(s.i, s.j), a(s.k, s.l)
    return (qcomm(x, qcomm(y, x)) - g_elem(s, n)).scale(CLEAR)


def sub_r2(n: int) -> List[Sub3R2]:
    return [Sub3R2(i, k, j, l)
            for i in range(1, n + 1) for k in range(i + 1, n + 1)
            for j in range(k, n + 1) for l in range(j + 1, n + 1)]


def sub_r3(n: int) -> List[Sub3R3]:
    return [Sub3R3(i, k, j, l, m)
            for i in range(1, n + 1) for k in range(i + 1, n + 1)
            for j in range(k, n + 1) for l in range(j + 1, n + 1)
            for m in range(l + 1, n + 1)]


def r1_pairs(n: int) -> List[Tuple[GenSymbol, GenSymbol]]:
    syms = alphabet("A", n).symbols
    return [(g1, g2) for x, g1 in enumerate(syms) for g2 in syms[x + 1:] if commutes(n, g1, g2)]


def relations(n: int) -> RelationSet:
    """The defining relations of A(n), denominators cleared."""
    if n < 1:
        raise UnsupportedSize("n must be >= 1")
    alph = alphabet("A", n)
    out = []
    for g1, g2 in r1_pairs(n):
        out.append((f"R1[{g1.i},{g1.j}|{g2.i},{g2.j}]",
                    comm(NcPoly.gen(alph, g1), NcPoly.gen(alph, g2))))
    for s in sub_r2(n):
        tag = ",".join(map(str, s))
        out.append((f"R2f[{tag}]", r2_relation_f(s, n)))
        out.append((f"R2g[{tag}]", r2_relation_g(s, n)))
    for s in sub_r3(n):
        tag = ",".join(map(str, s))
        out.append((f"R3q[{tag}]", detq_elem(s, n).scale(CLEAR)))
        out.append((f"R3Q[{tag}]", detqup_elem(s, n).scale(CLEAR)))
    return RelationSet(alph, out)


def census(n: int) -> dict:
    return {"R1": len(r1_pairs(n)), "R2": len(sub_r2(n)), "R3": len(sub_r3(n))}


# remark at n = 3

def remark_relations() -> List[Tuple[str, NcPoly]]:
    """The two A(3) relations in the (q^2+q^-2) form, moved to one side."""
    a = _Gen(3)
    c = Q ** 2 + QINV ** 2
    x, y = a(1, 2), a(2, 3)
    r1 = (y * x * y).scale(c) - y * y * x - x * y * y \
        - (a(1, 2) + (a(1, 1) * a(3, 3) + a(2, 2) * a(1, 3)) * a(2, 3)
           - (a(1, 1) * a(2, 2) + a(1, 3) * a(3, 3))).scale(CLEAR)
    r2 = (x * y * x).scale(c) - x * x * y - y * x * x \
        - (a(2, 3) + (a(1, 1) * a(3, 3) + a(2, 2) * a(1, 3)) * a(1, 2)
           - (a(1, 1) * a(1, 3) + a(2, 2) * a(3, 3))).scale(CLEAR)
    return [("R2f[1,2,2,3]", r1), ("R2g[1,2,2,3]", r2)]


# derived identities

class Fixture(NamedTuple):
    name: str
    poly: NcPoly
    anchor: str
    note: str = ""
    group: str = ""  # readings of one identity; one verified reading suffices


def lemma_tuples(n: int) -> List[Tuple[int, int, int, int, int]]:
    """All (j, k, i, l, m) with j < k <= i < l < m <= n."""
    return [(j, k, i, l, m)
            for j in range(1, n + 1) for k in range(j + 1, n + 1)
            for i in range(k, n + 1) for l in range(i + 1, n + 1)
            for m in range(l + 1, n + 1)]


def _lemma_24(a, j, k, i, l, m):
    qb = qcomm
    out = {}
    out["1.a"] = (qb(qb(a(j, l), a(k, m)), a(j, i)) + a(j, k - 1) * a(i + 1, l) * a(j, m)
                  + qb(a(k, l), a(i + 1, m))
                  - a(j, m) * qb(a(k, l), a(j, i)) - a(j, k - 1) * qb(a(j, l), a(i + 1, m))
                  - a(i + 1, l) * a(k, m))
    out["1.b"] = (qb(qb(a(j, i), a(k, m)), a(j, l)) + a(j, k - 1) * a(i + 1, l) * a(j, m)
                  + qb(a(i + 1, m), a(k, l))
                  - a(j, k - 1) * qb(a(i + 1, m), a(j, l)) - a(j, m) * qb(a(j, i), a(k, l))
                  - a(i + 1, l) * a(k, m))
    out["2.a"] = (qb(qb(a(k, m), a(j, l)), a(i + 1, m)) + a(k, i) * a(l + 1, m) * a(j, m)
                  + qb(a(k, l), a(j, i))
                  - a(j, m) * qb(a(k, l), a(i + 1, m)) - a(l + 1, m) * qb(a(k, m), a(j, i))
                  - a(k, i) * a(j, l))
    out["2.b"] = (qb(qb(a(i + 1, m), a(j, l)), a(k, m)) + a(k, i) * a(l + 1, m) * a(j, m)
                  + qb(a(j, i), a(k, l))
                  - qb(a(i + 1, m), a(k, l) * a(j, m)) - a(l + 1, m) * qb(a(j, i), a(k, m))
                  - a(k, i) * a(j, l))
    out["3.a"] = (qb(qb(a(k, l), a(j, i)), a(k, m)) + a(j, k - 1) * a(k, i) * a(l + 1, m)
                  + qb(a(j, l), a(i + 1, m))
                  - a(k, i) * qb(a(j, l), a(k, m)) - a(j, k - 1) * qb(a(k, l), a(i + 1, m))
                  - a(l + 1, m) * a(j, i))
    out["3.b"] = (qb(qb(a(k, m), a(j, i)), a(k, l)) + a(j, k - 1) * a(k, i) * a(l + 1, m)
                  + qb(a(i + 1, m), a(j, l))
                  - a(k, i) * qb(a(k, m), a(j, l)) - a(j, k - 1) * qb(a(i + 1, m), a(k, l))
                  - a(l + 1, m) * a(j, i))
    out["4.a"] = (qb(qb(a(j, l), a(i + 1, m)), a(k, l)) + a(j, k - 1) * a(i + 1, l) * a(l + 1, m)
                  + qb(a(j, i), a(k, m))
                  - a(i + 1, l) * qb(a(j, l), a(k, m)) - a(l + 1, m) * qb(a(j, i), a(k, l))
                  - a(j, k - 1) * a(i + 1, m))
    out["4.b"] = (qb(qb(a(k, l), a(i + 1, m)), a(j, l)) + a(j, k - 1) * a(i + 1, l) * a(l + 1, m)
                  + qb(a(k, m), a(j, i))
                  - a(i + 1, l) * qb(a(k, m), a(j, l)) - a(l + 1, m) * qb(a(k, l), a(j, i))
                  - a(j, k - 1) * a(i + 1, m))
    out["5.a"] = (qb(qb(a(i, l), a(j, i)), a(k, l)) + a(k, i - 1) * a(i + 1, l) * a(j, l)
                  + qb(a(j, i - 1), a(k, i))
                  - a(i + 1, l) * qb(a(j, i - 1), a(k, l)) - a(j, l) * qb(a(i, l), a(k, i))
                  - a(k, i - 1) * a(j, i))

    def five_b(last):
        return (qb(qb(a(k, l), a(j, i)), a(i, l)) + a(k, i - 1) * a(i + 1, l) * a(j, l)
                + qb(a(k, i), a(j, i - 1))
                - a(i + 1, l) * qb(a(k, l), a(j, i - 1)) - a(j, l) * qb(a(k, i), last)
                - a(k, i - 1) * a(j, i))

    out["5.b"] = five_b(a(j, k))
    out["5.b*"] = five_b(a(j, i))
    out["5.b**"] = five_b(a(i, l))
    out["6.a"] = (qb(qb(a(i, l), a(j, i)), a(i, m)) + a(j, i - 1) * a(i, i) * a(l + 1, m)
                  + qb(a(j, l), a(i + 1, m))
                  - a(i, i) * qb(a(j, l), a(i, m)) - a(j, i - 1) * qb(a(i, l), a(i + 1, m))
                  - a(j, i) * a(l + 1, m))
    out["6.b"] = (qb(qb(a(i, m), a(j, i)), a(i, l)) + a(j, i - 1) * a(i, i) * a(l + 1, m)
                  + qb(a(i + 1, m), a(j, l))
                  - a(i, i) * qb(a(i, m), a(j, l)) - a(j, i - 1) * qb(a(i + 1, m), a(i, l))
                  - a(j, i) * a(l + 1, m))
    return out


def _lemma_25(a, j, k, i, l, m):
    qb = qcomm
    u1 = a(k, i) * a(j, l) - qb(a(j, i), a(k, l))
    u2 = a(i + 1, l) * a(k, m) - qb(a(i + 1, m), a(k, l))
    u3 = a(j, k - 1) * a(i + 1, m) - qb(a(j, i), a(k, m))
    u4 = a(k, l) * a(j, m) - qb(a(j, l), a(k, m))
    u5 = a(j, i) * a(l + 1, m) - qb(a(j, l), a(i + 1, m))
    u6 = a(i + 1, l) * a(k, m) - qb(a(k, l), a(i + 1, m))
    return {
        "com1": comm(u1, u2),
        "com2": comm(u1, u3),
        "com3": comm(u3, u4),
        "com4": comm(u5, u6),
        "com5": comm(u5, u4),
    }


_NOTES = {
    "1.b": "NOTATION-ASSUMED: the semicolon bracket is read as the q-bracket",
    "2.b": "NOTATION-ASSUMED: mixed bracket styles all read as the q-bracket",
    "5.b": "literal form, last factor a[j,k]",
    "5.b*": "last factor a[j,i] in place of a[j,k]",
    "5.b**": "last factor a[i,l], the bracket of (5.a) reversed",
}


def lemma_fixtures(n: int, boundary: str = "unit") -> List[Fixture]:
    """LHS - RHS of every derived identity, for every admissible tuple.

    Out-of-triangle entries follow ``boundary`` (see ``_Gen``).  The
    default "unit" reads a[k,k-1] as 1; under "zero" the (5.x) identities
    fail at k = i.  The three readings of (5.b) share a group.
    """
    if n < 4:
        raise UnsupportedSize(f"derived identities need n >= 4, got {n}")
    a = _Gen(n, boundary=boundary)
    out = []
    for tup in lemma_tuples(n):
        tag = ",".join(map(str, tup))
        for key, p in _lemma_24(a, *tup).items():
            anchor = "Lemma 2.4 (" + key.rstrip("*") + ")"
            group = f"L24(5.b)[{tag}]" if key.startswith("5.b") else ""
            out.append(Fixture(f"L24({key})[{tag}]", p.scale(CLEAR), anchor, _NOTES.get(key, ""), group))
        for key, p in _lemma_25(a, *tup).items():
            out.append(Fixture(f"L25({key})[{tag}]", p.scale(CLEAR), f"Lemma 2.5 ({key})", ""))
    return out


def check_lemmas(n: int, oracle, boundary: str = "unit", fixtures: Optional[List[Fixture]] = None):
    """Membership verdict for every fixture.

    A group is one report item, verified when any of its readings is; the
    per-reading outcome goes in the note.  Readings are first tried at the
    current degree so a failing one does not force escalation.
    """
    import time
    from .ideal import member
    from .report import INCONCLUSIVE, VERIFIED, Report, ReportItem

    fixtures = lemma_fixtures(n, boundary) if fixtures is None else fixtures

    def verdict(fx, escalate=True):
        t0 = time.perf_counter()
        v = oracle.member(fx.poly) if escalate else member(fx.poly, oracle.sys)
        return ReportItem(fx.name, VERIFIED if v.in_ideal else INCONCLUSIVE, len(v.residual),
                          time.perf_counter() - t0, fx.anchor, v.degree_bound_used,
                          "" if v.in_ideal else str(v.residual), fx.note, fx.poly)

    rep = Report("lemmas", n, oracle.sys.maxdeg)
    groups = {}
    for fx in fixtures:
        if fx.group:
            if fx.group not in groups:
                groups[fx.group] = []
                rep.items.append(fx.group)  # placeholder, keeps fixture order
            groups[fx.group].append(fx)
        else:
            rep.items.append(verdict(fx))
    for x, it in enumerate(rep.items):
        if not isinstance(it, str):
            continue
        members = [verdict(fx, escalate=False) for fx in groups[it]]
        if not any(m.ok for m in members):
            members = [verdict(fx) for fx in groups[it]]
        best = min(members, key=lambda m: (not m.ok, m.residual_terms))
        note = "; ".join(f"{m.name.split('[')[0]} {m.status}" for m in members)
        rep.items[x] = ReportItem(it, best.status, best.residual_terms, sum(m.seconds for m in members),
                                  members[0].paper_anchor, best.degree_bound, best.residual,
                                  f"readings: {note}", best.poly)
    rep.maxdeg = oracle.sys.maxdeg
    rep.complete_upto = oracle.complete_upto
    return rep
