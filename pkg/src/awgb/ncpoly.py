"""Free associative algebra over Q(q) on a finite generator alphabet.

Letters are interned as small integers (their position in the alphabet's
sorted symbol list), so a word is a plain tuple of ints and the
letter order is integer order.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, NamedTuple, Tuple

from .coeff import ONE, Q, RatFunc
from .errors import AlphabetMismatch, DegenerateParameter, IndexOutOfRange, UnmappedGenerator

Word = Tuple[int, ...]

NEG_INF = -math.inf
"""Degree of the zero polynomial."""


class GenSymbol(NamedTuple):
    """A generator ``a[i,j]`` (kind 'A') or ``C[lo..hi]`` (kind 'C')."""

    kind: str
    i: int
    j: int

    def __str__(self):
        if self.kind == "A":
            return f"a[{self.i},{self.j}]"
        return f"C[{self.i}..{self.j}]"


def A(i: int, j: int) -> GenSymbol:
    return GenSymbol("A", i, j)


def C(lo: int, hi: int) -> GenSymbol:
    return GenSymbol("C", lo, hi)


class Alphabet:
    """All symbols of one kind for a given size n, in the total order."""

    __slots__ = ("kind", "n", "symbols", "index")

    def __init__(self, kind: str, n: int):
        if kind not in ("A", "C"):
            raise ValueError(f"unknown alphabet kind {kind!r}")
        if n < 1:
            raise ValueError("alphabet size must be >= 1")
        self.kind = kind
        self.n = n
        self.symbols = tuple(GenSymbol(kind, i, j) for i in range(1, n + 1) for j in range(i, n + 1))
        self.index = {s: k for k, s in enumerate(self.symbols)}

    def __len__(self):
        return len(self.symbols)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and (self.kind, self.n) == (other.kind, other.n)

    def __hash__(self):
        return hash((self.kind, self.n))

    def __repr__(self):
        return f"Alphabet({self.kind!r}, {self.n})"

    def letter(self, sym) -> int:
        """Letter id of a symbol; accepts a GenSymbol or an (i, j) pair."""
        if not isinstance(sym, GenSymbol):
            sym = GenSymbol(self.kind, *sym)
        try:
            return self.index[sym]
        except KeyError:
            raise IndexOutOfRange(f"{sym} is not a generator of {self.kind}({self.n})") from None

    def word_str(self, w: Word) -> str:
        return "".join(str(self.symbols[x]) for x in w)


@lru_cache(maxsize=None)
def alphabet(kind: str, n: int) -> Alphabet:
    return Alphabet(kind, n)


def word_key(w: Word):
    """Sort key of the deglex term order."""
    return (len(w), w)


class NcPoly:
    """A finite sum of coefficient * word; immutable by convention."""

    __slots__ = ("alph", "terms")

    def __init__(self, alph: Alphabet, terms: Mapping[Word, RatFunc] | None = None):
        self.alph = alph
        self.terms: Dict[Word, RatFunc] = {w: c for w, c in terms.items() if c} if terms else {}

    @classmethod
    def _wrap(cls, alph, terms):
        p = object.__new__(cls)
        p.alph = alph
        p.terms = terms
        return p

    # constructors

    @classmethod
    def zero(cls, alph: Alphabet) -> "NcPoly":
        return cls._wrap(alph, {})

    @classmethod
    def scalar(cls, alph: Alphabet, c) -> "NcPoly":
        if isinstance(c, (int, Fraction)):
            c = RatFunc.coerce(c)
        return cls._wrap(alph, {(): c} if c else {})

    @classmethod
    def one(cls, alph: Alphabet) -> "NcPoly":
        return cls._wrap(alph, {(): ONE})

    @classmethod
    def gen(cls, alph: Alphabet, sym) -> "NcPoly":
        return cls._wrap(alph, {(alph.letter(sym),): ONE})

    @classmethod
    def word(cls, alph: Alphabet, w: Word, c=ONE) -> "NcPoly":
        return cls._wrap(alph, {tuple(w): c} if c else {})

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self):
        return max((len(w) for w in self.terms), default=NEG_INF)

    def coeff(self, w: Word):
        return self.terms.get(tuple(w), RatFunc.coerce(0))

    def sorted_terms(self):
        """Terms from the highest word down."""
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]), reverse=True)

    def leading(self):
        w = max(self.terms, key=word_key)
        return w, self.terms[w]

    def letters(self):
        return sorted({x for w in self.terms for x in w})

    def is_scalar(self) -> bool:
        return all(not w for w in self.terms)

    def scalar_value(self):
        return self.terms.get((), RatFunc.coerce(0))

    # arithmetic

    def _check(self, other: "NcPoly"):
        if self.alph is not other.alph and self.alph != other.alph:
            raise AlphabetMismatch(f"{self.alph!r} vs {other.alph!r}")

    def _lift(self, other):
        if isinstance(other, NcPoly):
            self._check(other)
            return other
        if isinstance(other, (int, RatFunc)):
            return NcPoly.scalar(self.alph, RatFunc.coerce(other))
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w)
            if s is None:
                t[w] = c
            else:
                s = s + c
                if s:
                    t[w] = s
                else:
                    del t[w]
        return NcPoly._wrap(self.alph, t)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly._wrap(self.alph, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NcPoly":
        if not c:
            return NcPoly._wrap(self.alph, {})
        return NcPoly._wrap(self.alph, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, RatFunc)):
            return self.scale(RatFunc.coerce(other))
        if not isinstance(other, NcPoly):
            return NotImplemented
        self._check(other)
        t: Dict[Word, RatFunc] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = t.get(w)
                if s is None:
                    t[w] = c
                else:
                    s = s + c
                    if s:
                        t[w] = s
                    else:
                        del t[w]
        return NcPoly._wrap(self.alph, t)

    def __rmul__(self, other):
        if isinstance(other, (int, RatFunc)):
            return self.scale(RatFunc.coerce(other))
        return NotImplemented

    def __truediv__(self, c):
        if isinstance(c, (int, RatFunc)):
            return self.scale(RatFunc.coerce(c).inv())
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        r = NcPoly.one(self.alph)
        for _ in range(e):
            r = r * self
        return r

    def mul_words(self, left: Word, right: Word) -> "NcPoly":
        """The product left * self * right for words left, right."""
        return NcPoly._wrap(self.alph, {left + w + right: c for w, c in self.terms.items()})

    def map_coeffs(self, fn) -> "NcPoly":
        t = {}
        for w, c in self.terms.items():
            v = fn(c)
            if v:
                t[w] = v
        return NcPoly._wrap(self.alph, t)

    def relabel(self, alph: Alphabet, letter_map) -> "NcPoly":
        """Rename letters through ``letter_map`` (old id -> new id)."""
        return NcPoly._wrap(alph, {tuple(letter_map[x] for x in w): c for w, c in self.terms.items()})

    # equality

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return self.alph == other.alph and self.terms == other.terms
        if isinstance(other, (int, RatFunc)):
            return self.terms == ({(): RatFunc.coerce(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.alph, frozenset(self.terms.items())))

    # text

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            neg = c.leading_negative() if isinstance(c, RatFunc) else c < 0
            if neg:
                c = -c
            ws = self.alph.word_str(w)
            cs = str(c)
            if not ws:
                body = cs if _bare(cs) else f"({cs})"
            elif cs == "1":
                body = ws
            else:
                body = (cs if _bare(cs) else f"({cs})") + "*" + ws
            parts.append(("-" if neg else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"NcPoly({self.alph.kind}{self.alph.n}: {self})"

    @classmethod
    def parse(cls, text: str, alph: Alphabet) -> "NcPoly":
        from .parser import parse_expr
        return parse_expr(text, alph)


_BARE = re.compile(r"^(\d+|(\d+\*)?q(\^\d+)?)$")


def _bare(s: str) -> bool:
    return bool(_BARE.match(s))


def gen(alph: Alphabet, i: int, j: int) -> NcPoly:
    return NcPoly.gen(alph, GenSymbol(alph.kind, i, j))


def comm(a: NcPoly, b: NcPoly) -> NcPoly:
    """[a, b] = ab - ba."""
    return a * b - b * a


def qcomm(a: NcPoly, b: NcPoly, p: RatFunc = Q) -> NcPoly:
    """[a, b]_p = (p ab - p^-1 ba) / (p - p^-1)."""
    a._check(b)
    p = RatFunc.coerce(p)
    if not p:
        raise DegenerateParameter("q-bracket parameter must be nonzero")
    pinv = p.inv()
    d = p - pinv
    if not d:
        raise DegenerateParameter(f"parameter {p} gives p - 1/p = 0")
    dinv = d.inv()
    return (a * b).scale(p * dinv) - (b * a).scale(pinv * dinv)


def substitute(a: NcPoly, images, target: Alphabet | None = None) -> NcPoly:
    """Extend a letter map multiplicatively and linearly.

    ``images`` maps GenSymbol (or letter id) to NcPoly; it may also be any
    object with an ``images`` attribute of that shape (e.g. a GenMap).
    """
    table = getattr(images, "images", images)
    by_id = {}
    for k, v in table.items():
        lid = a.alph.index.get(k) if isinstance(k, GenSymbol) else k
        if lid is not None:
            by_id[lid] = v
    if target is None:
        target = next((v.alph for v in by_id.values()), a.alph)
    memo: Dict[Word, NcPoly] = {(): NcPoly.one(target)}

    def image(w: Word) -> NcPoly:
        r = memo.get(w)
        if r is None:
            last = w[-1]
            img = by_id.get(last)
            if img is None:
                raise UnmappedGenerator(str(a.alph.symbols[last]))
            r = image(w[:-1]) * img
            memo[w] = r
        return r

    out = NcPoly.zero(target)
    acc: Dict[Word, RatFunc] = {}
    for w, c in a.terms.items():
        for w2, c2 in image(w).terms.items():
            v = c * c2
            s = acc.get(w2)
            if s is None:
                acc[w2] = v
            else:
                s = s + v
                if s:
                    acc[w2] = s
                else:
                    del acc[w2]
    out.terms = acc
    return out


def lin_comb(alph: Alphabet, parts: Iterable[Tuple[RatFunc, NcPoly]]) -> NcPoly:
    out = NcPoly.zero(alph)
    for c, p in parts:
        out = out + p.scale(RatFunc.coerce(c))
    return out
