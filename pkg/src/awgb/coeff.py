"""Exact arithmetic in the rational function field Q(q).

Values are stored as a coprime pair of integer polynomials (backed by
FLINT's ``fmpz_poly``) with a denominator of positive leading coefficient,
so equality is structural.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from flint import fmpq, fmpz_poly

from .errors import BadSpecialization, DivisionByZero, PoleAtPoint, ZeroDenominator

__all__ = [
    "RatFunc", "Q", "QINV", "ONE", "ZERO",
    "rf_make", "rf_add", "rf_mul", "rf_neg", "rf_inv", "rf_eval",
    "poly_to_str", "parse_poly",
]

_P1 = fmpz_poly([1])
_P0 = fmpz_poly([])

Scalar = Union["RatFunc", int, Fraction]


def _is_one(p: fmpz_poly) -> bool:
    return p.degree() == 0 and p[0] == 1


class RatFunc:
    """An element num/den of Q(q) in canonical form."""

    __slots__ = ("num", "den", "d1", "_hash")

    def __init__(self, num=0, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDenominator("denominator is the zero polynomial")
        if num.is_zero():
            num, den = _P0, _P1
        elif not _is_one(den):
            g = num.gcd(den)
            if not _is_one(g):
                num = num // g
                den = den // g
            if den[den.degree()] < 0:
                num, den = -num, -den
        self.num = num
        self.den = den
        self.d1 = _is_one(den)
        self._hash = None

    @classmethod
    def _raw(cls, num: fmpz_poly, den: fmpz_poly, d1: bool = False) -> "RatFunc":
        # caller guarantees canonical form
        r = object.__new__(cls)
        r.num = num
        r.den = den
        r.d1 = d1
        r._hash = None
        return r

    @classmethod
    def _reduced(cls, num: fmpz_poly, den: fmpz_poly) -> "RatFunc":
        # den has positive leading coefficient; cancel the common factor
        if num.is_zero():
            return ZERO
        g = num.gcd(den)
        if g.degree() > 0 or g[0] != 1:
            num = num // g
            den = den // g
        return cls._raw(num, den, den.degree() == 0 and den[0] == 1)

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, int):
            return cls._raw(fmpz_poly([x]) if x else _P0, _P1, True)
        if isinstance(x, Fraction):
            return cls(x.numerator, x.denominator)
        if isinstance(x, fmpq):
            return cls(int(x.p), int(x.q))
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    # predicates

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self) -> bool:
        return self.d1 and _is_one(self.num)

    def is_polynomial(self) -> bool:
        return self.d1

    # arithmetic

    def __add__(self, other):
        if other.__class__ is not RatFunc:
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.d1 and other.d1:
            s = self.num + other.num
            return RatFunc._raw(s, _P1, True) if not s.is_zero() else ZERO
        if self.d1:
            return RatFunc._raw(self.num * other.den + other.num, other.den)
        if other.d1:
            return RatFunc._raw(self.num + other.num * self.den, self.den)
        if self.den == other.den:
            return RatFunc._reduced(self.num + other.num, self.den)
        # Henrici: only the gcd of the denominators can cancel
        d = self.den.gcd(other.den)
        if d.degree() == 0 and d[0] == 1:
            return RatFunc._raw(self.num * other.den + other.num * self.den, self.den * other.den)
        b1 = self.den // d
        b2 = other.den // d
        t = self.num * b2 + other.num * b1
        if t.is_zero():
            return ZERO
        g = t.gcd(d)
        if g.degree() == 0 and g[0] == 1:
            return RatFunc._raw(t, b1 * other.den)
        return RatFunc._raw(t // g, b1 * (other.den // g))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den, self.d1)

    def __sub__(self, other):
        if other.__class__ is not RatFunc:
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if other.__class__ is not RatFunc:
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        an, bn = self.num, other.num
        if an.is_zero() or bn.is_zero():
            return ZERO
        if self.d1 and other.d1:
            return RatFunc._raw(an * bn, _P1, True)
        ad, bd = self.den, other.den
        # cross-cancel; flint gcds have positive leading coefficient
        if not other.d1:
            g = an.gcd(bd)
            if g.degree() > 0 or g[0] != 1:
                an = an // g
                bd = bd // g
        if not self.d1:
            g = bn.gcd(ad)
            if g.degree() > 0 or g[0] != 1:
                bn = bn // g
                ad = ad // g
        den = ad * bd
        return RatFunc._raw(an * bn, den, den.degree() == 0 and den[0] == 1)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        num, den = self.den, self.num
        if den[den.degree()] < 0:
            num, den = -num, -den
        return RatFunc._raw(num, den, den.degree() == 0 and den[0] == 1)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inv()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        return RatFunc._raw(self.num ** e, self.den ** e, self.d1) if e else ONE

    # comparison / hashing

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(int(c) for c in self.num.coeffs()),
                               tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    # evaluation

    def eval(self, q0) -> Fraction:
        return rf_eval(self, q0)

    def _eval_fmpq(self, q0: fmpq) -> fmpq:
        d = self.den(q0)
        if d == 0:
            raise PoleAtPoint(f"denominator of {self} vanishes at q={q0}")
        return self.num(q0) / d

    # text

    def leading_negative(self) -> bool:
        return not self.num.is_zero() and self.num[self.num.degree()] < 0

    def __str__(self):
        ns = poly_to_str(self.num)
        if self.d1:
            return ns
        if len(_terms(self.num)) > 1:
            ns = f"({ns})"
        return f"{ns}/({poly_to_str(self.den)})"

    def __repr__(self):
        return f"RatFunc({self})"

    @classmethod
    def parse(cls, text: str) -> "RatFunc":
        """Parse the ``num/den`` text form produced by ``str``."""
        s = text.replace(" ", "")
        depth = 0
        cut = -1
        for idx, ch in enumerate(s):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "/" and depth == 0:
                cut = idx
                break
        if cut < 0:
            return cls(parse_poly(_strip_parens(s)))
        return cls(parse_poly(_strip_parens(s[:cut])), parse_poly(_strip_parens(s[cut + 1:])))


def _strip_parens(s: str) -> str:
    while s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    return s


def _as_poly(x) -> fmpz_poly:
    if isinstance(x, fmpz_poly):
        return x
    if isinstance(x, int):
        return fmpz_poly([x])
    if isinstance(x, (list, tuple)):
        return fmpz_poly(list(x))
    raise TypeError(f"expected an integer polynomial, got {type(x).__name__}")


def _terms(p: fmpz_poly):
    return [(k, int(c)) for k, c in enumerate(p.coeffs()) if c != 0]


def poly_to_str(p: fmpz_poly) -> str:
    """Sparse ``c*q^k`` form, highest degree first, e.g. ``2*q^3-q+5``."""
    terms = _terms(p)
    if not terms:
        return "0"
    out = []
    for k, c in reversed(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = "q" if k == 1 else f"q^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += sign + body
    return s


_TERM = re.compile(r"([+-]?)(\d*)(\*?)(q(?:\^(\d+))?)?")


def parse_poly(s: str) -> fmpz_poly:
    """Inverse of :func:`poly_to_str`."""
    s = s.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    coeffs = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad polynomial text {s!r} at {pos}")
        sign, digits, star, mono, exp = m.groups()
        if not digits and not mono:
            raise ValueError(f"bad polynomial text {s!r} at {pos}")
        if star and not (digits and mono):
            raise ValueError(f"bad polynomial text {s!r} at {pos}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        k = 0 if not mono else (int(exp) if exp else 1)
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    top = max(coeffs)
    return fmpz_poly([coeffs.get(k, 0) for k in range(top + 1)])


ZERO = RatFunc._raw(_P0, _P1, True)
ONE = RatFunc._raw(_P1, _P1, True)
Q = RatFunc._raw(fmpz_poly([0, 1]), _P1, True)
QINV = RatFunc._raw(_P1, fmpz_poly([0, 1]))


def rf_make(num, den=1) -> RatFunc:
    """Canonical element num/den; raises ZeroDenominator for den = 0."""
    return RatFunc(num, den)


def rf_add(a: RatFunc, b: RatFunc) -> RatFunc:
    return a + b


def rf_mul(a: RatFunc, b: RatFunc) -> RatFunc:
    return a * b


def rf_neg(a: RatFunc) -> RatFunc:
    return -a


def rf_inv(a: RatFunc) -> RatFunc:
    return a.inv()


def check_specialization(q0) -> Fraction:
    q0 = Fraction(q0)
    if q0 == 0 or q0 ** 4 == 1:
        raise BadSpecialization(f"q0={q0} is excluded (need q0 != 0 and q0^4 != 1)")
    return q0


def rf_eval(a: RatFunc, q0) -> Fraction:
    """Value of ``a`` at the rational point ``q0``."""
    q0 = check_specialization(q0)
    v = RatFunc.coerce(a)._eval_fmpq(fmpq(q0.numerator, q0.denominator))
    return Fraction(int(v.p), int(v.q))
