"""Exact scalars: Laurent polynomials in v and the rational function field Q(v).

Coefficients are Python ints or :class:`fractions.Fraction`; integral fractions
are folded back to ints so the common case stays on fast integer arithmetic.
Rendering uses ``q`` for the indeterminate, e.g. ``q^2 - 1 + 3*q^-2`` or
``(q^2 - 1)/(q^2 + 1)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Dict, Iterable, Iterator, List, Tuple, Union

Rational = Union[int, Fraction]


def _clean(c: Rational) -> Rational:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Sparse Laurent polynomial ``{exponent: coefficient}`` with no zero entries."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Dict[int, Rational] | None = None):
        d: Dict[int, Rational] = {}
        if coeffs:
            for k, c in coeffs.items():
                if c:
                    d[int(k)] = _clean(c)
        self._c = d
        self._hash = None

    @classmethod
    def _raw(cls, d: Dict[int, Rational]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = d
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: Rational = 1) -> "LaurentPoly":
        return cls._raw({exp: _clean(coeff)} if coeff else {})

    @classmethod
    def constant(cls, c: Rational) -> "LaurentPoly":
        return cls.monomial(0, c)

    # --- inspection -----------------------------------------------------
    def items(self) -> Iterable[Tuple[int, Rational]]:
        return self._c.items()

    def coeff(self, exp: int) -> Rational:
        return self._c.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._c

    def is_one(self) -> bool:
        return len(self._c) == 1 and self._c.get(0) == 1

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def degree(self) -> int:
        if not self._c:
            raise ValueError("degree of the zero polynomial")
        return max(self._c)

    def valuation(self) -> int:
        if not self._c:
            raise ValueError("valuation of the zero polynomial")
        return min(self._c)

    def leading_coeff(self) -> Rational:
        return self._c[self.degree()]

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # --- arithmetic -----------------------------------------------------
    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        if len(self._c) < len(other._c):
            small, big = self._c, other._c
        else:
            small, big = other._c, self._c
        d = dict(big)
        for k, c in small.items():
            s = d.get(k, 0) + c
            if s:
                d[k] = _clean(s)
            else:
                d.pop(k, None)
        return LaurentPoly._raw(d)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -c for k, c in self._c.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return LaurentPoly.constant(other) - self

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            if not other:
                return ZERO_POLY
            other_c = _clean(other)
            return LaurentPoly._raw({k: _clean(c * other_c) for k, c in self._c.items()})
        a, b = self._c, other._c
        if len(a) == 1:
            (ka, ca), = a.items()
            if ca == 1:
                return LaurentPoly._raw({ka + k: c for k, c in b.items()})
            return LaurentPoly._raw({ka + k: _clean(ca * c) for k, c in b.items()})
        if len(b) == 1:
            return other * self
        d: Dict[int, Rational] = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                d[k] = d.get(k, 0) + ca * cb
        return LaurentPoly({k: c for k, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LaurentPoly":
        if e < 0:
            if not self.is_monomial():
                raise ArithmeticError("negative power of a non-monomial Laurent polynomial")
            (k, c), = self._c.items()
            return LaurentPoly.monomial(k * e, Fraction(1) / Fraction(c) ** -e)
        out = ONE_POLY
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        if k == 0:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """The substitution v -> v^{-1}."""
        return LaurentPoly._raw({-e: c for e, c in self._c.items()})

    def evaluate(self, x: Rational) -> Rational:
        x = Fraction(x)
        return _clean(sum((c * x**e for e, c in self._c.items()), Fraction(0)))

    def divmod_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises ``ArithmeticError`` if ``other`` does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return ZERO_POLY
        if other.is_monomial():
            (k, c), = other._c.items()
            inv = Fraction(1, 1) / c
            return LaurentPoly({e - k: co * inv for e, co in self._c.items()})
        sa, sb = self.valuation(), other.valuation()
        q, r = _poly_divmod(_dense(self, sa), _dense(other, sb))
        if any(r):
            raise ArithmeticError("inexact Laurent division")
        return _sparse(q, sa - sb)

    def __repr__(self) -> str:
        return f"LaurentPoly({render_laurent(self)})"

    def __str__(self) -> str:
        return render_laurent(self)


ZERO_POLY = LaurentPoly._raw({})
ONE_POLY = LaurentPoly._raw({0: 1})


# --- dense polynomial helpers (index = exponent, lowest first) ---------------

def _dense(p: LaurentPoly, shift: int) -> List[Rational]:
    out: List[Rational] = [0] * (p.degree() - shift + 1)
    for e, c in p.items():
        out[e - shift] = c
    return out


def _sparse(coeffs: List[Rational], shift: int) -> LaurentPoly:
    return LaurentPoly({i + shift: c for i, c in enumerate(coeffs) if c})


def _trim(p: List[Rational]) -> List[Rational]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: List[Rational], b: List[Rational]) -> Tuple[List[Rational], List[Rational]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    lb = b[-1]
    q: List[Rational] = [0] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        top = a[-1]
        if type(top) is int and type(lb) is int and top % lb == 0:
            c = top // lb
        else:
            c = _clean(Fraction(top) / lb)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = _clean(a[shift + i] - c * bc)
        a.pop()
        _trim(a)
    return q, a


def _poly_gcd(a: List[Rational], b: List[Rational]) -> List[Rational]:
    """Monic gcd over Q."""
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    lc = Fraction(a[-1])
    return [_clean(c / lc) for c in a]


def _primitive_scale(p: List[Rational]) -> Fraction:
    """Scalar s making s*p an integer polynomial with content 1 and positive leading coefficient."""
    dens = [Fraction(c).denominator for c in p if c]
    m = 1
    for d in dens:
        m = lcm(m, d)
    nums = [int(Fraction(c) * m) for c in p if c]
    g = 0
    for x in nums:
        g = gcd(g, x)
    s = Fraction(m, g)
    if p[-1] * s < 0:
        s = -s
    return s


# --- the field Q(v) ----------------------------------------------------------

class RatScalar:
    """Element of Q(v) in canonical form ``num/den``.

    ``den`` is an integer polynomial with nonzero constant term, content 1 and
    positive leading coefficient, coprime to ``num``. Equality is structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Union[LaurentPoly, Rational] = 0, den: Union[LaurentPoly, Rational] = 1):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.constant(num)
        if not isinstance(den, LaurentPoly):
            den = LaurentPoly.constant(den)
        n, d = _canon(num, den)
        self.num = n
        self.den = d
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RatScalar":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def of(cls, x: "Scalarish") -> "RatScalar":
        if isinstance(x, RatScalar):
            return x
        if isinstance(x, LaurentPoly):
            return cls._raw(x, ONE_POLY)
        return cls._raw(LaurentPoly.constant(x), ONE_POLY)

    @classmethod
    def vpow(cls, k: int, sign: int = 1) -> "RatScalar":
        return cls._raw(LaurentPoly._raw({k: sign}), ONE_POLY)

    # --- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num._c

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def is_signed_vpower(self) -> bool:
        """Membership in ±v^Z."""
        if not self.is_laurent() or not self.num.is_monomial():
            return False
        (_, c), = self.num.items()
        return c in (1, -1)

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ArithmeticError(f"{self} is not a Laurent polynomial")
        return self.num

    def __bool__(self) -> bool:
        return bool(self.num._c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatScalar):
            if isinstance(other, (int, Fraction, LaurentPoly)):
                other = RatScalar.of(other)
            else:
                return NotImplemented
        return self.num._c == other.num._c and self.den._c == other.den._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # --- arithmetic --------------------------------------------------------
    def __add__(self, other: "Scalarish") -> "RatScalar":
        other = _coerce(other)
        if not other.num._c:
            return self
        if not self.num._c:
            return other
        if self.den._c == other.den._c:
            if self.den.is_one():
                return RatScalar._raw(self.num + other.num, ONE_POLY)
            return _from_pair(self.num + other.num, self.den)
        return _from_pair(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatScalar":
        return RatScalar._raw(-self.num, self.den)

    def __sub__(self, other: "Scalarish") -> "RatScalar":
        return self + (-_coerce(other))

    def __rsub__(self, other: "Scalarish") -> "RatScalar":
        return _coerce(other) - self

    def __mul__(self, other: "Scalarish") -> "RatScalar":
        other = _coerce(other)
        if not self.num._c or not other.num._c:
            return ZERO
        a_one = self.den.is_one()
        b_one = other.den.is_one()
        if a_one and b_one:
            return RatScalar._raw(self.num * other.num, ONE_POLY)
        if a_one and self.num.is_monomial() and _unit_coeff(self.num):
            return RatScalar._raw(self.num * other.num, other.den)
        if b_one and other.num.is_monomial() and _unit_coeff(other.num):
            return RatScalar._raw(self.num * other.num, self.den)
        return _from_pair(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatScalar":
        if not self.num._c:
            raise ZeroDivisionError("inverse of zero in Q(v)")
        if self.num.is_monomial() and self.den.is_one():
            (k, c), = self.num.items()
            return RatScalar._raw(LaurentPoly._raw({-k: _clean(Fraction(1) / c)}), ONE_POLY)
        return _from_pair(self.den, self.num)

    def __truediv__(self, other: "Scalarish") -> "RatScalar":
        other = _coerce(other)
        if not other.num._c:
            raise ZeroDivisionError("division by zero in Q(v)")
        return self * other.inverse()

    def __rtruediv__(self, other: "Scalarish") -> "RatScalar":
        return _coerce(other) / self

    def __pow__(self, e: int) -> "RatScalar":
        if e < 0:
            return self.inverse() ** (-e)
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def bar(self) -> "RatScalar":
        """The field automorphism v -> v^{-1}."""
        return RatScalar(self.num.bar(), self.den.bar())

    def __repr__(self) -> str:
        return f"RatScalar({render(self)})"

    def __str__(self) -> str:
        return render(self)


Scalarish = Union[RatScalar, LaurentPoly, int, Fraction]


def _unit_coeff(p: LaurentPoly) -> bool:
    (_, c), = p.items()
    return c == 1 or c == -1


def _coerce(x: Scalarish) -> RatScalar:
    if isinstance(x, RatScalar):
        return x
    return RatScalar.of(x)


def _canon(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator in Q(v)")
    if num.is_zero():
        return ZERO_POLY, ONE_POLY
    if den.is_monomial():
        (k, c), = den.items()
        if c == 1:
            return num.shift(-k), ONE_POLY
        inv = Fraction(1) / c
        return LaurentPoly({e - k: co * inv for e, co in num.items()}), ONE_POLY
    k = den.valuation()
    m = num.valuation()
    dd = _dense(den, k)
    nd = _dense(num, m)
    g = _poly_gcd(nd, dd)
    if len(g) > 1:
        nd, _ = _poly_divmod(nd, g)
        dd, _ = _poly_divmod(dd, g)
    shift = m - k
    if len(dd) == 1:
        inv = Fraction(1) / dd[0]
        return _sparse([c * inv for c in nd], shift), ONE_POLY
    s = _primitive_scale(dd)
    return _sparse([c * s for c in nd], shift), _sparse([c * s for c in dd], 0)


def _from_pair(num: LaurentPoly, den: LaurentPoly) -> RatScalar:
    n, d = _canon(num, den)
    return RatScalar._raw(n, d)


ZERO = RatScalar._raw(ZERO_POLY, ONE_POLY)
ONE = RatScalar._raw(ONE_POLY, ONE_POLY)
V = RatScalar._raw(LaurentPoly._raw({1: 1}), ONE_POLY)


def vpow(k: int) -> RatScalar:
    return RatScalar.vpow(k)


def field_ops(a: Scalarish, b: Scalarish, op: str) -> RatScalar:
    """Dispatch ``op`` in ``{"add", "sub", "mul", "div"}`` on two scalars."""
    a, b = _coerce(a), _coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


# --- quantum numbers ---------------------------------------------------------

@lru_cache(maxsize=None)
def qint(c: int) -> LaurentPoly:
    """[c] = (v^c - v^{-c})/(v - v^{-1})."""
    if c == 0:
        return ZERO_POLY
    sign = 1 if c > 0 else -1
    c = abs(c)
    return LaurentPoly._raw({c - 1 - 2 * k: sign for k in range(c)})


@lru_cache(maxsize=None)
def qfact(m: int) -> LaurentPoly:
    if m < 0:
        raise ValueError("quantum factorial of a negative integer")
    out = ONE_POLY
    for k in range(1, m + 1):
        out = out * qint(k)
    return out


@lru_cache(maxsize=None)
def qbinom(c: int, m: int) -> LaurentPoly:
    """Gaussian binomial [c][c-1]...[c-m+1]/[m]!, exact for every integer c."""
    if m < 0:
        raise ValueError("lower index of a quantum binomial must be natural")
    top = ONE_POLY
    for k in range(m):
        top = top * qint(c - k)
    return top.divmod_exact(qfact(m))


def qbinom_weight(lam: int, c: int, t: int) -> LaurentPoly:
    """The bracket [Z; c over t] evaluated at Z = v^lam, from its product form."""
    top = ONE_POLY
    bottom = ONE_POLY
    for s in range(1, t + 1):
        e = lam + c - s + 1
        top = top * LaurentPoly({e: 1, -e: -1} if e else {})
        bottom = bottom * LaurentPoly({s: 1, -s: -1})
    return top.divmod_exact(bottom)


def odd_square_scalar() -> RatScalar:
    """(v - v^{-1})/(v + v^{-1}), the scalar in X_ī² = c X_i²."""
    return _ODD_SQ


_ODD_SQ = RatScalar(LaurentPoly({1: 1, -1: -1}), LaurentPoly({1: 1, -1: 1}))


def specialize_v1(x: Scalarish) -> Rational:
    x = _coerce(x)
    d = x.den.evaluate(1)
    if d == 0:
        raise ArithmeticError(f"{x} has a pole at v = 1")
    return _clean(Fraction(x.num.evaluate(1)) / d)


# --- text form ---------------------------------------------------------------

def _render_coeff(c: Rational) -> str:
    return str(c) if type(c) is int else f"{c.numerator}/{c.denominator}"


def render_laurent(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts: List[str] = []
    for e in sorted((e for e, _ in p.items()), reverse=True):
        c = p.coeff(e)
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = _render_coeff(a)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if a == 1 else f"{_render_coeff(a)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def render(x: Scalarish) -> str:
    x = _coerce(x)
    if x.is_laurent():
        return render_laurent(x.num)
    return f"({render_laurent(x.num)})/({render_laurent(x.den)})"


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*(?P<v1>[qv])(?:\^(?P<e1>-?\d+))?)?
        | (?P<v2>[qv])(?:\^(?P<e2>-?\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentPoly:
    s = text.strip()
    if not s:
        raise ValueError("empty scalar text")
    pos = 0
    d: Dict[int, Rational] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise ValueError(f"cannot parse scalar text {text!r} at offset {pos}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            c = _clean(Fraction(m.group("coef")))
            if m.group("v1"):
                e = int(m.group("e1")) if m.group("e1") else 1
            else:
                e = 0
        else:
            c = 1
            e = int(m.group("e2")) if m.group("e2") else 1
        d[e] = d.get(e, 0) + sign * c
        pos = m.end()
    return LaurentPoly(d)


def parse(text: str) -> RatScalar:
    """Inverse of :func:`render`."""
    s = text.strip()
    m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", s)
    if m:
        return RatScalar(parse_laurent(m.group(1)), parse_laurent(m.group(2)))
    return RatScalar.of(parse_laurent(s))


def iter_terms(p: LaurentPoly) -> Iterator[Tuple[int, Rational]]:
    for e in sorted(e for e, _ in p.items()):
        yield e, p.coeff(e)
