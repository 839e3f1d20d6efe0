"""v-differential operators on A_v(n) and the generator operators built from them.

Generator indices in :class:`GenSymbol` are 1-based as in the usual names
(``E1``, ``Kb2``); operator positions are 0-based generator positions of
:mod:`qqueer.qpoly` (``i`` even, ``n + i`` odd).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from .coeff import ONE, RatScalar, odd_square_scalar, qfact, qint, vpow
from .matidx import SuperIndex
from .qpoly import QPolyElement, basis_up_to, monomial
from .report import Check, Report
from .sparse import accumulate

Image = Dict[SuperIndex, RatScalar]

EVEN_KINDS = ("K", "Kinv", "E", "F")
ODD_KINDS = ("Kb", "Eb", "Fb")
KINDS = EVEN_KINDS + ODD_KINDS


@dataclass(frozen=True)
class GenSymbol:
    """A generator of U_v(q_n) with a power.

    For E and F the power is divided (E^{(m)}); for K and Kinv it is an
    ordinary power; odd kinds always carry power 1.
    """

    kind: str
    index: int
    power: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("generator indices are 1-based")
        if self.power < 0:
            raise ValueError("generator powers are natural numbers")
        if self.kind in ODD_KINDS and self.power != 1:
            raise ValueError("odd generators carry power 1")

    @property
    def parity(self) -> int:
        return 1 if self.kind in ODD_KINDS else 0

    def with_power(self, m: int) -> "GenSymbol":
        return GenSymbol(self.kind, self.index, m)

    def check_range(self, n: int) -> None:
        top = n - 1 if self.kind in ("E", "F", "Eb", "Fb") else n
        if not 1 <= self.index <= top:
            raise ValueError(f"{self} is out of range for n={n}")

    def __str__(self) -> str:
        base = {"K": "K", "Kinv": "K", "Kb": "Kb", "E": "E", "Eb": "Eb", "F": "F", "Fb": "Fb"}[self.kind]
        s = f"{base}{self.index}"
        if self.kind == "Kinv":
            return s + f"^-{self.power}"
        if self.power == 1:
            return s
        if self.kind in ("E", "F"):
            return s + f"^({self.power})"
        return s + f"^{self.power}"


_SYM = re.compile(r"(Kb|Eb|Fb|K|E|F)(\d+)(?:\^(?:\((\d+)\)|(-?\d+)))?")


def parse_symbol(text: str) -> List[GenSymbol]:
    """Parse one token such as ``E1^(2)``, ``K1^-1`` or ``F2^3`` (three F2's)."""
    m = _SYM.fullmatch(text.strip())
    if not m:
        raise ValueError(f"cannot parse generator {text!r}")
    kind, idx = m.group(1), int(m.group(2))
    if m.group(3) is not None:
        if kind not in ("E", "F"):
            raise ValueError(f"divided powers apply to E and F only: {text!r}")
        return [GenSymbol(kind, idx, int(m.group(3)))]
    p = int(m.group(4)) if m.group(4) is not None else 1
    if kind == "K":
        if p < 0:
            return [GenSymbol("Kinv", idx, -p)]
        return [GenSymbol("K", idx, p)]
    if p < 0:
        raise ValueError(f"negative power of {kind}: {text!r}")
    return [GenSymbol(kind, idx, 1) for _ in range(p)]


# --- linear operators ---------------------------------------------------------

class LinOp:
    """Linear endomorphism of A_v(n) given on reduced basis monomials."""

    __slots__ = ("n", "parity", "name", "_fn", "_cache")

    def __init__(self, n: int, fn: Callable[[SuperIndex], Image], parity: int = 0, name: str = "op"):
        self.n = n
        self.parity = parity
        self.name = name
        self._fn = fn
        self._cache: Dict[SuperIndex, Image] = {}

    def image(self, a: SuperIndex) -> Image:
        img = self._cache.get(a)
        if img is None:
            img = self._fn(a)
            self._cache[a] = img
        return img

    def apply_terms(self, terms: Image) -> Image:
        out: Image = {}
        for a, c in terms.items():
            for b, c2 in self.image(a).items():
                accumulate(out, b, c2 if c.is_one() else c * c2)
        return out

    def __call__(self, x: QPolyElement) -> QPolyElement:
        if x.divided:
            raise ValueError("operators act on ordinary coordinates")
        return QPolyElement(self.n, self.apply_terms(x.terms))

    def __matmul__(self, other: "LinOp") -> "LinOp":
        return LinOp(
            self.n,
            lambda a: self.apply_terms(other.image(a)),
            (self.parity + other.parity) % 2,
            f"{self.name}*{other.name}",
        )

    def __add__(self, other: "LinOp") -> "LinOp":
        def fn(a):
            out = dict(self.image(a))
            for b, c in other.image(a).items():
                accumulate(out, b, c)
            return out

        return LinOp(self.n, fn, self.parity, f"({self.name}+{other.name})")

    def scale(self, s) -> "LinOp":
        s = RatScalar.of(s)
        return LinOp(self.n, lambda a: {b: c * s for b, c in self.image(a).items()} if s else {},
                     self.parity, f"[{s}]{self.name}")

    def __neg__(self) -> "LinOp":
        return self.scale(-1)

    def __sub__(self, other: "LinOp") -> "LinOp":
        return self + (-other)


def _emit(out: Image, key: List[int], coeff: RatScalar) -> None:
    """Accumulate coeff * X^key, reducing odd squares if present."""
    n = len(key) // 2
    if any(key[n + i] > 1 for i in range(n)):
        for b, c in monomial(tuple(key)).terms.items():
            accumulate(out, b, coeff * c)
    else:
        accumulate(out, tuple(key), coeff)


def _odd_sign(a: SuperIndex, pos: int) -> int:
    """(-1)^{sum of odd exponents strictly before position pos}."""
    n = len(a) // 2
    return -1 if sum(a[n:pos]) % 2 else 1


def identity(n: int) -> LinOp:
    return LinOp(n, lambda a: {a: ONE}, 0, "1")


def partial(n: int, pos: int) -> LinOp:
    def fn(a):
        e = a[pos]
        if e == 0:
            return {}
        key = list(a)
        key[pos] -= 1
        c = RatScalar.of(qint(e))
        if pos >= n and _odd_sign(a, pos) < 0:
            c = -c
        return {tuple(key): c}

    return LinOp(n, fn, 1 if pos >= n else 0, f"d{pos}")


def partial_shift(n: int, i: int, j: int) -> LinOp:
    """X^a -> [a_i + j] X^{a - e_i}; zero when a_i = 0 (no negative exponents)."""
    if not 0 <= i < n:
        raise ValueError("partial_shift takes an even position")

    def fn(a):
        e = a[i]
        if e == 0:
            return {}
        key = list(a)
        key[i] -= 1
        return {tuple(key): RatScalar.of(qint(e + j))}

    return LinOp(n, fn, 0, f"d{i}^({j})")


def chi(n: int, pos: int) -> LinOp:
    """Left multiplication by the generator at ``pos``."""
    def fn(a):
        key = list(a)
        if pos < n:
            key[pos] += 1
            return {tuple(key): ONE}
        c = ONE if _odd_sign(a, pos) > 0 else -ONE
        if a[pos]:
            key[pos] = 0
            key[pos - n] += 2
            c = c * odd_square_scalar()
        else:
            key[pos] = 1
        return {tuple(key): c}

    return LinOp(n, fn, 1 if pos >= n else 0, f"x{pos}")


def delta(n: int, pos: int, sign: int = 1) -> LinOp:
    return LinOp(n, lambda a: {a: vpow(sign * a[pos])}, 0, f"delta{pos}^{sign}")


def sgn_bar(n: int, i: int) -> LinOp:
    """X^a -> (-1)^{a_{ibar}} X^a for even position i."""
    return LinOp(n, lambda a: {a: -ONE if a[n + i] % 2 else ONE}, 0, f"s{i}")


def projection(n: int, pred: Callable[[SuperIndex], bool], name: str = "proj") -> LinOp:
    return LinOp(n, lambda a: {a: ONE} if pred(a) else {}, 0, name)


# --- generator operators -------------------------------------------------------

def _power(op: LinOp, m: int) -> LinOp:
    out = identity(op.n)
    for _ in range(m):
        out = op @ out
    return out


def gen_op(n: int, g: GenSymbol) -> LinOp:
    """Composite operator of a generator built from partial/chi/delta/sgn_bar."""
    g.check_range(n)
    i = g.index - 1
    ib = n + i
    if g.kind in ("K", "Kinv"):
        s = 1 if g.kind == "K" else -1
        return _power(delta(n, i, s) @ delta(n, ib, s), g.power)
    if g.kind == "Kb":
        return (chi(n, i) @ partial(n, ib) @ delta(n, i, -1)) + (chi(n, ib) @ partial(n, i) @ delta(n, ib, 1))
    h, h1 = i, i + 1
    hb, h1b = n + h, n + h1
    if g.kind == "E":
        base = (chi(n, h) @ partial(n, h1) @ delta(n, h1b, 1)) + (
            chi(n, hb) @ partial(n, h1b) @ delta(n, h1, -1) @ sgn_bar(n, h))
    elif g.kind == "F":
        base = (chi(n, h1) @ partial(n, h) @ delta(n, hb, -1)) + (chi(n, h1b) @ partial(n, hb) @ delta(n, h, 1))
    elif g.kind == "Eb":
        return (chi(n, hb) @ partial(n, h1) @ delta(n, h1b, 1) @ sgn_bar(n, h)) + (
            chi(n, h) @ partial(n, h1b) @ delta(n, h1, -1))
    else:  # Fb
        return (chi(n, h1b) @ partial(n, h) @ delta(n, hb, -1)) + (chi(n, h1) @ partial(n, hb) @ delta(n, h, 1))
    if g.power == 1:
        return base
    return _power(base, g.power).scale(RatScalar.of(qfact(g.power)).inverse())


def _closed_image(n: int, g: GenSymbol, a: SuperIndex) -> Image:
    i = g.index - 1
    out: Image = {}
    if g.kind in ("K", "Kinv"):
        s = 1 if g.kind == "K" else -1
        return {a: vpow(s * g.power * (a[i] + a[n + i]))}
    if g.kind == "Kb":
        ib = n + i
        sgn = -1 if sum(a[n:n + i]) % 2 else 1
        if a[ib]:
            k = list(a)
            k[i] += 1
            k[ib] -= 1
            _emit(out, k, vpow(-a[i]) * sgn)
        if a[i]:
            k = list(a)
            k[i] -= 1
            k[ib] += 1
            _emit(out, k, vpow(a[ib]) * RatScalar.of(qint(a[i])) * sgn)
        return out
    h, h1 = i, i + 1
    hb, h1b = n + h, n + h1
    if g.kind == "E":
        if a[h1]:
            k = list(a)
            k[h] += 1
            k[h1] -= 1
            _emit(out, k, vpow(a[h1b]) * RatScalar.of(qint(a[h1])))
        if a[h1b]:
            k = list(a)
            k[hb] += 1
            k[h1b] -= 1
            _emit(out, k, vpow(-a[h1]))
        return out
    if g.kind == "F":
        if a[h]:
            k = list(a)
            k[h] -= 1
            k[h1] += 1
            _emit(out, k, vpow(-a[hb]) * RatScalar.of(qint(a[h])))
        if a[hb]:
            k = list(a)
            k[hb] -= 1
            k[h1b] += 1
            _emit(out, k, vpow(a[h]))
        return out
    upto_h = -1 if sum(a[n:n + h + 1]) % 2 else 1
    if g.kind == "Eb":
        if a[h1]:
            k = list(a)
            k[hb] += 1
            k[h1] -= 1
            _emit(out, k, vpow(a[h1b]) * RatScalar.of(qint(a[h1])) * upto_h)
        if a[h1b]:
            k = list(a)
            k[h] += 1
            k[h1b] -= 1
            _emit(out, k, vpow(-a[h1]) * upto_h)
        return out
    # Fb
    before_h = -1 if sum(a[n:n + h]) % 2 else 1
    if a[h]:
        k = list(a)
        k[h] -= 1
        k[h1b] += 1
        _emit(out, k, vpow(-a[hb]) * RatScalar.of(qint(a[h])) * upto_h)
    if a[hb]:
        k = list(a)
        k[hb] -= 1
        k[h1] += 1
        _emit(out, k, vpow(a[h]) * before_h)
    return out


def closed_op(n: int, g: GenSymbol) -> LinOp:
    """The closed-form action formulas as a :class:`LinOp` (divided powers by composition)."""
    g.check_range(n)
    if g.kind in ("E", "F") and g.power != 1:
        base = closed_op(n, g.with_power(1))
        return _power(base, g.power).scale(RatScalar.of(qfact(g.power)).inverse())
    return LinOp(n, lambda a: _closed_image(n, g, a), g.parity, str(g))


def act_closed(g: GenSymbol, x: QPolyElement) -> QPolyElement:
    return closed_op(x.n, g)(x)


class AlgebraRep:
    """A_v(n) as a module, with operators cached per generator."""

    def __init__(self, n: int, use_composites: bool = False):
        self.n = n
        self.use_composites = use_composites
        self._ops: Dict[GenSymbol, LinOp] = {}

    def op(self, g: GenSymbol) -> LinOp:
        o = self._ops.get(g)
        if o is None:
            o = gen_op(self.n, g) if self.use_composites else closed_op(self.n, g)
            self._ops[g] = o
        return o

    def act_terms(self, g: GenSymbol, terms: Image) -> Image:
        return self.op(g).apply_terms(terms)


# --- commutation identities ------------------------------------------------------

def _ops_equal_on(lhs: LinOp, rhs: LinOp, basis, check: Check, label: str,
                  domain: Optional[Callable[[SuperIndex], bool]] = None) -> None:
    for a in basis:
        if domain is not None and not domain(a):
            continue
        check.checked += 1
        if lhs.image(a) != rhs.image(a):
            check.fail(f"{label} at X^{a}")
            return


def verify_opecom(n: int, maxdeg: int) -> Report:
    """Check the operator commutation identities on every basis monomial up to ``maxdeg``.

    Identities that only hold on a subspace are checked there; the subspaces
    are named A[p=0] (exponent zero at position p) and A[p>=1].
    """
    if n < 1:
        raise ValueError("n must be positive")
    basis = basis_up_to(n, maxdeg)
    rep = Report(f"operator identities n={n} maxdeg={maxdeg}")
    par = lambda p: 1 if p >= n else 0
    sign = lambda p, q: -1 if par(p) and par(q) else 1
    c_odd = odd_square_scalar()
    v = vpow(1)
    P = lambda p: partial(n, p)
    X = lambda p: chi(n, p)
    D = lambda p, s=1: delta(n, p, s)
    zero_at = lambda p: (lambda a: a[p] == 0)
    pos_at = lambda p: (lambda a: a[p] >= 1)
    one = identity(n)
    positions = range(2 * n)

    def partner(p):
        return p + n if p < n else p - n

    def excluded(i, j):
        """Pairs (i, j) carved out of the generic (super)commutation rules."""
        return j == i or (i < n and j == partner(i))

    ck = rep.add(Check("partial_i partial_j = (-1)^{p(i)p(j)} partial_j partial_i"))
    for i in positions:
        for j in positions:
            if i != j:
                _ops_equal_on(P(i) @ P(j), (P(j) @ P(i)).scale(sign(i, j)), basis, ck, f"i={i},j={j}")
    ck = rep.add(Check("chi_i chi_j = (-1)^{p(i)p(j)} chi_j chi_i"))
    for i in positions:
        for j in positions:
            if i != j:
                _ops_equal_on(X(i) @ X(j), (X(j) @ X(i)).scale(sign(i, j)), basis, ck, f"i={i},j={j}")
    ck = rep.add(Check("partial_ibar^2 = 0 and chi_ibar^2 = c chi_i^2"))
    for i in range(n):
        ib = n + i
        _ops_equal_on(P(ib) @ P(ib), one.scale(0), basis, ck, f"i={i}")
        _ops_equal_on(X(ib) @ X(ib), (X(i) @ X(i)).scale(c_odd), basis, ck, f"i={i}")

    ck = rep.add(Check("partial_i delta_j = delta_j partial_i (i != j), partial_i delta_i = v delta_i partial_i"))
    for i in positions:
        for j in positions:
            rhs = D(j) @ P(i)
            _ops_equal_on(P(i) @ D(j), rhs if i != j else rhs.scale(v), basis, ck, f"i={i},j={j}")

    ck = rep.add(Check("chi_j partial_i = (-1)^{p(i)p(j)} partial_i chi_j off the special pairs"))
    for i in positions:
        for j in positions:
            if not excluded(i, j):
                _ops_equal_on(X(j) @ P(i), (P(i) @ X(j)).scale(sign(i, j)), basis, ck, f"i={i},j={j}")
    ck = rep.add(Check("partial_i chi_i = chi_i partial_i^(1) on A[i>=1]"))
    for i in range(n):
        _ops_equal_on(P(i) @ X(i), X(i) @ partial_shift(n, i, 1), basis, ck, f"i={i}", pos_at(i))
    ck = rep.add(Check("chi_ibar partial_ibar and partial_ibar chi_ibar are the complementary projections"))
    for i in range(n):
        ib = n + i
        _ops_equal_on(X(ib) @ P(ib), projection(n, pos_at(ib)), basis, ck, f"i={i}")
        _ops_equal_on(P(ib) @ X(ib), projection(n, zero_at(ib)), basis, ck, f"i={i}")
        _ops_equal_on(X(ib) @ P(ib) + P(ib) @ X(ib), one, basis, ck, f"i={i}")
    ck = rep.add(Check("partial_i chi_ibar = chi_ibar partial_i on A[ibar=0], = chi_ibar partial_i^(2) on A[ibar=1] & A[i>=1]"))
    for i in range(n):
        ib = n + i
        _ops_equal_on(P(i) @ X(ib), X(ib) @ P(i), basis, ck, f"i={i}", zero_at(ib))
        _ops_equal_on(P(i) @ X(ib), X(ib) @ partial_shift(n, i, 2), basis, ck, f"i={i}",
                      lambda a, i=i, ib=ib: a[ib] == 1 and a[i] >= 1)

    ck = rep.add(Check("chi_j delta_i = delta_i chi_j off the special pairs"))
    for i in positions:
        for j in positions:
            if not excluded(i, j):
                _ops_equal_on(X(j) @ D(i), D(i) @ X(j), basis, ck, f"i={i},j={j}")
    ck = rep.add(Check("chi_i delta_i = v^-1 delta_i chi_i; chi_ibar delta_ibar = v^-1 / v delta_ibar chi_ibar on A[ibar=0] / A[ibar=1]"))
    vinv = vpow(-1)
    for i in range(n):
        ib = n + i
        _ops_equal_on(X(i) @ D(i), (D(i) @ X(i)).scale(vinv), basis, ck, f"i={i}")
        _ops_equal_on(X(ib) @ D(ib), (D(ib) @ X(ib)).scale(vinv), basis, ck, f"i={i}", zero_at(ib))
        _ops_equal_on(X(ib) @ D(ib), (D(ib) @ X(ib)).scale(v), basis, ck, f"i={i}", pos_at(ib))
    ck = rep.add(Check("chi_ibar delta_i = delta_i chi_ibar on A[ibar=0], = v^-2 delta_i chi_ibar on A[ibar=1]"))
    for i in range(n):
        ib = n + i
        _ops_equal_on(X(ib) @ D(i), D(i) @ X(ib), basis, ck, f"i={i}", zero_at(ib))
        _ops_equal_on(X(ib) @ D(i), (D(i) @ X(ib)).scale(vpow(-2)), basis, ck, f"i={i}", pos_at(ib))

    ck = rep.add(Check("s_ibar chi_ibar = -chi_ibar s_ibar, s_ibar partial_ibar = partial_ibar"))
    for i in range(n):
        ib = n + i
        s = sgn_bar(n, i)
        _ops_equal_on(s @ X(ib), -(X(ib) @ s), basis, ck, f"i={i}")
        _ops_equal_on(s @ P(ib), P(ib), basis, ck, f"i={i}")
    two = RatScalar.of(qint(2))
    ck = rep.add(Check("chi_i partial_i^(2) + chi_i partial_i = [2] chi_i partial_i^(1)"))
    for i in range(n):
        _ops_equal_on(X(i) @ partial_shift(n, i, 2) + X(i) @ P(i),
                      (X(i) @ partial_shift(n, i, 1)).scale(two), basis, ck, f"i={i}")
    ck = rep.add(Check("chi_i partial_i^(2) = chi_i partial_i + v delta_i + v^-1 delta_i^-1 on A[i>=1]"))
    for i in range(n):
        _ops_equal_on(X(i) @ partial_shift(n, i, 2),
                      X(i) @ P(i) + D(i).scale(v) + D(i, -1).scale(vinv), basis, ck, f"i={i}", pos_at(i))
    ck = rep.add(Check("chi_i partial_i^(1) = v chi_i partial_i + delta_i^-1 on A[i>=1]"))
    for i in range(n):
        _ops_equal_on(X(i) @ partial_shift(n, i, 1), (X(i) @ P(i)).scale(v) + D(i, -1), basis, ck, f"i={i}",
                      pos_at(i))
    ck = rep.add(Check("partial_ibar delta_i^{+-1} chi_ibar + chi_ibar partial_ibar delta_i^{+-1} = delta_i^{+-1}"))
    for i in range(n):
        ib = n + i
        for s in (1, -1):
            _ops_equal_on(P(ib) @ D(i, s) @ X(ib) + X(ib) @ P(ib) @ D(i, s), D(i, s), basis, ck, f"i={i},s={s}")
    ck = rep.add(Check("chi_i partial_i^(2) = v^2 chi_i partial_i + [2] delta_i^-1 on A[i>=1]"))
    for i in range(n):
        _ops_equal_on(X(i) @ partial_shift(n, i, 2), (X(i) @ P(i)).scale(vpow(2)) + D(i, -1).scale(two),
                      basis, ck, f"i={i}", pos_at(i))
    ck = rep.add(Check("partial_i^(1) partial_i^(1) + partial_i partial_i = [2] partial_i^(1) partial_i"))
    for i in range(n):
        d1 = partial_shift(n, i, 1)
        _ops_equal_on(d1 @ d1 + P(i) @ P(i), (d1 @ P(i)).scale(two), basis, ck, f"i={i}")
    return rep


def literal_second_shift_identity_holds(n: int, maxdeg: int) -> bool:
    """Whether chi_i partial_i^(2) = chi_i partial_i + delta_i + delta_i^-1 holds on A[i>=1]."""
    ck = Check("second shift identity, literal form")
    basis = basis_up_to(n, maxdeg)
    for i in range(n):
        _ops_equal_on(chi(n, i) @ partial_shift(n, i, 2),
                      chi(n, i) @ partial(n, i) + delta(n, i, 1) + delta(n, i, -1),
                      basis, ck, f"i={i}", lambda a, i=i: a[i] >= 1)
    return ck.passed


def verify_closed_vs_composite(n: int, maxdeg: int) -> Report:
    """The closed-form actions agree with the operator composites on every basis monomial."""
    rep = Report(f"closed form vs composites n={n} maxdeg={maxdeg}")
    basis = basis_up_to(n, maxdeg)
    for g in all_generators(n):
        ck = rep.add(Check(f"{g}"))
        _ops_equal_on(closed_op(n, g), gen_op(n, g), basis, ck, str(g))
    return rep


def all_generators(n: int) -> List[GenSymbol]:
    gens = []
    for i in range(1, n + 1):
        gens += [GenSymbol("K", i), GenSymbol("Kinv", i), GenSymbol("Kb", i)]
    for h in range(1, n):
        gens += [GenSymbol("E", h), GenSymbol("F", h), GenSymbol("Eb", h), GenSymbol("Fb", h)]
    return gens
