"""The queer polynomial superalgebra A_v(n).

Even variables X_1..X_n are central, odd variables X_1bar..X_nbar anticommute
pairwise and square to ``c X_i^2`` with ``c = (v - v^{-1})/(v + v^{-1})``.
Generators are addressed by 0-based positions: ``i`` for X_{i+1} and ``n + i``
for its odd partner. Basis monomials are stored by their flat exponent tuple in
the order evens then odds.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, List, Sequence, Tuple

from .coeff import ONE, RatScalar, odd_square_scalar, qfact, render
from .matidx import SuperIndex, index_degree, index_parity
from .sparse import SparseVector, accumulate


class QPolyElement(SparseVector[SuperIndex]):
    """Element of A_v(n); ``divided`` marks coefficients taken against X^{[a]}."""

    __slots__ = ("n", "divided")

    def __init__(self, n: int, terms: Dict[SuperIndex, RatScalar] | None = None, divided: bool = False):
        super().__init__(terms)
        self.n = n
        self.divided = divided
        for a in self.terms:
            if len(a) != 2 * n or any(x > 1 for x in a[n:]):
                raise ValueError(f"{a} is not a reduced super multi-index for n={n}")

    def _copy_ambient(self, obj) -> None:
        obj.n = self.n
        obj.divided = self.divided

    @classmethod
    def one(cls, n: int) -> "QPolyElement":
        return cls(n, {(0,) * (2 * n): ONE})

    @classmethod
    def basis(cls, a: SuperIndex) -> "QPolyElement":
        """X^a for reduced a."""
        return cls(len(a) // 2, {tuple(a): ONE})

    def __mul__(self, other: "QPolyElement") -> "QPolyElement":
        return product(self, other)

    def __repr__(self) -> str:
        return f"QPolyElement({render_qpoly(self)})"


def _insert_odd(exps: List[int], n: int, pos: int, c: RatScalar) -> Tuple[int, RatScalar]:
    """Right-multiply the normal-ordered monomial ``exps`` by the odd generator at ``pos``.

    Mutates ``exps``; returns the sign and the accumulated odd-square scalar.
    """
    sign = 1
    for k in range(pos + 1, 2 * n):
        if exps[k]:
            sign = -sign
    if exps[pos]:
        exps[pos] = 0
        exps[pos - n] += 2
        c = c * odd_square_scalar()
    else:
        exps[pos] = 1
    return sign, c


def normal_order(n: int, word: Iterable[int]) -> QPolyElement:
    """Product X_{g_1} X_{g_2} ... of generator positions, in the canonical basis."""
    exps = [0] * (2 * n)
    sign = 1
    c = ONE
    for g in word:
        if not 0 <= g < 2 * n:
            raise ValueError(f"generator position {g} out of range for n={n}")
        if g < n:
            exps[g] += 1
        else:
            s, c = _insert_odd(exps, n, g, c)
            sign *= s
    return QPolyElement(n, {tuple(exps): c if sign > 0 else -c})


def index_word(a: SuperIndex) -> List[int]:
    """The generator word X_1^{a_1} ... X_n^{a_n} X_1bar^{..} ... X_nbar^{..}."""
    word: List[int] = []
    for pos, e in enumerate(a):
        word.extend([pos] * e)
    return word


def monomial(a: SuperIndex) -> QPolyElement:
    """X^a for any exponent tuple; odd exponents >= 2 are reduced."""
    if any(x < 0 for x in a):
        raise ValueError(f"negative exponent in {a}")
    return normal_order(len(a) // 2, index_word(a))


def monomial_mul(a: SuperIndex, b: SuperIndex) -> Tuple[RatScalar, SuperIndex]:
    """X^a X^b = coeff * X^key for reduced a, b."""
    n = len(a) // 2
    exps = [x + y for x, y in zip(a[:n], b[:n])] + list(a[n:])
    sign = 1
    c = ONE
    for pos in range(n, 2 * n):
        if b[pos]:
            s, c = _insert_odd(exps, n, pos, c)
            sign *= s
    return (c if sign > 0 else -c), tuple(exps)


def product(x: QPolyElement, y: QPolyElement) -> QPolyElement:
    if x.n != y.n:
        raise ValueError("product of elements of different A_v(n)")
    if x.divided or y.divided:
        raise ValueError("product expects ordinary (non-divided) coordinates")
    out: Dict[SuperIndex, RatScalar] = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            c, key = monomial_mul(a, b)
            accumulate(out, key, ca * cb * c)
    return QPolyElement(x.n, out)


def factorial_weight(a: SuperIndex, all_positions: bool = False) -> RatScalar:
    """Product of [a_k]! over even positions (or over every position)."""
    n = len(a) // 2
    w = ONE
    for pos, e in enumerate(a):
        if e > 1 and (all_positions or pos < n):
            w = w * RatScalar.of(qfact(e))
    return w


def divided_convert(x: QPolyElement, to_divided: bool) -> QPolyElement:
    """Switch coordinates between X^a and X^{[a]} = X^a / prod [a_i]!."""
    if x.divided == to_divided:
        return x
    out = {}
    for a, c in x.terms.items():
        w = factorial_weight(a)
        out[a] = c * w if to_divided else c / w
    return QPolyElement(x.n, out, divided=to_divided)


def divided_monomial(a: SuperIndex) -> QPolyElement:
    """X^{[a]} in divided coordinates, for any exponent tuple.

    Every exponent, odd ones included, carries its factorial, so an odd square
    X_ibar^{[2]} means X_ibar^2 / [2].
    """
    plain = monomial(a).scale(factorial_weight(a, all_positions=True).inverse())
    return divided_convert(plain, True)


def degree(x: QPolyElement) -> int:
    degs = {index_degree(a) for a in x.terms}
    if len(degs) != 1:
        raise ValueError("element is not homogeneous in degree")
    return degs.pop()


def parity(x: QPolyElement) -> int:
    ps = {index_parity(a) for a in x.terms}
    if len(ps) != 1:
        raise ValueError("element is not homogeneous in parity")
    return ps.pop()


# --- text form ---------------------------------------------------------------

def render_monomial(a: SuperIndex) -> str:
    n = len(a) // 2
    parts = []
    for pos, e in enumerate(a):
        if not e:
            continue
        name = f"X{pos + 1}" if pos < n else f"Xb{pos - n + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def render_qpoly(x: QPolyElement) -> str:
    if not x.terms:
        return "0"
    items = sorted(x.terms.items(), key=lambda kv: (index_degree(kv[0]), kv[0]))
    return " + ".join(f"({render(c)})*{render_monomial(a)}" for a, c in items)


_VAR = re.compile(r"X(b?)(\d+)(?:\^(\d+))?")


def parse_monomial(n: int, text: str) -> QPolyElement:
    """Parse ``X1^2*Xb1``-style text into the normal-ordered product."""
    text = text.strip()
    if text == "1":
        return QPolyElement.one(n)
    word: List[int] = []
    for factor in text.split("*"):
        m = _VAR.fullmatch(factor.strip())
        if not m:
            raise ValueError(f"cannot parse monomial factor {factor!r}")
        idx = int(m.group(2)) - 1
        if not 0 <= idx < n:
            raise ValueError(f"variable index out of range in {factor!r}")
        pos = idx + n if m.group(1) else idx
        word.extend([pos] * int(m.group(3) or 1))
    return normal_order(n, word)


def to_json(x: QPolyElement) -> dict:
    items = sorted(x.terms.items())
    return {
        "n": x.n,
        "divided": x.divided,
        "terms": [{"index": list(a), "coeff": render(c)} for a, c in items],
    }


def from_json(data: dict) -> QPolyElement:
    from .coeff import parse

    n = int(data["n"])
    terms = {tuple(t["index"]): parse(t["coeff"]) for t in data["terms"]}
    return QPolyElement(n, terms, divided=bool(data.get("divided", False)))


def basis_of_degree(n: int, d: int) -> List[SuperIndex]:
    """Reduced multi-indices of total degree d."""
    from itertools import combinations

    from .matidx import compositions

    out = []
    for k in range(0, min(n, d) + 1):
        for odd_support in combinations(range(n), k):
            odd = tuple(1 if i in odd_support else 0 for i in range(n))
            for ev in compositions(d - k, n):
                out.append(tuple(ev) + odd)
    return sorted(out)


def basis_up_to(n: int, maxdeg: int) -> List[SuperIndex]:
    return [a for d in range(maxdeg + 1) for a in basis_of_degree(n, d)]


def word_sequence(n: int, names: Sequence[str]) -> List[int]:
    """Map names such as ``X1`` / ``Xb2`` to generator positions."""
    out = []
    for name in names:
        m = _VAR.fullmatch(name)
        if not m or m.group(3):
            raise ValueError(f"bad generator name {name!r}")
        idx = int(m.group(2)) - 1
        out.append(idx + n if m.group(1) else idx)
    return out
