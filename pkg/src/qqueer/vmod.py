"""The module of formal series A(j) = sum_lambda v^{lambda.j} X^{[A + diag(lambda)]}.

Keys are pairs (A, j) with A primed (zero even diagonal) and j an integer
vector. Keys whose matrix has a negative entry denote zero and are dropped.
Odd entries equal to 2 may appear transiently and are removed by
:func:`reduce_close`.
"""

from __future__ import annotations

from itertools import product as cartesian
from typing import Dict, List, Sequence, Tuple

from .coeff import ONE, RatScalar, qbinom, qint, odd_square_scalar, render, vpow
from .diffops import GenSymbol
from .matidx import SuperMatrix, compositions, prec, total_key
from .sparse import SparseVector, accumulate
from .tensormod import TensorElement, odd_count_before, sigma_e, sigma_f, sigma_kb
from .uword import apply_symbol, evaluate, monomial_word

JVec = Tuple[int, ...]
VKey = Tuple[SuperMatrix, JVec]
Terms = Dict[VKey, RatScalar]


class VElement(SparseVector[VKey]):
    """Sparse combination of formal series A(j)."""

    __slots__ = ("n",)

    def __init__(self, n: int, terms: Terms | None = None):
        clean: Terms = {}
        for (A, j), c in (terms or {}).items():
            _check_key(n, A, j)
            if not A.has_negative():
                accumulate(clean, (A, tuple(j)), RatScalar.of(c))
        super().__init__()
        self.terms = clean
        self.n = n

    def _copy_ambient(self, obj) -> None:
        obj.n = self.n

    @classmethod
    def symbol(cls, A: SuperMatrix, j: Sequence[int], coeff=ONE) -> "VElement":
        return cls(A.n, {(A, tuple(j)): coeff})

    @classmethod
    def origin(cls, n: int, j: Sequence[int] | None = None) -> "VElement":
        """O(j), the series of the zero matrix; O(0) generates the module."""
        return cls.symbol(SuperMatrix.zero(n), j or (0,) * n)

    def is_canonical(self) -> bool:
        return all(A.is_reduced() for A, _ in self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "VElement(0)"
        items = sorted(self.terms.items(), key=lambda kv: (total_key(kv[0][0]), kv[0][1]))
        return "VElement(" + " + ".join(f"({render(c)})*{A!r}{list(j)}" for (A, j), c in items) + ")"


def _check_key(n: int, A: SuperMatrix, j: Sequence[int]) -> None:
    if A.n != n or len(j) != n:
        raise ValueError("matrix and j must match n")
    if A.has_negative():
        return
    if not A.is_primed():
        raise ValueError(f"{A!r} has a nonzero even diagonal")
    if any(x > 2 for x in A.odd):
        raise ValueError(f"{A!r} has an odd entry above 2")


# --- odd squares ------------------------------------------------------------

def diagonal_factor(j_i: int, literal: bool = False) -> RatScalar:
    """Prefactor of the three-term rewrite of a doubled odd diagonal entry.

    The series computation gives v^{-2 j_i} / ((v - v^-1)(v + v^-1)^2); the
    ``literal`` variant carries one more factor v^{-1} and fails truncation.
    """
    q1 = vpow(1) - vpow(-1)
    q2 = vpow(1) + vpow(-1)
    return vpow(-2 * j_i - (1 if literal else 0)) / (q1 * q2 * q2)


def _reduce_key(A: SuperMatrix, j: JVec, literal: bool) -> List[Tuple[VKey, RatScalar]]:
    """One rewriting step at the first odd entry equal to 2."""
    n = A.n
    for pos, x in enumerate(A.odd):
        if x != 2:
            continue
        r, c = divmod(pos, n)
        if r != c:
            B = A.shifted(even=[(r, c, 2)], odd=[(r, c, -2)])
            s = odd_square_scalar() * RatScalar.of(qbinom(A.e(r, c) + 2, 2))
            return [((B, j), s)]
        Ap = A.shifted(odd=[(r, r, -2)])
        f = diagonal_factor(j[r], literal)
        up = tuple(x + (2 if t == r else 0) for t, x in enumerate(j))
        down = tuple(x - (2 if t == r else 0) for t, x in enumerate(j))
        return [
            ((Ap, up), f * vpow(-1)),
            ((Ap, down), f * vpow(1)),
            ((Ap, j), -(f * (vpow(1) + vpow(-1)))),
        ]
    return [((A, j), ONE)]


def reduce_close(x: VElement, literal: bool = False) -> VElement:
    """Rewrite every key with an odd entry 2 into canonical keys."""
    pending = dict(x.terms)
    out: Terms = {}
    while pending:
        (A, j), c = pending.popitem()
        if A.is_reduced():
            accumulate(out, (A, j), c)
            continue
        for (B, jb), s in _reduce_key(A, j, literal):
            if B.has_negative():
                continue
            if B.is_reduced():
                accumulate(out, (B, jb), c * s)
            else:
                accumulate(pending, (B, jb), c * s)
    return VElement(x.n, out)


# --- generator actions ---------------------------------------------------------

def _shift(j: JVec, *deltas: Tuple[int, int]) -> JVec:
    out = list(j)
    for t, d in deltas:
        out[t] += d
    return tuple(out)


def _q(c: int) -> RatScalar:
    return RatScalar.of(qint(c))


def _row_total(A: SuperMatrix, i: int) -> int:
    return sum(A.e(i, t) + A.o(i, t) for t in range(A.n))


def _add(out: Terms, A: SuperMatrix, j: JVec, c: RatScalar) -> None:
    if not A.has_negative():
        accumulate(out, (A, j), c)


def _image_e(h: int, A: SuperMatrix, j: JVec) -> Terms:
    n = A.n
    out: Terms = {}
    inv = (vpow(1) - vpow(-1)).inverse()
    minus_alpha = _shift(j, (h, -1), (h + 1, 1))
    plus_beta = _shift(j, (h, 1), (h + 1, 1))
    for c in range(n):
        # even entries of row h+1 move up to row h
        if c == h + 1:
            B = A.shifted(even=[(h, c, 1)])
            _add(out, B, j, vpow(sigma_e(h, c, A, False) + j[h + 1]) * _q(A.e(h, c) + 1))
        elif A.e(h + 1, c):
            s = vpow(sigma_e(h, c, A, False))
            if c == h:
                B = A.shifted(even=[(h + 1, h, -1)])
                s = s * vpow(-j[h]) * inv
                _add(out, B, plus_beta, s)
                _add(out, B, minus_alpha, -s)
            else:
                B = A.shifted(even=[(h, c, 1), (h + 1, c, -1)])
                _add(out, B, minus_alpha if c < h else j, s * _q(A.e(h, c) + 1))
        # odd entries of row h+1 move up to row h
        if A.o(h + 1, c):
            B = A.shifted(odd=[(h, c, 1), (h + 1, c, -1)])
            s = vpow(sigma_e(h, c, A, True)) * _q(A.o(h, c) + 1)
            if c < h:
                jj = minus_alpha
            elif c == h:
                jj = _shift(j, (h + 1, 1))
            elif c == h + 1:
                jj = _shift(j, (h + 1, -1))
            else:
                jj = j
            _add(out, B, jj, s)
    return out


def _image_f(h: int, A: SuperMatrix, j: JVec) -> Terms:
    n = A.n
    out: Terms = {}
    inv = (vpow(1) - vpow(-1)).inverse()
    plus_alpha = _shift(j, (h, 1), (h + 1, -1))
    plus_beta = _shift(j, (h, 1), (h + 1, 1))
    for c in range(n):
        if c == h:
            B = A.shifted(even=[(h + 1, c, 1)])
            _add(out, B, j, vpow(sigma_f(h, c, A, False) + j[h]) * _q(A.e(h + 1, c) + 1))
        elif A.e(h, c):
            s = vpow(sigma_f(h, c, A, False))
            if c == h + 1:
                B = A.shifted(even=[(h, h + 1, -1)])
                s = s * vpow(-j[h + 1]) * inv
                _add(out, B, plus_beta, s)
                _add(out, B, plus_alpha, -s)
            else:
                B = A.shifted(even=[(h, c, -1), (h + 1, c, 1)])
                _add(out, B, j if c < h else plus_alpha, s * _q(A.e(h + 1, c) + 1))
        if A.o(h, c):
            B = A.shifted(odd=[(h, c, -1), (h + 1, c, 1)])
            s = vpow(sigma_f(h, c, A, True)) * _q(A.o(h + 1, c) + 1)
            if c < h:
                jj = j
            elif c in (h, h + 1):
                jj = _shift(j, (h, 1))
            else:
                jj = plus_alpha
            _add(out, B, jj, s)
    return out


def _image_kb1(A: SuperMatrix, j: JVec) -> Terms:
    n = A.n
    out: Terms = {}
    inv = (vpow(1) - vpow(-1)).inverse()
    down1 = _shift(j, (0, -1))
    if A.o(0, 0):
        B = A.shifted(odd=[(0, 0, -1)])
        s = vpow(sigma_kb(0, A, False) - j[0] + 1) * inv
        _add(out, B, j, s)
        _add(out, B, _shift(j, (0, -2)), -s)
    B = A.shifted(odd=[(0, 0, 1)])
    _add(out, B, j, vpow(sigma_kb(0, A, True) + j[0]) * _q(A.o(0, 0) + 1))
    for c in range(1, n):
        sign = -1 if odd_count_before(A, c) % 2 else 1
        if A.o(0, c):
            B = A.shifted(even=[(0, c, 1)], odd=[(0, c, -1)])
            _add(out, B, down1, vpow(sigma_kb(c, A, False)) * _q(A.e(0, c) + 1) * sign)
        if A.e(0, c):
            B = A.shifted(even=[(0, c, -1)], odd=[(0, c, 1)])
            _add(out, B, down1, vpow(sigma_kb(c, A, True)) * _q(A.o(0, c) + 1) * sign)
    return out


def raw_image(g: GenSymbol, A: SuperMatrix, j: JVec) -> Terms:
    """Action on one canonical A(j) before odd squares are rewritten."""
    n = A.n
    g.check_range(n)
    if g.kind in ("K", "Kinv"):
        s = 1 if g.kind == "K" else -1
        i = g.index - 1
        return {(A, _shift(j, (i, s * g.power))): vpow(s * g.power * _row_total(A, i))}
    if g.kind in ("E", "F") and g.power != 1:
        raise ValueError("raw images cover power-one E and F")
    if g.kind == "E":
        return _image_e(g.index - 1, A, j)
    if g.kind == "F":
        return _image_f(g.index - 1, A, j)
    if g.kind == "Kb" and g.index == 1:
        return _image_kb1(A, j)
    raise ValueError(f"no action formula for {g}")


def act(g: GenSymbol, x: VElement, literal: bool = False) -> VElement:
    """K_i^{+-m}, E_h^{(m)}, F_h^{(m)} or Kb_1 on a canonical element."""
    if g.kind in ("E", "F") and g.power != 1:
        return apply_symbol(lambda s, y: act(s, y, literal), g, x)
    out: Terms = {}
    for (A, j), c in x.terms.items():
        for key, s in raw_image(g, A, j).items():
            accumulate(out, key, c * s)
    return reduce_close(VElement(x.n, out), literal)


# --- truncation and leading terms ----------------------------------------------

def truncate(x: VElement, rmax: int) -> TensorElement:
    """All X^{[A + lambda]} of degree at most rmax, weighted by v^{lambda.j}."""
    from .tensormod import normalize_monomial

    n = x.n
    out: Dict[SuperMatrix, RatScalar] = {}
    for (A, j), c in x.terms.items():
        base = A.degree()
        for d in range(0, rmax - base + 1):
            for lam in compositions(d, n):
                w = c * vpow(sum(a * b for a, b in zip(lam, j)))
                for B, s in normalize_monomial(A.plus_diag(lam)).terms.items():
                    accumulate(out, B, w * s)
    return TensorElement(n, out)


def leading_terms(x: VElement) -> List[Tuple[SuperMatrix, JVec, RatScalar]]:
    """Every term whose matrix is maximal under the pre-order (then the total order)."""
    if not x.terms:
        raise ValueError("zero element has no leading term")
    top = max((A for A, _ in x.terms), key=total_key)
    return sorted(((A, j, c) for (A, j), c in x.terms.items() if A == top), key=lambda t: t[1])


def leading_term(x: VElement) -> Tuple[SuperMatrix, JVec, RatScalar]:
    return leading_terms(x)[-1]


def strictly_below(x: VElement, A: SuperMatrix) -> bool:
    """True when every term other than those on A has a prec-smaller matrix."""
    return all(B == A or prec(B, A).order < 0 for B, _ in x.terms)


def monomial_image(A: SuperMatrix, j: Sequence[int] | None = None) -> VElement:
    """The monomial word of (A, j) applied to O(0)."""
    n = A.n
    j = tuple(j) if j is not None else (0,) * n
    return evaluate(monomial_word(A, j), act, VElement.origin(n))


def generator_dictionary(n: int) -> Dict[GenSymbol, VElement]:
    """Images of the generators on O(0)."""
    o = VElement.origin(n)
    gens = [GenSymbol("K", i) for i in range(1, n + 1)]
    gens += [GenSymbol("E", h) for h in range(1, n)] + [GenSymbol("F", h) for h in range(1, n)]
    gens.append(GenSymbol("Kb", 1))
    return {g: act(g, o) for g in gens}


def j_range(n: int, lo: int = -1, hi: int = 1) -> List[JVec]:
    return [tuple(t) for t in cartesian(range(lo, hi + 1), repeat=n)]


# --- JSON --------------------------------------------------------------------------

def to_json(x: VElement) -> dict:
    items = sorted(x.terms.items(), key=lambda kv: (total_key(kv[0][0]), kv[0][1]))
    return {"n": x.n, "terms": [{"matrix": A.to_json(), "j": list(j), "coeff": render(c)} for (A, j), c in items]}


def from_json(data: dict) -> VElement:
    from .coeff import parse

    terms = {}
    for t in data["terms"]:
        A = SuperMatrix.from_json(t["matrix"])
        terms[(A, tuple(int(v) for v in t["j"]))] = parse(t["coeff"])
    return VElement(int(data["n"]), terms)
