"""The tensor supermodule A_v(n)^{(x) n} in the divided basis X^{[A]}.

Column j of a super matrix A is the exponent vector of the j-th tensor factor.
Generators of the first family (K_i, E_h, F_h, Kb_1) act through closed
formulas; the comultiplication oracle recomputes the same actions factor by
factor from the polynomial representation.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .coeff import ONE, RatScalar, qfact, qint, render, vpow
from .diffops import GenSymbol, closed_op
from .matidx import SuperIndex, SuperMatrix, co, enumerate_matrices, ro, total_key
from .qpoly import divided_monomial, factorial_weight
from .sparse import SparseVector, accumulate
from .uword import apply_symbol, derived_odd_words, evaluate

Terms = Dict[SuperMatrix, RatScalar]
BASE_KINDS = ("K", "Kinv", "E", "F")


class TensorElement(SparseVector[SuperMatrix]):
    """Sparse combination of divided basis vectors X^{[A]} with reduced A."""

    __slots__ = ("n",)

    def __init__(self, n: int, terms: Terms | None = None):
        super().__init__(terms)
        self.n = n
        for A in self.terms:
            if A.n != n or not A.is_reduced() or A.has_negative():
                raise ValueError(f"{A!r} is not a reduced basis label for n={n}")

    def _copy_ambient(self, obj) -> None:
        obj.n = self.n

    @classmethod
    def basis(cls, A: SuperMatrix) -> "TensorElement":
        return cls(A.n, {A: ONE})

    def degree(self) -> int:
        degs = {A.degree() for A in self.terms}
        if len(degs) != 1:
            raise ValueError("element is not homogeneous in degree")
        return degs.pop()

    def __repr__(self) -> str:
        if not self.terms:
            return "TensorElement(0)"
        body = " + ".join(f"({render(c)})*X[{A}]" for A, c in sorted(self.terms.items(), key=lambda kv: total_key(kv[0])))
        return f"TensorElement({body})"


# --- normalization -----------------------------------------------------------

def normalize_monomial(A: SuperMatrix) -> TensorElement:
    """X^{[A]} for an A whose odd entries may exceed 1, rewritten in the reduced basis.

    Each column is normal ordered in A_v(n) on its own; odd squares are even,
    so no sign passes between tensor factors.
    """
    n = A.n
    if A.has_negative():
        return TensorElement(n)
    if A.is_reduced():
        return TensorElement.basis(A)
    partial: List[Tuple[List[SuperIndex], RatScalar]] = [([], ONE)]
    for j in range(n):
        col = A.column(j)
        if max(col[n:], default=0) <= 1:
            opts = [(col, ONE)]
        else:
            opts = list(divided_monomial(col).terms.items())
        partial = [(cols + [c], s * t) for cols, s in partial for c, t in opts]
    out: Terms = {}
    for cols, s in partial:
        accumulate(out, SuperMatrix.from_columns(cols), s)
    return TensorElement(n, out)


def _emit(out: Terms, A: SuperMatrix, c: RatScalar) -> None:
    """Add c * X^{[A]}, normalizing odd squares; keys with negative entries vanish."""
    if A.has_negative() or not c:
        return
    if A.is_reduced():
        accumulate(out, A, c)
        return
    for B, s in normalize_monomial(A).terms.items():
        accumulate(out, B, c * s)


# --- exponents of the closed formulas ----------------------------------------

def _row_entry(A: SuperMatrix, i: int, t: int) -> int:
    return A.e(i, t) + A.o(i, t)


def _e_tail(A: SuperMatrix, h: int, j: int) -> int:
    return sum(_row_entry(A, h + 1, t) - _row_entry(A, h, t) for t in range(j + 1, A.n))


def _f_head(A: SuperMatrix, h: int, j: int) -> int:
    return sum(_row_entry(A, h, t) - _row_entry(A, h + 1, t) for t in range(j))


def sigma_e(h: int, j: int, A: SuperMatrix, odd: bool) -> int:
    """Exponent for the E_h term moving column j's entry (0-based h, j)."""
    local = -A.e(h + 1, j) if odd else A.o(h + 1, j)
    return local + _e_tail(A, h, j)


def sigma_f(h: int, j: int, A: SuperMatrix, odd: bool) -> int:
    local = A.e(h, j) if odd else -A.o(h, j)
    return local + _f_head(A, h, j)


def sigma_kb(j: int, A: SuperMatrix, to_odd: bool) -> int:
    """Exponent for the Kb_1 term; ``to_odd`` moves an even entry of row 1 into A^1."""
    local = A.o(0, j) if to_odd else -A.e(0, j)
    before = sum(_row_entry(A, 0, t) for t in range(j))
    after = sum(_row_entry(A, 0, t) for t in range(j + 1, A.n))
    return local - before + after


def odd_count_before(A: SuperMatrix, j: int) -> int:
    """Number of odd entries in columns strictly left of column j."""
    n = A.n
    return sum(A.o(s, t) for t in range(j) for s in range(n))


def _q(c: int) -> RatScalar:
    return RatScalar.of(qint(c))


def closed_image(g: GenSymbol, A: SuperMatrix) -> Terms:
    """Image of X^{[A]} under K_i^{+-m}, E_h, F_h or Kb_1 by the closed formulas."""
    n = A.n
    g.check_range(n)
    out: Terms = {}
    if g.kind in ("K", "Kinv"):
        s = 1 if g.kind == "K" else -1
        return {A: vpow(s * g.power * ro(A)[g.index - 1])}
    if g.kind in ("E", "F") and g.power != 1:
        raise ValueError("closed formulas cover power-one E and F; use apply_symbol")
    h = g.index - 1
    if g.kind == "E":
        for j in range(n):
            if A.e(h + 1, j):
                B = A.shifted(even=[(h, j, 1), (h + 1, j, -1)])
                _emit(out, B, vpow(sigma_e(h, j, A, False)) * _q(A.e(h, j) + 1))
            if A.o(h + 1, j):
                B = A.shifted(odd=[(h, j, 1), (h + 1, j, -1)])
                _emit(out, B, vpow(sigma_e(h, j, A, True)) * _q(A.o(h, j) + 1))
        return out
    if g.kind == "F":
        for j in range(n):
            if A.e(h, j):
                B = A.shifted(even=[(h, j, -1), (h + 1, j, 1)])
                _emit(out, B, vpow(sigma_f(h, j, A, False)) * _q(A.e(h + 1, j) + 1))
            if A.o(h, j):
                B = A.shifted(odd=[(h, j, -1), (h + 1, j, 1)])
                _emit(out, B, vpow(sigma_f(h, j, A, True)) * _q(A.o(h + 1, j) + 1))
        return out
    if g.kind == "Kb" and g.index == 1:
        for j in range(n):
            sign = -1 if odd_count_before(A, j) % 2 else 1
            if A.o(0, j):
                B = A.shifted(even=[(0, j, 1)], odd=[(0, j, -1)])
                _emit(out, B, vpow(sigma_kb(j, A, False)) * _q(A.e(0, j) + 1) * sign)
            if A.e(0, j):
                B = A.shifted(even=[(0, j, -1)], odd=[(0, j, 1)])
                _emit(out, B, vpow(sigma_kb(j, A, True)) * _q(A.o(0, j) + 1) * sign)
        return out
    raise ValueError(f"no closed formula for {g}; use act_derived")


def act_closed(g: GenSymbol, x: TensorElement) -> TensorElement:
    if g.kind in ("E", "F") and g.power != 1:
        return apply_symbol(act_closed, g, x)
    out: Terms = {}
    for A, c in x.terms.items():
        for B, s in closed_image(g, A).items():
            accumulate(out, B, c * s)
    return TensorElement(x.n, out)


# --- comultiplication oracle -------------------------------------------------

def _factor_image(n: int, syms: Sequence[GenSymbol], col: SuperIndex) -> Dict[SuperIndex, RatScalar]:
    """Apply the symbols (rightmost first) to one divided factor X^{[col]} of A_v(n)."""
    cur: Dict[SuperIndex, RatScalar] = {col: factorial_weight(col).inverse()}
    for g in reversed(syms):
        cur = closed_op(n, g).apply_terms(cur)
    return {b: c * factorial_weight(b) for b, c in cur.items()}


def coproduct_slots(n: int, g: GenSymbol) -> List[List[List[GenSymbol]]]:
    """The iterated coproduct of g as a sum of n-fold tensors of symbol lists."""
    K = lambda k, i: GenSymbol(k, i)
    if g.kind in ("K", "Kinv"):
        return [[[g] for _ in range(n)]]
    h = g.index
    ktilde = [K("K", h), K("Kinv", h + 1)] if g.kind in ("E", "F") else None
    ktilde_inv = [K("Kinv", h), K("K", h + 1)] if g.kind in ("E", "F") else None
    out = []
    for j in range(n):
        if g.kind == "E":
            out.append([[] for _ in range(j)] + [[g]] + [list(ktilde_inv) for _ in range(j + 1, n)])
        elif g.kind == "F":
            out.append([list(ktilde) for _ in range(j)] + [[g]] + [[] for _ in range(j + 1, n)])
        elif g.kind == "Kb" and h == 1:
            out.append([[K("Kinv", 1)] for _ in range(j)] + [[g]] + [[K("K", 1)] for _ in range(j + 1, n)])
        else:
            raise ValueError(f"no coproduct formula for {g}")
    return out


def act_oracle(g: GenSymbol, x: TensorElement) -> TensorElement:
    """Act through the iterated coproduct, factor by factor, with Koszul signs."""
    n = x.n
    g.check_range(n)
    if g.kind in ("E", "F") and g.power != 1:
        return apply_symbol(act_oracle, g, x)
    out: Terms = {}
    for A, c in x.terms.items():
        cols = [A.column(j) for j in range(n)]
        for slots in coproduct_slots(n, g):
            sign = 1
            if g.parity:
                odd_slot = next(t for t, s in enumerate(slots) if any(y.parity for y in s))
                if sum(sum(cols[t][n:]) for t in range(odd_slot)) % 2:
                    sign = -1
            partial: List[Tuple[List[SuperIndex], RatScalar]] = [([], c if sign > 0 else -c)]
            for t in range(n):
                img = _factor_image(n, slots[t], cols[t]) if slots[t] else {cols[t]: ONE}
                partial = [(pc + [b], s * w) for pc, s in partial for b, w in img.items()]
                if not partial:
                    break
            for pc, s in partial:
                accumulate(out, SuperMatrix.from_columns(pc), s)
    return TensorElement(n, out)


# --- derived odd generators ----------------------------------------------------

def act_derived(g: GenSymbol, x: TensorElement) -> TensorElement:
    """Odd generators beyond Kb_1 through their defining words; base generators directly."""
    if g.kind in BASE_KINDS or (g.kind == "Kb" and g.index == 1):
        return act_closed(g, x)
    words = derived_odd_words(x.n)
    if g not in words:
        raise ValueError(f"{g} is out of range for n={x.n}")
    return evaluate(words[g], act_derived, x)


# --- gradings and projections ------------------------------------------------

def weight(x: TensorElement) -> Tuple[int, ...]:
    ws = {ro(A) for A in x.terms}
    if len(ws) != 1:
        raise ValueError("element is zero or has mixed weights")
    return ws.pop()


def co_project(x: TensorElement, lam: Sequence[int]) -> TensorElement:
    lam = tuple(lam)
    return x.filter(lambda A: co(A) == lam)


# --- cached representation -------------------------------------------------------

class TensorRep:
    """The degree-r part with per-basis caches for every generator symbol.

    ``route`` selects "closed" (closed formulas plus derived words) or
    "oracle" (the coproduct oracle for the base family).
    """

    def __init__(self, n: int, route: str = "closed"):
        if route not in ("closed", "oracle"):
            raise ValueError("route must be 'closed' or 'oracle'")
        self.n = n
        self.route = route
        self._cache: Dict[Tuple[GenSymbol, SuperMatrix], Terms] = {}
        self._words = derived_odd_words(n)

    def basis(self, r: int) -> List[SuperMatrix]:
        return enumerate_matrices(self.n, r)

    def _base_image(self, g: GenSymbol, A: SuperMatrix) -> Terms:
        if self.route == "closed":
            return closed_image(g, A)
        return act_oracle(g, TensorElement.basis(A)).terms

    def image(self, g: GenSymbol, A: SuperMatrix) -> Terms:
        key = (g, A)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if g.kind in ("K", "Kinv") or (g.kind in ("E", "F") and g.power == 1) or (g.kind == "Kb" and g.index == 1):
            img = self._base_image(g, A)
        elif g.kind in ("E", "F"):
            img = apply_symbol(self.act, g, TensorElement.basis(A)).terms
        else:
            g.check_range(self.n)
            img = evaluate(self._words[g], self.act, TensorElement.basis(A)).terms
        self._cache[key] = img
        return img

    def act(self, g: GenSymbol, x: TensorElement) -> TensorElement:
        out: Terms = {}
        for A, c in x.terms.items():
            for B, s in self.image(g, A).items():
                accumulate(out, B, s if c.is_one() else c * s)
        return TensorElement(x.n, out)

    __call__ = act


# --- JSON ------------------------------------------------------------------------

def to_json(x: TensorElement) -> dict:
    items = sorted(x.terms.items(), key=lambda kv: total_key(kv[0]))
    return {"n": x.n, "terms": [{"matrix": A.to_json(), "coeff": render(c)} for A, c in items]}


def from_json(data: dict) -> TensorElement:
    from .coeff import parse

    n = int(data["n"])
    terms = {SuperMatrix.from_json(t["matrix"]): parse(t["coeff"]) for t in data["terms"]}
    return TensorElement(n, terms)
