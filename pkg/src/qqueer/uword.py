"""Words in the generators of U_v(q_n) and their evaluation in representations.

A :class:`GeneratorWord` is read left to right as a product; acting on a vector
it applies its rightmost symbol first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, TypeVar

from .coeff import ONE, ZERO, RatScalar, Scalarish, qfact, qint, vpow
from .diffops import GenSymbol, parse_symbol
from .matidx import SuperMatrix
from .sparse import SparseVector

Vec = TypeVar("Vec", bound=SparseVector)
Action = Callable[[GenSymbol, Vec], Vec]


class GeneratorWord(tuple):
    """Immutable product of :class:`GenSymbol` values."""

    def __new__(cls, symbols: Iterable[GenSymbol] = ()):
        syms = tuple(s for s in symbols if s.power != 0)
        return super().__new__(cls, syms)

    def __mul__(self, other: "GeneratorWord") -> "GeneratorWord":
        return GeneratorWord(tuple(self) + tuple(other))

    @property
    def parity(self) -> int:
        return sum(s.parity for s in self) % 2

    def __str__(self) -> str:
        return " ".join(str(s) for s in self) if self else "1"

    def __repr__(self) -> str:
        return f"GeneratorWord({self})"


def parse_word(text: str) -> GeneratorWord:
    """Parse e.g. ``E1^(2) F2 Kb1 K1^-1``; ``1`` is the empty word."""
    text = text.strip()
    if text in ("", "1"):
        return GeneratorWord()
    syms: List[GenSymbol] = []
    for tok in text.split():
        syms.extend(parse_symbol(tok))
    return GeneratorWord(syms)


class WordCombination:
    """Finite Q(v)-linear combination of generator words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Tuple[Scalarish, GeneratorWord]] | Dict = ()):
        acc: Dict[GeneratorWord, RatScalar] = {}
        items = terms.items() if isinstance(terms, dict) else ((w, c) for c, w in terms)
        for w, c in items:
            c = RatScalar.of(c)
            w = GeneratorWord(w)
            s = acc.get(w, ZERO) + c
            if s:
                acc[w] = s
            else:
                acc.pop(w, None)
        self.terms = acc

    @classmethod
    def word(cls, *symbols: GenSymbol, coeff: Scalarish = 1) -> "WordCombination":
        return cls([(coeff, GeneratorWord(symbols))])

    @classmethod
    def one(cls) -> "WordCombination":
        return cls([(1, GeneratorWord())])

    def items(self):
        return self.terms.items()

    def __iter__(self):
        return ((c, w) for w, c in self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "WordCombination") -> "WordCombination":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        wc = WordCombination()
        wc.terms = out
        return wc

    def scale(self, s: Scalarish) -> "WordCombination":
        s = RatScalar.of(s)
        return WordCombination({w: c * s for w, c in self.terms.items()})

    def __neg__(self) -> "WordCombination":
        return self.scale(-1)

    def __sub__(self, other: "WordCombination") -> "WordCombination":
        return self + (-other)

    def __mul__(self, other: "WordCombination") -> "WordCombination":
        out: Dict[GeneratorWord, RatScalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                s = out.get(w, ZERO) + c1 * c2
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        wc = WordCombination()
        wc.terms = out
        return wc

    def __pow__(self, m: int) -> "WordCombination":
        out = WordCombination.one()
        for _ in range(m):
            out = out * self
        return out

    def divided_power(self, m: int) -> "WordCombination":
        return (self ** m).scale(RatScalar.of(qfact(m)).inverse())

    def bar(self) -> "WordCombination":
        """Coefficient conjugation v -> v^{-1}, words untouched."""
        return WordCombination({w: c.bar() for w, c in self.terms.items()})

    def omega(self) -> "WordCombination":
        """The anti-involution: words through :func:`omega`, coefficients conjugated."""
        return WordCombination({omega(w): c.bar() for w, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WordCombination):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*[{w}]" for w, c in self.terms.items())

    def __repr__(self) -> str:
        return f"WordCombination({self})"


def S(kind: str, index: int, power: int = 1) -> WordCombination:
    """Single-symbol combination."""
    return WordCombination.word(GenSymbol(kind, index, power))


_OMEGA_KIND = {"K": "Kinv", "Kinv": "K", "Kb": "Kb", "E": "F", "F": "E", "Eb": "Fb", "Fb": "Eb"}


def omega(w: GeneratorWord) -> GeneratorWord:
    """Reverse the word and swap E<->F, Eb<->Fb, K<->K^{-1}; Kb is fixed."""
    return GeneratorWord(GenSymbol(_OMEGA_KIND[s.kind], s.index, s.power) for s in reversed(w))


# --- root vectors, PBW and monomial words --------------------------------------

def root_vector(i: int, j: int, odd: bool) -> WordCombination:
    """Even root vector E_{i,j} or odd root vector Ebar_{i,j} (1-based indices).

    The recursion splits at k = j - 1 (i < j) or k = j + 1 (i > j).
    """
    if i == j:
        if not odd:
            raise ValueError("even root vectors need i != j")
        return S("Kb", i)
    if not odd:
        if j == i + 1:
            return S("E", i)
        if i == j + 1:
            return S("F", j)
        k = j - 1 if i < j else j + 1
        eps = 1 if i < j else -1
        a, b = root_vector(i, k, False), root_vector(k, j, False)
        return a * b - (b * a).scale(vpow(eps))
    if j == i + 1:
        return S("Eb", i)
    if i == j + 1:
        return S("Fb", j)
    if i < j:
        k = j - 1
        a, b = root_vector(i, k, False), root_vector(k, j, True)
        return a * b - (b * a).scale(vpow(1))
    k = j + 1
    a, b = root_vector(i, k, True), root_vector(k, j, False)
    return a * b - (b * a).scale(vpow(-1))


@dataclass(frozen=True)
class RootFactor:
    """One factor of a PBW word: a root vector (1-based i, j) raised to a power."""

    i: int
    j: int
    odd: bool
    power: int

    def __str__(self) -> str:
        name = f"Eb{self.i},{self.j}" if self.odd else f"E{self.i},{self.j}"
        if self.power == 1:
            return name
        return f"{name}^({self.power})" if not self.odd else f"{name}^{self.power}"

    def combination(self) -> WordCombination:
        if self.power == 0:
            return WordCombination.one()
        rv = root_vector(self.i, self.j, self.odd)
        if self.odd:
            return rv ** self.power
        if len(rv) == 1:
            (w, c), = rv.items()
            if c.is_one() and len(w) == 1:
                return WordCombination.word(w[0].with_power(self.power))
        return rv.divided_power(self.power)


def _k_power_word(j: Sequence[int]) -> GeneratorWord:
    syms = []
    for idx, e in enumerate(j, start=1):
        if e > 0:
            syms.append(GenSymbol("K", idx, e))
        elif e < 0:
            syms.append(GenSymbol("Kinv", idx, -e))
    return GeneratorWord(syms)


def pbw_factors(A: SuperMatrix) -> List[RootFactor]:
    """Root-vector factors of the PBW word of a primed reduced A, left to right."""
    _require_primed_reduced(A)
    n = A.n
    out: List[RootFactor] = []
    for col in range(n, 0, -1):
        for row in range(col - 1, 0, -1):
            out.append(RootFactor(row, col, False, A.e(row - 1, col - 1)))
        for row in range(1, n + 1):
            out.append(RootFactor(row, col, True, A.o(row - 1, col - 1)))
    for col in range(1, n):
        for row in range(col + 1, n + 1):
            out.append(RootFactor(row, col, False, A.e(row - 1, col - 1)))
    return [f for f in out if f.power]


def pbw_word(A: SuperMatrix, j: Sequence[int]) -> WordCombination:
    out = WordCombination([(1, _k_power_word(j))])
    for f in pbw_factors(A):
        out = out * f.combination()
    return out


def _require_primed_reduced(A: SuperMatrix) -> None:
    if not A.is_primed() or not A.is_reduced():
        raise ValueError("expected a primed reduced super matrix")


def monomial_blocks(A: SuperMatrix) -> List[Tuple[str, GeneratorWord]]:
    """The labelled blocks of the monomial word, left to right."""
    _require_primed_reduced(A)
    n = A.n
    a0 = lambda i, j: A.e(i - 1, j - 1)
    a1 = lambda i, j: A.o(i - 1, j - 1)
    blocks: List[Tuple[str, GeneratorWord]] = []
    for t in range(1, n + 1):
        col = n - t + 1
        for i in range(1, n + 1):
            m = a1(i, col)
            syms = [GenSymbol("F", s, 1) for s in range(i - 1, 0, -1) for _ in range(m)]
            syms += [GenSymbol("Kb", 1)] * m
            # F_{i-1}^m ... F_1^m Kb_1^m with m in {0, 1}
            blocks.append((f"odd[{i},{col}]", GeneratorWord(syms)))
        csum = sum(a1(s, col) for s in range(1, n + 1))
        syms = []
        for h in range(1, col):
            e = sum(a0(s, col) for s in range(1, h + 1)) + csum
            syms.append(GenSymbol("E", h, e))
        blocks.append((f"even+[{col - 1}]", GeneratorWord(syms)))
    for col in range(1, n):
        syms = []
        for h in range(n - 1, col - 1, -1):
            e = sum(a0(s, col) for s in range(h + 1, n + 1))
            syms.append(GenSymbol("F", h, e))
        blocks.append((f"even-[{col}]", GeneratorWord(syms)))
    return blocks


def monomial_word(A: SuperMatrix, j: Sequence[int]) -> GeneratorWord:
    w = _k_power_word(j)
    for _, block in monomial_blocks(A):
        w = w * block
    return w


# --- evaluation -----------------------------------------------------------------

def apply_symbol(action: Action, g: GenSymbol, x: Vec) -> Vec:
    """Apply one symbol; E/F divided powers by repeated action and division by [m]!."""
    if g.power == 1 or g.kind in ("K", "Kinv"):
        return action(g, x)
    if g.power == 0:
        return x
    base = GenSymbol(g.kind, g.index, 1)
    y = x
    for _ in range(g.power):
        y = action(base, y)
        if not y:
            return y
    return y.scale(RatScalar.of(qfact(g.power)).inverse())


def evaluate(wc: WordCombination | GeneratorWord, action: Action, x: Vec) -> Vec:
    """Right-to-left application of every word, weighted and summed.

    Shared word suffixes are evaluated once.
    """
    if isinstance(wc, GeneratorWord):
        wc = WordCombination([(1, wc)])
    memo: Dict[Tuple[GenSymbol, ...], Vec] = {(): x}

    def run(word: Tuple[GenSymbol, ...]) -> Vec:
        hit = memo.get(word)
        if hit is not None:
            return hit
        rest = run(word[1:])
        y = rest if not rest else apply_symbol(action, word[0], rest)
        memo[word] = y
        return y

    total = x.zero_like()
    for w, c in wc.items():
        y = run(tuple(w))
        if y:
            total = total + y.scale(c)
    return total


# --- defining relations ------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    """A concrete instance of a defining relation, stored as LHS - RHS."""

    family: str
    label: str
    combination: WordCombination

    def __str__(self) -> str:
        return f"{self.family} {self.label}"


def relations(n: int, families: Optional[Sequence[str]] = None) -> List[Relation]:
    """All concrete instances of QQ1..QQ6 for rank n."""
    K = lambda i: S("K", i)
    Ki = lambda i: S("Kinv", i)
    Kb = lambda i: S("Kb", i)
    E = lambda h: S("E", h)
    F = lambda h: S("F", h)
    Eb = lambda h: S("Eb", h)
    Fb = lambda h: S("Fb", h)
    one = WordCombination.one()
    v = vpow(1)
    two = RatScalar.of(qint(2))
    out: List[Relation] = []

    def add(fam, label, comb):
        out.append(Relation(fam, label, comb))

    def comm(a, b, c=ONE):
        return a * b - (b * a).scale(c)

    I = range(1, n + 1)
    H = range(1, n)
    for i in I:
        add("QQ1", f"K{i} K{i}^-1 = 1", K(i) * Ki(i) - one)
        add("QQ1", f"K{i}^-1 K{i} = 1", Ki(i) * K(i) - one)
        for j in I:
            if i < j:
                add("QQ1", f"K{i} K{j} = K{j} K{i}", comm(K(i), K(j)))
            add("QQ1", f"K{i} Kb{j} = Kb{j} K{i}", comm(K(i), Kb(j)))
            if i <= j:
                lhs = Kb(i) * Kb(j) + Kb(j) * Kb(i)
                if i == j:
                    rhs = (K(i) * K(i) - Ki(i) * Ki(i)).scale(RatScalar(2) / (vpow(2) - vpow(-2)))
                    lhs = lhs - rhs
                add("QQ1", f"Kb{i} Kb{j} + Kb{j} Kb{i}", lhs)
    for i in I:
        for j in H:
            e = (1 if i == j else 0) - (1 if i == j + 1 else 0)
            add("QQ2", f"K{i} E{j}", comm(K(i), E(j), vpow(e)))
            add("QQ2", f"K{i} F{j}", comm(K(i), F(j), vpow(-e)))
            add("QQ2", f"K{i} Eb{j}", comm(K(i), Eb(j), vpow(e)))
            add("QQ2", f"K{i} Fb{j}", comm(K(i), Fb(j), vpow(-e)))
    for j in H:
        for i in I:
            if i not in (j, j + 1):
                add("QQ3", f"Kb{i} E{j} = E{j} Kb{i}", comm(Kb(i), E(j)))
                add("QQ3", f"Kb{i} F{j} = F{j} Kb{i}", comm(Kb(i), F(j)))
        add("QQ3", f"Kb{j} E{j} - v E{j} Kb{j} = Eb{j} K{j}^-1", comm(Kb(j), E(j), v) - Eb(j) * Ki(j))
        add("QQ3", f"v Kb{j + 1} E{j} - E{j} Kb{j + 1} = -K{j + 1}^-1 Eb{j}",
            (Kb(j + 1) * E(j)).scale(v) - E(j) * Kb(j + 1) + Ki(j + 1) * Eb(j))
        add("QQ3", f"Kb{j} F{j} - v F{j} Kb{j} = -Fb{j} K{j}", comm(Kb(j), F(j), v) + Fb(j) * K(j))
        add("QQ3", f"v Kb{j + 1} F{j} - F{j} Kb{j + 1} = K{j + 1} Fb{j}",
            (Kb(j + 1) * F(j)).scale(v) - F(j) * Kb(j + 1) - K(j + 1) * Fb(j))
    for i in H:
        for j in H:
            r1, r2, r3 = comm(E(i), F(j)), comm(E(i), Fb(j)), comm(Eb(i), F(j))
            if i == j:
                r1 = r1 - (K(i) * Ki(i + 1) - Ki(i) * K(i + 1)).scale((v - vpow(-1)).inverse())
                r2 = r2 - (Ki(i + 1) * Kb(i) - Kb(i + 1) * Ki(i))
                r3 = r3 - (K(i + 1) * Kb(i) - Kb(i + 1) * K(i))
            add("QQ4", f"E{i} F{j}", r1)
            add("QQ4", f"E{i} Fb{j}", r2)
            add("QQ4", f"Eb{i} F{j}", r3)
    for i in H:
        for j in H:
            if abs(i - j) > 1 and i < j:
                add("QQ5", f"E{i} E{j} = E{j} E{i}", comm(E(i), E(j)))
                add("QQ5", f"F{i} F{j} = F{j} F{i}", comm(F(i), F(j)))
        add("QQ5", f"E{i} Eb{i} = Eb{i} E{i}", comm(E(i), Eb(i)))
        add("QQ5", f"F{i} Fb{i} = Fb{i} F{i}", comm(F(i), Fb(i)))
        if i + 1 < n:
            add("QQ5", f"E{i} E{i + 1} - v E{i + 1} E{i}",
                comm(E(i), E(i + 1), v) - Eb(i) * Eb(i + 1) - (Eb(i + 1) * Eb(i)).scale(v))
            add("QQ5", f"v F{i + 1} F{i} - F{i} F{i + 1}",
                (F(i + 1) * F(i)).scale(v) - F(i) * F(i + 1) - Fb(i) * Fb(i + 1) - (Fb(i + 1) * Fb(i)).scale(v))
    for i in H:
        for j in H:
            if abs(i - j) != 1:
                continue
            for X, Y, name in ((E(i), E(j), f"E{i} E{j}"), (F(i), F(j), f"F{i} F{j}"),
                               (E(i), Eb(j), f"E{i} Eb{j}"), (F(i), Fb(j), f"F{i} Fb{j}")):
                add("QQ6", f"Serre {name}", X * X * Y - (X * Y * X).scale(two) + Y * X * X)
    if families is not None:
        out = [r for r in out if r.family in families]
    return out


def relation_residual(rel: Relation, action: Action, x: Vec) -> Vec:
    """LHS - RHS of the relation applied to x."""
    return evaluate(rel.combination, action, x)


def derived_odd_words(n: int) -> Dict[GenSymbol, WordCombination]:
    """Words for Eb_h, Fb_h and Kb_{i} (i >= 2) in terms of K^{+-1}, E, F and the remaining odd symbols.

    Each entry mentions only symbols defined earlier in the induction
    Kb_1 -> Eb_1, Fb_1 -> Kb_2 -> Eb_2, Fb_2 -> ...
    """
    v = vpow(1)
    out: Dict[GenSymbol, WordCombination] = {}
    for h in range(1, n):
        Kb, E, F, K, Ki = S("Kb", h), S("E", h), S("F", h), S("K", h), S("Kinv", h)
        out[GenSymbol("Eb", h)] = (Kb * E - (E * Kb).scale(v)) * K
        out[GenSymbol("Fb", h)] = ((F * Kb).scale(v) - Kb * F) * Ki
        Fb = S("Fb", h)
        out[GenSymbol("Kb", h + 1)] = (S("Kinv", h + 1) * Kb - E * Fb + Fb * E) * K
    return out


def k_binomial(i: int, t: int, c: int = 0) -> WordCombination:
    """The Gaussian binomial [K_i; c, t] as a combination of K_i^{+-1} words."""
    out = WordCombination.one()
    for s in range(1, t + 1):
        num = S("K", i).scale(vpow(c - s + 1)) - S("Kinv", i).scale(vpow(-c + s - 1))
        out = out * num.scale((vpow(s) - vpow(-s)).inverse())
    return out


def weight_idempotent(lam: Sequence[int]) -> WordCombination:
    """Product over i of [K_i; 0, lam_i]; on weight mu it scales by prod_i [mu_i choose lam_i]."""
    out = WordCombination.one()
    for i, t in enumerate(lam, start=1):
        if t:
            out = out * k_binomial(i, t)
    return out


def is_base_symbol(g: GenSymbol) -> bool:
    return g.kind in ("K", "Kinv", "E", "F") or (g.kind == "Kb" and g.index == 1)


def extend_action(action: Action, n: int, base: Callable[[GenSymbol], bool] = is_base_symbol) -> Action:
    """Act by ``action`` on base symbols and by the defining words on the rest."""
    words = derived_odd_words(n)

    def full(g: GenSymbol, x: Vec) -> Vec:
        if base(g):
            return action(g, x)
        g.check_range(n)
        return evaluate(words[GenSymbol(g.kind, g.index)], full, x)

    return full
