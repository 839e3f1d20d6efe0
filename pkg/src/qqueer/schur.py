"""The queer q-Schur superalgebra realized on the degree-r tensor module.

Elements are operators on T(n, r) = span{X^{[A]}}; an element u is recorded by
its value u . 1_r (the canonical vector) together with a word combination that
acts as u (the witness).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import ONE, RatScalar, odd_square_scalar, qbinom
from .diffops import GenSymbol
from .matidx import SuperMatrix, co, enumerate_matrices, prec, strip_diag, total_key, weights
from .report import Check, Report
from .sparse import accumulate
from .tensormod import TensorElement, TensorRep, closed_image, normalize_monomial
from .uword import S, WordCombination, evaluate, monomial_word, relations, relation_residual, weight_idempotent

Column = Dict[SuperMatrix, RatScalar]
SparseMatrix = Dict[SuperMatrix, Column]


# --- generator matrices ------------------------------------------------------

def gen_matrix(g: GenSymbol, n: int, r: int) -> SparseMatrix:
    """Columns of k_i, e_h, f_h or kb_1 on the divided basis of degree r."""
    if g.kind not in ("K", "Kinv", "E", "F") and not (g.kind == "Kb" and g.index == 1):
        raise ValueError(f"{g} is not one of the matrix generators")
    return {A: dict(closed_image(g, A)) for A in enumerate_matrices(n, r)}


def matrix_apply(M: SparseMatrix, x: TensorElement) -> TensorElement:
    out: Column = {}
    for A, c in x.terms.items():
        for B, s in M[A].items():
            accumulate(out, B, c * s)
    return TensorElement(x.n, out)


def trailer_scalar(B: SuperMatrix) -> Tuple[SuperMatrix, RatScalar]:
    """The odd-square rule stated with the matrix generators: no binomial factor."""
    for pos, x in enumerate(B.odd):
        if x == 2:
            i, j = divmod(pos, B.n)
            return B.shifted(even=[(i, j, 2)], odd=[(i, j, -2)]), odd_square_scalar()
    raise ValueError("matrix has no odd entry equal to 2")


def binomial_scalar(B: SuperMatrix) -> Tuple[SuperMatrix, RatScalar]:
    """The odd-square rule with the factor [b0 + 2 choose 2]."""
    target, s = trailer_scalar(B)
    pos = next(p for p, x in enumerate(B.odd) if x == 2)
    i, j = divmod(pos, B.n)
    return target, s * RatScalar.of(qbinom(B.e(i, j) + 2, 2))


def oracle_scalar(B: SuperMatrix) -> Tuple[SuperMatrix, RatScalar]:
    """The same rewrite computed by normal ordering in A_v(n)."""
    (target, s), = normalize_monomial(B).terms.items()
    return target, s


def gen_symbols(n: int) -> List[GenSymbol]:
    gens = [GenSymbol("K", i) for i in range(1, n + 1)]
    gens += [GenSymbol("E", h) for h in range(1, n)] + [GenSymbol("F", h) for h in range(1, n)]
    return gens + [GenSymbol("Kb", 1)]


class SchurRep:
    """T(n, r) with the matrix generators; other symbols through defining words."""

    def __init__(self, n: int, r: int):
        self.n, self.r = n, r
        self.basis = enumerate_matrices(n, r)
        self.tensor = TensorRep(n, "closed")
        self.mats = {g: gen_matrix(g, n, r) for g in gen_symbols(n)}

    def act(self, g: GenSymbol, x: TensorElement) -> TensorElement:
        if g in self.mats:
            return matrix_apply(self.mats[g], x)
        return self.tensor.act(g, x)

    __call__ = act


# --- the cyclic vector and the witness family ------------------------------------

def one_r(n: int, r: int) -> TensorElement:
    return TensorElement(n, {SuperMatrix.diag(lam): ONE for lam in weights(n, r)})


def witness_word(A: SuperMatrix) -> WordCombination:
    """Monomial word of A with its even diagonal removed, then the weight idempotent of co(A)."""
    primed, _ = strip_diag(A)
    return WordCombination([(1, monomial_word(primed, (0,) * A.n))]) * weight_idempotent(co(A))


@dataclass
class WitnessFamily:
    n: int
    r: int
    order: List[SuperMatrix]
    words: Dict[SuperMatrix, WordCombination]
    vectors: Dict[SuperMatrix, TensorElement]
    diagonal: Dict[SuperMatrix, RatScalar]
    inverse: Dict[SuperMatrix, Dict[SuperMatrix, RatScalar]]
    report: Report

    @property
    def triangular(self) -> bool:
        return self.report.passed

    def rank(self) -> int:
        return bareiss_rank(self.n, self.vectors)


def check_triangular(A: SuperMatrix, y: TensorElement, check: Check) -> Optional[RatScalar]:
    """Return g_A when y = g_A X^{[A]} + prec_co-lower terms with g_A in +-v^Z."""
    check.checked += 1
    g = y.coeff(A)
    if not g or not g.is_signed_vpower():
        check.fail(f"{A!r}: diagonal coefficient {g}")
        return None
    lam = co(A)
    for B in y.terms:
        if B == A:
            continue
        if co(B) != lam or prec(B, A).order >= 0:
            check.fail(f"{A!r}: term {B!r} is not prec_co-lower")
            return None
    return g


def build_witness_family(n: int, r: int, rep: Optional[SchurRep] = None) -> WitnessFamily:
    rep = rep or SchurRep(n, r)
    one = one_r(n, r)
    report = Report(f"witness family n={n} r={r}")
    tri = report.add(Check("triangular with diagonal in +-v^Z"))
    order = sorted(rep.basis, key=lambda A: (co(A), total_key(A)))
    words, vectors, diag = {}, {}, {}
    for A in order:
        w = witness_word(A)
        y = evaluate(w, rep.act, one)
        words[A], vectors[A] = w, y
        g = check_triangular(A, y, tri)
        if g is not None:
            diag[A] = g
    inverse: Dict[SuperMatrix, Dict[SuperMatrix, RatScalar]] = {}
    if tri.passed:
        # X^{[A]} = (W_A 1_r - sum_{B < A} c_B X^{[B]}) / g_A, solved upward in the total order
        for A in order:
            comb: Dict[SuperMatrix, RatScalar] = {A: ONE}
            for B, c in vectors[A].terms.items():
                if B == A:
                    continue
                for C, d in inverse[B].items():
                    accumulate(comb, C, -(c * d))
            ginv = diag[A].inverse()
            inverse[A] = {C: d * ginv for C, d in comb.items()}
    return WitnessFamily(n, r, order, words, vectors, diag, inverse, report)


def bareiss_rank(n: int, vectors: Dict[SuperMatrix, TensorElement]) -> int:
    """Rank over Q(v) by fraction-free elimination, one column-sum block at a time."""
    blocks: Dict[Tuple[int, ...], List[TensorElement]] = {}
    for y in vectors.values():
        if not y:
            continue
        keys = {co(B) for B in y.terms}
        if len(keys) != 1:
            # mixed blocks: fall back to a single joint elimination
            blocks.setdefault(("mixed",), []).append(y)
        else:
            blocks.setdefault(keys.pop(), []).append(y)
    return sum(_bareiss(rows) for rows in blocks.values())


def _bareiss(rows: List[TensorElement]) -> int:
    cols = sorted({B for y in rows for B in y.terms}, key=total_key)
    m = [[y.coeff(B) for B in cols] for y in rows]
    rank, prev = 0, ONE
    nrows, ncols = len(m), len(cols)
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        for i in range(rank + 1, nrows):
            a = m[i][c]
            for k in range(c, ncols):
                m[i][k] = (p * m[i][k] - a * m[rank][k]) / prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


# --- Schur elements -------------------------------------------------------------------

@dataclass
class SchurElement:
    n: int
    r: int
    canonical: TensorElement
    witness: WordCombination

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SchurElement):
            return NotImplemented
        return (self.n, self.r) == (other.n, other.r) and self.canonical == other.canonical


class SchurAlgebra:
    """Basis psi_A, products, and the generator action for one (n, r)."""

    def __init__(self, n: int, r: int):
        self.n, self.r = n, r
        self.rep = SchurRep(n, r)
        self.family = build_witness_family(n, r, self.rep)
        if not self.family.triangular:
            raise ArithmeticError(self.family.report.render())
        self.one_vector = one_r(n, r)

    def dimension(self) -> int:
        return len(self.rep.basis)

    def element(self, witness: WordCombination) -> SchurElement:
        return SchurElement(self.n, self.r, evaluate(witness, self.rep.act, self.one_vector), witness)

    def psi(self, A: SuperMatrix) -> SchurElement:
        comb = self.family.inverse[A]
        witness = WordCombination()
        for B in sorted(comb, key=total_key):
            witness = witness + self.family.words[B].scale(comb[B])
        el = self.element(witness)
        if el.canonical != TensorElement.basis(A):
            raise ArithmeticError(f"psi witness for {A!r} does not reproduce X^[A]")
        return el

    def identity(self) -> SchurElement:
        w = WordCombination()
        for lam in weights(self.n, self.r):
            w = w + weight_idempotent(lam)
        return self.element(w)

    def multiply(self, u: SchurElement, w: SchurElement) -> SchurElement:
        canonical = evaluate(u.witness, self.rep.act, w.canonical)
        return SchurElement(self.n, self.r, canonical, u.witness * w.witness)

    def from_coordinates(self, coords: Dict[SuperMatrix, RatScalar]) -> SchurElement:
        """The element sum_A c_A psi_A, with a witness of bounded size."""
        witness = WordCombination()
        for A in sorted(coords, key=total_key):
            for B, d in self.family.inverse[A].items():
                witness = witness + self.family.words[B].scale(coords[A] * d)
        return self.element(witness)

    def compact(self, u: SchurElement) -> SchurElement:
        """Replace a grown witness by one read off the psi coordinates of u."""
        return self.from_coordinates(dict(u.canonical.terms))

    def operator_on(self, u: SchurElement, x: TensorElement) -> TensorElement:
        return evaluate(u.witness, self.rep.act, x)


# --- verification suites --------------------------------------------------------

def ideal_generators(n: int, r: int) -> List[Tuple[str, WordCombination]]:
    """Generators of the annihilating ideal as word combinations."""
    from .coeff import vpow

    out: List[Tuple[str, WordCombination]] = []
    prod_k = WordCombination.one()
    for i in range(1, n + 1):
        prod_k = prod_k * S("K", i)
    out.append(("K_1...K_n - v^r", prod_k - WordCombination.one().scale(vpow(r))))
    for i in range(1, n + 1):
        tail = WordCombination.one()
        for k in range(1, r + 1):
            tail = tail * (S("K", i) - WordCombination.one().scale(vpow(k)))
        full = (S("K", i) - WordCombination.one()) * tail
        out.append((f"prod_k (K_{i} - v^k), k=0..r", full))
        out.append((f"Kb_{i} prod_k (K_{i} - v^k), k=1..r", S("Kb", i) * tail))
    return out


def ideal_check(n: int, r: int, rep: Optional[SchurRep] = None) -> Report:
    rep = rep or SchurRep(n, r)
    report = Report(f"ideal annihilation n={n} r={r}")
    for name, wc in ideal_generators(n, r):
        chk = report.add(Check(name))
        for A in rep.basis:
            chk.checked += 1
            if evaluate(wc, rep.act, TensorElement.basis(A)):
                chk.fail(repr(A))
                break
    kill = report.add(Check("Kb_i kills X^[A] when ro(A)_i = 0"))
    from .matidx import ro

    for i in range(1, n + 1):
        g = GenSymbol("Kb", i)
        for A in rep.basis:
            if ro(A)[i - 1] == 0:
                kill.checked += 1
                if rep.act(g, TensorElement.basis(A)):
                    kill.fail(f"{g} on {A!r}")
    return report


def integrality_check(n: int, r: int) -> Report:
    report = Report(f"integrality n={n} r={r}")
    for g in gen_symbols(n):
        chk = report.add(Check(f"{g} matrix entries are Laurent polynomials"))
        for A, col in gen_matrix(g, n, r).items():
            for B, c in col.items():
                chk.checked += 1
                if not c.is_laurent():
                    chk.fail(f"entry ({B!r}, {A!r}) = {c}")
    return report


def block_check(n: int, r: int, rep: Optional[SchurRep] = None) -> Report:
    rep = rep or SchurRep(n, r)
    report = Report(f"column-sum blocks n={n} r={r}")
    for g, M in rep.mats.items():
        chk = report.add(Check(f"{g} preserves co"))
        for A, col in M.items():
            chk.checked += 1
            if any(co(B) != co(A) for B in col):
                chk.fail(repr(A))
    return report


def relation_check(n: int, r: int, rep: Optional[SchurRep] = None) -> Report:
    rep = rep or SchurRep(n, r)
    report = Report(f"defining relations on T(n={n}, r={r})")
    rels = relations(n)
    for fam in ("QQ1", "QQ2", "QQ3", "QQ4", "QQ5", "QQ6"):
        chk = report.add(Check(fam))
        for rel in rels:
            if rel.family != fam:
                continue
            for A in rep.basis:
                chk.checked += 1
                if relation_residual(rel, rep.act, TensorElement.basis(A)):
                    chk.fail(f"{rel.label} on {A!r}")
                    break
    return report


def verify(n: int, r: int) -> Report:
    """Dimension, triangularity, ideal, integrality, block and relation checks."""
    rep = SchurRep(n, r)
    fam = build_witness_family(n, r, rep)
    report = Report(f"schur n={n} r={r}")
    report.extend(fam.report)
    dim = report.add(Check("rank of witness family equals number of matrices"))
    dim.checked = len(rep.basis)
    rank = fam.rank()
    if rank != len(rep.basis):
        dim.fail(f"rank {rank} != {len(rep.basis)}")
    for sub in (ideal_check(n, r, rep), integrality_check(n, r), block_check(n, r, rep), relation_check(n, r, rep)):
        report.extend(sub)
    return report
