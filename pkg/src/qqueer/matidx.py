"""Index combinatorics: super multi-indices, super matrices and the vec pre-order.

Indices are 0-based in code. A super multi-index is a flat tuple
``(a_1, ..., a_n, a_1bar, ..., a_nbar)``; position ``n + i`` is the odd partner
of position ``i``. A :class:`SuperMatrix` holds the pair ``(A^0 | A^1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

SuperIndex = Tuple[int, ...]


def index_parity(a: SuperIndex) -> int:
    n = len(a) // 2
    return sum(a[n:]) % 2


def index_degree(a: SuperIndex) -> int:
    return sum(a)


def index_reduced(a: SuperIndex) -> bool:
    n = len(a) // 2
    return all(x <= 1 for x in a[n:])


class SuperMatrix:
    """A pair of n x n natural matrices, stored row-major as flat tuples."""

    __slots__ = ("n", "even", "odd", "_hash")

    def __init__(self, n: int, even: Sequence[int], odd: Sequence[int]):
        self.n = n
        self.even = tuple(even)
        self.odd = tuple(odd)
        if len(self.even) != n * n or len(self.odd) != n * n:
            raise ValueError("SuperMatrix entries do not match n")
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> "SuperMatrix":
        return cls(n, (0,) * (n * n), (0,) * (n * n))

    @classmethod
    def from_rows(cls, even: Sequence[Sequence[int]], odd: Sequence[Sequence[int]]) -> "SuperMatrix":
        n = len(even)
        return cls(n, [x for row in even for x in row], [x for row in odd for x in row])

    @classmethod
    def diag(cls, lam: Sequence[int]) -> "SuperMatrix":
        n = len(lam)
        even = [0] * (n * n)
        for i, x in enumerate(lam):
            even[i * n + i] = x
        return cls(n, even, (0,) * (n * n))

    @classmethod
    def unit(cls, n: int, i: int, j: int, odd: bool = False, value: int = 1) -> "SuperMatrix":
        """value * E_{ij} placed in A^1 (odd) or A^0."""
        z = [0] * (n * n)
        z[i * n + j] = value
        if odd:
            return cls(n, (0,) * (n * n), z)
        return cls(n, z, (0,) * (n * n))

    # --- entries ----------------------------------------------------------
    def e(self, i: int, j: int) -> int:
        return self.even[i * self.n + j]

    def o(self, i: int, j: int) -> int:
        return self.odd[i * self.n + j]

    def rows(self) -> Tuple[List[List[int]], List[List[int]]]:
        n = self.n
        return (
            [list(self.even[i * n:(i + 1) * n]) for i in range(n)],
            [list(self.odd[i * n:(i + 1) * n]) for i in range(n)],
        )

    def column(self, j: int) -> SuperIndex:
        """Column j as the exponent vector of a factor of A_v(n)."""
        n = self.n
        return tuple(self.even[i * n + j] for i in range(n)) + tuple(self.odd[i * n + j] for i in range(n))

    @classmethod
    def from_columns(cls, cols: Sequence[SuperIndex]) -> "SuperMatrix":
        n = len(cols)
        even = [cols[j][i] for i in range(n) for j in range(n)]
        odd = [cols[j][n + i] for i in range(n) for j in range(n)]
        return cls(n, even, odd)

    def shifted(self, even: Sequence[Tuple[int, int, int]] = (), odd: Sequence[Tuple[int, int, int]] = ()) -> "SuperMatrix":
        """Copy with entries (i, j) of A^0 / A^1 incremented by the given deltas."""
        n = self.n
        ev = list(self.even)
        od = list(self.odd)
        for i, j, d in even:
            ev[i * n + j] += d
        for i, j, d in odd:
            od[i * n + j] += d
        return SuperMatrix(n, ev, od)

    def plus_diag(self, lam: Sequence[int]) -> "SuperMatrix":
        return self.shifted(even=[(i, i, x) for i, x in enumerate(lam) if x])

    # --- predicates ---------------------------------------------------------
    def is_reduced(self) -> bool:
        return all(x <= 1 for x in self.odd)

    def is_primed(self) -> bool:
        n = self.n
        return all(self.even[i * n + i] == 0 for i in range(n))

    def has_negative(self) -> bool:
        return any(x < 0 for x in self.even) or any(x < 0 for x in self.odd)

    def degree(self) -> int:
        return sum(self.even) + sum(self.odd)

    def parity(self) -> int:
        return sum(self.odd) % 2

    def diagonal(self) -> Tuple[int, ...]:
        n = self.n
        return tuple(self.even[i * n + i] for i in range(n))

    # --- dunder ---------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.n == other.n and self.even == other.even and self.odd == other.odd

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.even, self.odd))
        return self._hash

    def __lt__(self, other: "SuperMatrix") -> bool:
        return total_key(self) < total_key(other)

    def __repr__(self) -> str:
        ev, od = self.rows()
        return f"SuperMatrix(even={ev}, odd={od})"

    def to_json(self) -> dict:
        ev, od = self.rows()
        return {"even": ev, "odd": od}

    @classmethod
    def from_json(cls, data: dict) -> "SuperMatrix":
        even, odd = data["even"], data["odd"]
        if len(even) != len(odd) or any(len(r) != len(even) for r in list(even) + list(odd)):
            raise ValueError("SuperMatrix JSON must hold two square matrices of equal size")
        return cls.from_rows(even, odd)


def parity(x) -> int:
    if isinstance(x, SuperMatrix):
        return x.parity()
    return index_parity(x)


def roco(A: SuperMatrix) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    n = A.n
    ro = tuple(sum(A.even[i * n + j] + A.odd[i * n + j] for j in range(n)) for i in range(n))
    co = tuple(sum(A.even[i * n + j] + A.odd[i * n + j] for i in range(n)) for j in range(n))
    return ro, co


def ro(A: SuperMatrix) -> Tuple[int, ...]:
    return roco(A)[0]


def co(A: SuperMatrix) -> Tuple[int, ...]:
    return roco(A)[1]


def vec(A: SuperMatrix) -> Tuple[int, ...]:
    """Section-ordered flattening of A, length 2n^2 - n; the A^0 diagonal is dropped."""
    n = A.n
    out: List[int] = []
    for j in range(n - 1, -1, -1):
        out.extend(A.o(i, j) for i in range(n - 1, -1, -1))
        out.extend(A.e(i, j) for i in range(j))
    for j in range(n - 1):
        out.extend(A.e(i, j) for i in range(n - 1, j, -1))
    return tuple(out)


def total_key(A: SuperMatrix) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Total order refining the pre-order: vec first, then the A^0 diagonal."""
    return vec(A), A.diagonal()


@dataclass(frozen=True)
class PrecResult:
    """Outcome of comparing vec(A) against vec(B).

    ``order`` is -1 (A below B), 0 (equal vec) or 1 (A above B); ``position`` is
    the first differing 0-based vec position, or ``None`` on a tie.
    """

    order: int
    position: Optional[int]

    @property
    def name(self) -> str:
        return {-1: "less", 0: "equal-vec", 1: "greater"}[self.order]


def prec(A: SuperMatrix, B: SuperMatrix) -> PrecResult:
    if A.n != B.n:
        raise ValueError("prec compares matrices of the same size")
    va, vb = vec(A), vec(B)
    for k, (x, y) in enumerate(zip(va, vb)):
        if x != y:
            return PrecResult(1 if x > y else -1, k)
    return PrecResult(0, None)


def prec_co(A: SuperMatrix, B: SuperMatrix) -> Optional[PrecResult]:
    """The pre-order restricted to equal column sums; None when incomparable."""
    if co(A) != co(B):
        return None
    return prec(A, B)


def strip_diag(A: SuperMatrix) -> Tuple[SuperMatrix, Tuple[int, ...]]:
    lam = A.diagonal()
    return A.shifted(even=[(i, i, -x) for i, x in enumerate(lam) if x]), lam


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """All tuples of ``parts`` naturals summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def weights(n: int, r: int) -> List[Tuple[int, ...]]:
    """Lambda(n, r) in lexicographic order."""
    return sorted(compositions(r, n))


def enumerate_matrices(n: int, r: int, primed: bool = False) -> List[SuperMatrix]:
    """All reduced matrices of degree r, sorted by :func:`total_key`."""
    if n < 1:
        raise ValueError("n must be at least 1")
    cells = [(i, j) for i in range(n) for j in range(n)]
    even_cells = [(i, j) for (i, j) in cells if not (primed and i == j)]
    out: List[SuperMatrix] = []
    for k in range(0, min(len(cells), r) + 1):
        for support in combinations(range(len(cells)), k):
            odd = [0] * (n * n)
            for s in support:
                odd[s] = 1
            for comp in compositions(r - k, len(even_cells)):
                even = [0] * (n * n)
                for (i, j), x in zip(even_cells, comp):
                    even[i * n + j] = x
                out.append(SuperMatrix(n, even, odd))
    out.sort(key=total_key)
    return out


def count_matrices(n: int, r: int) -> int:
    """Stars-and-bars count of M_n(N|Z_2)_r."""
    from math import comb

    m = n * n
    return sum(comb(m, k) * comb(r - k + m - 1, m - 1) for k in range(0, min(m, r) + 1))
