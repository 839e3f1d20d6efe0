"""Sparse linear combinations over Q(v) keyed by hashable basis labels."""

from __future__ import annotations

from typing import Callable, Dict, Generic, Hashable, Iterable, Iterator, Tuple, TypeVar

from .coeff import ONE, ZERO, RatScalar, Scalarish

K = TypeVar("K", bound=Hashable)
S = TypeVar("S", bound="SparseVector")


def accumulate(target: Dict, key, coeff: RatScalar) -> None:
    """target[key] += coeff, dropping the key if the sum vanishes."""
    if not coeff:
        return
    old = target.get(key)
    if old is None:
        target[key] = coeff
        return
    s = old + coeff
    if s:
        target[key] = s
    else:
        del target[key]


class SparseVector(Generic[K]):
    """Base class: ``terms`` maps basis labels to nonzero :class:`RatScalar` values.

    Subclasses add ambient data (such as ``n``) through :meth:`_like`.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[K, RatScalar] | None = None):
        self.terms: Dict[K, RatScalar] = {}
        if terms:
            for k, c in terms.items():
                accumulate(self.terms, k, RatScalar.of(c))

    def _like(self: S, terms: Dict[K, RatScalar]) -> S:
        obj = self.__class__.__new__(self.__class__)
        self._copy_ambient(obj)
        obj.terms = terms
        return obj

    def _copy_ambient(self, obj) -> None:
        pass

    def zero_like(self: S) -> S:
        return self._like({})

    def __iter__(self) -> Iterator[Tuple[K, RatScalar]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, key: K) -> RatScalar:
        return self.terms.get(key, ZERO)

    def __add__(self: S, other: S) -> S:
        out = dict(self.terms)
        for k, c in other.terms.items():
            accumulate(out, k, c)
        return self._like(out)

    def __neg__(self: S) -> S:
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self: S, other: S) -> S:
        out = dict(self.terms)
        for k, c in other.terms.items():
            accumulate(out, k, -c)
        return self._like(out)

    def scale(self: S, s: Scalarish) -> S:
        s = RatScalar.of(s)
        if not s:
            return self._like({})
        if s.is_one():
            return self
        return self._like({k: c * s for k, c in self.terms.items()})

    def __rmul__(self: S, s: Scalarish) -> S:
        return self.scale(s)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("sparse vectors are mutable containers and not hashable")

    def map_basis(self: S, fn: Callable[[K], Iterable[Tuple[K, RatScalar]]]) -> S:
        """Linear extension of a basis map returning (label, coefficient) pairs."""
        out: Dict[K, RatScalar] = {}
        for k, c in self.terms.items():
            for k2, c2 in fn(k):
                accumulate(out, k2, c * c2 if not c.is_one() else c2)
        return self._like(out)

    def filter(self: S, pred: Callable[[K], bool]) -> S:
        return self._like({k: c for k, c in self.terms.items() if pred(k)})


def unit_terms(key) -> Dict:
    return {key: ONE}
