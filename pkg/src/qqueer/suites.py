"""Verification suites shared by the CLI and the acceptance tests.

Each suite splits its work into independent items (usually basis vectors),
maps a top-level worker over them, and assembles a :class:`Report` in item
order, so output does not depend on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .coeff import render
from .diffops import AlgebraRep, GenSymbol, verify_opecom
from .matidx import SuperMatrix, enumerate_matrices
from .qpoly import QPolyElement, basis_up_to, render_monomial
from .report import Check, Report

THREAD_ENV = "QQUEER_THREADS"
Failure = Tuple[str, str]  # (check name, locus)


def worker_count(explicit: Optional[int] = None) -> int:
    if explicit is not None:
        return max(1, explicit)
    try:
        return max(1, int(os.environ.get(THREAD_ENV, "1")))
    except ValueError:
        return 1


def pmap(fn: Callable, items: Sequence, workers: Optional[int] = None) -> List:
    """Ordered map, across processes when more than one worker is requested."""
    w = worker_count(workers)
    if w == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=w) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * w))))


def assemble(title: str, names: Iterable[str], per_item: List[Tuple[int, List[Failure]]]) -> Report:
    """Build a report from (checked count per name, failures) pairs, item by item."""
    report = Report(title)
    checks = {name: report.add(Check(name)) for name in names}
    for counts, failures in per_item:
        for name, k in counts.items():
            checks[name].checked += k
        for name, locus in failures:
            checks[name].fail(locus)
    return report


def first_difference(terms: dict) -> str:
    if not terms:
        return "none"
    key, c = next(iter(sorted(terms.items(), key=lambda kv: repr(kv[0]))))
    return f"{key!r} -> {render(c)}"


def generator_family(n: int) -> List[GenSymbol]:
    gens = [GenSymbol("K", i) for i in range(1, n + 1)]
    gens += [GenSymbol("E", h) for h in range(1, n)] + [GenSymbol("F", h) for h in range(1, n)]
    return gens + [GenSymbol("Kb", 1)]


# --- relations on A_v(n) ---------------------------------------------------------

@lru_cache(maxsize=None)
def _apoly_rep(n: int, composite: bool) -> AlgebraRep:
    return AlgebraRep(n, composite)


@lru_cache(maxsize=None)
def _relations(n: int):
    from .uword import relations

    return relations(n)


def _apoly_item(args) -> Tuple[dict, List[Failure]]:
    from .uword import relation_residual

    n, a, composite = args
    rep = _apoly_rep(n, composite)
    act = lambda g, x: QPolyElement(n, rep.act_terms(g, x.terms))
    counts: dict = {}
    fails: List[Failure] = []
    x = QPolyElement.basis(a)
    for rel in _relations(n):
        counts[rel.family] = counts.get(rel.family, 0) + 1
        res = relation_residual(rel, act, x)
        if res:
            fails.append((rel.family, f"{rel} on X^{render_monomial(a)}: {first_difference(res.terms)}"))
    return counts, fails


def relcheck_apoly(n: int, maxdeg: int, composite: bool = False, workers: Optional[int] = None) -> Report:
    items = [(n, a, composite) for a in basis_up_to(n, maxdeg)]
    route = "composite operators" if composite else "closed forms"
    return assemble(f"relations on A_v({n}), degree <= {maxdeg}, {route}",
                    [f"QQ{k}" for k in range(1, 7)], pmap(_apoly_item, items, workers))


# --- relations on the tensor module ----------------------------------------------

@lru_cache(maxsize=None)
def _tensor_rep(n: int, route: str):
    from .tensormod import TensorRep

    return TensorRep(n, route)


def _tensor_item(args) -> Tuple[dict, List[Failure]]:
    from .tensormod import TensorElement
    from .uword import relation_residual

    n, A, route = args
    rep = _tensor_rep(n, route)
    counts: dict = {}
    fails: List[Failure] = []
    x = TensorElement.basis(A)
    for rel in _relations(n):
        counts[rel.family] = counts.get(rel.family, 0) + 1
        res = relation_residual(rel, rep.act, x)
        if res:
            fails.append((rel.family, f"{rel} on X^[{A!r}]: {first_difference(res.terms)}"))
    return counts, fails


def tensor_basis(n: int, rmax: int) -> List[SuperMatrix]:
    return [A for r in range(rmax + 1) for A in enumerate_matrices(n, r)]


def relcheck_tensor(n: int, rmax: int, route: str = "closed", workers: Optional[int] = None) -> Report:
    items = [(n, A, route) for A in tensor_basis(n, rmax)]
    return assemble(f"relations on T({n}, r <= {rmax}), {route} route",
                    [f"QQ{k}" for k in range(1, 7)], pmap(_tensor_item, items, workers))


# --- closed formulas against the coproduct oracle ----------------------------------

def _oracle_item(A: SuperMatrix) -> Tuple[dict, List[Failure]]:
    from .tensormod import TensorElement, act_closed, act_oracle

    x = TensorElement.basis(A)
    counts: dict = {}
    fails: List[Failure] = []
    for g in generator_family(A.n):
        name = g.kind
        counts[name] = counts.get(name, 0) + 1
        diff = act_closed(g, x) - act_oracle(g, x)
        if diff:
            fails.append((name, f"{g} on X^[{A!r}]: {first_difference(diff.terms)}"))
    return counts, fails


def oracle_suite(n: int, rmax: int, workers: Optional[int] = None) -> Report:
    return assemble(f"closed formulas = coproduct oracle, n={n}, r <= {rmax}",
                    ["K", "E", "F", "Kb"], pmap(_oracle_item, tensor_basis(n, rmax), workers))


# --- formal-series module ------------------------------------------------------------

def _truncation_item(args) -> Tuple[dict, List[Failure]]:
    from .tensormod import act_closed
    from .vmod import VElement, act, truncate

    A, j, extra, literal = args
    x = VElement.symbol(A, j)
    depth = A.degree() + extra
    base = truncate(x, depth)
    counts: dict = {}
    fails: List[Failure] = []
    gens = generator_family(A.n) + [GenSymbol("Kinv", i) for i in range(1, A.n + 1)]
    for g in gens:
        name = g.kind
        counts[name] = counts.get(name, 0) + 1
        diff = truncate(act(g, x, literal), depth) - act_closed(g, base)
        if diff:
            fails.append((name, f"{g} on {A!r}{list(j)}: {first_difference(diff.terms)}"))
    return counts, fails


def truncation_suite(n: int, maxdeg: int, jlo: int = -1, jhi: int = 1, extra: int = 4,
                     literal: bool = False, workers: Optional[int] = None) -> Report:
    from .vmod import j_range

    items = [(A, j, extra, literal)
             for d in range(maxdeg + 1) for A in enumerate_matrices(n, d, primed=True)
             for j in j_range(n, jlo, jhi)]
    tag = " (literal diagonal constant)" if literal else ""
    return assemble(f"truncation equivariance n={n}, deg <= {maxdeg}, j in [{jlo},{jhi}]^{n}{tag}",
                    ["K", "Kinv", "E", "F", "Kb"], pmap(_truncation_item, items, workers))


def _triangular_item(A: SuperMatrix) -> Tuple[dict, List[Failure]]:
    from .vmod import leading_terms, monomial_image, strictly_below

    x = monomial_image(A)
    counts = {"leading matrix": 1, "leading coefficient in +-v^Z": 1, "other terms lower": 1}
    fails: List[Failure] = []
    if not x:
        return counts, [("leading matrix", f"{A!r}: image is zero")]
    lead = leading_terms(x)
    if len(lead) != 1 or lead[0][0] != A:
        fails.append(("leading matrix", f"{A!r}: leading {[(B, j) for B, j, _ in lead]!r}"))
    elif not lead[0][2].is_signed_vpower():
        fails.append(("leading coefficient in +-v^Z", f"{A!r}: {render(lead[0][2])}"))
    if not strictly_below(x, A):
        fails.append(("other terms lower", f"{A!r}"))
    return counts, fails


def triangularity_suite(n: int, maxdeg: int, workers: Optional[int] = None) -> Report:
    items = [A for d in range(maxdeg + 1) for A in enumerate_matrices(n, d, primed=True)]
    return assemble(f"monomial images are triangular, n={n}, deg <= {maxdeg}",
                    ["leading matrix", "leading coefficient in +-v^Z", "other terms lower"],
                    pmap(_triangular_item, items, workers))


def dictionary_suite(n: int) -> Report:
    """Generators on O(0) give the expected single series."""
    from .vmod import VElement, generator_dictionary

    report = Report(f"generator images on O(0), n={n}")
    images = generator_dictionary(n)
    for g, img in images.items():
        i = g.index - 1
        if g.kind == "K":
            exp = VElement.origin(n, tuple(1 if t == i else 0 for t in range(n)))
        elif g.kind == "E":
            exp = VElement.symbol(SuperMatrix.unit(n, i, i + 1), (0,) * n)
        elif g.kind == "F":
            exp = VElement.symbol(SuperMatrix.unit(n, i + 1, i), (0,) * n)
        else:
            exp = VElement.symbol(SuperMatrix.unit(n, 0, 0, odd=True), (0,) * n)
        chk = report.add(Check(f"{g} . O(0)"))
        chk.checked = 1
        if img != exp:
            chk.fail(repr(img))
    return report


def opecom_suite(n: int, maxdeg: int) -> Report:
    return verify_opecom(n, maxdeg)


# --- reports as JSON -------------------------------------------------------------------

def report_json(report: Report) -> dict:
    return {
        "title": report.title,
        "passed": report.passed,
        "checks": [
            {"name": c.name, "passed": c.passed, "checked": c.checked, "failure": c.failure}
            for c in report.checks
        ],
    }
