"""Command-line front end.

Exit status: 0 when every check passes, 1 on a verification failure, 2 on a
usage or input error. Verification commands print one line per check, or a
JSON report with ``--json``; element commands print canonical JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, List, Optional, Sequence

from . import qpoly, suites, tensormod, vmod
from .coeff import render
from .diffops import AlgebraRep
from .matidx import SuperMatrix, enumerate_matrices, total_key
from .qpoly import QPolyElement, basis_up_to, divided_convert, parse_monomial, render_monomial
from .report import Report
from .uword import evaluate, extend_action, parse_word

MAX_N = 4
MAX_DEGREE = 8
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# --- argument helpers ------------------------------------------------------------

def _bounded(lo: int, hi: int, what: str) -> Callable[[str], int]:
    def parse(text: str) -> int:
        try:
            k = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{what} must be an integer, got {text!r}")
        if not lo <= k <= hi:
            raise argparse.ArgumentTypeError(f"{what} must lie in [{lo}, {hi}], got {k}")
        return k

    return parse


RANK = _bounded(1, MAX_N, "n")
DEGREE = _bounded(0, MAX_DEGREE, "degree")


def _load(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}")


def dumps(data, indent: int = 0, width: int = 100) -> str:
    """JSON with term records, matrices and short containers kept on one line."""
    flat = json.dumps(data)
    record = isinstance(data, dict) and ("coeff" in data or "even" in data)
    if record or len(flat) + indent <= width or not isinstance(data, (dict, list)) or not data:
        return flat
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(data, dict):
        body = [f"{inner}{json.dumps(k)}: {dumps(v, indent + 2, width).lstrip()}" for k, v in data.items()]
        return "{\n" + ",\n".join(body) + "\n" + pad + "}"
    body = [inner + dumps(v, indent + 2, width).lstrip() for v in data]
    return "[\n" + ",\n".join(body) + "\n" + pad + "]"


def _emit(data) -> None:
    print(dumps(data))


def _jvec(text: Optional[str], n: int) -> tuple:
    if text is None:
        return (0,) * n
    try:
        j = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--j must be comma-separated integers, got {text!r}")
    if len(j) != n:
        raise UsageError(f"--j needs {n} entries, got {len(j)}")
    return j


def _check_n(args, n: int) -> None:
    if getattr(args, "n", None) is not None and args.n != n:
        raise UsageError(f"--n {args.n} does not match the input (n={n})")
    if n > MAX_N:
        raise UsageError(f"n={n} exceeds the supported bound {MAX_N}")


def _finish(reports: Sequence[Report], as_json: bool) -> int:
    if as_json:
        _emit([suites.report_json(r) for r in reports])
    else:
        print("\n".join(r.render() for r in reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# --- verification commands ---------------------------------------------------------

def cmd_relcheck(args) -> int:
    if args.space == "apoly":
        if args.route not in (None, "closed", "composite"):
            raise UsageError("apoly routes are 'closed' and 'composite'")
        report = suites.relcheck_apoly(args.n, args.maxdeg, args.route == "composite", args.workers)
    elif args.space == "tensor":
        if args.route not in (None, "closed", "oracle"):
            raise UsageError("tensor routes are 'closed' and 'oracle'")
        report = suites.relcheck_tensor(args.n, args.r, args.route or "closed", args.workers)
    else:
        from .schur import relation_check

        report = relation_check(args.n, args.r)
    return _finish([report], args.json)


def cmd_opecom(args) -> int:
    return _finish([suites.opecom_suite(args.n, args.maxdeg)], args.json)


def cmd_oracle(args) -> int:
    return _finish([suites.oracle_suite(args.n, args.r, args.workers)], args.json)


def cmd_vmod_verify(args) -> int:
    reports = [
        suites.truncation_suite(args.n, args.maxdeg, args.jmin, args.jmax, args.extra, args.literal, args.workers),
        suites.triangularity_suite(args.n, args.maxdeg, args.workers),
        suites.dictionary_suite(args.n),
    ]
    return _finish(reports, args.json)


def cmd_schur_verify(args) -> int:
    from .schur import verify

    return _finish([verify(args.n, args.r)], args.json)


def cmd_schur_dim(args) -> int:
    from .schur import SchurRep, build_witness_family

    rep = SchurRep(args.n, args.r)
    rank = build_witness_family(args.n, args.r, rep).rank()
    count = len(rep.basis)
    if args.json:
        _emit({"n": args.n, "r": args.r, "rank": rank, "matrices": count})
    else:
        print(rank)
    return EXIT_OK if rank == count else EXIT_FAIL


# --- element commands ------------------------------------------------------------------

def _act_apoly(args, word) -> dict:
    if args.elem:
        x = qpoly.from_json(_load(args.elem))
    elif args.monomial:
        if args.n is None:
            raise UsageError("--monomial needs --n")
        x = parse_monomial(args.n, args.monomial)
    else:
        raise UsageError("apoly needs --elem or --monomial")
    _check_n(args, x.n)
    divided = x.divided
    if divided:
        x = divided_convert(x, False)
    rep = AlgebraRep(x.n, args.route == "composite")
    action = lambda g, y: QPolyElement(y.n, rep.act_terms(g, y.terms))
    y = evaluate(word, action, x)
    if divided:
        y = divided_convert(y, True)
    return qpoly.to_json(y)


def _act_tensor(args, word) -> dict:
    if args.elem:
        x = tensormod.from_json(_load(args.elem))
    elif args.basis:
        A = SuperMatrix.from_json(_load(args.basis))
        if not A.is_reduced() or A.has_negative():
            raise UsageError("tensor basis matrices need non-negative entries and odd entries in {0, 1}")
        x = tensormod.TensorElement.basis(A)
    else:
        raise UsageError("tensor needs --elem or --basis")
    _check_n(args, x.n)
    if args.r is not None and any(A.degree() != args.r for A in x.terms):
        raise UsageError(f"input is not homogeneous of degree --r {args.r}")
    rep = tensormod.TensorRep(x.n, args.route or "closed")
    return tensormod.to_json(evaluate(word, rep.act, x))


def _vmod_input(args) -> vmod.VElement:
    if args.elem:
        x = vmod.from_json(_load(args.elem))
    elif args.basis:
        A = SuperMatrix.from_json(_load(args.basis))
        x = vmod.VElement.symbol(A, _jvec(args.j, A.n))
    else:
        raise UsageError("vmod needs --elem or --basis")
    _check_n(args, x.n)
    if not x.is_canonical():
        raise UsageError("vmod input must have odd entries in {0, 1}")
    return x


def _act_vmod(args, word) -> dict:
    x = _vmod_input(args)
    literal = getattr(args, "literal", False)
    action = extend_action(lambda g, y: vmod.act(g, y, literal), x.n)
    return vmod.to_json(evaluate(word, action, x))


def cmd_act(args) -> int:
    word = parse_word(args.gen)
    handler = {"apoly": _act_apoly, "tensor": _act_tensor, "vmod": _act_vmod}[args.space]
    _emit(handler(args, word))
    return EXIT_OK


def cmd_vmod_act(args) -> int:
    _emit(_act_vmod(args, parse_word(args.gen)))
    return EXIT_OK


def cmd_vmod_lead(args) -> int:
    if args.elem:
        x = _vmod_input(args)
    elif args.basis:
        A = SuperMatrix.from_json(_load(args.basis))
        _check_n(args, A.n)
        x = vmod.monomial_image(A, _jvec(args.j, A.n))
    else:
        raise UsageError("vmod-lead needs --elem or --basis")
    if not x:
        raise UsageError("the element is zero and has no leading term")
    lead = vmod.leading_terms(x)
    B, j, c = lead[-1]
    _emit({
        "matrix": B.to_json(),
        "j": list(j),
        "coeff": render(c),
        "terms_on_leading_matrix": len(lead),
        "coeff_is_signed_v_power": c.is_signed_vpower(),
    })
    return EXIT_OK


def cmd_vmod_truncate(args) -> int:
    _emit(tensormod.to_json(vmod.truncate(_vmod_input(args), args.rmax)))
    return EXIT_OK


def cmd_schur_mult(args) -> int:
    from .schur import SchurAlgebra

    A = SuperMatrix.from_json(_load(args.a))
    B = SuperMatrix.from_json(_load(args.b))
    for M in (A, B):
        if not M.is_reduced() or M.has_negative():
            raise UsageError("Schur basis matrices need non-negative entries and odd entries in {0, 1}")
    if A.n != B.n or A.degree() != B.degree():
        raise UsageError("both matrices must have the same size and degree")
    _check_n(args, A.n)
    alg = SchurAlgebra(A.n, A.degree())
    prod = alg.multiply(alg.psi(A), alg.psi(B))
    out = tensormod.to_json(prod.canonical)
    out["r"] = A.degree()
    out["basis"] = "psi"
    _emit(out)
    return EXIT_OK


def cmd_schur_gens(args) -> int:
    from .schur import gen_matrix, gen_symbols

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    basis = enumerate_matrices(args.n, args.r)
    for g in gen_symbols(args.n):
        M = gen_matrix(g, args.n, args.r)
        columns = [
            {"source": A.to_json(),
             "image": tensormod.to_json(tensormod.TensorElement(args.n, M[A]))["terms"]}
            for A in basis
        ]
        path = out / f"{g}.json"
        path.write_text(dumps({"generator": str(g), "n": args.n, "r": args.r, "columns": columns}) + "\n")
        print(path)
    return EXIT_OK


def cmd_dump_basis(args) -> int:
    if args.space == "apoly":
        items = [{"index": list(a), "text": render_monomial(a)} for a in basis_up_to(args.n, args.maxdeg)]
    elif args.space == "tensor":
        items = [A.to_json() for A in sorted(enumerate_matrices(args.n, args.r), key=total_key)]
    else:
        items = [A.to_json() for d in range(args.maxdeg + 1)
                 for A in sorted(enumerate_matrices(args.n, d, primed=True), key=total_key)]
    _emit({"space": args.space, "n": args.n, "count": len(items), "basis": items})
    return EXIT_OK


# --- parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=None,
                        help=f"worker processes (default: ${suites.THREAD_ENV} or 1)")
    common.add_argument("--json", action="store_true", help="machine-readable report")

    p = argparse.ArgumentParser(prog="qqueer", description="Exact computations for the quantum queer supergroup.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, aliases=()):
        sp = sub.add_parser(name, parents=[common], help=help_text, aliases=list(aliases))
        sp.set_defaults(func=fn)
        return sp

    sp = add("relcheck", cmd_relcheck, "defining relations on a representation")
    sp.add_argument("--space", choices=("apoly", "tensor", "schur"), required=True)
    sp.add_argument("--n", type=RANK, default=2)
    sp.add_argument("--maxdeg", type=DEGREE, default=3, help="apoly: largest degree")
    sp.add_argument("--r", type=DEGREE, default=3, help="tensor: largest degree; schur: the degree")
    sp.add_argument("--route", choices=("closed", "composite", "oracle"), default=None)

    sp = add("opecom", cmd_opecom, "commutation identities of the operator algebra")
    sp.add_argument("--n", type=RANK, default=2)
    sp.add_argument("--maxdeg", type=DEGREE, default=3)

    sp = add("oracle", cmd_oracle, "closed tensor formulas against the coproduct")
    sp.add_argument("--n", type=RANK, default=2)
    sp.add_argument("--r", type=DEGREE, default=3)

    sp = add("vmod-verify", cmd_vmod_verify, "truncation equivariance and triangularity of the series module")
    sp.add_argument("--n", type=RANK, default=2)
    sp.add_argument("--maxdeg", type=DEGREE, default=2)
    sp.add_argument("--jmin", type=int, default=-1)
    sp.add_argument("--jmax", type=int, default=1)
    sp.add_argument("--extra", type=int, default=4, help="truncation depth above deg(A)")
    sp.add_argument("--literal", action="store_true", help="use the unadjusted diagonal constant")

    sp = add("schur-verify", cmd_schur_verify, "full invariant suite for the Schur superalgebra")
    sp.add_argument("--n", type=RANK, default=2)
    sp.add_argument("--r", type=DEGREE, default=2)

    sp = add("schur-dim", cmd_schur_dim, "rank of the witness family")
    sp.add_argument("--n", type=RANK, default=2)
    sp.add_argument("--r", type=DEGREE, default=2)

    def element_args(sp, spaces=None):
        sp.add_argument("--gen", required=True, help='word such as "E1^(2) F2 Kb1 K1^-1"')
        if spaces:
            sp.add_argument("--space", choices=spaces, required=True)
        sp.add_argument("--elem", help="element JSON")
        sp.add_argument("--basis", help="matrix JSON for a single basis vector")
        sp.add_argument("--j", help="comma-separated j vector for a series basis vector")
        sp.add_argument("--monomial", help='apoly monomial such as "X1^2*Xb1"')
        sp.add_argument("--n", type=RANK, default=None)
        sp.add_argument("--r", type=DEGREE, default=None)
        sp.add_argument("--route", choices=("closed", "composite", "oracle"), default=None)
        sp.add_argument("--literal", action="store_true")

    element_args(add("act", cmd_act, "apply a generator word to an element"), ("apoly", "tensor", "vmod"))
    element_args(add("vmod-act", cmd_vmod_act, "apply a generator word to a series element"))

    for name, fn, help_text in (("vmod-lead", cmd_vmod_lead, "leading term of a series element"),
                                ("vmod-truncate", cmd_vmod_truncate, "truncate a series element")):
        sp = add(name, fn, help_text)
        sp.add_argument("--elem")
        sp.add_argument("--basis")
        sp.add_argument("--j")
        sp.add_argument("--n", type=RANK, default=None)
        if name == "vmod-truncate":
            sp.add_argument("--rmax", type=DEGREE, required=True)

    sp = add("schur-mult", cmd_schur_mult, "product of two basis elements", aliases=("mult",))
    sp.add_argument("--a", required=True, help="matrix JSON")
    sp.add_argument("--b", required=True, help="matrix JSON")
    sp.add_argument("--n", type=RANK, default=None)

    sp = add("schur-gens", cmd_schur_gens, "write generator matrices as JSON")
    sp.add_argument("--n", type=RANK, default=2)
    sp.add_argument("--r", type=DEGREE, default=2)
    sp.add_argument("--out", required=True)

    sp = add("dump-basis", cmd_dump_basis, "list a basis as JSON")
    sp.add_argument("--space", choices=("apoly", "tensor", "vmod"), required=True)
    sp.add_argument("--n", type=RANK, default=2)
    sp.add_argument("--maxdeg", type=DEGREE, default=2)
    sp.add_argument("--r", type=DEGREE, default=2)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers is not None and args.workers < 1:
        parser.error("--workers must be positive")
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
