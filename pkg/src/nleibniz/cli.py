"""Command-line frontend: ``nleibniz <command> ...``.

Every command prints one deterministic JSON document (or flattened text
with ``--format text``) whose header records the seed and trial count.
Basis elements in ``--ideal`` and ``--tuple`` are given by name (``e1``,
``x2``) or by 0-based index.

Exit codes: 0 success, 1 a check that ran and failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .cartan import cartan_search
from .catalog import CATALOG, dumps_definition, example_catalog, load_algebra
from .core import Algebra, ideal_closure, is_ideal, quotient_algebra, verify_fundamental_identity
from .errors import LeibnizError, NonSplitSpectrum, NotAnIdeal, ParseError
from .linalg import Subspace, format_scalar
from .operators import (eigen_witness_search, derivation_algebra, engel_check, fitting_decomposition,
                        regular_element_search, right_mult, root_space_decomposition)
from .radicals import all_radicals, candidate_ideals, invariance_check, radical
from .series import k1_series, k_derived_series, lower_series, s_central_series
from .structure import frattini_pipeline, jacobson_radical

DEFAULT_SEED = 0
DEFAULT_TRIALS = 64
RADICAL_KINDS = {"ksol": "k_solvable", "snil": "s_nilpotent", "nil": "nilpotent",
                 "k1": "k1_nilpotent"}


class InputError(LeibnizError):
    """Bad command-line input (unknown basis name, malformed option)."""


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------
def _vec(v) -> list:
    return [format_scalar(c) for c in v]


def _space(S: Subspace, A: Algebra | None = None) -> dict:
    out = {"dim": S.dim, "basis": [_vec(b) for b in S.basis]}
    if A is not None and all(sum(1 for c in b if c) == 1 for b in S.basis):
        out["basis_names"] = [A.basis_names[next(i for i, c in enumerate(b) if c)] for b in S.basis]
    return out


def _matrix(T) -> list:
    return [[format_scalar(c) for c in row] for row in T.rows]


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        if not obj:
            yield f"{prefix}: []"
        for i, x in enumerate(obj):
            yield from _flatten(x, f"{prefix}[{i}]")
    else:
        yield f"{prefix}: {json.dumps(obj)}"


def emit(doc: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "text":
        out.write("\n".join(_flatten(doc)) + "\n")
    else:
        out.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")


def _header(args, command: str) -> dict:
    return {"tool": "nleibniz", "version": __version__, "command": command,
            "seed": getattr(args, "seed", DEFAULT_SEED),
            "trials": getattr(args, "trials", DEFAULT_TRIALS)}


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------
def _indices(A: Algebra, text: str) -> list[int]:
    out = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok in A.basis_names:
            out.append(A.basis_names.index(tok))
            continue
        try:
            i = int(tok)
        except ValueError:
            raise InputError(f"unknown basis element {tok!r}") from None
        if not 0 <= i < A.dim:
            raise InputError(f"index {i} outside 0..{A.dim - 1}")
        out.append(i)
    return out


def _ideal(A: Algebra, text: str | None) -> Subspace:
    if text is None:
        return A.full()
    return Subspace.coordinate(_indices(A, text), A.dim)


def _param_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise InputError(f"parameter {item!r} must look like key=value")
        k, v = item.split("=", 1)
        out[k.strip()] = _param_value(v.strip())
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------
def _identity_doc(A: Algebra) -> dict:
    rep = verify_fundamental_identity(A)
    names = A.basis_names
    return {"passed": rep.passed, "checked_operators": rep.checked_operators,
            "violation_count": len(rep.violations),
            "violations": [{"x": [names[i] for i in x], "y": [names[i] for i in y],
                            "residual": _vec(r)} for x, y, r in rep.violations]}


def cmd_check(args) -> int:
    A = load_algebra(args.file)
    doc = _header(args, "check")
    doc["algebra"] = {"name": A.name, "arity": A.arity, "dim": A.dim}
    doc["identity"] = _identity_doc(A)
    emit(doc, args.format)
    return 0 if doc["identity"]["passed"] else 1


def _series_docs(A: Algebra, cap) -> dict:
    n = A.arity
    full = A.full()
    return {"s_central": {str(s): s_central_series(A, s, cap).to_dict() for s in range(1, n + 1)},
            "lower": lower_series(A, cap).to_dict(),
            "k_derived": {str(k): k_derived_series(A, full, k, cap).to_dict()
                          for k in range(1, n + 1)},
            "k1": k1_series(A, full, cap).to_dict()}


def _frattini_doc(A: Algebra, seed: int, trials: int) -> dict:
    rep, qb = frattini_pipeline(A, seed=seed, trials=trials)
    out = rep.to_dict()
    out["quotient_bound"] = None if qb is None else qb.to_dict()
    return out


def cmd_report(args) -> int:
    A = load_algebra(args.file)
    seed, trials = args.seed, args.trials
    doc = _header(args, "report")
    doc["algebra"] = {"name": A.name, "arity": A.arity, "dim": A.dim,
                      "basis": list(A.basis_names)}
    doc["identity"] = _identity_doc(A)
    doc["series"] = _series_docs(A, args.max_series_len)
    ders = derivation_algebra(A)
    doc["derivations"] = {"dim": len(ders)}
    doc["engel"] = engel_check(A).to_dict()
    doc["regular_element"] = regular_element_search(A, trials, seed).to_dict()
    doc["frattini"] = _frattini_doc(A, seed, trials)
    doc["jacobson"] = jacobson_radical(A, seed, trials).to_dict()
    rads = []
    for r in all_radicals(A, seed, trials):
        d = r.to_dict()
        d["derivation_invariant"] = invariance_check(A, r.value, ders)
        rads.append(d)
    doc["radicals"] = rads
    ev = cartan_search(A, seed=seed, trials=trials)
    doc["cartan"] = {"dimension_spectrum": list(ev.dimension_spectrum),
                     "non_conjugate": ev.non_conjugate,
                     "reports": [{"label": r.label, "dim": r.dim, "source": r.source}
                                 for r in ev.reports]}
    emit(doc, args.format)
    if args.strict and not doc["identity"]["passed"]:
        return 1
    return 0


def cmd_series(args) -> int:
    A = load_algebra(args.file)
    cap = args.max_series_len
    if args.kind == "s":
        chain = s_central_series(A, args.s, cap)
    elif args.kind == "lower":
        chain = lower_series(A, cap)
    elif args.kind == "kder":
        chain = k_derived_series(A, _ideal(A, args.ideal), args.k, cap)
    else:
        chain = k1_series(A, _ideal(A, args.ideal), cap)
    doc = _header(args, "series")
    doc["series"] = chain.to_dict()
    doc["terms"] = [_space(t, A) for t in chain.terms]
    emit(doc, args.format)
    return 0


def cmd_derivations(args) -> int:
    A = load_algebra(args.file)
    ders = derivation_algebra(A)
    doc = _header(args, "derivations")
    doc["dim"] = len(ders)
    doc["convention"] = "matrix columns are images of basis vectors"
    doc["basis"] = [_matrix(T) for T in ders]
    emit(doc, args.format)
    return 0


def cmd_fitting(args) -> int:
    A = load_algebra(args.file)
    idx = _indices(A, args.tuple)
    if len(idx) != A.arity - 1:
        raise InputError(f"--tuple needs {A.arity - 1} entries, got {len(idx)}")
    R = right_mult(A, idx)
    fp = fitting_decomposition(R)
    doc = _header(args, "fitting")
    doc["tuple"] = [A.basis_names[i] for i in idx]
    doc["operator"] = _matrix(R)
    doc["null_component"] = _space(fp.null_component, A)
    doc["one_component"] = _space(fp.one_component, A)
    try:
        doc["roots"] = root_space_decomposition(R).to_dict()
    except NonSplitSpectrum:
        doc["roots"] = None
    doc["eigen_condition"] = eigen_witness_search(A, idx).to_dict()
    emit(doc, args.format)
    return 0


def _load_candidates(A: Algebra, path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"candidates file: line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ParseError("candidates file must map labels to generator lists")
    pool = {}
    for label, gens in sorted(data.items()):
        vecs = []
        if not isinstance(gens, list):
            raise ParseError(f"candidate {label!r} must be a list")
        for g in gens:
            if isinstance(g, str):
                vecs.append(A.basis_vector(_indices(A, g)[0]))
            elif isinstance(g, list) and len(g) == A.dim:
                vecs.append(tuple(Fraction(c) for c in g))
            else:
                raise ParseError(f"candidate {label!r}: bad generator {g!r}")
        pool[label] = Subspace.span(vecs, A.dim)
    return pool


def cmd_cartan(args) -> int:
    A = load_algebra(args.file)
    pool = _load_candidates(A, args.candidates) if args.candidates else None
    ev = cartan_search(A, pool, args.seed, args.trials)
    doc = _header(args, "cartan")
    doc.update(ev.to_dict())
    emit(doc, args.format)
    return 0


def cmd_frattini(args) -> int:
    A = load_algebra(args.file)
    doc = _header(args, "frattini")
    doc["frattini"] = _frattini_doc(A, args.seed, args.trials)
    doc["jacobson"] = jacobson_radical(A, args.seed, args.trials).to_dict()
    emit(doc, args.format)
    return 0


def cmd_radical(args) -> int:
    A = load_algebra(args.file)
    kind = RADICAL_KINDS[args.kind]
    param = args.param if kind in ("k_solvable", "s_nilpotent") else None
    pool = candidate_ideals(A, args.seed, args.trials)
    rep = radical(A, kind, param, args.seed, args.trials, pool)
    doc = _header(args, "radical")
    doc["radical"] = rep.to_dict()
    emit(doc, args.format)
    return 0


def cmd_catalog(args) -> int:
    if args.list:
        emit({"catalog": sorted(CATALOG)}, args.format)
        return 0
    if not args.name:
        raise InputError("catalog needs a family name (or --list)")
    A = example_catalog(args.name, **_params(args.params))
    text = dumps_definition(A)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_quotient(args) -> int:
    A = load_algebra(args.file)
    I = _ideal(A, args.ideal)
    if args.close:
        I = ideal_closure(A, I)
    elif not is_ideal(A, I):
        raise NotAnIdeal("the given span is not an ideal (use --close for its ideal closure)")
    Q, _ = quotient_algebra(A, I)
    text = dumps_definition(Q)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS)

    p = argparse.ArgumentParser(prog="nleibniz",
                                description="Exact computations in Leibniz n-algebras over Q.")
    p.add_argument("--version", action="version", version=f"nleibniz {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, file=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if file:
            sp.add_argument("file", help="algebra definition (JSON)")
        sp.set_defaults(func=func)
        return sp

    add("check", cmd_check, "verify the fundamental identity")
    sp = add("report", cmd_report, "full dossier of every computation")
    sp.add_argument("--max-series-len", type=int, default=None)
    sp.add_argument("--strict", action="store_true", help="exit 1 if the identity fails")
    sp = add("series", cmd_series, "one descending series")
    sp.add_argument("--kind", choices=("s", "lower", "kder", "k1"), required=True)
    sp.add_argument("--s", type=int, default=1)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--ideal", default=None, help="coordinate ideal, e.g. x1,x2 (default L)")
    sp.add_argument("--max-series-len", type=int, default=None)
    add("derivations", cmd_derivations, "basis of the derivation algebra")
    sp = add("fitting", cmd_fitting, "Fitting decomposition of R(y)")
    sp.add_argument("--tuple", required=True, help="the n-1 entries of y, e.g. e1,e1")
    sp = add("cartan", cmd_cartan, "search and verify Cartan subalgebras")
    sp.add_argument("--candidates", default=None, help="JSON file: label -> generators")
    add("frattini", cmd_frattini, "Frattini subalgebra and Jacobson radical")
    sp = add("radical", cmd_radical, "one radical as a certified lower bound")
    sp.add_argument("--kind", choices=sorted(RADICAL_KINDS), required=True)
    sp.add_argument("--param", type=int, default=1)
    sp = add("catalog", cmd_catalog, "write a catalog algebra definition", file=False)
    sp.add_argument("name", nargs="?")
    sp.add_argument("--params", nargs="*", default=[], help="key=value, values parsed as JSON")
    sp.add_argument("-o", "--output", default=None)
    sp.add_argument("--list", action="store_true")
    sp = add("quotient", cmd_quotient, "write the quotient by an ideal")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--close", action="store_true", help="replace the span by its ideal closure")
    sp.add_argument("-o", "--output", default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LeibnizError, OSError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
