"""Command line entry point: ``python -m qaffine <command> ...``.

Every command prints one JSON document with sorted keys and a top-level
``schema`` field. Exit codes: 0 success, 1 other library error, 2 parse
error, 3 bound exceeded, 4 verification failure.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
import time

from . import braiding, checks, linalg, qchar, repdecomp, treeoperad, uqsl2
from .errors import BoundExceeded, QAffineError
from .uqsl2 import StandardDescriptor

SCHEMA = "qaffine/1"

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_BOUND, EXIT_VERIFY = 0, 1, 2, 3, 4

# library operation -> subcommand that exposes it
COMMAND_TABLE = {
    "qint": "module",
    "qbinom": "module",
    "evaluation_module": "module",
    "qstring": "module",
    "in_category_C": "module",
    "dual": "module",
    "twist": "module",
    "relation_failures": "module",
    "tensor": "tensor",
    "intertwiner_space": "tensor",
    "rref": "tensor",
    "generic_position": "tensor",
    "closure": "decompose",
    "composition_series": "decompose",
    "minimal_submodules": "decompose",
    "singular_vectors": "decompose",
    "identify_simple": "decompose",
    "twist_formal": "braid",
    "evaluate_z": "braid",
    "qpower_roots": "braid",
    "braid_pair": "braid",
    "braid_standard": "braid",
    "braid_subquotient": "braid",
    "mu_sigma": "mu",
    "subsequence_compatibility": "mu",
    "qchar_evaluation": "qchar",
    "qchar_product": "qchar",
    "specialize": "qchar",
    "dominant_term": "qchar",
    "k0_class": "k0",
    "in_A2": "k0",
    "family_hom": "hom",
    "corolla": "tree",
    "glue": "tree",
    "contract": "tree",
    "operad_compose": "tree",
    "elliptic_descent_report": "descent",
    "run_suite": "verify",
}


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _descriptor(text):
    try:
        return StandardDescriptor.parse(text)
    except ValueError as e:
        raise ParseError(str(e)) from None


def _ints(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None


def _matrix_json(m):
    return [[str(x) for x in r] for r in m.rows]


def _module_json(M):
    return {"dim": M.dim, "weights": list(M.weights),
            "action": {g: _matrix_json(getattr(M, g)) for g in linalg.GENERATORS}}


# -- commands ------------------------------------------------------------------------

def cmd_module(a):
    d = _descriptor(a.descriptor)
    M = uqsl2.module_of(d)
    if a.twist:
        M = uqsl2.twist(M, a.twist)
    if a.dual:
        M = uqsl2.dual(M)
    out = {"descriptor": str(d), "twist": a.twist, "dual": a.dual, "module": _module_json(M),
           "relations_hold": not uqsl2.relation_failures(M),
           "strings": [sorted(s.exponents) for s in d.strings()],
           "in_category_C": uqsl2.in_category_C(d)}
    return out, EXIT_OK


def cmd_tensor(a):
    ds = [_descriptor(t) for t in a.descriptors]
    M = uqsl2.tensor_all([uqsl2.module_of(d) for d in ds])
    strings = [s for d in ds for s in d.strings()]
    generic = all(uqsl2.generic_position(a_, b_)
                  for i, a_ in enumerate(strings) for b_ in strings[i + 1:])
    out = {"factors": [str(d) for d in ds], "module": _module_json(M),
           "pairwise_generic": generic}
    if a.hom_to:
        N = uqsl2.module_of(_descriptor(a.hom_to))
        out["hom_dimension"] = len(linalg.intertwiner_space(M, N))
    return out, EXIT_OK


def cmd_decompose(a):
    d = _descriptor(a.descriptor)
    M = uqsl2.module_of(d, check=False)
    cs = repdecomp.composition_series(M, bound=a.bound, hint=d)
    out = {"descriptor": str(d), "dim": M.dim, "series": cs.to_json(),
           "factors": [str(f) for f in cs.factors],
           "singular_vectors": [[w, s.dim] for w, s in repdecomp.singular_vectors(M)]}
    if a.minimal:
        out["minimal_submodule_dims"] = [s.dim for s in
                                         repdecomp.minimal_submodules(M, bound=a.bound)]
    return out, EXIT_OK


def cmd_braid(a):
    if a.standard:
        V, W = _descriptor(a.standard[0]), _descriptor(a.standard[1])
        c = braiding.braid_standard(V, W, bound=a.bound)
    else:
        if len(a.params) != 4:
            raise ParseError("braid needs nV lV nW lW or --standard V W")
        nV, lV, nW, lW = a.params
        c = braiding.braid_pair(nV, lV, nW, lW, bound=a.bound)
    out = {"braiding": c.to_json(), "singular": sorted(c.singular)}
    if a.at is not None:
        out["specialized"] = {"exponent": a.at, "matrix": _matrix_json(c.at(a.at))}
    return out, EXIT_OK


def cmd_mu(a):
    sigma = _ints(a.permutation)
    objs = [_descriptor(t) for t in a.objects]
    if len(objs) > a.max_factors:
        raise BoundExceeded(f"{len(objs)} factors exceed {a.max_factors}")
    m = braiding.mu_sigma(sigma, objs, spacing=a.spacing, max_factors=a.max_factors)
    out = {"permutation": list(sigma), "objects": [str(o) for o in objs],
           "spacing": a.spacing, "matrix": _matrix_json(m),
           "word": braiding.reduced_word(sigma)}
    return out, EXIT_OK


def cmd_qchar(a):
    d = _descriptor(a.descriptor)
    chi = qchar.character_of_descriptor(d)
    out = {"descriptor": str(d), "character": chi.to_json(), "text": str(chi),
           "specialization": {str(k): v for k, v in qchar.specialize(chi).items()},
           "dominant_monomials": [[list(p) for p in m] for m in qchar.dominant_monomials(chi)]}
    return out, EXIT_OK


def cmd_k0(a):
    d = _descriptor(a.descriptor)
    cls = qchar.k0_class(uqsl2.module_of(d, check=False), bound=a.bound) if a.decompose \
        else qchar.k0_class(d)
    return {"descriptor": str(d), "class": cls.to_json(), "text": str(cls),
            "in_A2": qchar.in_A2(cls)}, EXIT_OK


def cmd_hom(a):
    try:
        T = treeoperad.parse_tree(a.tree)
    except ValueError as e:
        raise ParseError(str(e)) from None
    objs = [_descriptor(t) for t in a.objects]
    g = _ints(a.point)
    target = uqsl2.module_of(_descriptor(a.target))
    dim, _ = treeoperad.family_hom(T, objs, g, target)
    return {"tree": str(T), "objects": [str(o) for o in objs], "point": list(g),
            "target": a.target, "dim": dim}, EXIT_OK


def cmd_tree(a):
    try:
        T = treeoperad.parse_tree(a.tree)
        parts = [treeoperad.parse_tree(p) for p in (a.glue or [])]
    except ValueError as e:
        raise ParseError(str(e)) from None
    if parts:
        T = treeoperad.glue(T, parts)
    if a.contract_all:
        T = treeoperad.contract_all(T)
    out = {"tree": str(T), "arity": T.arity, "inputs": T.inputs, "vertices": T.vertices,
           "internal_edges": [list(e) for e in treeoperad.internal_edges(T)]}
    if a.point:
        g = treeoperad.GPoint(_ints(a.point)).check(T)
        out["point"] = list(g.exponents)
        if a.compose:
            pts = [_ints(p) for p in a.compose]
            out["composed"] = list(treeoperad.operad_compose(g, pts).exponents)
    return out, EXIT_OK


def cmd_descent(a):
    rep = braiding.elliptic_descent_report(a.nV, a.lV, a.nW, a.lW, a.k)
    return {"report": rep}, EXIT_OK


def cmd_verify(a):
    names = list(checks.SUITES) if a.suite == "all" else [a.suite]
    params = {}
    if a.nmax is not None:
        params["nmax"] = a.nmax
    if a.lmax is not None:
        params["lmax"] = a.lmax
    results = []
    for n in names:
        accepted = inspect.signature(checks.SUITES[n]).parameters
        kw = {k: v for k, v in params.items() if k in accepted}
        results.append(checks.run_suite(n, **kw))
    matrix = {r.name: ("pass" if r.passed else "fail") for r in results}
    out = {"matrix": matrix, "results": [r.to_json() for r in results]}
    if a.timing:
        out["seconds"] = {r.name: round(r.seconds, 3) for r in results}
    return out, EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


COMMANDS = {
    "module": cmd_module, "tensor": cmd_tensor, "decompose": cmd_decompose,
    "braid": cmd_braid, "mu": cmd_mu, "qchar": cmd_qchar, "k0": cmd_k0,
    "hom": cmd_hom, "tree": cmd_tree, "descent": cmd_descent, "verify": cmd_verify,
}


def build_parser():
    p = _Parser(prog="qaffine", description="Exact computations with modules over quantum affine sl(2).")
    p.add_argument("--output", "-o", help="write JSON here instead of stdout")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("module", help="build a standard module")
    s.add_argument("descriptor")
    s.add_argument("--twist", type=int, default=0)
    s.add_argument("--dual", action="store_true")

    s = sub.add_parser("tensor", help="tensor standard modules")
    s.add_argument("descriptors", nargs="+")
    s.add_argument("--hom-to", help="also report dim Hom(product, this module)")

    s = sub.add_parser("decompose", help="composition series")
    s.add_argument("descriptor")
    s.add_argument("--bound", type=int, default=repdecomp.DEFAULT_BOUND)
    s.add_argument("--minimal", action="store_true", help="also list minimal submodules")

    s = sub.add_parser("braid", help="normalized braiding over Q(q,z)")
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("--standard", nargs=2, metavar=("V", "W"))
    s.add_argument("--bound", type=int, default=None)
    s.add_argument("--at", type=int, help="specialize z = q^k")

    s = sub.add_parser("mu", help="symmetric group action on a tensor product")
    s.add_argument("permutation", help="comma-separated targets, e.g. 1,0,2")
    s.add_argument("objects", nargs="+")
    s.add_argument("--spacing", type=int, default=braiding.DEFAULT_SPACING)
    s.add_argument("--max-factors", type=int, default=4)

    s = sub.add_parser("qchar", help="q-character of a standard module")
    s.add_argument("descriptor")

    s = sub.add_parser("k0", help="Grothendieck class")
    s.add_argument("descriptor")
    s.add_argument("--decompose", action="store_true", help="sum over composition factors")
    s.add_argument("--bound", type=int, default=repdecomp.DEFAULT_BOUND)

    s = sub.add_parser("hom", help="dimension of a hom family at a point")
    s.add_argument("tree")
    s.add_argument("objects", nargs="+")
    s.add_argument("--point", required=True)
    s.add_argument("--target", required=True)

    s = sub.add_parser("tree", help="planar tree operations")
    s.add_argument("tree")
    s.add_argument("--glue", nargs="+")
    s.add_argument("--contract-all", action="store_true")
    s.add_argument("--point")
    s.add_argument("--compose", nargs="+")

    s = sub.add_parser("descent", help="compare braidings at q^k and q^(k+2)")
    for name in ("nV", "lV", "nW", "lW", "k"):
        s.add_argument(name, type=int)

    s = sub.add_parser("verify", help="run verification suites")
    s.add_argument("--suite", default="all", choices=["all"] + list(checks.SUITES))
    s.add_argument("--nmax", type=int)
    s.add_argument("--lmax", type=int)
    return p


def _emit(doc, path):
    text = json.dumps(doc, sort_keys=True, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv=None):
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except ParseError as e:
        _emit({"schema": SCHEMA, "error": "parse", "message": str(e)}, None)
        return EXIT_PARSE
    if getattr(a, "bound", "absent") is None:
        a.bound = braiding.PAIR_BOUND if a.command == "braid" and not a.standard \
            else braiding.STANDARD_BOUND
    t0 = time.perf_counter()
    try:
        out, code = COMMANDS[a.command](a)
    except ParseError as e:
        _emit({"schema": SCHEMA, "error": "parse", "message": str(e)}, None)
        return EXIT_PARSE
    except BoundExceeded as e:
        _emit({"schema": SCHEMA, "error": "bound", "message": str(e)}, None)
        return EXIT_BOUND
    except (QAffineError, ValueError) as e:
        _emit({"schema": SCHEMA, "error": type(e).__name__, "message": str(e)}, None)
        return EXIT_ERROR
    out = {"schema": SCHEMA, "command": a.command, **out}
    if a.timing:
        out["elapsed_seconds"] = round(time.perf_counter() - t0, 3)
    _emit(out, a.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
