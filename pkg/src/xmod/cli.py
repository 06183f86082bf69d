"""``xmod`` command line.

Exit codes: 0 success, 1 verification failure (or an uncertified horn run),
2 unreadable input or bad usage.  Reports are JSON on stdout (or ``--out``),
with sorted keys so identical runs give identical bytes.  Wherever a file is
expected, ``builtin:NAME`` picks a structure from :mod:`xmod.catalog`.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__, catalog, io
from .axioms import AXIOM24_VARIANTS, AXIOM_TABLE_VERSION, DEFAULT_AXIOM24_VARIANT, \
    verify_three_crossed, verify_two_crossed
from .colored import DEFAULT_BUDGET, ColoringError, enumerate_simplices
from .crossed import ThreeCrossedModule, TwoCrossedModule
from .from2cm import InvalidStructure, search_two_crossed, three_crossed_from_two
from .groups import FiniteGroup, GroupError, check_hom
from .horns import DEFAULT_SAMPLES, EXHAUSTIVE_MAX, certify_quasi_category
from .moore import SimplicialGroupError, TruncatedSimplicialGroup, check_property18, \
    check_simplicial_group, moore_complex, three_crossed_from_moore
from .search import search_three_crossed

OK, FAIL, BAD_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str, kind: str | None = None):
    if path.startswith("builtin:"):
        try:
            return catalog.get(path[len("builtin:"):], kind)
        except KeyError as exc:
            raise io.FormatError(str(exc.args[0])) from exc
    try:
        return io.load(path, kind)
    except OSError as exc:
        raise io.FormatError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(doc: dict, out: str | None) -> None:
    doc = {"schema_version": io.SCHEMA_VERSION, **doc}
    text = io.dumps(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _verify_structure(S, variant: str, budget: int):
    if isinstance(S, ThreeCrossedModule):
        return verify_three_crossed(S, axiom24_variant=variant, budget=budget)
    return verify_two_crossed(S, budget=budget)


# ---------------------------------------------------------------------------
# commands

def cmd_verify(args) -> int:
    kind = args.kind
    if kind == "group" and not args.input.startswith("builtin:"):
        # a table that is not a group is a verification failure, not a parse error
        try:
            d = json.loads(Path(args.input).read_text())
            table = d["table"]
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise io.FormatError(f"unreadable group file: {exc}") from exc
        try:
            G = FiniteGroup(table, name=d.get("name", ""))
        except GroupError as exc:
            _emit({"kind": "group", "ok": False, "error": str(exc)}, args.out)
            return FAIL
        _emit({"kind": "group", "ok": True, "order": G.order}, args.out)
        return OK
    obj = _load(args.input, kind)
    if isinstance(obj, (TwoCrossedModule, ThreeCrossedModule)):
        rep = _verify_structure(obj, args.axiom24_variant, args.budget)
        _emit({"report": rep.to_dict(), "structure": obj.name}, args.out)
        return OK if rep.ok else FAIL
    if isinstance(obj, FiniteGroup):
        _emit({"kind": "group", "ok": True, "order": obj.order}, args.out)
        return OK
    if isinstance(obj, TruncatedSimplicialGroup):
        rep = check_simplicial_group(obj)
        _emit({"kind": "sgroup", "ok": rep.ok, "report": rep.to_dict()}, args.out)
        return OK if rep.ok else FAIL
    rep = check_hom(obj)
    _emit({"kind": "hom", "ok": rep.ok, "report": rep.to_dict()}, args.out)
    return OK if rep.ok else FAIL


def cmd_horn_certify(args) -> int:
    path = args.structure or args.input
    if not path:
        raise UsageError("horn-certify needs --structure (or --in)")
    S = _load(path)
    if not isinstance(S, (TwoCrossedModule, ThreeCrossedModule)):
        raise io.FormatError("horn-certify needs a 2- or 3-crossed module")
    rep = _verify_structure(S, args.axiom24_variant, DEFAULT_BUDGET)
    if not rep.ok:
        _emit({"error": "structure does not verify", "report": rep.to_dict()}, args.out)
        return FAIL
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        cert = certify_quasi_category(S, args.nmax, budget=args.budget, sample=args.sample,
                                      seed=args.seed, exhaustive_max=args.exhaustive_max)
    _emit({"certificate": cert.to_dict()}, args.out)
    print(cert.summary(), file=sys.stderr)
    return OK if cert.certified else FAIL


def cmd_moore(args) -> int:
    X = _load(args.input, "sgroup")
    rep = check_simplicial_group(X)
    if not rep.ok:
        _emit({"ok": False, "simplicial_identities": rep.to_dict()}, args.out)
        return FAIL
    try:
        D = moore_complex(X, check=False)
        T = three_crossed_from_moore(D)
    except SimplicialGroupError as exc:
        _emit({"ok": False, "error": str(exc)}, args.out)
        return FAIL
    ver = verify_three_crossed(T, axiom24_variant=args.axiom24_variant)
    p18 = check_property18(D)
    if args.emit_structure:
        io.save(T, args.emit_structure)
    _emit({"ok": ver.ok and p18.ok, "moore_orders": list(D.orders()),
           "image4_order": int(len(D.image4)), "structure_orders": list(T.orders()),
           "report": ver.to_dict(), "property18": p18.to_dict()}, args.out)
    return OK if ver.ok and p18.ok else FAIL


def cmd_lift2to3(args) -> int:
    W = _load(args.input, "xmod2")
    try:
        T = three_crossed_from_two(W, peiffer_reading=args.peiffer_reading)
    except InvalidStructure as exc:
        _emit({"ok": False, "error": str(exc)}, None)
        return FAIL
    T.name = T.name or f"from2cm({W.name})"
    if args.out:
        io.save(T, args.out)
    else:
        sys.stdout.write(io.dumps(T))
    return OK


def cmd_enumerate(args) -> int:
    S = _load(args.input)
    if not isinstance(S, (TwoCrossedModule, ThreeCrossedModule)):
        raise io.FormatError("enumerate needs a 2- or 3-crossed module")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        stream = enumerate_simplices(S, args.n, args.budget, args.mode)
    doc = {"structure": S.name, "n": args.n, "mode": args.mode, "count": len(stream),
           "partial": bool(stream.partial)}
    if args.list:
        doc["simplices"] = [sx.to_dict() for sx in stream]
    _emit(doc, args.out)
    return OK


def cmd_search(args) -> int:
    if args.spec.startswith("builtin:"):
        spec = io.to_json(_load(args.spec))
    else:
        try:
            spec = json.loads(Path(args.spec).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise io.FormatError(f"cannot read search spec: {exc}") from exc
    if not isinstance(spec, dict) or spec.get("kind") not in ("xmod2", "xmod3"):
        raise io.FormatError("search spec needs kind xmod2 or xmod3")
    cls = ThreeCrossedModule if spec["kind"] == "xmod3" else TwoCrossedModule
    doc = dict(spec)
    doc.setdefault("schema_version", io.SCHEMA_VERSION)
    doc["liftings"] = {k: _unit_table(spec, cls, k) for k in cls._lifts}
    probe = io.from_json(doc, spec["kind"])
    data = {k: getattr(probe, k) for k in cls._groups + cls._homs + cls._acts}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RuntimeWarning)
        if cls is ThreeCrossedModule:
            found = list(search_three_crossed(**data, cap=args.cap,
                                              axiom24_variant=args.axiom24_variant))
        else:
            found = list(search_two_crossed(**data, cap=args.cap))
    partial = any("cap" in str(w.message) or "stopping" in str(w.message) for w in caught)
    _emit({"count": len(found), "partial": partial,
           "structures": [io.to_json(S) for S in found]}, args.out)
    return OK


def _unit_table(spec, cls, key):
    g = spec["groups"]
    order = {k: len(g[k]["table"]) for k in cls._groups}
    h = order["H"]
    shapes = {"peiffer": (h, h), "left_homanian": (h, h, h), "right_homanian": (h, h, h),
              "hl": (h, order.get("L", 1)), "hl_prime": (h, order.get("L", 1)),
              "ll": (order.get("L", 1),) * 2}
    target = "L" if key == "peiffer" else "M"
    e = FiniteGroup(g[target]["table"], check=False).identity
    return np.full(shapes[key], e).tolist()


def cmd_builtins(args) -> int:
    _emit({"builtins": {k: catalog.names(k) for k in catalog.KINDS},
           "axiom_table_version": AXIOM_TABLE_VERSION}, args.out)
    return OK


def cmd_export(args) -> int:
    obj = _load(f"builtin:{args.name}")
    if args.out:
        io.save(obj, args.out)
    else:
        sys.stdout.write(io.dumps(obj))
    return OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="xmod", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"xmod {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, need_in=True):
        if need_in:
            sp.add_argument("--in", dest="input", required=True, help="input file or builtin:NAME")
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        sp.add_argument("--axiom24-variant", choices=AXIOM24_VARIANTS,
                        default=DEFAULT_AXIOM24_VARIANT)
        return sp

    sp = common(sub.add_parser("verify", help="run the verifier matching the file kind"))
    sp.add_argument("--kind", choices=io.KINDS)
    sp.add_argument("--budget", type=int, default=10**8)
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("horn-certify", help="fill inner horns up to --nmax"), False)
    sp.add_argument("--structure", help="structure file or builtin:NAME")
    sp.add_argument("--in", dest="input")
    sp.add_argument("--nmax", type=int, default=EXHAUSTIVE_MAX)
    sp.add_argument("--sample", type=int, default=None,
                    help=f"seeded random horns per (n, j) above --exhaustive-max "
                         f"(e.g. {DEFAULT_SAMPLES})")
    sp.add_argument("--exhaustive-max", type=int, default=EXHAUSTIVE_MAX)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_horn_certify)

    sp = common(sub.add_parser("moore", help="Moore complex and its 3-crossed module"))
    sp.add_argument("--emit-structure", help="write the 3-crossed module JSON here")
    sp.set_defaults(func=cmd_moore)

    sp = common(sub.add_parser("lift2to3", help="3-crossed module from a 2-crossed module"))
    sp.add_argument("--peiffer-reading", choices=("first", "second"), default="first")
    sp.set_defaults(func=cmd_lift2to3)

    sp = common(sub.add_parser("enumerate", help="colored simplices of dimension n"))
    sp.add_argument("--n", "--nmax", dest="n", type=int, required=True)
    sp.add_argument("--mode", choices=("structured", "rejection"), default="structured")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--list", action="store_true", help="include every simplex")
    sp.set_defaults(func=cmd_enumerate)

    sp = common(sub.add_parser("search", help="search liftings over fixed group data"), False)
    sp.add_argument("--spec", "--in", dest="spec", required=True,
                    help="structure JSON without (or ignoring) liftings")
    sp.add_argument("--cap", type=int, default=10**5)
    sp.set_defaults(func=cmd_search)

    sp = common(sub.add_parser("builtins", help="list built-in structure names"), False)
    sp.set_defaults(func=cmd_builtins)

    sp = common(sub.add_parser("export", help="write a built-in structure as JSON"), False)
    sp.add_argument("name")
    sp.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except (io.FormatError, UsageError, ColoringError) as exc:
        print(f"xmod: error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
