"""Command-line interface.

    lcocycle verify tetrahedron | cube-edges
    lcocycle invariants --knot "1 1 1"
    lcocycle scan --knot "1 1 1" --aux fig8 --crossing c --side under --filter d-green
    lcocycle bracket trefoil+ fig8 --cabled --curls 3
    lcocycle tree --name 8_17 --aux fig8 --depth 1
    lcocycle compare 8_17 inv:8_17 --aux fig8
    lcocycle render --name fig8 --cabled > fig8.svg

Diagram arguments (positional ones and --aux) accept a built-in name, or a
prefixed source: ``braid:1 1 1``, ``dt:4 6 2``, ``pd:[1,5,2,4],...`` or
``file:path`` (the file holds one such source).  ``inv:<source>`` is the
inverted long knot.  A bare word of integers is
read as a braid.  Braids become long knots; DT and PD knots are cut open at
their first edge.

Exit status: 0 success, 1 failed verification, 2 parse error,
3 resource cap exceeded, 4 model error (for example a star-like move).
Resource caps come from LCOCYCLE_MAX_TERMS and LCOCYCLE_MAX_CROSSINGS.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import braid as B
from . import diagram as D
from . import invariants as I
from . import scan as S
from . import tree as TR

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_RESOURCE, EXIT_MODEL = 0, 1, 2, 3, 4

NAMED_BRAIDS = {
    "trefoil+": "1 1 1",
    "trefoil-": "-1 -1 -1",
    "fig8": "2 -1 2 -1",
    "8_17": "2 2 -1 2 -1 2 -1 -1",
    "conway": "2 2 2 1 -3 -2 -2 1 -2 1 -3",
    "kt": "1 1 1 3 3 2 -3 -1 -1 2 -1 -3 -2",
}
NAMED_EXTRA = ("product",)


class ParseError(ValueError):
    pass


def named(name: str, color: str = "green") -> D.Diagram:
    """Built-in long knots."""
    if name == "product":
        return D.product(named("trefoil+", color), named("fig8", color))
    if name in NAMED_BRAIDS:
        return D.from_braid(B.parse_braid(NAMED_BRAIDS[name]), "long", color)
    raise ParseError(f"unknown diagram name {name!r}")


def resolve(source: str, color: str = "green") -> D.Diagram:
    source = source.strip()
    try:
        if source in NAMED_BRAIDS or source in NAMED_EXTRA:
            return named(source, color)
        kind, sep, body = source.partition(":")
        if not sep:
            return D.from_braid(B.parse_braid(source), "long", color)
        kind = kind.strip().lower()
        if kind in ("braid", "knot"):
            return D.from_braid(B.parse_braid(body), "long", color)
        if kind == "dt":
            return D.open_knot(D.parse_dt(body, color))
        if kind == "pd":
            d = D.parse_pd(body, color)
            return D.open_knot(d) if len(d.components) == 1 else d
        if kind == "file":
            with open(body.strip()) as fh:
                return resolve(fh.read(), color)
        if kind == "name":
            return named(body.strip(), color)
        if kind == "inv":
            return D.invert(resolve(body, color))
    except (B.BraidError, D.DiagramError, OSError) as e:
        raise ParseError(str(e)) from e
    raise ParseError(f"cannot read diagram {source!r}")


def main_input(a) -> D.Diagram:
    given = [(k, getattr(a, k)) for k in ("knot", "braid", "dt", "pd", "name", "file")
             if getattr(a, k, None) is not None]
    if len(given) != 1:
        raise ParseError("give exactly one of --knot/--braid/--dt/--pd/--name/--file")
    k, v = given[0]
    return resolve(v if k == "name" else f"{'braid' if k == 'knot' else k}:{v}")


def caps():
    try:
        return (int(os.environ.get("LCOCYCLE_MAX_TERMS", 20000)),
                int(os.environ.get("LCOCYCLE_MAX_CROSSINGS", 80)))
    except ValueError as e:
        raise ParseError(f"bad resource cap: {e}") from e


def param_from(a) -> S.ScanParameter:
    K = resolve(a.aux)
    if a.crossing in ("c", "auto"):
        c = S._pick_one_crossing(K, None)
    else:
        try:
            c = int(a.crossing)
        except ValueError as e:
            raise ParseError(f"bad crossing {a.crossing!r}") from e
    try:
        return S.ScanParameter(K, c, a.side)
    except S.ModelError:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from e


def check_size(T: D.Diagram, K: D.Diagram, cabled: bool):
    _, max_x = caps()
    n = (T.n_crossings() + K.n_crossings()) * (4 if cabled else 1)
    if n > max_x:
        raise TR.ResourceError(f"{n} crossings exceed the cap {max_x}")


# --------------------------------------------------------------------------
# output helpers

def emit(obj, fmt: str, table=None):
    if fmt == "table" and table is not None:
        print(table(obj))
    else:
        print(json.dumps(obj, indent=1, sort_keys=True, default=str))


def term_record(t: S.Term):
    v = S.term_vector(t)
    return t.to_json(vector=v.as_dict())


def event_record(e: S.MoveEvent):
    return {"index": e.index, "kind": e.kind, "sign": e.sign, "location": e.location,
            "local_type": e.local_type, "d_colors": list(e.d_colors), "d_class": e.d_class,
            "middle": e.roles.get("middle")}


def terms_table(obj):
    rows = [f"moves: {obj['contributing']} contributing of {len(obj['events'])}; "
            f"terms: {len(obj['terms'])}"]
    for t in obj["terms"]:
        inv = t["invariants"]
        pv = t["provenance"]
        lk = ", ".join(f"{k}={v}" for k, v in sorted(inv["linking"].items()))
        ents = ", ".join(f"{k}: {v}" for k, v in inv["entries"].items() if "-" not in k)
        rows.append(f"{t['coefficient']:+d}  {pv['scan']} ev{pv['event']} "
                    f"t{pv['local_type']} {pv['smoothing']}  [{lk}]  {ents}")
    return "\n".join(rows)


def value_record(v: S.CocycleValue, traced=None):
    return {"contributing": sum(1 for e in v.events if e.contributing),
            "events": [event_record(e) for e in v.events],
            "terms": [term_record(t) for t in v.terms],
            **({"trace_distinguished": traced} if traced is not None else {})}


# --------------------------------------------------------------------------
# subcommands

def cmd_verify(a):
    ok = True
    if a.what == "tetrahedron":
        s = B.tetrahedron_sum(exclude=a.exclude or ())
        ok = not s
        print(f"OK: sum = 0 in B4" if ok else f"NONZERO: sum = {s} in B4")
    else:
        for edge in B.CUBE_EDGES:
            s = B.cube_edge_sum(edge)
            ok = ok and not s
            print(f"OK: edge {edge} sum = 0 in B3" if not s else f"NONZERO: edge {edge} sum = {s}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_invariants(a):
    d = main_input(a)
    if a.cabled:
        d = D.two_cable(d)
    out = {"crossings": d.n_crossings(), "components": len(d.components),
           "writhe": d.writhe(), "conway": str(I.conway(d)), "alexander": str(I.alexander(d))}
    if len(d.components) == 1:
        out["v2"] = I.v2(d)
        if d.left:
            out["one_crossings"] = S.one_crossings(d)
    else:
        out["linking"] = {f"{i}-{j}": D.linking_number(d, i, j)
                          for i in range(len(d.components))
                          for j in range(i + 1, len(d.components))}
    emit(out, a.format, lambda o: "\n".join(f"{k}: {v}" for k, v in o.items()))
    return EXIT_OK


def cmd_scan(a):
    T = main_input(a)
    p = param_from(a)
    check_size(T, p.K, a.cabled)
    v = S.evaluate(T, p, d_green="d-green" in (a.filter or []), d_class=a.d_class,
                   drop_middle_red=a.drop_middle_red, cabled=a.cabled)
    if len(v.terms) > caps()[0]:
        raise TR.ResourceError(f"{len(v.terms)} terms exceed the cap")
    if a.cancel:
        v = S.cancel_by_vector(v)
    traced = S.scan_traces(T, p, a.cabled, d_green="d-green" in (a.filter or []))
    emit(value_record(v, traced), a.format, terms_table)
    return EXIT_OK


def cmd_bracket(a):
    d1, d2 = resolve(a.first), resolve(a.second)
    for _ in range(a.curls):
        d1 = D.add_curl(d1, -1)
    check_size(d1, d2, a.cabled)
    v = S.bracket_cycle(d1, d2, cabled=a.cabled, d_class=a.d_class,
                        drop_middle_red=a.drop_middle_red)
    raw = len(v.terms)
    v = S.cancel_by_vector(v)
    rec = value_record(v)
    rec["raw_terms"] = raw
    rec["nonzero"] = bool(v.terms)
    emit(rec, a.format, terms_table)
    return EXIT_OK


def _params(a):
    return [param_from(a)]


def cmd_tree(a):
    T = main_input(a)
    mt, mx = caps()
    t = TR.build_tree(T, _params(a), a.depth, max_terms=mt, max_crossings=mx,
                      strict=a.strict, drop_middle_red=not a.keep_middle_red)
    out = t.to_json()
    out["digest"] = t.digest()
    emit(out, "json")
    return EXIT_OK


def cmd_compare(a):
    d1, d2 = resolve(a.first), resolve(a.second)
    mt, mx = caps()
    ps = _params(a)
    kw = dict(max_terms=mt, max_crossings=mx, drop_middle_red=not a.keep_middle_red)
    t1 = TR.build_tree(d1, ps, a.depth, **kw)
    t2 = TR.build_tree(d2, ps, a.depth, **kw)
    r = TR.compare(t1, t2)
    r["digests"] = [t1.digest(), t2.digest()]
    emit(r, a.format, lambda o: ("equal" if o["equal"] else "different") +
         f"\n{o['digests'][0]}\n{o['digests'][1]}")
    return EXIT_OK


def cmd_render(a):
    d = main_input(a)
    if a.cabled:
        d = D.two_cable(d)
    svg = D.render_svg(d)
    if a.output:
        with open(a.output, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


# --------------------------------------------------------------------------

def _inputs(p):
    p.add_argument("--knot", help="braid word of a long knot")
    p.add_argument("--braid", help="same as --knot")
    p.add_argument("--dt", help="DT code of a knot")
    p.add_argument("--pd", help="PD code")
    p.add_argument("--name", help="built-in diagram: " + ", ".join(list(NAMED_BRAIDS) + list(NAMED_EXTRA)))
    p.add_argument("--file", help="file holding a diagram source")


def _scan_opts(p, filters=True):
    p.add_argument("--aux", default="fig8", help="auxiliary long knot K")
    p.add_argument("--crossing", default="c", help="crossing of K (c = first braid-like 1-crossing)")
    p.add_argument("--side", choices=("under", "over"), default="under")
    if filters:
        p.add_argument("--filter", action="append", choices=("d-green",))
        p.add_argument("--d-class", default="any", choices=("any", "0", "1"))
        p.add_argument("--drop-middle-red", action="store_true")
        p.add_argument("--cancel", action="store_true", help="merge terms by Alexander vector")
    else:
        p.add_argument("--keep-middle-red", action="store_true",
                       help="keep R III moves of type 3, 4, 5, 7 with red middle branch")


def parser():
    ap = argparse.ArgumentParser(prog="lcocycle", description="tangle-valued 1-cocycle on knot scans")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "table"), default="json")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, **k):
        return sub.add_parser(name, parents=[fmt], **k)

    p = add("verify", help="braid-group cancellations")
    p.add_argument("what", choices=("tetrahedron", "cube-edges"))
    p.add_argument("--exclude", action="append", choices=list(B.TETRAHEDRON_STRATA))
    p.set_defaults(fn=cmd_verify)

    p = add("invariants", help="Conway, Alexander, v2, linking numbers")
    _inputs(p)
    p.add_argument("--cabled", action="store_true")
    p.set_defaults(fn=cmd_invariants)

    p = add("scan", help="value of the cocycle on a scan")
    _inputs(p)
    _scan_opts(p)
    p.add_argument("--cabled", action="store_true")
    p.set_defaults(fn=cmd_scan)

    p = add("bracket", help="value on the bracket loop of two long knots")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--cabled", action="store_true")
    p.add_argument("--curls", type=int, default=0, help="negative curls added to the first knot")
    p.add_argument("--d-class", default="1", choices=("any", "0", "1"))
    p.add_argument("--drop-middle-red", action="store_true")
    p.set_defaults(fn=cmd_bracket)

    p = add("tree", help="Alexander tree (canonical JSON and digest)")
    _inputs(p)
    _scan_opts(p, filters=False)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--strict", action="store_true", help="fail instead of truncating")
    p.set_defaults(fn=cmd_tree)

    p = add("compare", help="compare the Alexander trees of two knots")
    p.add_argument("first")
    p.add_argument("second")
    _scan_opts(p, filters=False)
    p.add_argument("--depth", type=int, default=1)
    p.set_defaults(fn=cmd_compare)

    p = add("render", help="SVG of a diagram")
    _inputs(p)
    p.add_argument("--cabled", action="store_true")
    p.add_argument("--output", "-o")
    p.set_defaults(fn=cmd_render)
    return ap


def run(argv=None) -> int:
    ap = parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    try:
        if getattr(a, "depth", 0) < 0:
            raise ParseError("depth must be non-negative")
        return a.fn(a)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (TR.ResourceError, I.SkeinBoundError) as e:
        print(f"resource error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (S.ModelError, I.InvariantError, D.DiagramError) as e:
        print(f"model error: {e}", file=sys.stderr)
        return EXIT_MODEL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
