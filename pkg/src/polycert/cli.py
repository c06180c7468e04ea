"""Command line driver.

    polycert generate cube 3 --out cube3.poly
    polycert enumerate cube3.poly --out cube3.bundle
    polycert certify cube3.bundle
    polycert diameter cube3.bundle [--exact]
    polycert hirsch cube3.bundle

Exit codes: 0 on success (for hirsch: on a completed audit, whether the
bound holds or not), 1 when enumeration or a verification stage fails,
2 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import sys

from . import bundle as bundle_io
from .instances import IneFormatError, InstanceSpec, build, load_ine
from .polytope import HPolytope, PolyFormatError, load_poly, save_poly
from .prover import EnumerationError, build_certificates
from .verifier import Stage, certify_stages, diameter_lower_bound, \
    exact_diameter, hirsch_audit


def _err(msg: str) -> None:
    print(f"polycert: {msg}", file=sys.stderr)


def _load_polytope(path: str) -> HPolytope:
    if path.endswith(".ine"):
        return load_ine(path)
    return load_poly(path)


def _load_bundle(dirpath: str):
    """Returns (bundle, exit code); on failure the bundle is None and the
    failure has already been reported."""
    try:
        return bundle_io.load_bundle(dirpath), 0
    except bundle_io.MissingBundleFileError as e:
        # incomplete certificate: a verification failure, not an I/O crash
        print(f"{Stage.WELL_FORMED}: FAIL ({e})")
        return None, 1
    except bundle_io.BundleFormatError as e:
        _err(str(e))
        return None, 2
    except OSError as e:
        _err(str(e))
        return None, 2


def cmd_generate(args) -> int:
    spec = InstanceSpec(args.family, args.params[0],
                        args.params[1] if len(args.params) > 1 else 0)
    want = 2 if args.family == "cyclic" else 1
    if len(args.params) != want:
        _err(f"{args.family} takes {want} size parameter(s)")
        return 2
    try:
        P, _ = build(spec)
    except ValueError as e:
        _err(str(e))
        return 2
    out = args.out or (f"{spec.family}{spec.n}.poly" if not spec.p
                       else f"{spec.family}{spec.n}_{spec.p}.poly")
    save_poly(P, out)
    print(f"{out}: {P.m} inequalities, {P.n} variables")
    return 0


def _parse_basis(text: str, m: int, n: int):
    try:
        I = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ValueError(f"--basis needs comma-separated integers, got {text!r}")
    from .polytope import check_basis
    return check_basis(tuple(sorted(I)), m, n)


def cmd_enumerate(args) -> int:
    try:
        P = _load_polytope(args.poly)
    except (PolyFormatError, IneFormatError, OSError) as e:
        _err(str(e))
        return 2
    hint = None
    if args.basis:
        try:
            hint = _parse_basis(args.basis, P.m, P.n)
        except ValueError as e:
            _err(str(e))
            return 2
    try:
        C = build_certificates(P, basis_hint=hint, start=args.start)
    except EnumerationError as e:
        _err(f"enumeration failed: {e}")
        return 1
    except ValueError as e:
        _err(str(e))
        return 2
    bundle_io.write_bundle(C, args.out)
    print(f"lex graph: {len(C.lexgraph.adj)} bases, "
          f"{C.lexgraph.edge_count()} edges")
    print(f"{len(C.vertgraph.adj)} vertices, {C.vertgraph.edge_count()} edges")
    print(f"bundle written to {args.out}")
    return 0


def cmd_certify(args) -> int:
    C, rc = _load_bundle(args.bundle)
    if C is None:
        return rc
    results = certify_stages(C, threads=args.threads)
    ok = True
    for r in results:
        mark = "PASS" if r.passed else f"FAIL ({r.detail})"
        print(f"{r.stage}: {mark} ({r.seconds:.3f}s)")
        ok = ok and r.passed
    print(f"result={'pass' if ok else 'fail'}")
    print(f"m={C.polytope.m}")
    print(f"n={C.polytope.n}")
    print(f"vertices={len(C.vertgraph.adj)}")
    print(f"edges={C.vertgraph.edge_count()}")
    if ok:
        print(f"diameter_lb={diameter_lower_bound(C)}")
    return 0 if ok else 1


def cmd_diameter(args) -> int:
    C, rc = _load_bundle(args.bundle)
    if C is None:
        return rc
    try:
        if args.exact:
            print(f"diameter = {exact_diameter(C)}")
        else:
            print(f"diameter >= {diameter_lower_bound(C)}")
    except ValueError as e:
        _err(str(e))
        return 1
    return 0


def cmd_hirsch(args) -> int:
    C, rc = _load_bundle(args.bundle)
    if C is None:
        return rc
    v = hirsch_audit(C, threads=args.threads)
    if v.stage != Stage.HIRSCH:
        print(f"{v.stage}: FAIL ({v.detail})")
        return 1
    d = v.numbers["diameter_lb"]
    m, n = v.numbers["m"], v.numbers["n"]
    word = (f"VIOLATED: {d} > {m - n}" if v.passed else "HOLDS")
    print(f"diameter >= {d}, facets <= {m}, dim = {n}, "
          f"Hirsch bound m-n = {m - n}, {word}")
    return 0


def main(argv=None) -> int:
    p = argparse.ArgumentParser(
        prog="polycert",
        description="Polytope vertex-edge graph enumeration with "
                    "independently checked certificates.")
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("generate", help="write a built-in instance as .poly")
    g.add_argument("family", choices=["cube", "cross", "cyclic"])
    g.add_argument("params", nargs="+", type=int,
                   help="n (cube, cross) or n p (cyclic)")
    g.add_argument("--out", help="output path (default <family><sizes>.poly)")
    g.set_defaults(fn=cmd_generate)

    e = sub.add_parser("enumerate",
                       help="enumerate the graph and write a bundle")
    e.add_argument("poly", help="input .poly (or lrs-style .ine) file")
    e.add_argument("--out", required=True, help="bundle directory to write")
    e.add_argument("--basis", help="starting basis, e.g. 0,2,4")
    e.add_argument("--start", type=int,
                   help="BFS start vertex (default: a max-eccentricity one)")
    e.add_argument("--threads", type=int, default=1)
    e.set_defaults(fn=cmd_enumerate)

    c = sub.add_parser("certify", help="re-check a bundle from scratch")
    c.add_argument("bundle")
    c.add_argument("--threads", type=int, default=1)
    c.set_defaults(fn=cmd_certify)

    d = sub.add_parser("diameter", help="certified lower bound or exact value")
    d.add_argument("bundle")
    d.add_argument("--exact", action="store_true",
                   help="all-sources BFS instead of the start vertex bound")
    d.set_defaults(fn=cmd_diameter)

    h = sub.add_parser("hirsch", help="certify, then audit diameter vs m-n")
    h.add_argument("bundle")
    h.add_argument("--threads", type=int, default=1)
    h.set_defaults(fn=cmd_hirsch)

    args = p.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
