"""
Command-line entry point:  grasstwist {plabic,dimer,web,quiver,verify} ...

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors
(argparse's own convention).  GRASSTWIST_SEED and GRASSTWIST_PRIME set the
defaults for --seed and --prime.
"""

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations

from .errors import GrasstwistError
from .field import env_prime, env_seed, is_probable_prime


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------
def _ints(text):
    text = text.strip()
    if "," in text:
        return tuple(int(t) for t in text.split(",") if t)
    return tuple(int(ch) for ch in text)


def _prime(text):
    p = int(text, 0)
    if not is_probable_prime(p):
        raise argparse.ArgumentTypeError("%s is not prime" % text)
    return p


def _graph(args):
    from .harness import load_graph
    from .plabic import build_top_cell
    if args.graph:
        return load_graph(args.graph)
    if args.k and args.n:
        return build_top_cell(args.k, args.n)
    raise SystemExit("error: give --graph or both --k and --n")


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _graph_opts(p):
    p.add_argument("--graph", help="graph JSON file or packaged fixture name (gr37, gr38_appendix)")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)


# ---------------------------------------------------------------------------
# plabic
# ---------------------------------------------------------------------------
def cmd_plabic(args):
    from .plabic import build_top_cell, square_faces, square_move
    if args.action == "build":
        G = build_top_cell(args.k, args.n)
        _emit(G.to_json(indent=1) + "\n", args.out)
        return 0
    G = _graph(args)
    if args.action == "validate":
        G.validate()
        G.face_labels   # raises NotReduced on a bad labelling
        print("ok: %s, k=%d n=%d, %d vertices, %d edges, %d faces"
              % (G.name, G.k, G.n, len(G.colors), len(G.edges), len(G.faces)))
        return 0
    if args.action == "labels":
        squares = {f.id for f in square_faces(G)}
        for f in G.faces:
            kind = "boundary" if f.is_boundary else ("square" if f.id in squares else "interior")
            print("%s %s" % ("".join(map(str, G.face_labels[f.id])), kind))
        return 0
    if args.action == "square-move":
        if not args.face:
            raise SystemExit("error: square-move needs --face")
        H = square_move(G, G.face_by_label(_ints(args.face)))
        _emit(H.to_json(indent=1) + "\n", args.out)
        return 0
    return 2


# ---------------------------------------------------------------------------
# dimer
# ---------------------------------------------------------------------------
def cmd_dimer(args):
    from .dimer import DimerModel
    G = _graph(args)
    dm = DimerModel(G)
    if args.action == "enumerate":
        if not args.boundary:
            raise SystemExit("error: enumerate needs --boundary")
        J = _ints(args.boundary)
        if args.fold == 1:
            Ds = dm.enumerate(J)
        else:
            from collections import Counter
            Ds = dm.enumerate_multi(args.fold, Counter(J))
        for D in Ds:
            print("%s\t%s" % (D.serialize(), dm.face_weight(D)))
        return 0
    if args.action == "twist":
        Js = [_ints(args.boundary)] if args.boundary else \
            list(combinations(range(1, G.n + 1), G.k))
        for J in Js:
            print("%s\t%d\t%s" % ("".join(map(str, J)), len(dm.enumerate(J)), dm.twist_partition(J)))
        return 0
    return 2


# ---------------------------------------------------------------------------
# web
# ---------------------------------------------------------------------------
def _read_web(args):
    from .web import Web
    text = args.web
    if args.file:
        with open(args.file) as fh:
            text = fh.read().strip()
    if not text:
        raise SystemExit("error: give --web TEXT or --file F")
    return Web.parse(text)


def cmd_web(args):
    from . import web
    if args.action == "enumerate":
        if not args.boundary:
            raise SystemExit("error: enumerate needs --boundary")
        ws = web.enumerate_nonelliptic(args.boundary.upper())
        if args.paths == "none":
            ws = [W for W in ws if not W.paths()]
        elif args.paths == "only":
            ws = [W for W in ws if W.paths()]
        if args.up_to:
            ws = web.dihedral_representatives(ws, args.up_to)
        for W in ws:
            print("%s\t%s" % (W.serialize(), W.describe()))
        print("# %d webs" % len(ws), file=sys.stderr)
        return 0
    if args.action == "reduce":
        res = web.skein_reduce(_read_web(args))
        for W, c in res.items():
            print("%d\t%s\t%s" % (c, W.serialize(), W.describe()))
        return 0
    if args.action == "color-count":
        W = _read_web(args)
        if not args.triple:
            raise SystemExit("error: color-count needs --triple I/J/K")
        I, J, K = (_ints(t) for t in args.triple.split("/"))
        diag = web.coloring_diagnostic(W, I, J, K)
        if diag:
            print("0\t# %s" % diag)
        else:
            print(web.coloring_count(W, I, J, K))
        return 0
    if args.action == "from-dimer":
        from .dimer import MultiDimer
        G = _graph(args)
        if not args.dimer:
            raise SystemExit("error: from-dimer needs --dimer")
        edges = []
        for tok in args.dimer.split():
            e, _, t = tok.partition("x")
            edges.extend([int(e)] * (int(t) if t else 1))
        D = MultiDimer.from_edges(edges, args.fold)
        if D.m == 3:
            W = web.web_from_triple_dimer(G, D)
            print("%s\t%s" % (W.serialize(), W.describe()))
        else:
            M = web.matching_from_double_dimer(G, D)
            print("%s\tcycles=%d" % (M, M.cycles))
        return 0
    if args.action == "kk":
        if args.all:
            for top, bottom in web.standard_two_row_tableaux(args.all):
                print("%s/%s\t%s" % (",".join(map(str, top)), ",".join(map(str, bottom)),
                                     web.kk_two_row(top, bottom)))
            return 0
        if not (args.top and args.bottom):
            raise SystemExit("error: kk needs --top and --bottom (or --all M)")
        print(web.kk_two_row(_ints(args.top), _ints(args.bottom)))
        return 0
    return 2


# ---------------------------------------------------------------------------
# quiver
# ---------------------------------------------------------------------------
def cmd_quiver(args):
    import csv
    from .quiver import explore
    from .field import PrimeField, make_rng
    r = explore(args.k, args.n, F=PrimeField(args.prime), rng=make_rng(args.seed),
                max_seeds=args.max_seeds, identify_variables=args.identify)
    out = open(args.out, "w") if args.out else sys.stdout
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["id", "frozen", "identification", "orbit_representative"])
    for i, row in enumerate(r["variables"], 1):
        E = row["identification"]
        if E is None:
            ident, rep = "" if not args.identify else "unidentified", ""
        else:
            ident = str(E)
            rep = "%s^{%s}" % (E.kind, "".join(map(str, E.support))) if E.kind != "Pluecker" else str(E)
        w.writerow([i, int(row["frozen"]), ident, rep])
    if args.out:
        out.close()
    print("# seeds=%d variables=%d mutable=%d frozen=%d pluecker_mutable=%d non_pluecker=%d unidentified=%d"
          % (r["seeds"], r["total"], r["mutable"], r["frozen"], r["pluecker_mutable"],
             r["non_pluecker"], r["unidentified"]), file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------
def _suite_job(job):
    from .harness import run_suite
    name, seed, prime, k, n, backend = job
    return run_suite(name, seed=seed, prime=prime, k=k, n=n, backend=backend)


def cmd_verify(args):
    from .harness import SUITES, VerificationReport
    names = list(SUITES) if args.suite == "all" else [args.suite]
    jobs = [(s, args.seed, args.prime, args.k, args.n, args.backend) for s in names]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            parts = list(ex.map(_suite_job, jobs))     # ordered like `jobs`
    else:
        parts = [_suite_job(j) for j in jobs]
    rep = VerificationReport(args.seed, args.prime)
    for p in parts:
        rep.extend(p)
    text = rep.to_csv(args.timings) if args.format == "csv" else rep.to_text(args.timings)
    _emit(text, args.out)
    n = rep.counts()
    print("# %d pass, %d fail, %d skipped" % (n["PASS"], n["FAIL"], n["SKIPPED"]), file=sys.stderr)
    return 0 if rep.passed else 1


# ---------------------------------------------------------------------------
def build_parser():
    p = argparse.ArgumentParser(prog="grasstwist",
                                description="Twists of Grassmannian cluster variables via dimers and webs.")
    p.add_argument("--seed", type=int, default=None, help="random seed (default: $GRASSTWIST_SEED or built-in)")
    p.add_argument("--prime", type=_prime, default=None, help="prime modulus (default: $GRASSTWIST_PRIME or 2^61-1)")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("plabic", help="build, validate and relabel plabic graphs")
    q.add_argument("action", choices=["build", "validate", "labels", "square-move"])
    _graph_opts(q)
    q.add_argument("--face", help="face label for square-move, e.g. 246")
    q.add_argument("--out")
    q.set_defaults(func=cmd_plabic)

    q = sub.add_parser("dimer", help="dimer enumeration and twist partition functions")
    q.add_argument("action", choices=["enumerate", "twist"])
    _graph_opts(q)
    q.add_argument("--boundary", help="boundary labels, e.g. 3,4,6 (a multiset for --fold > 1)")
    q.add_argument("--fold", type=int, default=1)
    q.add_argument("--all-J", action="store_true", help="twist: every k-subset (the default)")
    q.set_defaults(func=cmd_dimer)

    q = sub.add_parser("web", help="webs: enumeration, reduction, colorings, dimers, tableaux")
    q.add_argument("action", choices=["enumerate", "reduce", "color-count", "from-dimer", "kk"])
    _graph_opts(q)
    q.add_argument("--boundary", help="boundary colors, e.g. BBBBBBBW")
    q.add_argument("--paths", choices=["any", "none", "only"], default="any",
                   help="enumerate: keep webs with/without boundary-to-boundary paths")
    q.add_argument("--up-to", choices=["rotation", "dihedral"], help="enumerate: one web per orbit")
    q.add_argument("--web", help="web in one-line text form")
    q.add_argument("--file", help="file holding a web in text form")
    q.add_argument("--triple", help="color-count: I/J/K, e.g. 134/258/167")
    q.add_argument("--dimer", help="from-dimer: edge ids, 'ExT' for multiplicity T")
    q.add_argument("--fold", type=int, default=3)
    q.add_argument("--top", help="kk: top row")
    q.add_argument("--bottom", help="kk: bottom row")
    q.add_argument("--all", type=int, metavar="M", help="kk: every tableau with two rows of length M")
    q.set_defaults(func=cmd_web)

    q = sub.add_parser("quiver", help="mutation-class exploration")
    q.add_argument("action", choices=["explore"])
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--identify", action="store_true")
    q.add_argument("--max-seeds", type=int, default=500_000)
    q.add_argument("--out")
    q.set_defaults(func=cmd_quiver)

    q = sub.add_parser("verify", help="run verification suites")
    q.add_argument("--suite", default="all",
                   choices=["all", "thm3.2", "thm4.1", "cubic", "lemmas", "table1", "appendix", "properties"])
    q.add_argument("--k", type=int)
    q.add_argument("--n", type=int)
    q.add_argument("--backend", choices=["modular", "rational"], default="modular")
    q.add_argument("--format", choices=["structured-text", "csv"], default="structured-text")
    q.add_argument("--timings", action="store_true", help="include per-check seconds (not byte-stable)")
    q.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                   help="worker processes (default: all cores); output order does not depend on it")
    q.add_argument("--out")
    q.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is None:
        args.seed = env_seed()
    if args.prime is None:
        try:
            args.prime = env_prime()
        except ValueError as ex:
            parser.error(str(ex))
    try:
        return args.func(args)
    except (GrasstwistError, KeyError, ValueError) as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
