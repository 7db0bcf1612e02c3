"""Command-line front end.

Exit codes: 0 for a positive or neutral result, 1 when a yes/no command
answers no (decide says Distinct, rigid says not rigid, and so on),
2 for usage, parse, or validation errors.
"""

import argparse
import sys

from .decide import (
    decide,
    enumerate_equivalences,
    is_profinitely_rigid,
    is_right_angled,
    profinite_genus,
)
from .errors import GmError
from .fileformat import load_manifold, save_manifold, serialize_manifold
from .grouplib import builtin_library
from .homcount import DEFAULT_BUDGET, hom_spectrum
from .homology import (
    betti_one_rigidity_check,
    fibers_rationally_nontrivial,
    first_homology,
)
from .knots import build_exterior, parse_knot, same_knot_group
from .report import summary_lines, verdict_text, write_pair_report, write_report


def _fmt_map(mapping):
    return ",".join("%s->%s" % (k, mapping[k]) for k in sorted(mapping))


def _fmt_signs(signs):
    return ",".join("%s:%s" % (v, "+" if signs[v] > 0 else "-") for v in sorted(signs))


def _witness_lines(w):
    if w.kind == "Homeomorphic":
        h = w.witness
        return [
            "homeomorphism phi=%s signs=%s mirrored=%s"
            % (_fmt_map(h.vertex_map), _fmt_signs(h.signs), "yes" if h.mirrored else "no")
        ]
    return [
        "witness kappa=%d mod %d phi=%s signs=%s mirrored=%s scale_up=%s"
        % (
            w.kappa,
            w.modulus,
            _fmt_map(w.vertex_map),
            _fmt_signs(w.signs),
            "yes" if w.mirrored else "no",
            ",".join(sorted(w.scale_up)),
        )
    ]


def _cmd_validate(args, out):
    m = load_manifold(args.file)
    out.append(
        "ok: %d %s, %d %s, mode %s"
        % (
            len(m.pieces),
            "vertex" if len(m.pieces) == 1 else "vertices",
            len(m.edges),
            "edge" if len(m.edges) == 1 else "edges",
            m.mode,
        )
    )
    return 0


def _cmd_invariants(args, out):
    out.extend(summary_lines(load_manifold(args.file)))
    return 0


def _cmd_slope(args, out):
    m = load_manifold(args.file)
    for v in m.vertex_names():
        out.append("%s %s" % (v, m.total_slope(v)))
    return 0


def _cmd_decide(args, out):
    m, n = load_manifold(args.file1), load_manifold(args.file2)
    verdict = decide(m, n)
    out.append(verdict_text(verdict))
    if args.all_witnesses:
        for w in enumerate_equivalences(m, n):
            out.extend(_witness_lines(w))
    return 1 if verdict.kind == "Distinct" else 0


def _cmd_rigid(args, out):
    rigid, reason = is_profinitely_rigid(load_manifold(args.file))
    if rigid:
        out.append("rigid: %s" % reason)
        return 0
    out.append("not rigid: %s" % reason)
    return 1


def _cmd_genus(args, out):
    m = load_manifold(args.file)
    members = profinite_genus(m)
    out.append("profinite genus size %d" % len(members))
    return 0


def _cmd_rightangled(args, out):
    if is_right_angled(load_manifold(args.file)):
        out.append("right-angled: yes")
        return 0
    out.append("right-angled: no")
    return 1


def _cmd_h1(args, out):
    out.append(str(first_homology(load_manifold(args.file))))
    return 0


def _cmd_fibred(args, out):
    m = load_manifold(args.file)
    ok = fibers_rationally_nontrivial(m)
    out.append("candidate fibred: %s" % ("yes" if ok else "no"))
    if m.mode == "closed" and ok and first_homology(m).betti == 1:
        report = betti_one_rigidity_check(m)
        out.extend(report.lines())
        ok = report.passed
    return 0 if ok else 1


def _cmd_knot(args, out):
    if args.action == "build":
        m = build_exterior(parse_knot(args.expr))
        if args.output:
            save_manifold(m, args.output)
            out.append("wrote %s" % args.output)
        else:
            out.append(serialize_manifold(m).rstrip("\n"))
        return 0
    same = same_knot_group(parse_knot(args.expr), parse_knot(args.expr2))
    out.append("same knot group: %s" % ("yes" if same else "no"))
    return 0 if same else 1


def _cmd_homcount(args, out):
    m = load_manifold(args.file)
    library = builtin_library()
    names = [n for chunk in args.groups for n in chunk.split(",") if n]
    groups = []
    for name in names:
        if name not in library:
            raise GmError("unknown group %r (library has %d groups)" % (name, len(library)))
        groups.append(library[name])
    spectrum = hom_spectrum(m, groups, budget=args.budget)
    for name, count in spectrum.entries:
        out.append("%s %d" % (name, count))
    return 0


def _cmd_witness(args, out):
    from .decide import verify_witness_mod

    m, n = load_manifold(args.file1), load_manifold(args.file2)
    phis = []
    for w in enumerate_equivalences(m, n):
        phi = w.vertex_map if w.kind != "Homeomorphic" else w.witness.vertex_map
        if phi not in phis:
            phis.append(phi)
    for phi in phis:
        if verify_witness_mod(m, n, phi, args.kappa, args.mod):
            out.append("verified kappa=%d mod %d phi=%s" % (args.kappa, args.mod, _fmt_map(phi)))
            return 0
    out.append("not verified kappa=%d mod %d" % (args.kappa, args.mod))
    return 1


def _cmd_report(args, out):
    m = load_manifold(args.file)
    if args.file2:
        paths = write_pair_report(m, load_manifold(args.file2), args.out)
    else:
        paths = write_report(m, args.out)
    for p in paths:
        out.append("wrote %s" % p)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gmrigid",
        description="Graph-manifold invariants and profinite comparison.",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        metavar="N",
        help="worker count; the solvers are single-threaded, so this is accepted and unused",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a manifold file")
    p.add_argument("file")
    p.set_defaults(run=_cmd_validate)

    p = sub.add_parser("invariants", help="print the invariant summary")
    p.add_argument("file")
    p.set_defaults(run=_cmd_invariants)

    p = sub.add_parser("slope", help="print per-vertex total slopes")
    p.add_argument("file")
    p.set_defaults(run=_cmd_slope)

    p = sub.add_parser("decide", help="compare two closed manifolds")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--all-witnesses", action="store_true", dest="all_witnesses")
    p.set_defaults(run=_cmd_decide)

    p = sub.add_parser("rigid", help="profinite rigidity of a closed manifold")
    p.add_argument("file")
    p.set_defaults(run=_cmd_rigid)

    p = sub.add_parser("genus", help="size of the profinite genus")
    p.add_argument("file")
    p.set_defaults(run=_cmd_genus)

    p = sub.add_parser("rightangled", help="right-angled test")
    p.add_argument("file")
    p.set_defaults(run=_cmd_rightangled)

    p = sub.add_parser("h1", help="first homology")
    p.add_argument("file")
    p.set_defaults(run=_cmd_h1)

    p = sub.add_parser("fibred", help="candidate-fibred test, with the betti-one checks")
    p.add_argument("file")
    p.set_defaults(run=_cmd_fibred)

    p = sub.add_parser("knot", help="build or compare graph-knot exteriors")
    knot_sub = p.add_subparsers(dest="action", required=True)
    b = knot_sub.add_parser("build", help="build the exterior of a knot expression")
    b.add_argument("expr")
    b.add_argument("-o", "--output")
    b.set_defaults(run=_cmd_knot)
    c = knot_sub.add_parser("compare", help="compare two knot expressions")
    c.add_argument("expr")
    c.add_argument("expr2")
    c.set_defaults(run=_cmd_knot)

    p = sub.add_parser("homcount", help="count homomorphisms to finite groups")
    p.add_argument("file")
    p.add_argument("--groups", action="append", required=True, metavar="NAME[,NAME]*")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(run=_cmd_homcount)

    p = sub.add_parser("witness", help="re-verify an equivalence at a modulus")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.set_defaults(run=_cmd_witness)

    p = sub.add_parser("report", help="write CSV, summary, and figure files")
    p.add_argument("file")
    p.add_argument("file2", nargs="?")
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(run=_cmd_report)

    return parser


def run_command(argv):
    """Run one command; returns (exit code, list of output lines)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return (2 if err.code else 0), []
    out = []
    try:
        code = args.run(args, out)
    except GmError as err:
        out.append("error: %s" % err)
        return 2, out
    except OSError as err:
        out.append("error: %s" % err)
        return 2, out
    return code, out


def main(argv=None):
    code, lines = run_command(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if code == 2 else sys.stdout
    for line in lines:
        print(line, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
