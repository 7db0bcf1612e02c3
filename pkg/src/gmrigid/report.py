"""File reports: delimited tables, a summary, and a graph figure.

Everything written here is deterministic for a fixed input, including
the PNG (fixed layout, fixed metadata, Agg backend).  The pair report
re-verifies the verdict's supporting data so a surprising answer can be
diagnosed from the files alone.
"""

import csv
import math
import os

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .decide import decide, enumerate_equivalences, is_right_angled
from .homology import fibers_rationally_nontrivial, first_homology


def _cones_text(piece):
    return ",".join("(%d,%d)" % (c.p, c.q) for c in piece.cones)


def vertex_rows(m):
    rows = [["vertex", "genus", "slots", "cones", "total_slope"]]
    for v in m.vertex_names():
        p = m.pieces[v]
        rows.append([v, p.genus, p.boundary_count, _cones_text(p), str(m.total_slope(v))])
    return rows


def edge_rows(m):
    rows = [["index", "end0", "end1", "alpha", "beta", "gamma", "delta"]]
    for i, e in enumerate(m.edges):
        rows.append(
            ["%d" % i, "%s.%d" % (e.v0, e.s0), "%s.%d" % (e.v1, e.s1)]
            + list(e.glue.entries())
        )
    return rows


def summary_lines(m):
    """Human-readable invariant summary, one fact per line."""
    out = ["mode %s" % m.mode]
    if m.mode == "knot":
        out.append("root %s.%d" % m.root())
    for v in m.vertex_names():
        p = m.pieces[v]
        cones = " cones=" + _cones_text(p) if p.cones else ""
        out.append(
            "vertex %s genus=%d%s slots=%d slope=%s"
            % (v, p.genus, cones, p.boundary_count, m.total_slope(v))
        )
    for i, e in enumerate(m.edges):
        out.append(
            "edge %d %s.%d -- %s.%d gamma=%d"
            % (i, e.v0, e.s0, e.v1, e.s1, e.glue.gamma)
        )
    out.append("first homology %s" % first_homology(m))
    if m.mode == "closed":
        out.append(
            "candidate fibred %s"
            % ("yes" if fibers_rationally_nontrivial(m) else "no")
        )
        out.append("bipartite %s" % ("yes" if m.is_bipartite() is not None else "no"))
        out.append("right angled %s" % ("yes" if is_right_angled(m) else "no"))
    return out


# ---------------------------------------------------------------------------
# Figure


def _positions(names):
    n = len(names)
    if n == 1:
        return {names[0]: (0.0, 0.0)}
    pos = {}
    for i, v in enumerate(names):
        angle = 2 * math.pi * i / n + math.pi / 2
        pos[v] = (math.cos(angle), math.sin(angle))
    return pos


def draw_graph(m, path):
    """Render the decomposition graph to a PNG file."""
    names = m.vertex_names()
    pos = _positions(names)
    fig = Figure(figsize=(6.4, 6.4), dpi=120)
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(111)

    groups = {}
    for i, e in enumerate(m.edges):
        groups.setdefault(frozenset((e.v0, e.v1)), []).append(i)
    for pair, indices in sorted(groups.items(), key=lambda kv: kv[1]):
        for rank, i in enumerate(indices):
            e = m.edges[i]
            x0, y0 = pos[e.v0]
            x1, y1 = pos[e.v1]
            if e.is_loop():
                # Loop drawn as a small circle pushed away from the origin.
                r = math.hypot(x0, y0) or 1.0
                ox, oy = x0 / r, y0 / r
                cx, cy = x0 + 0.22 * ox, y0 + 0.22 * oy
                loop = [
                    (cx + 0.14 * math.cos(t * math.pi / 12),
                     cy + 0.14 * math.sin(t * math.pi / 12))
                    for t in range(25)
                ]
                ax.plot(*zip(*loop), color="0.3", lw=1.2, zorder=1)
                lx, ly = cx + 0.2 * ox, cy + 0.2 * oy
            else:
                bend = 0.14 * (rank - (len(indices) - 1) / 2)
                mx, my = (x0 + x1) / 2, (y0 + y1) / 2
                dx, dy = x1 - x0, y1 - y0
                norm = math.hypot(dx, dy) or 1.0
                px, py = -dy / norm, dx / norm
                mx, my = mx + bend * px, my + bend * py
                ax.plot([x0, mx, x1], [y0, my, y1], color="0.3", lw=1.2, zorder=1)
                lx, ly = mx + 0.07 * px, my + 0.07 * py
            ax.annotate(
                "e%d gamma=%d" % (i, e.glue.gamma), (lx, ly),
                fontsize=8, ha="center", va="center", color="0.25",
            )

    if m.mode == "knot":
        rv, rs = m.root()
        x, y = pos[rv]
        r = math.hypot(x, y) or 1.0
        ax.plot([x, x + 0.35 * x / r], [y, y + 0.35 * y / r],
                color="0.3", lw=1.2, ls="--", zorder=1)
        ax.annotate("root .%d" % rs, (x + 0.45 * x / r, y + 0.45 * y / r),
                    fontsize=8, ha="center", va="center", color="0.25")

    for v in names:
        x, y = pos[v]
        p = m.pieces[v]
        ax.plot([x], [y], marker="o", markersize=16, color="#4878a8", zorder=2)
        ax.annotate(v, (x, y), fontsize=9, ha="center", va="center",
                    color="white", zorder=3)
        detail = "g=%d" % p.genus
        if p.cones:
            detail += " " + _cones_text(p)
        ax.annotate(detail, (x, y - 0.17), fontsize=8, ha="center", va="top",
                    color="0.15", zorder=3)

    ax.set_xlim(-1.7, 1.7)
    ax.set_ylim(-1.7, 1.7)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, metadata={"Software": "gmrigid"})


# ---------------------------------------------------------------------------
# Writers


def _write_csv(path, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        csv.writer(fh, lineterminator="\n").writerows(rows)


def _write_lines(path, lines):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def write_report(m, outdir, prefix=""):
    """Write vertices/edges CSVs, a summary, and the graph PNG.

    Returns the list of paths written.
    """
    os.makedirs(outdir, exist_ok=True)
    paths = []

    def target(name):
        paths.append(os.path.join(outdir, prefix + name))
        return paths[-1]

    _write_csv(target("vertices.csv"), vertex_rows(m))
    _write_csv(target("edges.csv"), edge_rows(m))
    _write_lines(target("summary.txt"), summary_lines(m))
    draw_graph(m, target("graph.png"))
    return paths


def verdict_text(verdict):
    """One-line report form of a decide() verdict."""
    if verdict.kind == "ProfinitelyEquivalent":
        return "ProfinitelyEquivalent kappa=%d mod %d" % (verdict.kappa, verdict.modulus)
    if verdict.kind == "Distinct":
        return "Distinct %s" % verdict.reason
    return "Homeomorphic"


def pair_report_lines(m, n):
    """Verdict plus the data it rests on: slopes, gamma multiset, kappas."""
    verdict = decide(m, n)
    out = [verdict_text(verdict)]
    for tag, mm in (("left", m), ("right", n)):
        out.append(
            "%s slopes %s" % (tag, " ".join(
                "%s=%s" % (v, mm.total_slope(v)) for v in mm.vertex_names()))
        )
    for tag, mm in (("left", m), ("right", n)):
        gammas = sorted(abs(e.glue.gamma) for e in mm.edges)
        out.append("%s gamma multiset %s" % (tag, ",".join(map(str, gammas))))
    if verdict.kind == "ProfinitelyEquivalent":
        kappas = sorted(
            {w.kappa for w in enumerate_equivalences(m, n) if w.kappa is not None}
        )
        out.append(
            "kappa set {%s} mod %d" % (",".join(map(str, kappas)), verdict.modulus)
        )
    return out


def write_pair_report(m, n, outdir):
    os.makedirs(outdir, exist_ok=True)
    paths = write_report(m, outdir, prefix="left_")
    paths += write_report(n, outdir, prefix="right_")
    path = os.path.join(outdir, "decide.txt")
    _write_lines(path, pair_report_lines(m, n))
    paths.append(path)
    return paths
