"""Command-line entry point.

Every subcommand writes its primary artifact atomically and drops a JSON
metadata sidecar (`<output>.meta.json`) recording tool version, config
and seed, so runs are reproducible byte for byte.

Exit codes: 0 success, 2 I/O, 3 precondition violation, 4 numerical failure.
"""

import argparse
import io
import json
import os
import sys
import tempfile

from . import __version__
from .backbones import (
    BackboneKind,
    Backbone,
    backbone_graph,
    edge_betweenness,
    embeddedness_scores,
    maximum_spanning_tree,
    top_m_edge_backbone,
)
from .centrality import Measure, compute, top_k
from .coauthor import (
    Binning,
    CountingScheme,
    build_coauthorship,
    distribution_report,
    filter_years,
    parse_expr,
    read_authors_csv,
    read_papers_csv,
)
from .convexity import convexity
from .errors import ConvergenceError, ConvexaError, DisconnectedError, InputError
from .graph import read_edge_tsv, write_edge_tsv
from .netstats import MEASURES, correlation_matrix, descriptive_stats
from .skeleton import (
    Objective,
    SkeletonResult,
    TieBreak,
    extract_convex_skeleton,
    retained_weight_fraction,
    skeleton_graph,
)
from .synth import GeneratorSpec, Kind, generate

DEFAULT_SEED = 42

_OBJECTIVES = {
    "transitivity": Objective.GLOBAL_TRANSITIVITY,
    "average_local": Objective.AVERAGE_LOCAL,
}
_TIE_BREAKS = {"lex": TieBreak.LEX_SMALLEST, "random": TieBreak.RANDOM}
_SCHEMES = {s.value: s for s in CountingScheme}
_MEASURE_BY_NAME = {m.value: m for m in Measure}
_BACKBONE_NAMES = {
    "skeleton": BackboneKind.CONVEX_SKELETON,
    "mst": BackboneKind.MAX_SPANNING_TREE,
    "betweenness": BackboneKind.HIGH_BETWEENNESS,
    "embeddedness": BackboneKind.HIGH_EMBEDDEDNESS,
}


def fmt(x):
    """Deterministic number formatting for CSV cells."""
    if x is None:
        return "NA"
    if isinstance(x, float):
        return repr(x) if x != int(x) else str(int(x))
    return str(x)


def atomic_write(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".convexa-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_meta(path, subcommand, config):
    meta = {
        "tool": "convexa",
        "version": __version__,
        "subcommand": subcommand,
        "config": config,
    }
    atomic_write(path + ".meta.json", json.dumps(meta, sort_keys=True, indent=2) + "\n")


def emit(args, subcommand, config, csv_text, json_obj):
    if args.format == "json":
        atomic_write(args.output, json.dumps(json_obj, sort_keys=True, indent=2) + "\n")
    else:
        atomic_write(args.output, csv_text)
    write_meta(args.output, subcommand, config)


def _seed_default():
    env = os.environ.get("CONVEXA_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"CONVEXA_SEED must be an integer, got {env!r}")
    return DEFAULT_SEED


def _load_graph(path):
    return read_edge_tsv(path)


def _resolve_seed(args):
    return args.seed if args.seed is not None else _seed_default()


# ---------------------------------------------------------------------------
# subcommands

def cmd_convexity(args):
    g = _load_graph(args.input)
    seed = _resolve_seed(args)
    score = convexity(g, runs=args.runs, seed=seed)
    lines = ["t,s_t"]
    for t, s in enumerate(score.profile.s):
        lines.append(f"{t},{fmt(float(s))}")
    config = {"input": args.input, "runs": args.runs, "seed": seed, "x": score.x}
    emit(
        args,
        "convexity",
        config,
        "\n".join(lines) + "\n",
        {
            "x": score.x,
            "runs": args.runs,
            "seed": seed,
            "profile": [float(s) for s in score.profile.s],
        },
    )
    print(f"convexity X = {fmt(score.x)} ({args.runs} runs, seed {seed})")
    return 0


def _skeleton_of(g, args, seed):
    return extract_convex_skeleton(
        g,
        objective=_OBJECTIVES[args.objective],
        tie_break=_TIE_BREAKS[args.tie_break],
        seed=seed,
    )


def cmd_skeleton(args):
    g = _load_graph(args.input)
    seed = _resolve_seed(args)
    sk = _skeleton_of(g, args, seed)
    ef, wf = retained_weight_fraction(g, sk)
    buf = io.StringIO()
    write_edge_tsv(g, buf, flags=sk.kept, flag_name="in_skeleton")
    stats = descriptive_stats(skeleton_graph(g, sk), convexity_runs=args.runs, seed=seed)
    config = {
        "input": args.input,
        "objective": args.objective,
        "tie_break": args.tie_break,
        "seed": seed,
        "edge_fraction": ef,
        "weight_fraction": wf,
        "skeleton_stats": _stats_dict(stats),
    }
    removal_rows = ["step,u,v,objective"]
    for i, ((u, v), val) in enumerate(sk.removed, 1):
        removal_rows.append(f"{i},{u},{v},{fmt(val)}")
    if args.removal_log:
        atomic_write(args.removal_log, "\n".join(removal_rows) + "\n")
    emit(
        args,
        "skeleton",
        config,
        buf.getvalue(),
        {
            "kept": [list(g.edge_ids(e)) for e in sorted(sk.kept)],
            "removed": [[u, v, val] for (u, v), val in sk.removed],
            "edge_fraction": ef,
            "weight_fraction": wf,
            "skeleton_stats": _stats_dict(stats),
        },
    )
    print(
        f"skeleton kept {len(sk.kept)}/{g.m} edges "
        f"(edge fraction {fmt(ef)}, weight fraction {fmt(wf)})"
    )
    return 0


def _make_backbone(g, kind, args, seed):
    if kind is BackboneKind.CONVEX_SKELETON:
        sk = _skeleton_of(g, args, seed)
        return Backbone(kind, sk.kept), sk
    if kind is BackboneKind.MAX_SPANNING_TREE:
        return maximum_spanning_tree(g, tie_break=_TIE_BREAKS[args.tie_break], seed=seed), None
    m = args.m
    if m is None:
        m = len(_skeleton_of(g, args, seed).kept)
    if kind is BackboneKind.HIGH_BETWEENNESS:
        scores = edge_betweenness(g)
    else:
        scores = embeddedness_scores(g)
    return (
        top_m_edge_backbone(
            g, scores, m, kind=kind, tie_break=_TIE_BREAKS[args.tie_break], seed=seed
        ),
        None,
    )


def cmd_backbone(args):
    g = _load_graph(args.input)
    seed = _resolve_seed(args)
    kind = _BACKBONE_NAMES[args.kind]
    b, _ = _make_backbone(g, kind, args, seed)
    buf = io.StringIO()
    flag = "in_skeleton" if kind is BackboneKind.CONVEX_SKELETON else "in_backbone"
    write_edge_tsv(g, buf, flags=b.edges, flag_name=flag)
    config = {
        "input": args.input,
        "kind": args.kind,
        "m": len(b.edges),
        "seed": seed,
        "tie_break": args.tie_break,
    }
    emit(
        args,
        "backbone",
        config,
        buf.getvalue(),
        {"kind": args.kind, "edges": [list(g.edge_ids(e)) for e in sorted(b.edges)]},
    )
    print(f"backbone {args.kind}: {len(b.edges)} edges")
    return 0


def _stats_dict(s):
    return {
        "nodes": s.nodes,
        "edges": s.edges,
        "pct_lcc": s.pct_lcc,
        "mean_degree": s.mean_degree,
        "mean_distance": s.mean_distance,
        "assortativity": s.assortativity,
        "clustering": s.clustering,
        "convexity": s.convexity,
    }


_STAT_ROWS = (
    "nodes",
    "edges",
    "pct_lcc",
    "mean_degree",
    "mean_distance",
    "assortativity",
    "clustering",
    "convexity",
)


def cmd_compare(args):
    g = _load_graph(args.input)
    seed = _resolve_seed(args)
    kinds = [k.strip() for k in args.backbones.split(",") if k.strip()]
    for k in kinds:
        if k not in _BACKBONE_NAMES:
            raise InputError(f"unknown backbone kind {k!r}")
    sk = _skeleton_of(g, args, seed)
    os.makedirs(args.output_dir, exist_ok=True)
    columns = {"network": descriptive_stats(g, convexity_runs=args.runs, seed=seed)}
    backbones = {}
    for name in kinds:
        kind = _BACKBONE_NAMES[name]
        if kind is BackboneKind.CONVEX_SKELETON:
            b = Backbone(kind, sk.kept)
        elif kind is BackboneKind.MAX_SPANNING_TREE:
            b = maximum_spanning_tree(g, tie_break=_TIE_BREAKS[args.tie_break], seed=seed)
        else:
            scores = (
                edge_betweenness(g)
                if kind is BackboneKind.HIGH_BETWEENNESS
                else embeddedness_scores(g)
            )
            b = top_m_edge_backbone(
                g, scores, len(sk.kept), kind=kind,
                tie_break=_TIE_BREAKS[args.tie_break], seed=seed,
            )
        backbones[name] = b
        columns[name] = descriptive_stats(
            backbone_graph(g, b), convexity_runs=args.runs, seed=seed
        )
    header = "statistic," + ",".join(columns)
    lines = [header]
    for row in _STAT_ROWS:
        cells = [fmt(getattr(columns[c], row)) for c in columns]
        lines.append(f"{row}," + ",".join(cells))
    stats_path = os.path.join(args.output_dir, "stats.csv")
    atomic_write(stats_path, "\n".join(lines) + "\n")
    config = {
        "input": args.input,
        "backbones": kinds,
        "runs": args.runs,
        "seed": seed,
        "objective": args.objective,
        "tie_break": args.tie_break,
    }
    write_meta(stats_path, "compare", config)
    for name, b in backbones.items():
        grid = correlation_matrix(g, b)
        rows = ["row_measure,col_measure,rho,tau"]
        for row in grid:
            for cell in row:
                rows.append(
                    f"{cell.row_measure.value},{cell.col_measure.value},"
                    f"{fmt(cell.rho)},{fmt(cell.tau)}"
                )
        path = os.path.join(args.output_dir, f"corr_{name}.csv")
        atomic_write(path, "\n".join(rows) + "\n")
        write_meta(path, "compare", config)
    print(f"compare: wrote stats.csv and {len(backbones)} correlation file(s) to {args.output_dir}")
    return 0


def cmd_centrality(args):
    g = _load_graph(args.input)
    measures = (
        list(MEASURES)
        if args.measure == "all"
        else [_MEASURE_BY_NAME[args.measure]]
    )
    vecs = {m: compute(g, m) for m in measures}
    header = "node," + ",".join(m.value for m in measures)
    lines = [header]
    for node in g.ids:
        lines.append(node + "," + ",".join(fmt(vecs[m].values[node]) for m in measures))
    config = {"input": args.input, "measure": args.measure}
    emit(
        args,
        "centrality",
        config,
        "\n".join(lines) + "\n",
        {m.value: vecs[m].values for m in measures},
    )
    return 0


def cmd_rank(args):
    g = _load_graph(args.input)
    vec = compute(g, _MEASURE_BY_NAME[args.measure])
    ranked = top_k(vec, args.top)
    lines = ["rank,node,value"]
    for i, (node, value) in enumerate(ranked, 1):
        lines.append(f"{i},{node},{fmt(value)}")
    config = {"input": args.input, "measure": args.measure, "top": args.top}
    emit(
        args,
        "rank",
        config,
        "\n".join(lines) + "\n",
        {"measure": args.measure, "ranking": [[n, v] for n, v in ranked]},
    )
    return 0


def cmd_buildnet(args):
    papers = read_papers_csv(args.papers, args.paper_meta)
    papers = filter_years(papers, args.year_min, args.year_max)
    g = build_coauthorship(papers, _SCHEMES[args.scheme])
    buf = io.StringIO()
    write_edge_tsv(g, buf)
    config = {
        "papers": args.papers,
        "paper_meta": args.paper_meta,
        "scheme": args.scheme,
        "year_min": args.year_min,
        "year_max": args.year_max,
        "nodes": g.n,
        "edges": g.m,
    }
    emit(
        args,
        "buildnet",
        config,
        buf.getvalue(),
        {
            "nodes": list(g.ids),
            "edges": [
                [*g.edge_ids(e), float(g.weights[e])] for e in range(g.m)
            ],
        },
    )
    print(f"built {args.scheme}-counting network: {g.n} nodes, {g.m} edges")
    return 0


def _skeleton_from_tsv(g, path):
    """Rebuild a kept-edge set from a `u v w flag` TSV written by `skeleton`."""
    kept = set()
    removed = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise InputError(f"{path}: expected 4 tab-separated fields")
            u, v, _, flag = parts
            e = g.edge_pos(u, v)
            if flag == "1":
                kept.add(e)
            else:
                removed.append(((u, v), float("nan")))
    if len(kept) + len(removed) != g.m:
        raise InputError(f"{path}: skeleton file does not cover the graph's edges")
    return SkeletonResult(
        kept=frozenset(kept),
        removed=tuple(removed),
        objective=Objective.GLOBAL_TRANSITIVITY,
        source_m=g.m,
    )


def cmd_distributions(args):
    g = _load_graph(args.input)
    seed = _resolve_seed(args)
    if args.skeleton:
        sk = _skeleton_from_tsv(g, args.skeleton)
    else:
        sk = _skeleton_of(g, args, seed)
    authors = read_authors_csv(args.authors)
    expr = parse_expr(args.expr)
    binning = (
        Binning(width=args.bin_width, origin=args.bin_origin)
        if expr.kind != "SAME" and args.bin_width
        else Binning()
    )
    rep = distribution_report(g, sk, expr, authors, binning)
    numeric = binning.width is not None
    lines = (
        ["bin_low,bin_high,skeleton_weight,remainder_weight"]
        if numeric
        else ["category,skeleton_weight,remainder_weight"]
    )
    for label, sw, rw in zip(rep.bins, rep.skeleton_weight, rep.remainder_weight):
        if numeric:
            lines.append(f"{fmt(label[0])},{fmt(label[1])},{fmt(sw)},{fmt(rw)}")
        else:
            lines.append(f"{label},{fmt(sw)},{fmt(rw)}")
    if rep.missing_skeleton or rep.missing_remainder:
        prefix = "MISSING,," if numeric else "MISSING,"
        lines.append(prefix.rstrip(",") + f",{fmt(rep.missing_skeleton)},{fmt(rep.missing_remainder)}")
    config = {
        "input": args.input,
        "expr": str(expr),
        "bin_width": args.bin_width,
        "seed": seed,
    }
    emit(
        args,
        "distributions",
        config,
        "\n".join(lines) + "\n",
        {
            "expr": str(expr),
            "bins": [list(b) if isinstance(b, tuple) else b for b in rep.bins],
            "skeleton_weight": list(rep.skeleton_weight),
            "remainder_weight": list(rep.remainder_weight),
            "missing": [rep.missing_skeleton, rep.missing_remainder],
        },
    )
    return 0


def cmd_generate(args):
    seed = _resolve_seed(args)
    params = {}
    for key in ("n", "cliques", "smin", "smax", "rows", "cols"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    if args.p is not None:
        params["p"] = args.p
    g = generate(GeneratorSpec(Kind(args.kind), params, seed=seed))
    buf = io.StringIO()
    write_edge_tsv(g, buf)
    config = {"kind": args.kind, "params": params, "seed": seed}
    emit(
        args,
        "generate",
        config,
        buf.getvalue(),
        {"nodes": list(g.ids), "edges": [[*g.edge_ids(e)] for e in range(g.m)]},
    )
    print(f"generated {args.kind}: {g.n} nodes, {g.m} edges")
    return 0


def cmd_stats(args):
    g = _load_graph(args.input)
    seed = _resolve_seed(args)
    s = descriptive_stats(g, convexity_runs=args.runs, seed=seed)
    lines = ["statistic,value"]
    for row in _STAT_ROWS:
        lines.append(f"{row},{fmt(getattr(s, row))}")
    config = {"input": args.input, "runs": args.runs, "seed": seed}
    emit(args, "stats", config, "\n".join(lines) + "\n", _stats_dict(s))
    return 0


# ---------------------------------------------------------------------------
# argument parsing

def _add_common(p, output=True):
    p.add_argument("--seed", type=int, default=None, help="master RNG seed (default: $CONVEXA_SEED or 42)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    if output:
        p.add_argument("--output", required=True, help="output file path")


def _add_skeleton_opts(p):
    p.add_argument("--objective", choices=sorted(_OBJECTIVES), default="transitivity")
    p.add_argument("--tie-break", choices=sorted(_TIE_BREAKS), default="lex")


def build_parser():
    ap = argparse.ArgumentParser(prog="convexa", description=__doc__)
    ap.add_argument("--version", action="version", version=f"convexa {__version__}")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("convexity", help="convexity score and expansion profile")
    p.add_argument("--input", required=True)
    p.add_argument("--runs", type=int, default=100)
    _add_common(p)
    p.set_defaults(func=cmd_convexity)

    p = sub.add_parser("skeleton", help="extract a convex skeleton")
    p.add_argument("--input", required=True)
    p.add_argument("--runs", type=int, default=100, help="convexity runs for the stats row")
    p.add_argument("--removal-log", default=None, help="optional removal-log CSV path")
    _add_skeleton_opts(p)
    _add_common(p)
    p.set_defaults(func=cmd_skeleton)

    p = sub.add_parser("backbone", help="extract one backbone")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", choices=sorted(_BACKBONE_NAMES), required=True)
    p.add_argument("--m", type=int, default=None, help="edge budget for top-m kinds (default: skeleton size)")
    _add_skeleton_opts(p)
    _add_common(p)
    p.set_defaults(func=cmd_backbone)

    p = sub.add_parser("compare", help="stats table plus correlation grids")
    p.add_argument("--input", required=True)
    p.add_argument("--backbones", default="skeleton,mst,betweenness,embeddedness")
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--output-dir", required=True)
    _add_skeleton_opts(p)
    _add_common(p, output=False)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("centrality", help="centrality values for all nodes")
    p.add_argument("--input", required=True)
    p.add_argument("--measure", choices=["all"] + sorted(_MEASURE_BY_NAME), default="all")
    _add_common(p)
    p.set_defaults(func=cmd_centrality)

    p = sub.add_parser("rank", help="top-k nodes by one measure")
    p.add_argument("--input", required=True)
    p.add_argument("--measure", choices=sorted(_MEASURE_BY_NAME), required=True)
    p.add_argument("--top", type=int, default=20)
    _add_common(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("buildnet", help="co-authorship network from publication records")
    p.add_argument("--papers", required=True, help="long-form CSV: paper_id,author_id")
    p.add_argument("--paper-meta", default=None, help="CSV: paper_id,year,...")
    p.add_argument("--scheme", choices=sorted(_SCHEMES), default="fractional")
    p.add_argument("--year-min", type=int, default=None)
    p.add_argument("--year-max", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_buildnet)

    p = sub.add_parser("distributions", help="skeleton-vs-remainder attribute distributions")
    p.add_argument("--input", required=True)
    p.add_argument("--skeleton", default=None, help="skeleton TSV; extracted when omitted")
    p.add_argument("--authors", required=True, help="author attribute CSV")
    p.add_argument("--expr", required=True, help="e.g. ABS_DIFF(birth_year) or SAME(gender)")
    p.add_argument("--bin-width", type=float, default=None)
    p.add_argument("--bin-origin", type=float, default=0.0)
    _add_skeleton_opts(p)
    _add_common(p)
    p.set_defaults(func=cmd_distributions)

    p = sub.add_parser("generate", help="synthetic graph")
    p.add_argument("--kind", choices=sorted(k.value for k in Kind), required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--cliques", type=int, default=None)
    p.add_argument("--smin", type=int, default=None)
    p.add_argument("--smax", type=int, default=None)
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--cols", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("stats", help="descriptive statistics of one network")
    p.add_argument("--input", required=True)
    p.add_argument("--runs", type=int, default=100)
    _add_common(p)
    p.set_defaults(func=cmd_stats)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        target = getattr(exc, "filename", None) or ""
        print(f"error: {exc.strerror or exc} {target}".rstrip(), file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (DisconnectedError, InputError, ConvexaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
