"""Weighted co-authorship networks from publication records.

Each paper with k >= 2 authors adds weight to every unordered author pair:
1 under full counting, 1/(k-1) under fractional counting, 1/k under
partial counting.  Also holds the skeleton-vs-remainder attribute
distribution machinery.
"""

import csv
from dataclasses import dataclass, field
from enum import Enum

from .errors import ConvexaError, InputError
from .graph import Graph, build_graph
from .skeleton import SkeletonResult, remainder, skeleton_graph

#: marker for attribute values that cannot be derived
MISSING = None


class CountingScheme(Enum):
    FULL = "full"
    FRACTIONAL = "fractional"
    PARTIAL = "partial"


@dataclass(frozen=True)
class PaperRecord:
    paper_id: str
    authors: tuple  # ordered, no duplicates
    attrs: dict = field(default_factory=dict)


def pair_weight(scheme: CountingScheme, k: int) -> float:
    if scheme is CountingScheme.FULL:
        return 1.0
    if scheme is CountingScheme.FRACTIONAL:
        return 1.0 / (k - 1)
    return 1.0 / k


def build_coauthorship(papers, scheme: CountingScheme) -> Graph:
    records = []
    solo = set()
    for p in papers:
        if len(set(p.authors)) != len(p.authors):
            raise InputError(f"paper {p.paper_id!r} lists a duplicate author")
        k = len(p.authors)
        if k < 1:
            raise InputError(f"paper {p.paper_id!r} has no authors")
        if k == 1:
            solo.add(p.authors[0])
            continue
        w = pair_weight(scheme, k)
        authors = sorted(p.authors)
        for i in range(k):
            for j in range(i + 1, k):
                records.append((authors[i], authors[j], w))
    return build_graph(records, isolated_nodes=solo)


def academic_birth_year(papers, author):
    """Year of the author's first dated paper, or MISSING."""
    years = [
        p.attrs["year"]
        for p in papers
        if author in p.authors and p.attrs.get("year") is not None
    ]
    return min(years) if years else MISSING


# ---------------------------------------------------------------------------
# edge attribute derivations

@dataclass(frozen=True)
class AttrExpr:
    kind: str  # MEAN | ABS_DIFF | SAME | PAIR_MIN | PAIR_MAX
    attr: str

    def __str__(self):
        return f"{self.kind}({self.attr})"


_NUMERIC_KINDS = {"MEAN", "ABS_DIFF", "PAIR_MIN", "PAIR_MAX"}


def parse_expr(text):
    """Parse 'KIND(attr)' or 'KIND:attr'."""
    text = text.strip()
    if "(" in text and text.endswith(")"):
        kind, attr = text[:-1].split("(", 1)
    elif ":" in text:
        kind, attr = text.split(":", 1)
    else:
        raise InputError(f"cannot parse attribute expression {text!r}")
    kind = kind.strip().upper()
    if kind not in _NUMERIC_KINDS | {"SAME"}:
        raise InputError(f"unknown derivation {kind!r}")
    return AttrExpr(kind, attr.strip())


def edge_attribute(expr: AttrExpr, edge, authors: dict):
    """Derive a scalar/category for an edge from its endpoints' attributes.

    `authors` maps author_id -> attribute dict.  Missing inputs yield MISSING.
    """
    u, v = edge
    for x in (u, v):
        if x not in authors:
            raise InputError(f"author {x!r} not in the attribute table")
    if not any(expr.attr in attrs for attrs in authors.values()):
        raise InputError(f"unknown attribute {expr.attr!r}")
    au, av = authors[u].get(expr.attr, MISSING), authors[v].get(expr.attr, MISSING)
    if au is MISSING or av is MISSING:
        return MISSING
    if expr.kind == "SAME":
        return au == av
    au, av = float(au), float(av)
    if expr.kind == "MEAN":
        return (au + av) / 2.0
    if expr.kind == "ABS_DIFF":
        return abs(au - av)
    if expr.kind == "PAIR_MIN":
        return min(au, av)
    return max(au, av)


# ---------------------------------------------------------------------------
# skeleton-vs-remainder distributions

@dataclass(frozen=True)
class Binning:
    """Fixed-width numeric bins, or category bins when width is None."""
    width: float = None
    origin: float = 0.0

    def key(self, value):
        if self.width is None:
            return value
        import math

        return int(math.floor((value - self.origin) / self.width))

    def bounds(self, key):
        if self.width is None:
            return key
        return (self.origin + key * self.width, self.origin + (key + 1) * self.width)


@dataclass(frozen=True)
class DistributionReport:
    expr: AttrExpr
    bins: tuple  # ordered bin labels (bounds tuple or category)
    skeleton_weight: tuple
    remainder_weight: tuple
    missing_skeleton: float
    missing_remainder: float


def distribution_report(
    g: Graph, sk: SkeletonResult, expr: AttrExpr, authors: dict, binning: Binning
) -> DistributionReport:
    if binning.width is not None and binning.width <= 0:
        raise ConvexaError("bin width must be positive")
    parts = {"sk": skeleton_graph(g, sk), "re": remainder(g, sk)}
    acc = {"sk": {}, "re": {}}
    miss = {"sk": 0.0, "re": 0.0}
    for tag, sub in parts.items():
        for e in range(sub.m):
            val = edge_attribute(expr, sub.edge_ids(e), authors)
            w = float(sub.weights[e])
            if val is MISSING:
                miss[tag] += w
            else:
                key = binning.key(val)
                acc[tag][key] = acc[tag].get(key, 0.0) + w
    keys = sorted(set(acc["sk"]) | set(acc["re"]), key=lambda k: (str(type(k)), k))
    return DistributionReport(
        expr=expr,
        bins=tuple(binning.bounds(k) for k in keys),
        skeleton_weight=tuple(acc["sk"].get(k, 0.0) for k in keys),
        remainder_weight=tuple(acc["re"].get(k, 0.0) for k in keys),
        missing_skeleton=miss["sk"],
        missing_remainder=miss["re"],
    )


# ---------------------------------------------------------------------------
# CSV ingestion

def _maybe_number(text):
    if text is None or text == "":
        return MISSING
    try:
        f = float(text)
    except ValueError:
        return text
    return int(f) if f == int(f) else f


def read_papers_csv(links_path, meta_path=None):
    """Long-form links CSV `paper_id,author_id` plus optional metadata CSV.

    The metadata CSV needs a `paper_id` column; every other column becomes
    a paper attribute (numbers parsed where possible).
    """
    authors_by_paper = {}
    order = []
    with open(links_path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if "paper_id" not in reader.fieldnames or "author_id" not in reader.fieldnames:
            raise InputError(f"{links_path}: need columns paper_id,author_id")
        for row in reader:
            pid = row["paper_id"]
            if pid not in authors_by_paper:
                authors_by_paper[pid] = []
                order.append(pid)
            authors_by_paper[pid].append(row["author_id"])
    meta = {}
    if meta_path:
        with open(meta_path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if "paper_id" not in reader.fieldnames:
                raise InputError(f"{meta_path}: need a paper_id column")
            for row in reader:
                meta[row["paper_id"]] = {
                    k: _maybe_number(v) for k, v in row.items() if k != "paper_id"
                }
    return [
        PaperRecord(pid, tuple(authors_by_paper[pid]), meta.get(pid, {}))
        for pid in order
    ]


def read_authors_csv(path):
    """Author attribute table: header row names attributes, `author_id` keys it."""
    table = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if "author_id" not in reader.fieldnames:
            raise InputError(f"{path}: need an author_id column")
        for row in reader:
            table[row["author_id"]] = {
                k: _maybe_number(v) for k, v in row.items() if k != "author_id"
            }
    return table


def filter_years(papers, year_min=None, year_max=None):
    out = []
    for p in papers:
        y = p.attrs.get("year")
        if year_min is not None and (y is None or y < year_min):
            continue
        if year_max is not None and (y is None or y > year_max):
            continue
        out.append(p)
    return out
