"""File ingestion, data-derived weight recipes, and output writers.

Edge lists are one record per line (source, target, optional weight),
tab- or comma-separated (sniffed from the first data line), '#' comments
ignored. Weights parse exactly: "1/3" stays 1/3 and "0.25" becomes 1/4.
Vertex ids are arbitrary tokens mapped to dense indices in first-seen
order; the mapping is emitted alongside every output.
"""

from __future__ import annotations

import io
import json
import os
import tempfile
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

from .errors import ParseError, WeightError
from .features import FeatureMatrix
from .quiver import Quiver, WeightedQuiver


def _sniff_separator(line: str) -> str:
    return "\t" if "\t" in line else ","


def _data_lines(stream: TextIO):
    """Yield (1-based line number, stripped content) skipping blanks and comments."""
    for no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield no, line


def parse_weight(token: str, line: int) -> Fraction:
    """Exact weight from a decimal or p/q literal."""
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad weight {token!r}: {exc}", line) from None


def load_weighted_edges(
    source: str | os.PathLike | TextIO,
    zero_weight_epsilon: Fraction | None = None,
) -> tuple[WeightedQuiver, list[str]]:
    """Parse an edge list into a WeightedQuiver plus the id map
    (dense index -> original token). Missing weight columns default to 1;
    zero weights are replaced by the epsilon when given, else rejected.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fh:
            return load_weighted_edges(fh, zero_weight_epsilon)
    ids: list[str] = []
    id_of: dict[str, int] = {}
    arrows: list[tuple[int, int]] = []
    weights: list[Fraction] = []
    sep = None
    ncols = None

    def intern(token: str) -> int:
        idx = id_of.get(token)
        if idx is None:
            idx = len(ids)
            id_of[token] = idx
            ids.append(token)
        return idx

    for no, line in _data_lines(source):
        if sep is None:
            sep = _sniff_separator(line)
        fields = [f.strip() for f in line.split(sep)]
        if ncols is None:
            if len(fields) not in (2, 3):
                raise ParseError(f"expected 2 or 3 columns, got {len(fields)}", no)
            ncols = len(fields)
        elif len(fields) != ncols:
            raise ParseError(
                f"inconsistent column count: expected {ncols}, got {len(fields)}", no
            )
        s, t = intern(fields[0]), intern(fields[1])
        w = parse_weight(fields[2], no) if ncols == 3 else Fraction(1)
        if w == 0:
            if zero_weight_epsilon is None:
                raise WeightError(
                    f"line {no}: zero weight (rerun with a zero-weight epsilon)"
                )
            w = zero_weight_epsilon
        arrows.append((s, t))
        weights.append(w)
    return WeightedQuiver(Quiver(len(ids), arrows), weights), ids


def load_attributes(
    source: str | os.PathLike | TextIO,
) -> dict[str, frozenset[int]]:
    """Parse an attribute file: vertex id followed by a fixed-width 0/1
    vector. Returns the support of each vector keyed by vertex id."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fh:
            return load_attributes(fh)
    supports: dict[str, frozenset[int]] = {}
    sep = None
    width = None
    for no, line in _data_lines(source):
        if sep is None:
            sep = _sniff_separator(line)
        fields = [f.strip() for f in line.split(sep)]
        if len(fields) < 2:
            raise ParseError("expected a vertex id and at least one bit", no)
        vid, bits = fields[0], fields[1:]
        if width is None:
            width = len(bits)
        elif len(bits) != width:
            raise ParseError(
                f"inconsistent vector width: expected {width}, got {len(bits)}", no
            )
        support = set()
        for i, b in enumerate(bits):
            if b == "1":
                support.add(i)
            elif b != "0":
                raise ParseError(f"attribute vectors are 0/1, got {b!r}", no)
        if vid in supports:
            raise ParseError(f"duplicate attributes for vertex {vid!r}", no)
        supports[vid] = frozenset(support)
    return supports


def jaccard_weights(
    q: Quiver,
    ids: Sequence[str],
    attrs: dict[str, frozenset[int]],
    epsilon: Fraction | None = None,
) -> WeightedQuiver:
    """Reweight arrows by the Jaccard distance between endpoint attribute
    supports: 1 - |A & B| / |A | B|, exactly; two empty supports give
    distance 0. Zero distances become epsilon when given, else an error."""
    weights: list[Fraction] = []
    for a, (s, t) in enumerate(q.arrows):
        for v in (s, t):
            if ids[v] not in attrs:
                raise WeightError(f"no attributes for vertex {ids[v]!r}")
        su, sv = attrs[ids[s]], attrs[ids[t]]
        union = len(su | sv)
        w = Fraction(0) if union == 0 else 1 - Fraction(len(su & sv), union)
        if w == 0:
            if epsilon is None:
                raise WeightError(
                    f"arrow {ids[s]!r}->{ids[t]!r} has Jaccard distance 0 "
                    "(rerun with a zero-weight epsilon)"
                )
            w = epsilon
        weights.append(w)
    return WeightedQuiver(q, weights)


def orient_undirected(
    pairs: Iterable[tuple[int, int]],
) -> tuple[WeightedQuiver, list[str]]:
    """Orient undirected integer-id pairs low->high with weight |u - v|.

    Self-pairs are rejected (their weight would be zero). Returns the
    quiver and the id map in first-seen order.
    """
    ids: list[str] = []
    id_of: dict[int, int] = {}
    arrows: list[tuple[int, int]] = []
    weights: list[Fraction] = []

    def intern(u: int) -> int:
        idx = id_of.get(u)
        if idx is None:
            idx = len(ids)
            id_of[u] = idx
            ids.append(str(u))
        return idx

    for u, v in pairs:
        if u == v:
            raise WeightError(f"self-pair {{{u},{v}}} cannot be oriented")
        lo, hi = (u, v) if u < v else (v, u)
        arrows.append((intern(lo), intern(hi)))
        weights.append(Fraction(abs(u - v)))
    return WeightedQuiver(Quiver(len(ids), arrows), weights), ids


def load_undirected_pairs(
    source: str | os.PathLike | TextIO,
) -> tuple[WeightedQuiver, list[str]]:
    """Parse a two-column undirected pair list with integer ids and
    orient it low->high with weight |u - v|."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fh:
            return load_undirected_pairs(fh)
    pairs: list[tuple[int, int]] = []
    sep = None
    for no, line in _data_lines(source):
        if sep is None:
            sep = _sniff_separator(line)
        fields = [f.strip() for f in line.split(sep)]
        if len(fields) != 2:
            raise ParseError(f"expected 2 columns, got {len(fields)}", no)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError("undirected pairs need integer vertex ids", no) from None
        pairs.append((u, v))
    return orient_undirected(pairs)


def _atomic_write(path: str | os.PathLike, text: str) -> None:
    directory = os.path.dirname(os.fspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def feature_matrix_csv(fm: FeatureMatrix, ids: Sequence[str]) -> str:
    header = "vertex," + ",".join(f"h{k}" for k in range(1, fm.hops + 1))
    lines = [header]
    for v, row in enumerate(fm.rows):
        lines.append(ids[v] + "," + ",".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def feature_matrix_json(fm: FeatureMatrix, ids: Sequence[str]) -> str:
    from . import __version__

    doc = {
        "config": {
            "hops": fm.hops,
            "seed": fm.seed,
            "field_mode": fm.mode,
            "tolerance": fm.tol,
            "tool_version": __version__,
        },
        "vertices": list(ids),
        "rows": [list(row) for row in fm.rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def write_feature_matrix(
    fm: FeatureMatrix,
    path: str | os.PathLike,
    ids: Sequence[str],
    fmt: str = "csv",
) -> None:
    """Write the feature matrix as CSV or JSON (atomically: temp + rename)."""
    if fmt == "csv":
        text = feature_matrix_csv(fm, ids)
    elif fmt == "json":
        text = feature_matrix_json(fm, ids)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    _atomic_write(path, text)


def read_feature_matrix(
    source: str | os.PathLike | TextIO, fmt: str = "csv"
) -> tuple[list[list[int]], list[str]]:
    """Parse a written feature matrix back into (rows, vertex ids)."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fh:
            return read_feature_matrix(fh, fmt)
    if fmt == "json":
        doc = json.load(source)
        return [list(map(int, r)) for r in doc["rows"]], list(doc["vertices"])
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    rows: list[list[int]] = []
    ids: list[str] = []
    header_seen = False
    for _, line in _data_lines(source):
        if not header_seen:
            header_seen = True
            continue
        fields = line.split(",")
        ids.append(fields[0])
        rows.append([int(x) for x in fields[1:]])
    return rows, ids


def to_dot(
    wq: WeightedQuiver,
    ids: Sequence[str] | None = None,
    feedback: Iterable[int] = (),
) -> str:
    """Render the quiver in DOT syntax; feedback arrows are dashed."""
    q = wq.quiver
    names = ids if ids is not None else [str(v) for v in range(q.vertex_count)]
    dashed = set(feedback)
    out = io.StringIO()
    out.write("digraph quiver {\n")
    for v in range(q.vertex_count):
        out.write(f'  "{names[v]}";\n')
    for a, (s, t) in enumerate(q.arrows):
        style = ", style=dashed" if a in dashed else ""
        out.write(f'  "{names[s]}" -> "{names[t]}" [label="{wq.weights[a]}"{style}];\n')
    out.write("}\n")
    return out.getvalue()
