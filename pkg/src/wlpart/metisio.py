"""Reading and writing graphs in the METIS/Chaco adjacency text format.

Layout: a header line ``n m [fmt [ncon]]`` followed by one adjacency line per
vertex (1-based neighbor ids).  ``fmt`` is the usual bit string: rightmost bit
= edge weights present, next bit = vertex weights present; accepted values are
absent, ``1``, ``10`` and ``11`` (leading zeros tolerated).  Vertex-size
formats (``100`` and friends) are rejected.  ``%`` starts a comment line.

Deviations from the strict format, needed so coarse graphs round-trip:

* a vertex may list itself (a self-loop); the loop appears once, on its own
  line, and counts once toward the header's edge count m;
* weights may be arbitrary positive reals, not only integers.

Every reported error carries the 1-based source line number.

Partition files are the usual companion format: one 0-based block id per
line, vertex order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graph import DoublyWeightedGraph, Partition

__all__ = [
    "MetisFormatError",
    "MetisHeader",
    "parse_metis",
    "emit_metis",
    "write_partition",
    "read_partition",
]


class MetisFormatError(ValueError):
    """Malformed METIS input; ``line`` is the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class MetisHeader:
    n: int
    m: int
    fmt: str  # canonical: "", "1", "10" or "11"
    ncon: int

    @property
    def has_edge_weights(self) -> bool:
        return self.fmt in ("1", "11")

    @property
    def has_vertex_weights(self) -> bool:
        return self.fmt in ("10", "11")


def _read_lines(source) -> list[str]:
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, Path):
        text = source.read_text()
    elif isinstance(source, str):
        text = source
    else:
        raise TypeError("parse_metis expects a text string, Path, or open stream")
    return text.splitlines()


def _parse_header(token_line: str, ln: int) -> MetisHeader:
    parts = token_line.split()
    if len(parts) < 2 or len(parts) > 4:
        raise MetisFormatError("header must be 'n m [fmt [ncon]]'", ln)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise MetisFormatError("header n and m must be integers", ln) from None
    if n < 1:
        raise MetisFormatError("vertex count must be positive", ln)
    if m < 0:
        raise MetisFormatError("edge count must be nonnegative", ln)
    fmt = ""
    ncon = 1
    if len(parts) >= 3:
        raw = parts[2]
        if not raw.isdigit():
            raise MetisFormatError(f"unrecognized fmt field {raw!r}", ln)
        fmt = raw.lstrip("0")
        if fmt not in ("", "1", "10", "11"):
            raise MetisFormatError(
                f"unsupported fmt field {raw!r} (accepted: 1, 10, 11)", ln)
    if len(parts) == 4:
        try:
            ncon = int(parts[3])
        except ValueError:
            raise MetisFormatError("ncon must be an integer", ln) from None
        if ncon != 1:
            raise MetisFormatError("only a single vertex weight per vertex is supported", ln)
    return MetisHeader(n, m, fmt, ncon)


def _weight(token: str, ln: int, kind: str) -> float:
    try:
        w = float(token)
    except ValueError:
        raise MetisFormatError(f"invalid {kind} weight {token!r}", ln) from None
    if not math.isfinite(w) or w <= 0:
        raise MetisFormatError(f"{kind} weight must be positive, got {token!r}", ln)
    return w


def parse_metis(source) -> DoublyWeightedGraph:
    """Parse METIS text into a graph.

    ``source`` may be an open text stream, a Path, or the file content as a
    string.  Raises MetisFormatError (with line number) on malformed input,
    asymmetric adjacency, duplicate neighbor entries, nonpositive declared
    weights, or a header/edge-count mismatch.
    """
    lines = _read_lines(source)
    header: MetisHeader | None = None
    vertex_weights: list[float] = []
    # directed entries exactly as read: (i, j) -> (weight, line_no)
    entries: dict[tuple[int, int], tuple[float, int]] = {}
    vertex = 0  # 0-based id of the next vertex line
    header_ln = 0

    for ln, raw in enumerate(lines, start=1):
        line = raw.rstrip()
        if line.startswith("%"):
            continue
        if header is None:
            if not line.strip():
                continue
            header = _parse_header(line, ln)
            header_ln = ln
            continue
        if vertex >= header.n:
            if line.strip():
                raise MetisFormatError(
                    f"unexpected content after {header.n} vertex lines", ln)
            continue
        i = vertex
        vertex += 1
        tokens = line.split()
        if header.has_vertex_weights:
            if not tokens:
                raise MetisFormatError(f"vertex {i + 1} is missing its weight", ln)
            vertex_weights.append(_weight(tokens[0], ln, "vertex"))
            tokens = tokens[1:]
        if header.has_edge_weights:
            if len(tokens) % 2 != 0:
                raise MetisFormatError(
                    f"vertex {i + 1} must list (neighbor, weight) pairs", ln)
            pairs = [(tokens[t], tokens[t + 1]) for t in range(0, len(tokens), 2)]
        else:
            pairs = [(t, None) for t in tokens]
        for tok, wtok in pairs:
            try:
                j = int(tok) - 1
            except ValueError:
                raise MetisFormatError(f"invalid neighbor id {tok!r}", ln) from None
            if not (0 <= j < header.n):
                raise MetisFormatError(
                    f"neighbor id {tok} out of range 1..{header.n}", ln)
            w = 1.0 if wtok is None else _weight(wtok, ln, "edge")
            if (i, j) in entries:
                raise MetisFormatError(
                    f"vertex {i + 1} lists neighbor {j + 1} twice", ln)
            entries[(i, j)] = (w, ln)

    if header is None:
        raise MetisFormatError("empty input: missing header line")
    if vertex < header.n:
        raise MetisFormatError(
            f"expected {header.n} vertex lines, found {vertex}", len(lines))

    loops = 0
    undirected = []
    for (i, j), (w, ln) in entries.items():
        if i == j:
            loops += 1
            undirected.append((i, j, w))
            continue
        back = entries.get((j, i))
        if back is None:
            raise MetisFormatError(
                f"edge {i + 1}-{j + 1} is listed by vertex {i + 1} only", ln)
        if back[0] != w:
            raise MetisFormatError(
                f"edge {i + 1}-{j + 1} has mismatched weights "
                f"({w:g} here, {back[0]:g} on line {back[1]})", ln)
        if i < j:
            undirected.append((i, j, w))

    m_found = (len(entries) - loops) // 2 + loops
    if m_found != header.m:
        raise MetisFormatError(
            f"header declares {header.m} edges but adjacency stores {m_found}",
            header_ln)

    vw = np.asarray(vertex_weights) if header.has_vertex_weights else None
    return DoublyWeightedGraph.from_edges(header.n, undirected, vw)


def _fmt_number(x: float) -> str:
    x = float(x)
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def emit_metis(g: DoublyWeightedGraph, stream=None) -> str | None:
    """Serialize a graph to METIS text (inverse of parse_metis).

    Edge weights are written whenever any stored weight differs from 1;
    vertex weights whenever any differs from 1.  Floats print with full
    precision so parse(emit(g)) reproduces g exactly.
    """
    has_vw = bool(np.any(g.vertex_weights != 1.0))
    has_ew = bool(np.any(g.weights != 1.0))
    fmt = {(False, False): "", (False, True): "1",
           (True, False): "10", (True, True): "11"}[(has_vw, has_ew)]
    head = f"{g.n} {g.num_edges}"
    if fmt:
        head += f" {fmt}"
    out = [head]
    for v in range(g.n):
        nbr, wts = g.neighbors(v)
        fields = []
        if has_vw:
            fields.append(_fmt_number(g.vertex_weights[v]))
        # every CSR entry of this row is listed: off-diagonal edges therefore
        # appear on both endpoints' lines, a self-loop once on its own line
        for j, w in zip(nbr, wts):
            fields.append(str(int(j) + 1))
            if has_ew:
                fields.append(_fmt_number(w))
        out.append(" ".join(fields))
    text = "\n".join(out) + "\n"
    if stream is None:
        return text
    stream.write(text)
    return None


def write_partition(p: Partition, stream_or_path) -> None:
    """One 0-based block id per line, vertex order."""
    text = "\n".join(str(int(b)) for b in p.assignment) + "\n"
    if hasattr(stream_or_path, "write"):
        stream_or_path.write(text)
    else:
        Path(stream_or_path).write_text(text)


def read_partition(stream_or_path, k: int | None = None) -> Partition:
    if hasattr(stream_or_path, "read"):
        text = stream_or_path.read()
    else:
        text = Path(stream_or_path).read_text()
    labels = []
    for ln, raw in enumerate(text.split("\n"), start=1):
        tok = raw.strip()
        if not tok:
            continue
        try:
            labels.append(int(tok))
        except ValueError:
            raise MetisFormatError(f"invalid block id {tok!r}", ln) from None
    if not labels:
        raise MetisFormatError("empty partition file")
    return Partition(labels, k=k, allow_empty=True)
