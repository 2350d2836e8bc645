"""Reading and writing the KECS-G v1 graph format and coloring files.

KECS-G v1, one record per line, ``#`` starts a comment::

    graph <vertex_count>
    vertex <id> label <x> <y>
    vertex <id> allow <c1>,<c2>,...      # ``allow -`` is the empty set
    edge <u> <v> [weight <decimal>]

Coloring files hold ``color <u> <v> <c>`` lines.  Writers emit records in
canonical order so output is byte-deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import FormatError, InputError
from .graph import ColorConstraintMap, Graph, KEdgeColoring, WeightMap, canon


@dataclass(frozen=True)
class KecsDocument:
    graph: Graph
    weights: dict | None = None
    constraints: dict | None = None

    @property
    def unit_weights(self) -> bool:
        return self.weights is None or all(w == 1 for w in self.weights.values())


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected integer, got {tok!r}", lineno) from None


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_kecs(text: str) -> KecsDocument:
    n = None
    labels: dict[int, tuple[int, int]] = {}
    allow: dict[int, frozenset] = {}
    edges: dict = {}
    for lineno, tok in _records(text):
        kind = tok[0]
        if kind == "graph":
            if n is not None or len(tok) != 2:
                raise FormatError("bad or repeated graph record", lineno)
            n = _int(tok[1], lineno)
            if n < 0:
                raise FormatError("negative vertex count", lineno)
            continue
        if n is None:
            raise FormatError("record before 'graph' header", lineno)
        if kind == "vertex":
            if len(tok) < 3:
                raise FormatError("truncated vertex record", lineno)
            v = _int(tok[1], lineno)
            if not 0 <= v < n:
                raise FormatError(f"vertex {v} out of range", lineno)
            if tok[2] == "label" and len(tok) == 5:
                labels[v] = (_int(tok[3], lineno), _int(tok[4], lineno))
            elif tok[2] == "allow" and len(tok) in (3, 4):
                spec = tok[3] if len(tok) == 4 else "-"
                colors = [] if spec == "-" else [_int(c, lineno) for c in spec.split(",")]
                if any(c < 1 for c in colors):
                    raise FormatError("colors must be positive", lineno)
                allow[v] = frozenset(colors)
            else:
                raise FormatError(f"unknown vertex record {' '.join(tok)!r}", lineno)
        elif kind == "edge":
            if len(tok) not in (3, 5) or (len(tok) == 5 and tok[3] != "weight"):
                raise FormatError("expected 'edge <u> <v> [weight <w>]'", lineno)
            u, v = _int(tok[1], lineno), _int(tok[2], lineno)
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise FormatError(f"invalid edge {u} {v}", lineno)
            w = _int(tok[4], lineno) if len(tok) == 5 else 1
            if w < 1:
                raise FormatError("weights must be positive", lineno)
            e = canon(u, v)
            if e in edges:
                raise FormatError(f"parallel edge {e}", lineno)
            edges[e] = w
        else:
            raise FormatError(f"unknown record type {kind!r}", lineno)
    if n is None:
        raise FormatError("missing 'graph' header")
    lab = None
    if labels:
        if len(labels) != n:
            raise FormatError("labels must be given for all vertices or none")
        lab = tuple(labels[v] for v in range(n))
    try:
        g = Graph(n, tuple(edges), lab)
    except InputError as exc:
        raise FormatError(str(exc)) from None
    weights = dict(edges) if any(w != 1 for w in edges.values()) else None
    return KecsDocument(g, weights, allow or None)


def format_kecs(
    g: Graph, weights: WeightMap | None = None, constraints: ColorConstraintMap | None = None
) -> str:
    out = [f"graph {g.vertex_count}"]
    for v in range(g.vertex_count):
        if g.labels is not None:
            x, y = g.labels[v]
            out.append(f"vertex {v} label {x} {y}")
        if constraints is not None and v in constraints:
            cs = sorted(constraints[v])
            out.append(f"vertex {v} allow {','.join(map(str, cs)) if cs else '-'}")
    for u, v in g.edges:
        if weights is None:
            out.append(f"edge {u} {v}")
        else:
            out.append(f"edge {u} {v} weight {weights[(u, v)]}")
    return "\n".join(out) + "\n"


def read_kecs(path) -> KecsDocument:
    return parse_kecs(Path(path).read_text())


def write_kecs(path, g: Graph, weights=None, constraints=None) -> None:
    Path(path).write_text(format_kecs(g, weights, constraints))


def parse_coloring(text: str, k: int) -> KEdgeColoring:
    assignment = {}
    for lineno, tok in _records(text):
        if tok[0] != "color" or len(tok) != 4:
            raise FormatError("expected 'color <u> <v> <c>'", lineno)
        u, v, c = (_int(t, lineno) for t in tok[1:])
        if u == v:
            raise FormatError("self-loop in coloring", lineno)
        if not 1 <= c <= k:
            raise FormatError(f"color {c} outside 1..{k}", lineno)
        e = canon(u, v)
        if e in assignment:
            raise FormatError(f"edge {e} colored twice", lineno)
        assignment[e] = c
    return KEdgeColoring(k, assignment)


def format_coloring(c: KEdgeColoring) -> str:
    return "".join(f"color {u} {v} {col}\n" for (u, v), col in c.assignment.items())


def read_coloring(path, k: int) -> KEdgeColoring:
    return parse_coloring(Path(path).read_text(), k)


def write_coloring(path, c: KEdgeColoring) -> None:
    Path(path).write_text(format_coloring(c))
