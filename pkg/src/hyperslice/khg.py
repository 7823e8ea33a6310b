"""Reading and writing the plain-text ``.khg`` k-graph format.

::

    khg 1
    k 3
    n 6
    # comments run to the end of a line
    e 0 1 2
"""

from __future__ import annotations

from .core import KGraph, canon
from .errors import ParseError

HEADER = ("khg", "k", "n")


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", lineno) from None


def parse_khg(text: str) -> KGraph:
    header = {}
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        key, args = line[0], line[1:]
        if len(header) < 3:
            want = HEADER[len(header)]
            if key != want or len(args) != 1:
                raise ParseError(f"expected header line '{want} <int>'", lineno)
            header[key] = _int(args[0], lineno, want)
            if key == "khg" and header[key] != 1:
                raise ParseError(f"unsupported format version {header[key]}", lineno)
            if key == "k" and header[key] < 1:
                raise ParseError("k must be positive", lineno)
            if key == "n" and header[key] < 0:
                raise ParseError("n must be non-negative", lineno)
            continue
        if key != "e":
            raise ParseError(f"unknown record {key!r}", lineno)
        k, n = header["k"], header["n"]
        if len(args) != k:
            raise ParseError(f"edge has {len(args)} vertices, expected {k}", lineno)
        vs = [_int(a, lineno, "vertex") for a in args]
        for v in vs:
            if not 0 <= v < n:
                raise ParseError(f"vertex {v} outside 0..{n - 1}", lineno)
        if len(set(vs)) != k:
            raise ParseError("edge repeats a vertex", lineno)
        e = canon(vs)
        if e in seen:
            raise ParseError(f"duplicate edge {' '.join(map(str, e))}", lineno)
        seen.add(e)
        edges.append(e)
    if len(header) < 3:
        raise ParseError(f"missing header line '{HEADER[len(header)]} <int>'")
    return KGraph(header["k"], header["n"], edges)


def format_khg(G: KGraph, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines += ["khg 1", f"k {G.k}", f"n {G.n}"]
    lines += ["e " + " ".join(map(str, e)) for e in G.edges]
    return "\n".join(lines) + "\n"


def read_khg(path) -> KGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_khg(fh.read())
