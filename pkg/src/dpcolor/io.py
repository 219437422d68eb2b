"""Text formats: graphs, covers, colorings and certificates.

All writers emit LF-terminated lines in a fixed order, so equal objects
serialize to identical bytes; digests are SHA-256 of those bytes.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .cover import Cover, validate
from .errors import ParseError
from .graph import Graph


def _lines(text: str):
    """(line number, stripped content) for non-blank, non-comment lines."""
    for no, raw in enumerate(text.split("\n"), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield no, s


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what}: expected an integer, got {tok!r}", no) from None


# --- graphs -------------------------------------------------------------------

def serialize_graph(g: Graph) -> str:
    if list(g.vertices) != list(range(g.n)):
        raise ValueError("graph files need vertices 0..n-1; relabel first")
    out = [f"graph {g.n} {g.m}"]
    out += [f"e {u} {v}" for u, v in g.sorted_edges]
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> Graph:
    it = iter(_lines(text))
    try:
        no, head = next(it)
    except StopIteration:
        raise ParseError("empty graph file", 1) from None
    parts = head.split()
    if len(parts) != 3 or parts[0] != "graph":
        raise ParseError("header must read 'graph <n> <m>'", no)
    n, m = _int(parts[1], no, "n"), _int(parts[2], no, "m")
    if n < 0 or m < 0:
        raise ParseError("negative count in header", no)
    edges = set()
    for no, s in it:
        parts = s.split()
        if len(parts) != 3 or parts[0] != "e":
            raise ParseError(f"expected 'e <u> <v>', got {s!r}", no)
        u, v = _int(parts[1], no, "u"), _int(parts[2], no, "v")
        if not (0 <= u < v < n):
            raise ParseError(f"edge ({u}, {v}) needs 0 <= u < v < {n}", no)
        if (u, v) in edges:
            raise ParseError(f"repeated edge ({u}, {v})", no)
        edges.add((u, v))
    if len(edges) != m:
        raise ParseError(f"header promises {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


# --- covers -------------------------------------------------------------------

def serialize_cover(h: Cover) -> str:
    k = max((len(l) for l in h.lists.values()), default=0)
    out = [f"cover k={k} gamma={h.palette}"]
    for v in h.graph.vertices:
        out.append(f"list {v}: " + " ".join(map(str, h.lists[v])) if h.lists[v] else f"list {v}:")
    for u, v in h.graph.sorted_edges:
        pairs = " ".join(f"{a}:{b}" for a, b in sorted(h.matchings[(u, v)].items()))
        out.append(f"match {u} {v}: {pairs}" if pairs else f"match {u} {v}:")
    return "\n".join(out) + "\n"


def _kv(tok: str, key: str, no: int) -> int:
    if not tok.startswith(key + "="):
        raise ParseError(f"expected {key}=<int>, got {tok!r}", no)
    return _int(tok[len(key) + 1:], no, key)


def parse_cover(text: str, g: Graph) -> Cover:
    it = iter(_lines(text))
    try:
        no, head = next(it)
    except StopIteration:
        raise ParseError("empty cover file", 1) from None
    parts = head.split()
    if len(parts) != 3 or parts[0] != "cover":
        raise ParseError("header must read 'cover k=<k> gamma=<g>'", no)
    k, gamma = _kv(parts[1], "k", no), _kv(parts[2], "gamma", no)
    lists: dict = {}
    mats: dict = {}
    for no, s in it:
        if ":" not in s:
            raise ParseError(f"missing ':' in {s!r}", no)
        left, right = s.split(":", 1)
        lp = left.split()
        if lp and lp[0] == "list" and len(lp) == 2:
            v = _int(lp[1], no, "vertex")
            if v not in g.adj:
                raise ParseError(f"vertex {v} not in graph", no)
            if v in lists:
                raise ParseError(f"second list for vertex {v}", no)
            cols = [_int(t, no, "color") for t in right.split()]
            if len(cols) > k:
                raise ParseError(f"list of {v} has {len(cols)} > k = {k} colors", no)
            lists[v] = cols
        elif lp and lp[0] == "match" and len(lp) == 3:
            u, v = _int(lp[1], no, "u"), _int(lp[2], no, "v")
            if not (u < v and g.has_edge(u, v)):
                raise ParseError(f"({u}, {v}) is not an edge with u < v", no)
            if (u, v) in mats:
                raise ParseError(f"second matching for edge ({u}, {v})", no)
            m = {}
            for tok in right.split():
                if tok.count(":") != 1:
                    raise ParseError(f"bad pair {tok!r}", no)
                a, b = tok.split(":")
                a, b = _int(a, no, "color"), _int(b, no, "color")
                if a in m:
                    raise ParseError(f"color {a} matched twice on ({u}, {v})", no)
                m[a] = b
            mats[(u, v)] = m
        else:
            raise ParseError(f"unrecognised line {s!r}", no)
    missing = [v for v in g.vertices if v not in lists]
    if missing:
        raise ParseError(f"no list for vertices {missing}")
    h = Cover(g, gamma, lists, mats)
    bad = validate(h)
    if bad:
        raise ParseError("invalid cover: " + "; ".join(bad))
    return h


# --- colorings --------------------------------------------------------------------

def serialize_coloring(f: dict) -> str:
    return "".join(f"color {v} {f[v]}\n" for v in sorted(f))


def parse_coloring(text: str) -> dict:
    f = {}
    for no, s in _lines(text):
        parts = s.split()
        if len(parts) != 3 or parts[0] != "color":
            raise ParseError(f"expected 'color <v> <c>', got {s!r}", no)
        v, c = _int(parts[1], no, "vertex"), _int(parts[2], no, "color")
        if v in f:
            raise ParseError(f"vertex {v} colored twice", no)
        f[v] = c
    return f


# --- digests -----------------------------------------------------------------------

def sha(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def graph_sha(g: Graph) -> str:
    return sha(serialize_graph(g))


def cover_sha(h: Cover) -> str:
    return sha(serialize_cover(h))


# --- certificates -------------------------------------------------------------------

_HEADS = {
    "coloring": "verdict SAT",
    "unsat": "verdict UNSAT",
    "tightStructure": "certificate tight",
    "starStructure": "certificate star",
    "searchReport": "search",
}


@dataclass
class Certificate:
    """One header line of key=value fields plus an optional body (coloring
    lines for a coloring, a cover for a search report with a witness)."""
    kind: str
    fields: dict = field(default_factory=dict)
    body: str = ""

    def to_text(self) -> str:
        head = _HEADS[self.kind]
        line = " ".join([head] + [f"{k}={v}" for k, v in self.fields.items()])
        return line + "\n" + self.body

    @property
    def coloring(self) -> dict | None:
        return parse_coloring(self.body) if self.kind == "coloring" else None


def parse_certificate(text: str) -> Certificate:
    first, _, body = text.partition("\n")
    toks = first.split()
    for kind, head in _HEADS.items():
        hw = head.split()
        if toks[: len(hw)] == hw:
            fields = {}
            for tok in toks[len(hw):]:
                if "=" not in tok:
                    raise ParseError(f"bad field {tok!r}", 1)
                key, val = tok.split("=", 1)
                fields[key] = val
            return Certificate(kind, fields, body)
    raise ParseError(f"unknown certificate header {first!r}", 1)


def coloring_certificate(g: Graph, h: Cover, f: dict, mode, k: int, **extra) -> Certificate:
    fields = {"mode": str(mode), "k": k, **extra, "graph-sha": graph_sha(g), "cover-sha": cover_sha(h)}
    return Certificate("coloring", {a: str(b) for a, b in fields.items()}, serialize_coloring(f))


def unsat_certificate(g: Graph, h: Cover, mode, k: int, nodes: int) -> Certificate:
    fields = {"mode": str(mode), "k": k, "nodes": nodes, "graph-sha": graph_sha(g), "cover-sha": cover_sha(h)}
    return Certificate("unsat", {a: str(b) for a, b in fields.items()})


def _flag(b) -> str:
    return "n/a" if b is None else ("true" if b else "false")


def tight_certificate_record(g: Graph, h: Cover, cert) -> Certificate:
    fields = {
        "d": cert.d, "structureOK": _flag(cert.structure_ok), "plain": _flag(cert.cover_plain),
        "allDerangements": _flag(cert.all_derangements), "sharedIncoming": _flag(cert.shared_incoming),
        "constantWhenD2": _flag(cert.constant_when_d2), "graph-sha": graph_sha(g), "cover-sha": cover_sha(h),
    }
    return Certificate("tightStructure", {a: str(b) for a, b in fields.items()})


def star_certificate_record(g: Graph, h_prime: Cover, cert) -> Certificate:
    fields = {
        "center": cert.center, "u": cert.u, "gamma": cert.gamma, "lists": _flag(cert.lists_ok),
        "derangements": _flag(cert.derangements_ok), "shared": _flag(cert.shared_ok),
        "graph-sha": graph_sha(g), "cover-sha": cover_sha(h_prime),
    }
    return Certificate("starStructure", {a: str(b) for a, b in fields.items()})


def search_report(g: Graph, result) -> Certificate:
    fields = {
        "graph-sha": graph_sha(g), "k": result.k, "mode": str(result.mode), "family": result.family.kind,
        "symmetry": result.family.symmetry, "outcome": result.outcome, "covers": result.covers,
    }
    body = serialize_cover(result.witness) if result.witness is not None else ""
    return Certificate("searchReport", {a: str(b) for a, b in fields.items()}, body)


def recheck(cert: Certificate, g: Graph, h: Cover | None = None) -> list[str]:
    """Re-verify a certificate against its inputs; returns the problems found."""
    from .oracle import Mode, check_coloring, solve

    bad = []
    if cert.fields.get("graph-sha") != graph_sha(g):
        bad.append("graph digest mismatch")
    if h is not None and "cover-sha" in cert.fields and cert.fields["cover-sha"] != cover_sha(h):
        bad.append("cover digest mismatch")
    if bad:
        return bad
    if cert.kind == "coloring":
        chk = check_coloring(g, h, cert.coloring, Mode.parse(cert.fields["mode"]), int(cert.fields["k"]))
        bad += chk.violations
    elif cert.kind == "unsat":
        if solve(g, h, Mode.parse(cert.fields["mode"]), int(cert.fields["k"]), prune=False).satisfiable:
            bad.append("cover admits a coloring")
    elif cert.kind == "tightStructure":
        from .construct import tight_certificate

        again = tight_certificate(g, h, int(cert.fields["d"]))
        if tight_certificate_record(g, h, again).fields != cert.fields:
            bad.append("structure flags differ on recomputation")
    elif cert.kind == "searchReport" and cert.fields["outcome"] == "witness":
        w = parse_cover(cert.body, g)
        if solve(g, w, Mode.parse(cert.fields["mode"]), int(cert.fields["k"]), prune=False).satisfiable:
            bad.append("witness cover admits a coloring")
    return bad
