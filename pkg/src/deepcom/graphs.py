"""Graphs whose vertices are the elements of a finite group."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import CapExceeded
from .group import Group, center, subgroup_generated

KINDS = ("com", "epow", "dcom", "relcom", "other")
ISOMORPHISM_CAP = 128


def _bits_from_bool(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row.astype(bool), bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected loop-free graph; ``adjacency[i]`` is the neighbour bitset of vertex i."""

    adjacency: tuple[int, ...]
    labels: tuple[str, ...]
    kind: str = "other"
    group_name: str = ""

    def __post_init__(self):
        if len(self.labels) != len(self.adjacency):
            raise ValueError("label list length differs from vertex count")
        for i, row in enumerate(self.adjacency):
            if row >> i & 1:
                raise ValueError(f"loop at vertex {i}")
            if row >> len(self.adjacency):
                raise ValueError(f"vertex {i} has a neighbour out of range")

    @classmethod
    def from_matrix(cls, matrix, labels, kind="other", group_name="") -> SimpleGraph:
        m = np.array(matrix, dtype=bool)
        np.fill_diagonal(m, False)
        if not np.array_equal(m, m.T):
            raise ValueError("adjacency matrix is not symmetric")
        return cls(tuple(_bits_from_bool(r) for r in m), tuple(labels), kind, group_name)

    @classmethod
    def from_edges(cls, n: int, edges, labels=None, kind="other", group_name="") -> SimpleGraph:
        m = np.zeros((n, n), dtype=bool)
        for i, j in edges:
            m[i, j] = m[j, i] = True
        return cls.from_matrix(m, labels or [str(i) for i in range(n)], kind, group_name)

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def neighbors(self, i: int) -> list[int]:
        row, out, j = self.adjacency[i], [], 0
        while row:
            if row & 1:
                out.append(j)
            row >>= 1
            j += 1
        return out

    def degree(self, i: int) -> int:
        return bin(self.adjacency[i]).count("1")

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.neighbors(i) if i < j]

    def edge_count(self) -> int:
        return sum(self.degree(i) for i in range(self.n)) // 2

    def to_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for i in range(self.n):
            m[i, self.neighbors(i)] = True
        return m

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges())


def commuting_graph(G: Group) -> SimpleGraph:
    return SimpleGraph.from_matrix(G.commute_matrix, G.names, "com", G.name)


def cyclic_subgroups(G: Group) -> dict[int, tuple[int, ...]]:
    return {z: subgroup_generated(G, [z]) for z in range(G.order)}


def enhanced_power_graph(G: Group) -> SimpleGraph:
    """x ~ y when some z has x, y in <z>; brute force over all z."""
    m = np.zeros((G.order, G.order), dtype=bool)
    for cyc in set(cyclic_subgroups(G).values()):
        idx = np.array(cyc)
        m[np.ix_(idx, idx)] = True
    return SimpleGraph.from_matrix(m, G.names, "epow", G.name)


def relative_commuting_graph(ext) -> SimpleGraph:
    """Graph on the base group joining x, y when their preimages in the total group commute."""
    from .extensions import validate_extension

    validate_extension(ext)
    H, G = ext.total, ext.base
    lift = ext.section()
    sub = H.table[np.ix_(lift, lift)]
    return SimpleGraph.from_matrix(sub == sub.T, G.names, "relcom", G.name)


def induced_subgraph(graph: SimpleGraph, vertices: Iterable[int]) -> SimpleGraph:
    vs = sorted(set(int(v) for v in vertices))
    for v in vs:
        if not 0 <= v < graph.n:
            raise IndexError(f"vertex {v} out of range")
    m = graph.to_matrix()[np.ix_(vs, vs)]
    return SimpleGraph.from_matrix(m, [graph.labels[v] for v in vs], graph.kind, graph.group_name)


def _same_shape(g1: SimpleGraph, g2: SimpleGraph) -> None:
    if g1.n != g2.n:
        raise ValueError(f"vertex counts differ ({g1.n} vs {g2.n})")


def graph_equal(g1: SimpleGraph, g2: SimpleGraph) -> bool:
    _same_shape(g1, g2)
    return g1.adjacency == g2.adjacency


def is_spanning_subgraph(g1: SimpleGraph, g2: SimpleGraph) -> bool:
    """Every edge of ``g1`` is an edge of ``g2`` (same vertex set)."""
    _same_shape(g1, g2)
    return all(a & ~b == 0 for a, b in zip(g1.adjacency, g2.adjacency))


# ---------------------------------------------------------------------------
# isomorphism: colour refinement on the disjoint union, then individualization


def _refine(adj: list[list[int]], colors: list[int]) -> list[int]:
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(palette) == len(set(colors)):
            return new
        colors = new


def graph_isomorphic(g1: SimpleGraph, g2: SimpleGraph, cap: int = ISOMORPHISM_CAP) -> dict[int, int] | None:
    """A vertex bijection g1 -> g2 preserving adjacency, or None."""
    if max(g1.n, g2.n) > cap:
        raise CapExceeded(f"graph isomorphism limited to {cap} vertices")
    if g1.n != g2.n or g1.edge_count() != g2.edge_count():
        return None
    n = g1.n
    adj = [g1.neighbors(v) for v in range(n)] + [[u + n for u in g2.neighbors(v)] for v in range(n)]

    def balanced(colors):
        left, right = {}, {}
        for v in range(n):
            left[colors[v]] = left.get(colors[v], 0) + 1
            right[colors[v + n]] = right.get(colors[v + n], 0) + 1
        return left == right

    def search(colors):
        colors = _refine(adj, colors)
        if not balanced(colors):
            return None
        cells: dict[int, list[int]] = {}
        for v in range(n):
            cells.setdefault(colors[v], []).append(v)
        open_cells = [c for c in cells.values() if len(c) > 1]
        if not open_cells:
            where = {colors[v + n]: v for v in range(n)}
            mapping = {v: where[colors[v]] for v in range(n)}
            if all(g2.has_edge(mapping[i], mapping[j]) for i, j in g1.edges()):
                return mapping
            return None
        cell = min(open_cells, key=len)
        v = cell[0]
        fresh = max(colors) + 1
        for w in range(n):
            if colors[w + n] == colors[v]:
                trial = list(colors)
                trial[v] = trial[w + n] = fresh
                found = search(trial)
                if found is not None:
                    return found
        return None

    start = [len(a) for a in adj]
    return search(start)


def coset_blowup_decomposition(graph: SimpleGraph, G: Group, Z: Iterable[int]) -> SimpleGraph | None:
    """Quotient graph when ``graph`` is a blow-up of cliques on the cosets of ``Z``.

    Returns the graph on cosets (named by their smallest element) if every coset
    is a clique and adjacency between distinct cosets is all-or-nothing;
    otherwise None.
    """
    Z = sorted(set(int(z) for z in Z))
    if not set(Z) <= set(center(G)) or 0 not in Z:
        raise ValueError("Z must be a central subgroup")
    m = graph.to_matrix()
    np.fill_diagonal(m, True)
    reps, cosets, seen = [], [], set()
    for g in range(G.order):
        if g not in seen:
            coset = sorted(int(G.table[g, z]) for z in Z)
            seen.update(coset)
            reps.append(g)
            cosets.append(coset)
    k = len(cosets)
    quotient = np.zeros((k, k), dtype=bool)
    for a in range(k):
        for b in range(k):
            block = m[np.ix_(cosets[a], cosets[b])]
            if block.all():
                quotient[a, b] = True
            elif block.any():
                return None
    if not quotient.diagonal().all():
        return None
    return SimpleGraph.from_matrix(quotient, [G.names[r] for r in reps], graph.kind, graph.group_name)


# ---------------------------------------------------------------------------
# emission


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit(graph: SimpleGraph, fmt: str) -> str:
    """Serialize as ``dot``, ``json`` or ``edgelist``; output ends with a newline."""
    edges = graph.edges()
    if fmt == "dot":
        title = graph.group_name or "G"
        lines = [f"graph {_dot_quote(title + ' ' + graph.kind)} {{"]
        lines += [f"  {i} [label={_dot_quote(lab)}];" for i, lab in enumerate(graph.labels)]
        lines += [f"  {i} -- {j};" for i, j in edges]
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        doc = {"group": graph.group_name, "kind": graph.kind, "n": graph.n,
               "edges": [[i, j] for i, j in edges]}
        return json.dumps(doc) + "\n"
    if fmt == "edgelist":
        return "".join(f"{i} {j}\n" for i, j in edges)
    raise ValueError(f"unknown format {fmt!r}; choose dot, json or edgelist")


def star_graph(n: int) -> SimpleGraph:
    """K_{1,n-1} centred at vertex 0."""
    return SimpleGraph.from_edges(n, [(0, j) for j in range(1, n)])


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
