"""Dependency graphs, acyclicity witnesses, incidence graph, DOT export.

The directed dependency graph has an edge (x, y) whenever some rule has x in
the head and y in the body, or x and y jointly in the head; the edge is
negative when some justifying occurrence has y in the negative body or comes
from a shared head.  The undirected variant subdivides every negative edge
with a fresh "negative vertex" and forgets orientation (mutually directed
positive edges collapse to one undirected edge).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .program import ACYCLIC_CLASSES, Program, TargetClass, core


@dataclass(frozen=True)
class CycleWitness:
    """A forbidden cycle: vertices in cyclic order, badness flag.

    Directed witnesses list atom ids following edge direction; undirected
    witnesses list vertices of the undirected graph and may contain negative
    vertices (ids >= n_atoms of the originating graph).
    """

    kind: str  # "directed" | "undirected"
    vertices: tuple[int, ...]
    bad: bool


class DependencyDigraph:
    """Directed dependency graph over the atom table of a program."""

    def __init__(self, n_atoms: int, edges: frozenset[tuple[int, int]],
                 negative: frozenset[tuple[int, int]]):
        self.n_atoms = n_atoms
        self.edges = edges
        self.negative = negative
        succ: dict[int, list[int]] = {}
        for u, v in edges:
            succ.setdefault(u, []).append(v)
        self.succ = {u: tuple(sorted(vs)) for u, vs in succ.items()}


class UndirectedDepGraph:
    """Undirected dependency graph with subdivided negative edges.

    Atom vertices are 0..n_atoms-1; negative vertex n_atoms+i subdivides the
    i-th negative directed edge (sorted order).  Adjacency keeps multiplicity
    so that a subdivided self-loop forms a two-edge cycle through its
    negative vertex.
    """

    def __init__(self, n_atoms: int, neg_edges: tuple[tuple[int, int], ...],
                 pos_pairs: frozenset[tuple[int, int]]):
        self.n_atoms = n_atoms
        self.neg_edges = neg_edges
        self.pos_pairs = pos_pairs  # (u, v) with u <= v; (x, x) is a loop
        adj: dict[int, list[int]] = {}
        for i, (x, y) in enumerate(neg_edges):
            v = n_atoms + i
            adj.setdefault(v, []).extend((x, y))
            adj.setdefault(x, []).append(v)
            adj.setdefault(y, []).append(v)
        for u, v in pos_pairs:
            if u == v:
                continue  # positive loops are reported directly, not walked
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        self.adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @property
    def n_vertices(self) -> int:
        return self.n_atoms + len(self.neg_edges)

    def is_negative_vertex(self, v: int) -> bool:
        return v >= self.n_atoms

    def vertex_label(self, v: int, p: Program) -> str:
        if v < self.n_atoms:
            return p.atom_name(v)
        x, y = self.neg_edges[v - self.n_atoms]
        return f"v_({p.atom_name(x)},{p.atom_name(y)})"


def build_ddg(p: Program) -> DependencyDigraph:
    """Directed dependency graph of p as given (no core() applied)."""
    edges: set[tuple[int, int]] = set()
    negative: set[tuple[int, int]] = set()
    for r in p.rules:
        for x in r.head:
            for y in r.pos_body:
                edges.add((x, y))
            for y in r.neg_body:
                edges.add((x, y))
                negative.add((x, y))
            for y in r.head:
                if x != y:
                    edges.add((x, y))
                    negative.add((x, y))
    return DependencyDigraph(p.n_atoms, frozenset(edges), frozenset(negative))


def build_udg(p: Program) -> UndirectedDepGraph:
    d = build_ddg(p)
    neg = tuple(sorted(d.negative))
    pos: set[tuple[int, int]] = set()
    for u, v in d.edges - d.negative:
        pos.add((u, v) if u <= v else (v, u))
    return UndirectedDepGraph(d.n_atoms, neg, frozenset(pos))


# ---------------------------------------------------------------------------
# cycle search (all deterministic: sorted iteration, FIFO BFS)

def _rotate_min(cycle: list[int]) -> tuple[int, ...]:
    i = cycle.index(min(cycle))
    return tuple(cycle[i:] + cycle[:i])


def _bfs_path(succ: dict[int, tuple[int, ...]], src: int, dst: int,
              skip_first: int | None = None) -> list[int] | None:
    """Shortest directed path src -> dst; skip_first suppresses the direct
    src -> skip_first step (used to rule out two-cycle returns)."""
    if src == dst:
        return [src]
    parent: dict[int, int] = {src: src}
    q = deque([src])
    while q:
        u = q.popleft()
        for w in succ.get(u, ()):
            if u == src and skip_first is not None and w == skip_first:
                continue
            if w in parent:
                continue
            parent[w] = u
            if w == dst:
                path = [w]
                while path[-1] != src:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            q.append(w)
    return None


def find_directed_cycle(d: DependencyDigraph, *, bad_only: bool = False,
                        allow_good_two_cycles: bool = False) -> CycleWitness | None:
    """Shortest-found forbidden directed cycle, or None.

    bad_only restricts to cycles through a negative edge; with
    allow_good_two_cycles, two-cycles whose both edges are positive are
    permitted (self-loops and longer cycles stay forbidden).
    """
    def witness(cycle: list[int]) -> CycleWitness:
        verts = _rotate_min(cycle)
        n = len(verts)
        bad = any((verts[i], verts[(i + 1) % n]) in d.negative for i in range(n))
        return CycleWitness("directed", verts, bad)

    best: list[int] | None = None

    if bad_only:
        for x, y in sorted(d.negative):
            if x == y:
                return witness([x])
        for x, y in sorted(d.negative):
            if best is not None and len(best) == 2:
                break
            path = _bfs_path(d.succ, y, x)  # y..x inclusive
            if path is not None and (best is None or len(path) < len(best)):
                best = [x] + path[:-1]
        return witness(best) if best is not None else None

    loops = sorted(u for u, v in d.edges if u == v)
    if loops:
        return witness([loops[0]])

    if allow_good_two_cycles:
        for u, v in sorted(d.edges):
            if u < v and (v, u) in d.edges:
                if (u, v) in d.negative or (v, u) in d.negative:
                    return witness([u, v])
        for u, v in sorted(d.edges):
            if best is not None and len(best) == 3:
                break
            path = _bfs_path(d.succ, v, u, skip_first=u)  # v..u, length >= 3 cycle
            if path is not None and (best is None or len(path) < len(best)):
                best = [u] + path[:-1]
        return witness(best) if best is not None else None

    for u, v in sorted(d.edges):
        if best is not None and len(best) == 2:
            break
        path = _bfs_path(d.succ, v, u)  # v..u inclusive
        if path is not None and (best is None or len(path) < len(best)):
            best = [u] + path[:-1]
    return witness(best) if best is not None else None


def _bfs_path_undirected(g: UndirectedDepGraph, src: int, dst: int,
                         banned: int) -> list[int] | None:
    if src == dst:
        return [src]
    parent: dict[int, int] = {src: src}
    q = deque([src])
    while q:
        u = q.popleft()
        for w in g.adj.get(u, ()):
            if w == banned or w in parent:
                continue
            parent[w] = u
            if w == dst:
                path = [w]
                while path[-1] != src:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            q.append(w)
    return None


def _cycle_through_negative_vertex(g: UndirectedDepGraph, i: int) -> list[int] | None:
    x, y = g.neg_edges[i]
    v = g.n_atoms + i
    if x == y:
        return [x, v]  # subdivided self-loop: the two parallel edge instances
    path = _bfs_path_undirected(g, x, y, banned=v)
    if path is None:
        return None
    return [v] + path


def _shortest_positive_cycle(g: UndirectedDepGraph) -> list[int] | None:
    """Shortest cycle using only atom-atom (positive) edges."""
    adj: dict[int, list[int]] = {}
    for u, v in sorted(g.pos_pairs):
        if u == v:
            continue
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    best: list[int] | None = None
    for s in sorted(adj):
        if best is not None and len(best) == 3:
            break
        parent = {s: -1}
        dist = {s: 0}
        q = deque([s])
        found: list[int] | None = None
        while q and found is None:
            u = q.popleft()
            for w in adj[u]:
                if w not in parent:
                    parent[w] = u
                    dist[w] = dist[u] + 1
                    q.append(w)
                elif parent[u] != w and parent.get(w) != u:
                    # non-tree edge closes a cycle through the BFS tree
                    anc = set()
                    a = u
                    while a != -1:
                        anc.add(a)
                        a = parent[a]
                    lca = w
                    while lca not in anc:
                        lca = parent[lca]
                    left = []
                    a = u
                    while a != lca:
                        left.append(a)
                        a = parent[a]
                    right = []
                    a = w
                    while a != lca:
                        right.append(a)
                        a = parent[a]
                    found = [lca] + list(reversed(left)) + right
                    break
        if found is not None and (best is None or len(found) < len(best)):
            best = found
    return best


def find_undirected_cycle(g: UndirectedDepGraph, *,
                          bad_only: bool = False) -> CycleWitness | None:
    """Shortest-found forbidden undirected cycle, or None.

    A cycle is bad iff it passes through a negative vertex; every cycle found
    through the per-negative-vertex search is bad by construction.
    """
    def witness(cycle: list[int], bad: bool) -> CycleWitness:
        return CycleWitness("undirected", _rotate_min(cycle), bad)

    best: list[int] | None = None
    for i in range(len(g.neg_edges)):
        c = _cycle_through_negative_vertex(g, i)
        if c is not None and (best is None or len(c) < len(best)):
            best = c
            if len(best) == 2:
                break
    if bad_only:
        return witness(best, True) if best is not None else None

    for u, v in sorted(g.pos_pairs):
        if u == v:
            return witness([u], False)  # positive loop (non-core input)
    pos = _shortest_positive_cycle(g)
    if pos is not None and (best is None or len(pos) < len(best)):
        return witness(pos, False)
    return witness(best, True) if best is not None else None


def witness_cycle(p: Program, c: TargetClass) -> CycleWitness | None:
    """Forbidden cycle of core(p) for an acyclicity-based class, or None."""
    if c not in ACYCLIC_CLASSES:
        raise ValueError(f"{c} is not an acyclicity-based class")
    q = core(p)
    if c is TargetClass.C_ACYC:
        return find_undirected_cycle(build_udg(q))
    if c is TargetClass.BC_ACYC:
        return find_undirected_cycle(build_udg(q), bad_only=True)
    if c is TargetClass.DC_ACYC:
        return find_directed_cycle(build_ddg(q))
    if c is TargetClass.DC2_ACYC:
        return find_directed_cycle(build_ddg(q), allow_good_two_cycles=True)
    return find_directed_cycle(build_ddg(q), bad_only=True)


def describe_witness(p: Program, w: CycleWitness) -> str:
    """Human-readable cycle like (w, r) or (s, v_(q,s), q, u).

    Labels undirected vertices against the graphs of core(p), matching what
    witness_cycle returned.
    """
    if w.kind == "directed":
        names = [p.atom_name(v) for v in w.vertices]
    else:
        g = build_udg(core(p))
        names = [g.vertex_label(v, p) for v in w.vertices]
    return "(" + ", ".join(names) + ")"


# ---------------------------------------------------------------------------
# incidence graph

@dataclass(frozen=True)
class IncidenceGraph:
    n_rules: int
    n_atoms: int
    edges: frozenset[tuple[int, int]]  # (rule index, atom id)


def incidence_graph(p: Program) -> IncidenceGraph:
    edges = {(i, a) for i, r in enumerate(p.rules) for a in r.atoms}
    return IncidenceGraph(len(p.rules), p.n_atoms, frozenset(edges))


# ---------------------------------------------------------------------------
# DOT export

def dot_ddg(p: Program) -> str:
    d = build_ddg(p)
    lines = ["digraph ddg {"]
    for i in range(p.n_atoms):
        lines.append(f'  "{p.atom_name(i)}";')
    for u, v in sorted(d.edges):
        style = " [style=dashed]" if (u, v) in d.negative else ""
        lines.append(f'  "{p.atom_name(u)}" -> "{p.atom_name(v)}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_udg(p: Program) -> str:
    g = build_udg(p)
    lines = ["graph udg {"]
    for i in range(p.n_atoms):
        lines.append(f'  "{p.atom_name(i)}";')
    emitted = []
    for i, (x, y) in enumerate(g.neg_edges):
        v = g.n_atoms + i
        label = g.vertex_label(v, p)
        lines.append(f'  "{label}" [shape=box];')
        emitted.append((p.atom_name(x), label))
        emitted.append((label, p.atom_name(y)))
    for u, v in sorted(g.pos_pairs):
        emitted.append((p.atom_name(u), p.atom_name(v)))
    for a, b in emitted:
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_incidence(p: Program) -> str:
    g = incidence_graph(p)
    lines = ["graph incidence {"]
    for i in range(g.n_rules):
        lines.append(f'  "r{i}" [shape=box];')
    for a in range(g.n_atoms):
        lines.append(f'  "{p.atom_name(a)}";')
    for i, a in sorted(g.edges):
        lines.append(f'  "r{i}" -- "{p.atom_name(a)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
