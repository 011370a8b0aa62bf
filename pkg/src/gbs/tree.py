"""Finite balls of the universal covering tree and the group action.

Vertices of the covering are cosets g G_P, one family per vertex type P.
A coset is keyed by the canonical form of a representative path word from
the base to P with its trailing exponent zeroed; right multiplication by
powers of a_P only moves that trailing exponent, so the key is a faithful
coset invariant.

Neighbours of g G_P: for every edge e with origin P and every residue
rho in {0, ..., |alpha(bar e)| - 1}, the coset (g a_P^rho g_e) G_{t(e)}.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from gbs import wordcore
from gbs.graphs import Decomposition, GbsGraph, GraphError, compute_spanning_tree, decompose
from gbs.words import GbsGroup, GroupElement, WordError, path_string


class SearchExhausted(RuntimeError):
    """A bounded tree search ran out of radius before succeeding."""


@dataclass(frozen=True)
class TreeVertex:
    """A coset g G_P: vertex type plus canonical representative key."""

    vertex: int
    key: tuple

    def rep_items(self):
        """A representative path word (list) from the base, trailing exponent 0."""
        return list(self.key)


def coset_vertex(group: GbsGroup, items, vertex: int) -> TreeVertex:
    """Key the coset of the path word ``items`` (base -> vertex)."""
    key = wordcore.canon_items(list(items), group.graph.alpha)
    key[-1] = 0
    return TreeVertex(vertex, tuple(key))


def base_vertex(group: GbsGroup) -> TreeVertex:
    return TreeVertex(group.base, (0,))


def act(group: GbsGroup, g: GroupElement, v: TreeVertex) -> TreeVertex:
    """Left multiplication on cosets."""
    items = wordcore.mul_items(list(g.items), v.rep_items(), group.graph.alpha)
    items[-1] = 0
    return TreeVertex(v.vertex, tuple(items))


def stabilizes(group: GbsGroup, g: GroupElement, v: TreeVertex) -> bool:
    """True iff h^-1 g h lies in the vertex group, h a representative."""
    alpha = group.graph.alpha
    h = v.rep_items()
    hinv = wordcore.sweep_items(wordcore.inv_items(h), alpha)
    conj = wordcore.mul_items(wordcore.mul_items(hinv, list(g.items), alpha),
                              h, alpha)
    return len(conj) == 1


def _neighbors(group: GbsGroup, v: TreeVertex):
    """Neighbour cosets with their (edge, residue) labels, deterministic order."""
    graph = group.graph
    out = []
    rep = v.rep_items()
    for e in range(graph.n_edges):
        if graph.origin[e] != v.vertex:
            continue
        for rho in range(abs(graph.alpha[e ^ 1])):
            items = list(rep)
            items[-1] = rho
            items.append(e)
            items.append(0)
            items = wordcore.canon_items(items, graph.alpha)
            items[-1] = 0
            out.append((TreeVertex(graph.terminus[e], tuple(items)), e, rho))
    return out


@dataclass
class TreeBall:
    """A radius-r ball around the base coset, BFS order, frontier flagged."""

    group: GbsGroup
    radius: int
    vertices: list = field(default_factory=list)
    depth: dict = field(default_factory=dict)
    edges: list = field(default_factory=list)   # (i, j, edge, residue)

    @property
    def center(self) -> TreeVertex:
        return self.vertices[0]

    def index(self, v: TreeVertex):
        return self.depth[v][1]

    def is_frontier(self, v: TreeVertex) -> bool:
        return self.depth[v][0] == self.radius

    def degree(self, v: TreeVertex) -> int:
        i = self.index(v)
        return sum(1 for a, b, _, _ in self.edges if a == i or b == i)

    def interior_vertices(self):
        return [v for v in self.vertices if not self.is_frontier(v)]

    def is_tree(self) -> bool:
        return len(self.edges) == len(self.vertices) - 1 and self._connected()

    def _connected(self) -> bool:
        if not self.vertices:
            return False
        adj = {i: [] for i in range(len(self.vertices))}
        for a, b, _, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.vertices)

    def vertex_label(self, v: TreeVertex) -> str:
        name = self.group.graph.vertices[v.vertex]
        rep = path_string(self.group.graph, self.group.base, v.key)
        return f"{name} | {rep}"

    def to_dot(self) -> str:
        graph = self.group.graph
        lines = ["graph ball {"]
        for i, v in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{self.vertex_label(v)}"];')
        for a, b, e, rho in self.edges:
            lines.append(f'  v{a} -- v{b} [label="{graph.edge_name(e)}:{rho}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self):
        graph = self.group.graph
        return {
            "radius": self.radius,
            "vertices": [
                {
                    "id": i,
                    "vertex": graph.vertices[v.vertex],
                    "key": path_string(graph, self.group.base, v.key),
                    "depth": self.depth[v][0],
                    "frontier": self.is_frontier(v),
                }
                for i, v in enumerate(self.vertices)
            ],
            "edges": [
                {"source": a, "target": b,
                 "edge": graph.edge_name(e), "residue": rho}
                for a, b, e, rho in self.edges
            ],
        }


def ball(group: GbsGroup, radius: int) -> TreeBall:
    """BFS ball around the base coset; vertices deduplicated by coset key."""
    if radius < 0:
        raise GraphError("radius must be nonnegative")
    b = TreeBall(group=group, radius=radius)
    start = base_vertex(group)
    b.vertices.append(start)
    b.depth[start] = (0, 0)
    queue = deque([start])
    while queue:
        v = queue.popleft()
        d = b.depth[v][0]
        if d == radius:
            continue
        for w, e, rho in _neighbors(group, v):
            if w not in b.depth:
                b.depth[w] = (d + 1, len(b.vertices))
                b.vertices.append(w)
                b.edges.append((b.index(v), b.index(w), e, rho))
                queue.append(w)
    return b


def moved_vertex(group: GbsGroup, g: GroupElement, max_radius: int):
    """First tree vertex moved by g, lazy BFS.  Errors on the identity, and
    raises SearchExhausted when no moved vertex shows up within the radius."""
    if g.is_identity():
        raise WordError("the identity moves no vertex")
    start = base_vertex(group)
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        v, d = queue.popleft()
        if act(group, g, v) != v:
            return v, d
        if d == max_radius:
            continue
        for w, _, _ in _neighbors(group, v):
            if w not in seen:
                seen.add(w)
                queue.append((w, d + 1))
    raise SearchExhausted(
        f"no moved vertex within radius {max_radius}")


def _avoiding_geodesics(group: GbsGroup, pair: int):
    """Base geodesics through a maximal subtree avoiding one edge pair.
    Fails when removing the pair disconnects the graph."""
    graph = group.graph
    pruned = _PrunedView(graph, pair)
    tree = compute_spanning_tree(pruned, group.base)
    paths = {group.base: [0]}
    queue = deque([group.base])
    while queue:
        v = queue.popleft()
        for x in range(graph.n_edges):
            if x in tree and graph.origin[x] == v and graph.terminus[x] not in paths:
                paths[graph.terminus[x]] = paths[v] + [x, 0]
                queue.append(graph.terminus[x])
    return paths


def stable_letter(group: GbsGroup, edge) -> GroupElement:
    """The element acting as the stable letter of the HNN splitting at a
    non-separating edge: the edge generator taken through a maximal subtree
    that avoids the edge pair."""
    graph = group.graph
    e = graph.edge_id(edge) if isinstance(edge, str) else edge
    if e not in group.spanning.tree_edges:
        return group.edge_generator(e)
    paths = _avoiding_geodesics(group, e // 2)
    items = list(paths[graph.origin[e]])
    items.append(e)
    items.extend(wordcore.inv_items(paths[graph.terminus[e]]))
    return group.element(items)


def _transporter(group: GbsGroup, paths, vertex: int) -> GroupElement:
    """Closed word moving the avoiding-subtree embedding of the vertex
    group at ``vertex`` onto the spanning-tree embedding."""
    items = list(paths[vertex])
    back = wordcore.inv_items(group.geodesic_items(vertex))
    items[-1] += back[0]
    items.extend(back[1:])
    return group.element(items)


class _PrunedView:
    """Read-only view of a graph with one edge pair removed, enough for
    compute_spanning_tree."""

    def __init__(self, graph: GbsGraph, skip_pair: int):
        self._g = graph
        self._skip = skip_pair
        self.n_vertices = graph.n_vertices
        self.n_edges = graph.n_edges
        self.origin = [
            -1 if e // 2 == skip_pair else graph.origin[e]
            for e in range(graph.n_edges)
        ]
        self.terminus = graph.terminus


def stabilizer_cover(group: GbsGroup, g: GroupElement, edge):
    """Two origin-type tree vertices whose joint stabilizer is contained in
    the stabilizer of g G_{t(edge)}.

    HNN branch (removal keeps the graph connected): {g G_P, g s^-1 G_P}
    with s the stable letter of the splitting at the edge.  When the edge
    lies in the spanning tree the splitting is written through a different
    maximal subtree, so the vertices pick up the tree-change transporters
    of the two endpoint groups.  Amalgam branch: {g G_P, g a_Q G_P}; needs
    |alpha(edge)| >= 2 so a_Q witnesses G_Q minus the edge subgroup.
    """
    graph = group.graph
    e = graph.edge_id(edge) if isinstance(edge, str) else edge
    p = graph.origin[e]
    pcoset = coset_vertex(group, group.geodesic_items(p), p)
    dec = decompose(graph, e)
    if dec.kind == Decomposition.HNN:
        if e not in group.spanning.tree_edges:
            first = act(group, g, pcoset)
            second = act(group, g * group.edge_generator(e).inverse(), pcoset)
        else:
            paths = _avoiding_geodesics(group, e // 2)
            s_items = list(paths[p])
            s_items.append(e)
            s_items.extend(wordcore.inv_items(paths[graph.terminus[e]]))
            s = group.element(s_items)
            sigma = _transporter(group, paths, p)
            tau = _transporter(group, paths, graph.terminus[e])
            left = g * tau.inverse()
            first = act(group, left * sigma, pcoset)
            second = act(group, left * s.inverse() * sigma, pcoset)
    else:
        if abs(graph.alpha[e]) < 2:
            raise GraphError(
                "amalgam branch needs a proper edge subgroup at the terminus")
        b = group.vertex_generator(graph.terminus[e])
        first = act(group, g, pcoset)
        second = act(group, g * b, pcoset)
    return [first, second]
