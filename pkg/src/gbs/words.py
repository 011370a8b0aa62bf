"""Path words and the fundamental group of a graph of groups.

Elements are closed path words at the base vertex, kept in a reduced
canonical form: no pinches, and every exponent in front of an edge ``e``
lies in the left transversal ``{0, ..., |alpha(bar e)| - 1}``; the trailing
exponent is unconstrained.  Two words are equal in the group iff their
canonical forms coincide, so equality and hashing are structural.

Generators named in the word grammar are mapped through the maximal
subtree: ``a[P]`` becomes geodesic * a_P * geodesic and ``g[y]`` becomes
geodesic * y * geodesic, with zero exponents on the tree letters.  Tree
letters with zero exponent disappear when printing, which realizes the
quotient that kills the subtree.
"""

from __future__ import annotations

import random
import re

from gbs import wordcore
from gbs.graphs import GbsGraph, GraphError, SpanningData, parse_graph


class WordError(ValueError):
    """Invalid word input (grammar, path consistency, or base mismatch)."""


class PathWord:
    """A word r0 y1 r1 ... yn rn along a path of the graph.

    ``items`` is the flat kernel layout; ``start`` is the origin vertex of
    the first edge (and of the whole word when it has no edges).
    """

    __slots__ = ("graph", "start", "items")

    def __init__(self, graph: GbsGraph, start: int, items):
        items = list(items)
        if len(items) % 2 != 1:
            raise WordError("items must alternate exponent, edge, ..., exponent")
        v = start
        for i in range(1, len(items), 2):
            e = items[i]
            if not 0 <= e < graph.n_edges:
                raise WordError(f"unknown edge index {e}")
            if graph.origin[e] != v:
                raise WordError(
                    f"edge {graph.edge_name(e)} does not start at "
                    f"{graph.vertices[v]} (position {i})")
            v = graph.terminus[e]
        self.graph = graph
        self.start = start
        self.items = tuple(items)

    @property
    def end(self) -> int:
        v = self.start
        for i in range(1, len(self.items), 2):
            v = self.graph.terminus[self.items[i]]
        return v

    @property
    def edge_length(self) -> int:
        return len(self.items) // 2

    def reduced(self) -> "PathWord":
        return PathWord(self.graph, self.start,
                        wordcore.reduce_items(list(self.items), self.graph.alpha))

    def canonical(self) -> "PathWord":
        return PathWord(self.graph, self.start,
                        wordcore.canon_items(list(self.items), self.graph.alpha))

    def is_reduced(self) -> bool:
        it = self.items
        alpha = self.graph.alpha
        for i in range(3, len(it), 2):
            if it[i] == it[i - 2] ^ 1 and it[i - 1] % alpha[it[i - 2]] == 0:
                return False
        return True

    def __eq__(self, other):
        return (isinstance(other, PathWord) and self.graph is other.graph
                and self.start == other.start and self.items == other.items)

    def __hash__(self):
        return hash((self.start, self.items))

    def __repr__(self):
        return f"PathWord({path_string(self.graph, self.start, self.items)})"


class GroupElement:
    """Element of the fundamental group: a canonical closed word at base."""

    __slots__ = ("group", "items")

    def __init__(self, group: "GbsGroup", items, _canonical=False):
        if not _canonical:
            items = wordcore.canon_items(list(items), group.graph.alpha)
        self.group = group
        self.items = tuple(items)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.group is not self.group:
            raise WordError("elements of different groups")
        items = wordcore.mul_items(list(self.items), list(other.items),
                                   self.group.graph.alpha)
        return GroupElement(self.group, items, _canonical=True)

    def inverse(self) -> "GroupElement":
        items = wordcore.sweep_items(wordcore.inv_items(list(self.items)),
                                     self.group.graph.alpha)
        return GroupElement(self.group, items, _canonical=True)

    def __pow__(self, k: int) -> "GroupElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = self.group.identity()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate_by(self, z: "GroupElement") -> "GroupElement":
        """z * self * z^-1."""
        return z * self * z.inverse()

    def is_identity(self) -> bool:
        return self.items == (0,)

    @property
    def edge_length(self) -> int:
        return len(self.items) // 2

    def edge_letter_count(self, edge) -> int:
        """Occurrences of ``edge`` or its reversal among the letters (l_y)."""
        e = self._edge(edge)
        pair = e // 2
        return sum(1 for i in range(1, len(self.items), 2)
                   if self.items[i] // 2 == pair)

    def sign_prefix(self, edge, count: int):
        """First ``count`` signs of the edge-letter sequence: +1 for the
        edge as given, -1 for its reversal."""
        e = self._edge(edge)
        signs = []
        for i in range(1, len(self.items), 2):
            x = self.items[i]
            if x // 2 == e // 2:
                signs.append(1 if x == e else -1)
                if len(signs) == count:
                    return tuple(signs)
        raise WordError(
            f"word has only {len(signs)} letters from the pair, {count} requested")

    def _edge(self, edge) -> int:
        return self.group.graph.edge_id(edge) if isinstance(edge, str) else edge

    def __eq__(self, other):
        return (isinstance(other, GroupElement) and other.group is self.group
                and other.items == self.items)

    def __hash__(self):
        return hash(self.items)

    def __str__(self):
        return self.group.to_string(self)

    def __repr__(self):
        return f"<{self}>"


class GbsGroup:
    """The fundamental group pi_1(G, Y, T) with a fixed base vertex."""

    def __init__(self, graph: GbsGraph, spanning: SpanningData):
        self.graph = graph
        self.spanning = spanning
        self.base = spanning.base
        self._geo = self._base_geodesics()

    @classmethod
    def from_text(cls, text: str) -> "GbsGroup":
        return cls(*parse_graph(text))

    def _base_geodesics(self):
        """Edge path in the tree from the base to every vertex."""
        paths = {self.base: []}
        queue = [self.base]
        while queue:
            v = queue.pop(0)
            for e in range(self.graph.n_edges):
                if (e in self.spanning.tree_edges and self.graph.origin[e] == v
                        and self.graph.terminus[e] not in paths):
                    paths[self.graph.terminus[e]] = paths[v] + [e]
                    queue.append(self.graph.terminus[e])
        if len(paths) != self.graph.n_vertices:
            raise GraphError("spanning tree does not reach every vertex")
        return paths

    def geodesic_items(self, v: int, reverse=False):
        """Zero-exponent tree word base->v (or v->base when ``reverse``)."""
        path = self._geo[v]
        if reverse:
            path = [e ^ 1 for e in reversed(path)]
        items = [0]
        for e in path:
            items.append(e)
            items.append(0)
        return items

    def tree_path(self, p: int, q: int):
        """Edge path p -> q inside the spanning tree."""
        up = [e ^ 1 for e in reversed(self._geo[p])]
        down = list(self._geo[q])
        while up and down and up[-1] == (down[0] ^ 1):
            up.pop()
            down.pop(0)
        return up + down

    # -- constructors --------------------------------------------------------

    def identity(self) -> GroupElement:
        return GroupElement(self, [0], _canonical=True)

    def element(self, items) -> GroupElement:
        """Canonicalize a closed word given as a flat item list."""
        word = PathWord(self.graph, self.base, items)
        if word.end != self.base:
            raise WordError("word is not closed at the base vertex")
        return GroupElement(self, items)

    def vertex_generator(self, vertex, power=1) -> GroupElement:
        """a_P^power, transported to the base along the tree."""
        v = self.graph.vertex_id(vertex) if isinstance(vertex, str) else vertex
        items = self.geodesic_items(v)
        items[-1] = power
        rest = self.geodesic_items(v, reverse=True)
        items[-1] += rest[0]
        items.extend(rest[1:])
        return GroupElement(self, items)

    def edge_generator(self, edge) -> GroupElement:
        """g_y: geodesic to o(y), the letter y, geodesic back from t(y)."""
        e = self.graph.edge_id(edge) if isinstance(edge, str) else edge
        items = self.geodesic_items(self.graph.origin[e])
        items.append(e)
        rest = self.geodesic_items(self.graph.terminus[e], reverse=True)
        items.extend(rest)
        return GroupElement(self, items)

    def path_word(self, start, items) -> PathWord:
        v = self.graph.vertex_id(start) if isinstance(start, str) else start
        return PathWord(self.graph, v, items)

    def close(self, word: PathWord) -> GroupElement:
        """Interpret a closed path word at the base as a group element."""
        if word.start != self.base or word.end != self.base:
            raise WordError("word is not closed at the base vertex")
        return GroupElement(self, list(word.items))

    # -- membership ----------------------------------------------------------

    def as_vertex_power(self, g: GroupElement, vertex):
        """Return r with g = a_P^r in the group, or None."""
        v = self.graph.vertex_id(vertex) if isinstance(vertex, str) else vertex
        alpha = self.graph.alpha
        geo = self.geodesic_items(v)
        inv_geo = wordcore.sweep_items(wordcore.inv_items(geo), alpha)
        items = wordcore.mul_items(
            wordcore.mul_items(inv_geo, list(g.items), alpha), geo, alpha)
        if len(items) == 1:
            return items[0]
        return None

    def cyclic_membership(self, g: GroupElement, vertex, k: int):
        """Return s with g = a_P^(k*s), or None.  Requires k > 0."""
        if k <= 0:
            raise WordError("k must be positive")
        r = self.as_vertex_power(g, vertex)
        if r is None or r % k != 0:
            return None
        return r // k

    # -- word grammar ---------------------------------------------------------

    _TOKEN = re.compile(r"\s*(?:(\*)|(\^-?\d+)|(a\[[A-Za-z_][A-Za-z0-9_]*\])"
                        r"|(g\[~?[A-Za-z_][A-Za-z0-9_]*\])|(1)|(\S))")

    def from_string(self, text: str) -> GroupElement:
        """Parse ``word := '1' | factor ('*' factor)*`` with
        ``factor := atom ('^' int)?`` and ``atom := a[P] | g[~?y]``."""
        text = text.strip()
        factors = []
        pos, n = 0, len(text)
        expect_atom = True
        while pos < n:
            m = self._TOKEN.match(text, pos)
            if not m or m.group(6):
                raise WordError(f"bad word syntax at position {pos}: {text[pos:pos+10]!r}")
            pos = m.end()
            star, power, atom_a, atom_g, one = m.group(1, 2, 3, 4, 5)
            if star:
                if expect_atom:
                    raise WordError("misplaced '*'")
                expect_atom = True
            elif power:
                if expect_atom or not factors:
                    raise WordError("misplaced exponent")
                factors[-1] = factors[-1] ** int(power[1:])
            elif one:
                if not expect_atom:
                    raise WordError("misplaced '1'")
                factors.append(self.identity())
                expect_atom = False
            else:
                if not expect_atom:
                    raise WordError("missing '*' between factors")
                if atom_a:
                    factors.append(self.vertex_generator(atom_a[2:-1]))
                else:
                    factors.append(self.edge_generator(atom_g[2:-1]))
                expect_atom = False
        if expect_atom:
            raise WordError("empty word" if not factors else "dangling '*'")
        out = self.identity()
        for f in factors:
            out = out * f
        return out

    def to_string(self, g: GroupElement) -> str:
        """Print in the word grammar; tree letters are suppressed (they are
        identity in the group), their exponents stay at their vertices."""
        parts = []
        v = self.base
        items = g.items
        for i, x in enumerate(items):
            if i % 2 == 0:
                if x != 0:
                    name = self.graph.vertices[v]
                    parts.append(f"a[{name}]" + (f"^{x}" if x != 1 else ""))
            else:
                if x not in self.spanning.tree_edges:
                    parts.append(f"g[{self.graph.edge_name(x)}]")
                v = self.graph.terminus[x]
        return "*".join(parts) if parts else "1"


def path_string(graph: GbsGraph, start: int, items) -> str:
    """Verbatim rendering of a path word, tree letters included."""
    parts = []
    v = start
    for i, x in enumerate(items):
        if i % 2 == 0:
            if x != 0:
                parts.append(f"a[{graph.vertices[v]}]" + (f"^{x}" if x != 1 else ""))
        else:
            parts.append(f"g[{graph.edge_name(x)}]")
            v = graph.terminus[x]
    return "*".join(parts) if parts else "1"


# -- enumeration and random words ---------------------------------------------


def closed_words(group: GbsGroup, max_edges: int, exp_bound: int):
    """Yield every canonical closed word at the base with at most
    ``max_edges`` edge letters and trailing exponent in
    ``[-exp_bound, exp_bound]``.

    Canonical forms are generated directly (transversal residues, no zero
    residue at a back-to-back pair), so each group element appears exactly
    once.  Words are emitted as item tuples.
    """
    graph = group.graph
    dist = _distances_to(graph, group.base)

    def rec(v, items, remaining):
        if v == group.base:
            for r in range(-exp_bound, exp_bound + 1):
                items[-1] = r
                yield tuple(items)
            items[-1] = 0
        if remaining == 0:
            return
        last_edge = items[-2] if len(items) >= 2 else None
        for e in range(graph.n_edges):
            if graph.origin[e] != v:
                continue
            if remaining - 1 < dist[graph.terminus[e]]:
                continue
            m = abs(graph.alpha[e ^ 1])
            lo = 1 if (last_edge is not None and e == last_edge ^ 1) else 0
            for rho in range(lo, m):
                items[-1] = rho
                items.append(e)
                items.append(0)
                yield from rec(graph.terminus[e], items, remaining - 1)
                items.pop()
                items.pop()
            items[-1] = 0

    yield from rec(group.base, [0], max_edges)


def _distances_to(graph: GbsGraph, target: int):
    dist = {target: 0}
    queue = [target]
    while queue:
        v = queue.pop(0)
        for e in range(graph.n_edges):
            if graph.terminus[e] == v and graph.origin[e] not in dist:
                dist[graph.origin[e]] = dist[v] + 1
                queue.append(graph.origin[e])
    return dist


def random_closed_word(group: GbsGroup, rng: random.Random, max_edges: int,
                       exp_bound: int, nontrivial=True):
    """Random canonical closed word: a random tree-constrained edge walk
    with random transversal residues and trailing exponent."""
    graph = group.graph
    dist = _distances_to(graph, group.base)
    for _ in range(1000):
        length = rng.randint(0, max_edges)
        items = [0]
        v = group.base
        ok = True
        for step in range(length):
            remaining = length - step
            options = [e for e in graph.edges_from(v)
                       if dist[graph.terminus[e]] <= remaining - 1]
            if not options:
                ok = False
                break
            e = rng.choice(options)
            m = abs(graph.alpha[e ^ 1])
            lo = 1 if (len(items) >= 3 and items[-2] == e ^ 1) else 0
            if lo >= m:
                ok = False
                break
            items[-1] = rng.randint(lo, m - 1)
            items.append(e)
            items.append(0)
        if not ok:
            continue
        items[-1] = rng.randint(-exp_bound, exp_bound)
        if nontrivial and items == [0]:
            continue
        return GroupElement(group, items, _canonical=True)
    raise RuntimeError("failed to sample a word")
