"""Index arithmetic along the spanning tree and the simplicity criterion.

All formulas use absolute values of the injection integers.  Two naming
conventions coexist in the literature for an edge y; we pin them here once:

* geodesic recursion: each step i uses n_i = |alpha(bar y_i)| (index of the
  edge group in the origin vertex group) and m_i = |alpha(y_i)| (index in
  the terminus group);
* the averaging constant N for a non-tree edge y uses n = |alpha(y)| and
  m = |alpha(bar y)| -- i.e. the roles flip.  Report fields are therefore
  labeled by the alpha they come from, never by bare n/m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from gbs import wordcore
from gbs.graphs import GbsGraph, GraphError, SpanningData
from gbs.words import GbsGroup, GroupElement


def geodesic_k(graph: GbsGraph, spanning: SpanningData, path) -> int:
    """k_c along a tree path, by the gcd recursion; 1 for the empty path.

    In the group, [G_{t(end)} : G_{t(end)} cap G_{o(start)}] equals k_c.
    """
    k = 1
    prev_end = None
    for e in path:
        if e not in spanning.tree_edges:
            raise GraphError(f"edge {graph.edge_name(e)} is not a tree edge")
        if prev_end is not None and graph.origin[e] != prev_end:
            raise GraphError("edges do not form a path")
        prev_end = graph.terminus[e]
        m_i = abs(graph.alpha[e])
        n_i = abs(graph.alpha[e ^ 1])
        k = k * m_i // gcd(k, n_i)
    return k


def kappa_pair(graph: GbsGraph, spanning: SpanningData, edge):
    """(kappa_y, kappa_ybar): indices of the edge-group intersection inside
    each of the two edge-group images."""
    e = graph.edge_id(edge) if isinstance(edge, str) else edge
    m = abs(graph.alpha[e])
    n = abs(graph.alpha[e ^ 1])
    kpy, kpy_bar = k_prime_pair(graph, spanning, edge)
    return kpy // m, kpy_bar // n


def k_prime_pair(graph: GbsGraph, spanning: SpanningData, edge):
    """(k'_y, k'_ybar): relative orders of the edge-group intersection in the
    terminus and origin vertex groups."""
    e = graph.edge_id(edge) if isinstance(edge, str) else edge
    group = GbsGroup(graph, spanning)
    c = group.tree_path(graph.origin[e], graph.terminus[e])
    cbar = [x ^ 1 for x in reversed(c)]
    kc = geodesic_k(graph, spanning, c)
    kcbar = geodesic_k(graph, spanning, cbar)
    m = abs(graph.alpha[e])
    n = abs(graph.alpha[e ^ 1])
    kp_bar = lcm(n, kcbar * m // gcd(m, kc))
    kp = lcm(m, kc * n // gcd(n, kcbar))
    return kp, kp_bar


def big_N(graph: GbsGraph, spanning: SpanningData, edge) -> int:
    """The constant with <a^N> = <a> cap t^-2 <b> t^2 for a non-tree edge,
    where a, b generate the terminus and origin vertex groups and t is the
    edge generator."""
    e = graph.edge_id(edge) if isinstance(edge, str) else edge
    if e in spanning.tree_edges:
        raise GraphError(f"edge {graph.edge_name(e)} lies in the spanning tree")
    group = GbsGroup(graph, spanning)
    gamma = group.tree_path(graph.origin[e], graph.terminus[e])
    gamma_bar = [x ^ 1 for x in reversed(gamma)]
    kg = geodesic_k(graph, spanning, gamma)
    kgb = geodesic_k(graph, spanning, gamma_bar)
    n = abs(graph.alpha[e])
    m = abs(graph.alpha[e ^ 1])
    return n * n * kgb // (gcd(n, kg * m // gcd(m, kgb)) * gcd(m, kgb))


def modular_value(g: GroupElement) -> Fraction:
    """Multiplicative scaling factor of g: the product over edge letters of
    alpha(bar e)/alpha(e).  A homomorphism into the nonzero rationals; its
    absolute value is the modular function of the tree-closure group."""
    graph = g.group.graph
    q = Fraction(1)
    for i in range(1, len(g.items), 2):
        e = g.items[i]
        q *= Fraction(graph.alpha[e ^ 1], graph.alpha[e])
    return q


def vertex_index(g: GroupElement, vertex) -> int:
    """Minimal k > 0 with g a_P^k g^-1 back in <a_P>.

    The set of such k is a subgroup of Z containing the product of the
    |alpha| over the transporting word's letters, so only divisors of that
    product need testing.
    """
    group = g.group
    graph = group.graph
    alpha = graph.alpha
    v = graph.vertex_id(vertex) if isinstance(vertex, str) else vertex
    a = group.vertex_generator(v)
    geo = group.geodesic_items(v)
    inv_geo = wordcore.sweep_items(wordcore.inv_items(geo), alpha)
    h = wordcore.mul_items(wordcore.mul_items(list(inv_geo), list(g.items), alpha),
                           list(geo), alpha)
    bound = 1
    for i in range(1, len(h), 2):
        bound *= abs(alpha[h[i]])
    for k in _sorted_divisors(bound):
        if group.as_vertex_power(g * a ** k * g.inverse(), v) is not None:
            return k
    raise AssertionError("finiteness bound violated")  # unreachable by the bound


def _sorted_divisors(n: int):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class TheoremVerdict:
    """The four sufficient conditions for C*-simplicity of the closure."""

    not_a_tree: bool
    all_groups_z: bool
    exists_kappa_mismatch: bool
    witness_edge: str | None
    all_proper: bool

    @property
    def sufficient_conditions_met(self) -> bool:
        return (self.not_a_tree and self.all_groups_z
                and self.exists_kappa_mismatch and self.all_proper)

    def to_json_dict(self):
        return {
            "not_a_tree": self.not_a_tree,
            "all_groups_z": self.all_groups_z,
            "exists_kappa_mismatch": self.exists_kappa_mismatch,
            "witness_edge": self.witness_edge,
            "all_proper": self.all_proper,
            "sufficient_conditions_met": self.sufficient_conditions_met,
        }


def check_theorem(graph: GbsGraph, spanning: SpanningData) -> TheoremVerdict:
    """Evaluate the sufficient conditions; the verdict is data, not a proof
    of non-simplicity when it fails."""
    non_tree = [2 * i for i in range(len(graph.edge_names))
                if 2 * i not in spanning.tree_edges]
    witness = None
    for e in non_tree:
        ky, kyb = kappa_pair(graph, spanning, e)
        if ky != kyb:
            witness = graph.edge_name(e)
            break
    all_proper = all(abs(graph.alpha[e]) >= 2 for e in range(graph.n_edges))
    return TheoremVerdict(
        not_a_tree=bool(non_tree),
        all_groups_z=True,
        exists_kappa_mismatch=witness is not None,
        witness_edge=witness,
        all_proper=all_proper,
    )


@dataclass(frozen=True)
class IndexReport:
    kappa: dict            # declared edge -> (kappa_y, kappa_ybar)
    k_prime: dict          # declared edge -> (k'_y, k'_ybar)
    proper: dict           # directed edge name -> bool
    big_n: dict            # non-tree declared edge -> N
    verdict: TheoremVerdict

    def to_json_dict(self):
        return {
            "not_a_tree": self.verdict.not_a_tree,
            "kappa": {k: list(v) for k, v in self.kappa.items()},
            "proper": dict(self.proper),
            "witness_edge": self.verdict.witness_edge,
            "sufficient_conditions_met": self.verdict.sufficient_conditions_met,
            "big_N": dict(self.big_n),
        }


def index_report(graph: GbsGraph, spanning: SpanningData) -> IndexReport:
    kappa = {}
    k_prime = {}
    for i, name in enumerate(graph.edge_names):
        kappa[name] = kappa_pair(graph, spanning, 2 * i)
        k_prime[name] = k_prime_pair(graph, spanning, 2 * i)
    proper = {graph.edge_name(e): abs(graph.alpha[e]) >= 2
              for e in range(graph.n_edges)}
    big_n = {}
    for i, name in enumerate(graph.edge_names):
        if 2 * i not in spanning.tree_edges:
            big_n[name] = big_N(graph, spanning, 2 * i)
    return IndexReport(kappa=kappa, k_prime=k_prime, proper=proper,
                       big_n=big_n, verdict=check_theorem(graph, spanning))
