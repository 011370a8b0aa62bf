"""Explicit averaging conjugators and desk-scale ping-pong verification.

For a non-tree edge y with generator t, terminus generator a and origin
generator b, the conjugators are

    r1 = a t^-1 b t,   r2 = a t^-2 b t^2,   z_j = r1^j r2 r1^L,

and S'_j collects the elements whose sign sequence along y starts with j
copies of (-1, +1) followed by (-1, -1).  The verified inclusion is

    z_j g z_j^-1 (pi_1 minus S'_j)  inside  S'_j

for every g outside <a^N> whose y-length is at most L.  The theorem-proof
variant conjugates around an arbitrary group element g with letters
c, d in {a, e} protecting the junctions.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import lcm

from gbs import wordcore
from gbs.indices import big_N, check_theorem, kappa_pair, vertex_index
from gbs.words import GbsGroup, GroupElement, closed_words


class PingPongError(ValueError):
    """Preconditions of the averaging constructions are not met."""


@dataclass(frozen=True)
class Ce2Data:
    """Inputs and conjugators of the compact-open-subgroup averaging lemma."""

    group: GbsGroup
    edge: int
    a: GroupElement            # generator of the terminus vertex group
    b: GroupElement            # generator of the origin vertex group
    t: GroupElement            # stable letter g_y
    n: int                     # |alpha(y)|, index of iota_y
    m: int                     # |alpha(bar y)|, index of iota_bar-y
    N: int                     # <a^N> = <a> cap t^-2 <b> t^2
    L: int
    z: tuple                   # z_1 .. z_9


def build_ce2(group: GbsGroup, edge, L: int, count: int = 9) -> Ce2Data:
    """Construct the averaging data; L is supplied by the caller (the lemma
    takes the maximum y-length over the finite set under test)."""
    graph = group.graph
    e = graph.edge_id(edge) if isinstance(edge, str) else edge
    if not check_theorem(graph, group.spanning).sufficient_conditions_met:
        raise PingPongError("graph fails the sufficient simplicity conditions")
    if e in group.spanning.tree_edges:
        raise PingPongError(f"{graph.edge_name(e)} is a tree edge")
    ky, kyb = kappa_pair(graph, group.spanning, e)
    if ky == kyb:
        raise PingPongError(
            f"kappa values coincide at {graph.edge_name(e)} ({ky})")
    if L < 0:
        raise PingPongError("L must be nonnegative")

    a = group.vertex_generator(graph.terminus[e])
    b = group.vertex_generator(graph.origin[e])
    t = group.edge_generator(e)
    tinv = t.inverse()
    r1 = a * tinv * b * t
    r2 = a * tinv * tinv * b * t * t
    r1_L = r1 ** L
    z = []
    acc = group.identity()
    for _ in range(count):
        acc = acc * r1                      # acc = r1^j
        z.append(acc * r2 * r1_L)
    return Ce2Data(group=group, edge=e, a=a, b=b, t=t,
                   n=abs(graph.alpha[e]), m=abs(graph.alpha[e ^ 1]),
                   N=big_N(graph, group.spanning, e), L=L, z=tuple(z))


def averaging_elements(data: Ce2Data, count: int):
    """z_1 .. z_count; extends past the stored nine by the same pattern."""
    if count <= len(data.z):
        return list(data.z[:count])
    out = list(data.z)
    r1 = data.a * data.t.inverse() * data.b * data.t
    r2 = data.a * data.t.inverse() ** 2 * data.b * data.t ** 2
    r1_L = r1 ** data.L
    acc = r1 ** len(out)
    while len(out) < count:
        acc = acc * r1
        out.append(acc * r2 * r1_L)
    return out


def _prefix_matches_Sj(items, edge: int, j: int) -> bool:
    pair = edge // 2
    need = 2 * j + 2
    k = 0
    for i in range(1, len(items), 2):
        x = items[i]
        if x // 2 != pair:
            continue
        sign = 1 if x == edge else -1
        if k < 2 * j:
            if sign != (-1 if k % 2 == 0 else 1):
                return False
        else:
            if sign != -1:
                return False
        k += 1
        if k == need:
            return True
    return False


def in_Sj(f: GroupElement, data: Ce2Data, j: int) -> bool:
    """Membership in S'_j: y-length >= 2j+2 and the sign prefix is j copies
    of (-1, +1) followed by (-1, -1)."""
    return _prefix_matches_Sj(f.items, data.edge, j)


@dataclass(frozen=True)
class PingPongReport:
    pairs_checked: int
    passed: bool
    counterexample: dict | None
    g_count: int
    f_count: int
    excluded_g: int
    j_count: int

    def to_json_dict(self):
        return {
            "pairs_checked": self.pairs_checked,
            "pass": self.passed,
            "counterexample": self.counterexample,
        }


def verify_pingpong(data: Ce2Data, word_bound: int,
                    exponent_bound: int) -> PingPongReport:
    """Exhaustively check z_j g z_j^-1 f in S'_j.

    g ranges over canonical closed words with at most L edge letters and
    trailing exponent bounded by exponent_bound, minus <a^N>; f over words
    with at most word_bound edge letters, minus S'_j.  On graphs with tree
    edges the letter bounds cap the total edge length (the y-length is then
    automatically within the bound), which keeps the family finite.
    """
    group = data.group
    alpha = group.graph.alpha
    tvert = group.graph.terminus[data.edge]

    gs = []
    excluded = 0
    for items in closed_words(group, data.L, exponent_bound):
        el = GroupElement(group, list(items), _canonical=True)
        if group.cyclic_membership(el, tvert, data.N) is not None:
            excluded += 1
            continue
        gs.append(list(items))
    fs = [list(items) for items in closed_words(group, word_bound,
                                                exponent_bound)]

    pairs = 0
    counterexample = None
    for j in range(1, len(data.z) + 1):
        zj = list(data.z[j - 1].items)
        zj_inv = wordcore.sweep_items(wordcore.inv_items(zj), alpha)
        f_pool = [f for f in fs if not _prefix_matches_Sj(f, data.edge, j)]
        for g in gs:
            v = wordcore.mul_items(wordcore.mul_items(list(zj), g, alpha),
                                   list(zj_inv), alpha)
            for f in f_pool:
                pairs += 1
                u = wordcore.mul_items(list(v), f, alpha)
                if not _prefix_matches_Sj(u, data.edge, j):
                    counterexample = {
                        "j": j,
                        "g": str(GroupElement(group, g, _canonical=True)),
                        "f": str(GroupElement(group, f, _canonical=True)),
                        "product": str(GroupElement(group, u, _canonical=True)),
                    }
                    break
            if counterexample:
                break
        if counterexample:
            break

    return PingPongReport(
        pairs_checked=pairs,
        passed=counterexample is None,
        counterexample=counterexample,
        g_count=len(gs),
        f_count=len(fs),
        excluded_g=excluded,
        j_count=len(data.z),
    )


_CD_ORDER = ((0, 0), (1, 0), (0, 1), (1, 1))


def choose_cd(group: GbsGroup, edge, g: GroupElement):
    """First pair (c, d) over {e, a} x {e, a} such that all four words
    t^+-1 c g d t^+-1 gain exactly two y-letters over g.  Returns the pair
    as group elements together with their "e"/"a" flags."""
    graph = group.graph
    e = graph.edge_id(edge) if isinstance(edge, str) else edge
    if abs(graph.alpha[e ^ 1]) < 2:
        raise PingPongError("needs a proper edge subgroup at the origin")
    a = group.vertex_generator(graph.terminus[e])
    t = group.edge_generator(e)
    tinv = t.inverse()
    base_len = g.edge_letter_count(e)
    for cf, df in _CD_ORDER:
        c = a if cf else group.identity()
        d = a if df else group.identity()
        mid = c * g * d
        if all((u * mid * v).edge_letter_count(e) == base_len + 2
               for u in (t, tinv) for v in (t, tinv)):
            return (c, d), ("a" if cf else "e", "a" if df else "e")
    raise PingPongError("no junction letters found; this contradicts the "
                        "length lemma and needs investigation")


@dataclass(frozen=True)
class TheoremData:
    """Conjugators around an arbitrary element g, with the cyclic-subgroup
    realizations of the compact groups they stabilize."""

    group: GbsGroup
    edge: int
    g: GroupElement
    c: GroupElement
    d: GroupElement
    cd_flags: tuple
    rp1: GroupElement
    rp2: GroupElement
    w: tuple                   # w_i = rp1^-i rp2^-2
    ly_rp1: int
    K1_exponent: int
    K0_exponent: int


def build_theorem_data(group: GbsGroup, edge, g: GroupElement,
                       count: int) -> TheoremData:
    graph = group.graph
    e = graph.edge_id(edge) if isinstance(edge, str) else edge
    (c, d), flags = choose_cd(group, e, g)
    b = group.vertex_generator(graph.origin[e])
    t = group.edge_generator(e)
    ginv = g.inverse()

    def rprime(j):
        tj = t ** j
        tjinv = tj.inverse()
        return (g * d * tjinv * b * tj * d * ginv
                * c * tjinv * b * tj * c)

    rp1 = rprime(1)
    rp2 = rprime(2)
    rp1_inv = rp1.inverse()
    rp2_inv2 = rp2.inverse() ** 2
    w = []
    acc = group.identity()
    for _ in range(count):
        acc = acc * rp1_inv
        w.append(acc * rp2_inv2)

    k1 = vertex_index(rp2.inverse(), graph.terminus[e])
    n_exp = big_N(graph, group.spanning, e)
    return TheoremData(group=group, edge=e, g=g, c=c, d=d, cd_flags=flags,
                       rp1=rp1, rp2=rp2, w=tuple(w),
                       ly_rp1=rp1.edge_letter_count(e),
                       K1_exponent=k1, K0_exponent=lcm(n_exp, k1))


def in_Ui(f: GroupElement, data: TheoremData, i: int) -> bool:
    """Membership in U'_i: the sign prefix of length i*l_y(r'_1)+2 along the
    edge matches w_i's."""
    need = i * data.ly_rp1 + 2
    if f.edge_letter_count(data.edge) < need:
        return False
    return (f.sign_prefix(data.edge, need)
            == data.w[i - 1].sign_prefix(data.edge, need))


def make_negative_control(data: Ce2Data) -> Ce2Data:
    """Replace every conjugator by the identity; verification must then fail."""
    ident = data.group.identity()
    return replace(data, z=tuple(ident for _ in data.z))
