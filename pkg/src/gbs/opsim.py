"""Truncated regular-representation numerics.

Formal group-algebra elements keep exact rational coefficients until matrix
assembly; operators act on the span of a finite ball of group elements, so
every norm estimate is a compression and therefore a lower bound on the
untruncated operator norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix

from gbs.pingpong import Ce2Data, averaging_elements
from gbs.words import GbsGroup, GroupElement


class OpsimError(ValueError):
    pass


class NormConvergenceError(RuntimeError):
    """Power iteration hit max_iter; carries the last estimate."""

    def __init__(self, last_estimate, iterations):
        self.last_estimate = last_estimate
        self.iterations = iterations
        super().__init__(
            f"no convergence after {iterations} iterations "
            f"(last estimate {last_estimate})")


def _conj(c):
    return c.conjugate() if isinstance(c, complex) else c


def _exact(c):
    return isinstance(c, (int, Fraction))


class FormalElement:
    """Finitely supported map from group elements to coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for g, c in terms.items():
                if c != 0:
                    self.terms[g] = self.terms.get(g, 0) + c
            self.terms = {g: c for g, c in self.terms.items() if c != 0}

    @classmethod
    def lam(cls, g: GroupElement, coeff=1) -> "FormalElement":
        return cls({g: coeff})

    def support(self):
        return list(self.terms.keys())

    def coefficient(self, g: GroupElement):
        return self.terms.get(g, 0)

    @property
    def exact(self) -> bool:
        return all(_exact(c) for c in self.terms.values())

    def __add__(self, other):
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return FormalElement(out)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar):
        return FormalElement({g: scalar * c for g, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, FormalElement):
            return FormalElement({g: c * other for g, c in self.terms.items()})
        out = {}
        for g, c in self.terms.items():
            for h, d in other.terms.items():
                gh = g * h
                out[gh] = out.get(gh, 0) + c * d
        return FormalElement(out)

    def adjoint(self) -> "FormalElement":
        return FormalElement({g.inverse(): _conj(c) for g, c in self.terms.items()})

    def is_selfadjoint(self) -> bool:
        return self.terms == self.adjoint().terms

    def __eq__(self, other):
        return isinstance(other, FormalElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*lam[{g}]" for g, c in self.terms.items())


def restrict_expectation(x: FormalElement, vertex, k: int) -> FormalElement:
    """Keep the terms supported on <a_P^k>: the coefficient restriction
    realizing the conditional expectation at the truncated level."""
    if not x.terms:
        return FormalElement()
    group = next(iter(x.terms)).group
    kept = {g: c for g, c in x.terms.items()
            if group.cyclic_membership(g, vertex, k) is not None}
    return FormalElement(kept)


def average_conjugates(x: FormalElement, conjugators) -> FormalElement:
    """(1/n) sum_z z x z^-1, exact when the input coefficients are exact."""
    conjugators = list(conjugators)
    if not conjugators:
        raise OpsimError("need at least one conjugator")
    n = len(conjugators)
    weight = Fraction(1, n) if x.exact else 1.0 / n
    out = {}
    for z in conjugators:
        zinv = z.inverse()
        for g, c in x.terms.items():
            h = z * g * zinv
            out[h] = out.get(h, 0) + weight * c
    return FormalElement(out)


class Ball:
    """Deterministic BFS closure of products of few generators."""

    __slots__ = ("group", "elements", "index", "radius", "generators")

    def __init__(self, group, elements, radius, generators):
        self.group = group
        self.elements = elements
        self.index = {g.items: i for i, g in enumerate(elements)}
        self.radius = radius
        self.generators = generators

    def __len__(self):
        return len(self.elements)

    def position(self, g: GroupElement):
        return self.index.get(g.items)


def default_generators(group: GbsGroup):
    """All a_P^{+-1} plus g_y^{+-1} for non-tree pairs, declaration order."""
    gens = []
    for v in range(group.graph.n_vertices):
        a = group.vertex_generator(v)
        gens.extend([a, a.inverse()])
    for i in range(len(group.graph.edge_names)):
        if 2 * i not in group.spanning.tree_edges:
            t = group.edge_generator(2 * i)
            gens.extend([t, t.inverse()])
    return gens


def enumerate_ball(group: GbsGroup, generators=None, radius: int = 0) -> Ball:
    if generators is None:
        generators = default_generators(group)
    generators = list(generators)
    if radius < 0:
        raise OpsimError("radius must be nonnegative")
    seen = {group.identity().items: group.identity()}
    frontier = [group.identity()]
    for _ in range(radius):
        new = []
        for g in frontier:
            for s in generators:
                h = g * s
                if h.items not in seen:
                    seen[h.items] = h
                    new.append(h)
        frontier = new
        if not frontier:
            break
    elements = list(seen.values())
    return Ball(group, elements, radius, generators)


@dataclass
class BallOperator:
    ball: Ball
    matrix: csr_matrix

    @property
    def shape(self):
        return self.matrix.shape


def lambda_operator(g: GroupElement, ball: Ball) -> BallOperator:
    """Partial permutation x -> g x on the ball."""
    rows, cols = [], []
    for j, x in enumerate(ball.elements):
        i = ball.position(g * x)
        if i is not None:
            rows.append(i)
            cols.append(j)
    n = len(ball)
    mat = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    return BallOperator(ball, mat)


def operator_of(x: FormalElement, ball: Ball) -> BallOperator:
    """Sum of coefficient-weighted translation operators."""
    rows, cols, vals = [], [], []
    for g, c in x.terms.items():
        fc = float(c)
        for j, el in enumerate(ball.elements):
            i = ball.position(g * el)
            if i is not None:
                rows.append(i)
                cols.append(j)
                vals.append(fc)
    n = len(ball)
    mat = csr_matrix((np.array(vals), (rows, cols)), shape=(n, n))
    return BallOperator(ball, mat)


def _power_iteration(mat: csr_matrix, tol: float, max_iter: int, seed: int):
    """Largest singular value via power iteration on M^T M.

    The running estimate ||M v_k|| is monotone nondecreasing, hence a lower
    bound at every step.  The stop rule extrapolates the geometric tail of
    the increments so the returned value is within the relative tolerance.
    """
    n = mat.shape[0]
    if n == 0 or mat.nnz == 0:
        return 0.0, 0
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    mt = mat.T.tocsr()
    sigma_prev = 0.0
    delta_prev = None
    stall = 0
    for it in range(1, max_iter + 1):
        w = mat @ v
        sigma = float(np.linalg.norm(w))
        if sigma == 0.0:
            return 0.0, it
        u = mt @ w
        nu = float(np.linalg.norm(u))
        if nu == 0.0:
            return sigma, it
        v = u / nu
        delta = abs(sigma - sigma_prev)
        if delta == 0.0:
            stall += 1
            if stall >= 2:
                return sigma, it
        else:
            stall = 0
            if delta_prev is not None and delta < delta_prev:
                ratio = delta / delta_prev
                tail = delta * ratio / (1.0 - ratio)
                if tail <= 0.25 * tol * max(sigma, 1e-300):
                    return sigma, it
        delta_prev = delta if delta > 0 else delta_prev
        sigma_prev = sigma
    raise NormConvergenceError(sigma_prev, max_iter)


def norm_estimate(op: BallOperator, tol: float = 1e-6,
                  max_iter: int = 100000, seed: int = 42) -> float:
    if tol <= 0:
        raise OpsimError("tol must be positive")
    value, _ = _power_iteration(op.matrix, tol, max_iter, seed)
    return value


@dataclass(frozen=True)
class DecayRow:
    m: int
    bound: float
    estimate: float
    ball_size: int
    iterations: int

    @property
    def passed(self) -> bool:
        return self.estimate <= self.bound + 1e-9


@dataclass(frozen=True)
class DecayTable:
    rows: tuple
    f_norm: float
    ball_size: int

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_csv(self) -> str:
        lines = ["m,bound,estimate,ball_size,iterations"]
        for r in self.rows:
            lines.append(f"{r.m},{r.bound:.12g},{r.estimate:.12g},"
                         f"{r.ball_size},{r.iterations}")
        return "\n".join(lines) + "\n"


def powers_decay_experiment(data: Ce2Data, f: FormalElement, m_values,
                            radius: int, seed: int = 42,
                            tol: float = 1e-6) -> DecayTable:
    """Averaging-norm decay: for each m, conjugate f by z_1..z_m and compare
    the truncated norm of the average against (2/sqrt(m)) ||f||_est."""
    group = data.group
    if not f.is_selfadjoint():
        raise OpsimError("f must be self-adjoint")
    tvert = group.graph.terminus[data.edge]
    if restrict_expectation(f, tvert, data.N).terms:
        raise OpsimError("f must have zero expectation onto <a^N>")
    for g in f.terms:
        if g.edge_letter_count(data.edge) > data.L:
            raise OpsimError(
                "support exceeds the y-length budget L of the conjugators")

    ball_ = enumerate_ball(group, None, radius)
    f_norm, _ = _power_iteration(operator_of(f, ball_).matrix, tol, 10 ** 5, seed)
    rows = []
    for m in m_values:
        zs = averaging_elements(data, m)
        avg = average_conjugates(f, zs)
        est, iters = _power_iteration(operator_of(avg, ball_).matrix,
                                      tol, 10 ** 5, seed)
        rows.append(DecayRow(m=m, bound=2.0 / math.sqrt(m) * f_norm,
                             estimate=est, ball_size=len(ball_),
                             iterations=iters))
    return DecayTable(rows=tuple(rows), f_norm=f_norm, ball_size=len(ball_))


@dataclass(frozen=True)
class PsReport:
    trials: int
    dim: int
    max_ratio: float
    passed: bool


def ps_inequality_check(trials: int, dim: int, seed: int = 42,
                        slack: float = 1e-9) -> PsReport:
    """Random instances of |<T xi, xi>| <= 2 ||T|| ||q xi|| for self-adjoint
    T with (1-q) T (1-q) = 0 and a coordinate projection q."""
    rng = np.random.default_rng(seed)
    max_ratio = 0.0
    passed = True
    for _ in range(trials):
        a = rng.standard_normal((dim, dim))
        t0 = (a + a.T) / 2.0
        qdiag = rng.integers(0, 2, size=dim).astype(float)
        q = np.diag(qdiag)
        comp = np.eye(dim) - q
        t = t0 - comp @ t0 @ comp
        xi = rng.standard_normal(dim)
        xi /= np.linalg.norm(xi)
        lhs = abs(float(xi @ (t @ xi)))
        tnorm = float(np.max(np.abs(np.linalg.eigvalsh(t)))) if dim else 0.0
        rhs = 2.0 * tnorm * float(np.linalg.norm(q @ xi))
        if lhs > rhs + slack:
            passed = False
        if rhs > 0:
            max_ratio = max(max_ratio, lhs / rhs)
    return PsReport(trials=trials, dim=dim, max_ratio=max_ratio, passed=passed)
