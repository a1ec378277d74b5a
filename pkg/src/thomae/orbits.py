"""Operator graphs on shifted divisors, reachability, and family counting.

Vertices are the valid shifted divisors (kind XI) of one curve; edges are
the rotation M, the reflection N (together these generate the dihedral
group) and every admissible simplified swap.  Components of this graph are
the orbits of the combined action; on every family tested the graph is
connected, and counterexample hunting is supported by operator-word
witnesses on all edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .curve import CurveSpec
from .divisors import (
    DivisorError,
    DivisorKind,
    LeveledDivisor,
    count_divisors,
    enumerate_divisors,
)
from .operators import (
    apply_M,
    apply_N,
    apply_T_hat,
    t_hat_admissible,
)


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    label: str


@dataclass
class OrbitGraph:
    curve: CurveSpec
    vertices: tuple[LeveledDivisor, ...]
    edges: tuple[Edge, ...]
    _index: dict[tuple[int, ...], int] = field(repr=False, default_factory=dict)
    _adjacency: list[list[tuple[int, str]]] = field(repr=False, default_factory=list)

    def __post_init__(self):
        self._index = {v.levels: i for i, v in enumerate(self.vertices)}
        self._adjacency = [[] for _ in self.vertices]
        for e in self.edges:
            self._adjacency[e.source].append((e.target, e.label))

    def vertex_id(self, divisor: LeveledDivisor) -> int:
        try:
            return self._index[divisor.levels]
        except KeyError:
            raise DivisorError(f"divisor {divisor.levels} is not a vertex") from None

    def neighbors(self, vid: int) -> Sequence[tuple[int, str]]:
        return self._adjacency[vid]

    def components(self) -> list[list[int]]:
        seen = [False] * len(self.vertices)
        comps = []
        for start in range(len(self.vertices)):
            if seen[start]:
                continue
            comp = []
            queue = deque([start])
            seen[start] = True
            while queue:
                u = queue.popleft()
                comp.append(u)
                for v, _ in self._adjacency[u]:
                    if not seen[v]:
                        seen[v] = True
                        queue.append(v)
            comps.append(sorted(comp))
        return comps

    def witness(self, source: LeveledDivisor, target: LeveledDivisor) -> Optional[list[str]]:
        """A word in the edge labels leading from source to target, if any."""
        s, t = self.vertex_id(source), self.vertex_id(target)
        if s == t:
            return []
        parent: dict[int, tuple[int, str]] = {s: (-1, "")}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v, label in self._adjacency[u]:
                if v not in parent:
                    parent[v] = (u, label)
                    if v == t:
                        word = []
                        while v != s:
                            u2, lab = parent[v]
                            word.append(lab)
                            v = u2
                        return list(reversed(word))
                    queue.append(v)
        return None

    def m_orbits(self) -> list[list[int]]:
        """Orbits of the rotation alone (every one has exactly n members)."""
        n = self.curve.n
        seen = [False] * len(self.vertices)
        orbits = []
        for start, div in enumerate(self.vertices):
            if seen[start]:
                continue
            orbit = []
            cur = div
            for _ in range(n):
                vid = self.vertex_id(cur)
                if seen[vid]:
                    break
                seen[vid] = True
                orbit.append(vid)
                cur = apply_M(cur, 1)
            orbits.append(sorted(orbit))
        return orbits


def build_graph(spec: CurveSpec, max_vertices: Optional[int] = None) -> OrbitGraph:
    """The full operator graph on all valid shifted divisors.

    Vertices come out in the canonical (lexicographic level vector) order.
    Every edge label names its generator; inverse edges are present for all
    generators, so the graph is symmetric-closed.
    """
    spec.require_valid()
    verts = sorted(enumerate_divisors(spec, DivisorKind.XI), key=lambda d: d.levels)
    if max_vertices is not None and len(verts) > max_vertices:
        raise DivisorError(
            f"{len(verts)} vertices exceed the requested cap {max_vertices}"
        )
    index = {v.levels: i for i, v in enumerate(verts)}
    edges = []
    npts = spec.point_count
    for i, v in enumerate(verts):
        edges.append(Edge(i, index[apply_M(v, 1).levels], "M"))
        edges.append(Edge(i, index[apply_M(v, -1).levels], "M^-1"))
        edges.append(Edge(i, index[apply_N(v).levels], "N"))
        for q in range(npts):
            for r in range(npts):
                if q != r and t_hat_admissible(v, q, r):
                    edges.append(Edge(i, index[apply_T_hat(v, q, r).levels], f"That:{q},{r}"))
    return OrbitGraph(spec, tuple(verts), tuple(edges))


def components(graph: OrbitGraph) -> list[list[int]]:
    return graph.components()


# ---------------------------------------------------------------------------
# restricted reachability


class ReachabilityPreconditionError(DivisorError):
    """The two divisors do not satisfy the restricted-swap hypotheses."""


def _class_sets(div: LeveledDivisor) -> dict[tuple[int, int], int]:
    counts: dict[tuple[int, int], int] = {}
    for a, l in zip(div.curve.alphas, div.levels):
        counts[(a, l)] = counts.get((a, l), 0) + 1
    return counts


def difbeta_hypothesis(xi: LeveledDivisor, beta: int) -> bool:
    """Either every level of class beta is occupied and the mirror class is
    absent from the curve, or some level j of class beta is occupied together
    with level n-1-j of the mirror class."""
    curve = xi.curve
    n = curve.n
    mirror = (n - beta) % n
    if mirror == beta:
        return False
    counts = _class_sets(xi)
    if curve.r(mirror) == 0 and all(counts.get((beta, j)) for j in range(n)):
        return True
    return any(
        counts.get((beta, j)) and counts.get((mirror, (n - 1 - j) % n)) for j in range(n)
    )


def difbeta_reachability(
    xi: LeveledDivisor, upsilon: LeveledDivisor, beta: int
) -> bool:
    """Reach upsilon from xi using only swaps inside the classes beta, n-beta.

    Precondition: the divisors agree on every point whose class is neither
    beta nor n-beta, and xi satisfies one of the two occupation hypotheses;
    violations raise ReachabilityPreconditionError rather than returning
    False, so an unreachable-but-eligible pair is a reportable finding.
    """
    curve = xi.curve
    if upsilon.curve != curve:
        raise DivisorError("divisors live on different curves")
    n = curve.n
    if gcd(beta, n) != 1:
        raise ReachabilityPreconditionError(f"class {beta} is not prime to {n}")
    mirror = (n - beta) % n
    pair_classes = {beta, mirror}
    for i, a in enumerate(curve.alphas):
        if a not in pair_classes and xi.levels[i] != upsilon.levels[i]:
            raise ReachabilityPreconditionError(
                f"divisors differ at point {i} of class {a}"
            )
    if not difbeta_hypothesis(xi, beta):
        raise ReachabilityPreconditionError(
            f"occupation hypothesis fails for class {beta}"
        )
    swap_points = [i for i, a in enumerate(curve.alphas) if a in pair_classes]
    target = upsilon.levels
    seen = {xi.levels}
    queue = deque([xi])
    while queue:
        cur = queue.popleft()
        if cur.levels == target:
            return True
        for q in swap_points:
            for r in swap_points:
                if q != r and t_hat_admissible(cur, q, r):
                    nxt = apply_T_hat(cur, q, r)
                    if nxt.levels not in seen:
                        seen.add(nxt.levels)
                        queue.append(nxt)
    return False


# ---------------------------------------------------------------------------
# family counting


@dataclass(frozen=True)
class FamilySpec:
    """The sweep family w^n = prod (z-l_i)^{c_i} prod (z-m_i)^{n-d_i}."""

    c: tuple[int, ...]
    d: tuple[int, ...]

    def __post_init__(self):
        if sum(self.c) != sum(self.d):
            raise DivisorError("the c and d exponent sums must agree")
        if not self.c or not self.d:
            raise DivisorError("both exponent lists must be nonempty")
        if any(v < 1 for v in self.c + self.d):
            raise DivisorError("exponents must be positive")

    def alphas(self, n: int) -> Optional[list[int]]:
        """Exponent classes at level n, or None when the curve degenerates."""
        alphas = list(self.c) + [(n - dv) % n for dv in self.d]
        if len(alphas) < 3:
            return None
        if any(not 1 <= a <= n - 1 or gcd(a, n) != 1 for a in alphas):
            return None
        return alphas

    def curve(self, n: int) -> Optional[CurveSpec]:
        alphas = self.alphas(n)
        if alphas is None:
            return None
        spec = CurveSpec.from_alphas(n, alphas)
        return spec if not spec.validate() else None

    def partitions(self) -> tuple[dict[int, int], dict[int, int]]:
        xs: dict[int, int] = {}
        ys: dict[int, int] = {}
        for v in self.c:
            xs[v] = xs.get(v, 0) + 1
        for v in self.d:
            ys[v] = ys.get(v, 0) + 1
        return xs, ys


def count_base_point_free(spec: CurveSpec) -> int:
    """Shifted divisors in which no point sits at level 0 (no base-point form)."""
    from .divisors import enumerate_cardinality_matrices

    total = 0
    for matrix in enumerate_cardinality_matrices(spec, DivisorKind.XI):
        if all(row[0] == 0 for _, row in matrix.counts):
            total += matrix.expansion_size()
    return total


@dataclass(frozen=True)
class FamilyCount:
    n: int
    skipped: bool
    total_divisors: int = 0
    xi_divisors: int = 0
    m_orbits: int = 0
    base_point_free_xi: int = 0
    per_point_avoid: tuple[int, ...] = ()


@dataclass(frozen=True)
class CountReport:
    family: FamilySpec
    counts: tuple[FamilyCount, ...]
    fit: Optional[dict] = None

    def valid_counts(self) -> list[FamilyCount]:
        return [c for c in self.counts if not c.skipped]


def count_family(family: FamilySpec, n_values: Sequence[int], fit: bool = False) -> CountReport:
    """Per-n divisor and orbit counts for one sweep family.

    Values of n where some exponent shares a factor with n are marked
    skipped, not errors: the family only defines fully ramified curves at
    the other n.  The orbit count is the shifted-divisor count divided by n
    (rotation orbits are always free); the per-point counts of degree-g
    divisors avoiding each single point and the number of shifted divisors
    with no base-point form are reported alongside.
    """
    rows = []
    for n in n_values:
        spec = family.curve(n)
        if spec is None:
            rows.append(FamilyCount(n=n, skipped=True))
            continue
        total = count_divisors(spec, DivisorKind.DELTA)
        xi_total = count_divisors(spec, DivisorKind.XI)
        if xi_total % n != 0:
            raise DivisorError(f"rotation orbits are not free at n = {n}")
        avoid = tuple(
            count_divisors(spec, DivisorKind.DELTA, avoid=i)
            for i in range(spec.point_count)
        )
        rows.append(
            FamilyCount(
                n=n,
                skipped=False,
                total_divisors=total,
                xi_divisors=xi_total,
                m_orbits=xi_total // n,
                base_point_free_xi=count_base_point_free(spec),
                per_point_avoid=avoid,
            )
        )
    report = CountReport(family=family, counts=tuple(rows))
    if fit:
        degree_hint = len(family.d) - 1
        fitted = {}
        for name, getter in (
            ("total_divisors", lambda c: c.total_divisors),
            ("m_orbits", lambda c: c.m_orbits),
        ):
            data = [(c.n, getter(c)) for c in report.valid_counts()]
            if len(data) >= degree_hint + 2:
                fitted[name] = fit_count_polynomial(data, degree_hint)
        report = CountReport(family=family, counts=tuple(rows), fit=fitted)
    return report


def fit_count_polynomial(
    counts: Sequence[tuple[int, int]], degree_hint: int
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Exact interpolation on the first degree_hint+1 points, residuals on the rest.

    Returns (coefficients low to high, residuals).  Zero residuals on the
    held-out points support exact polynomial growth; least squares is never
    used because the claim under test is exact polynomiality.
    """
    if len(counts) < degree_hint + 2:
        raise DivisorError(
            f"need at least {degree_hint + 2} data points, got {len(counts)}"
        )
    base = counts[: degree_hint + 1]
    rest = counts[degree_hint + 1 :]
    coeffs = _lagrange_coefficients(base)
    residuals = tuple(
        Fraction(y) - _poly_eval(coeffs, x) for x, y in rest
    )
    return coeffs, residuals


def _lagrange_coefficients(points: Sequence[tuple[int, int]]) -> tuple[Fraction, ...]:
    m = len(points)
    coeffs = [Fraction(0)] * m
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = _poly_mul_linear(basis, -Fraction(xj))
            denom *= Fraction(xi - xj)
        scale = Fraction(yi) / denom
        for k, b in enumerate(basis):
            coeffs[k] += scale * b
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_mul_linear(poly: list[Fraction], constant: Fraction) -> list[Fraction]:
    """poly(x) * (x + constant)."""
    out = [Fraction(0)] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i] += c * constant
        out[i + 1] += c
    return out


def _poly_eval(coeffs: Sequence[Fraction], x: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
