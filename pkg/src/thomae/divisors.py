"""Branch-point-supported divisors, non-specialty, and exhaustive enumeration.

A divisor is stored as one level l in {0..n-1} per branch point; the point
then appears with exponent n-1-l.  A degree-g divisor (kind DELTA) is
non-special exactly when, for every k in 1..n-1, the number of points whose
level lies below alpha*k mod n equals t_k - 1; the shifted family of degree
g+n-1 (kind XI) uses t_k instead.  The same left-hand sides drive the
specialty index, so both tests share one counting helper.

Enumeration is two-staged: first the per-class level-count matrices solving
the linear conditions, then the multinomial expansion assigning the labeled
points of each class to levels.  Counting skips the expansion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Iterator, Optional

from .curve import CurveSpec, condition_thresholds


class DivisorError(ValueError):
    pass


class DivisorKind(Enum):
    DELTA = "delta"
    XI = "xi"

    @property
    def shift(self) -> int:
        """Right-hand sides of the k-th condition: t_k minus this."""
        return 1 if self is DivisorKind.DELTA else 0


@dataclass(frozen=True)
class LeveledDivisor:
    curve: CurveSpec
    levels: tuple[int, ...]
    kind: DivisorKind

    def __post_init__(self):
        n = self.curve.n
        if len(self.levels) != self.curve.point_count:
            raise DivisorError("one level per branch point required")
        if any(not 0 <= l <= n - 1 for l in self.levels):
            raise DivisorError(f"levels must lie in 0..{n - 1}: {self.levels}")

    def level(self, point: int) -> int:
        return self.levels[point]

    def exponent(self, point: int) -> int:
        return self.curve.n - 1 - self.levels[point]

    @property
    def exponents(self) -> tuple[int, ...]:
        n = self.curve.n
        return tuple(n - 1 - l for l in self.levels)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def with_levels(self, levels: tuple[int, ...]) -> "LeveledDivisor":
        return LeveledDivisor(self.curve, levels, self.kind)

    def support(self) -> tuple[int, ...]:
        """Indices of the points appearing with a positive exponent."""
        n = self.curve.n
        return tuple(i for i, l in enumerate(self.levels) if l < n - 1)

    def sets(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """Nonempty (alpha, level) -> point indices partition of the divisor."""
        out: dict[tuple[int, int], list[int]] = {}
        for i, (a, l) in enumerate(zip(self.curve.alphas, self.levels)):
            out.setdefault((a, l), []).append(i)
        return {k: tuple(v) for k, v in out.items()}


def condition_lhs(divisor: LeveledDivisor, k: int) -> int:
    """Number of points whose level lies below alpha * k mod n."""
    thr = condition_thresholds(divisor.curve)[k - 1]
    return sum(1 for l, t in zip(divisor.levels, thr) if l < t)


def satisfies_delta_conditions(divisor: LeveledDivisor) -> bool:
    spec = divisor.curve
    return all(condition_lhs(divisor, k) == spec.t_value(k) - 1 for k in range(1, spec.n))


def satisfies_xi_conditions(divisor: LeveledDivisor) -> bool:
    spec = divisor.curve
    return all(condition_lhs(divisor, k) == spec.t_value(k) for k in range(1, spec.n))


def satisfies_conditions(divisor: LeveledDivisor) -> bool:
    if divisor.kind is DivisorKind.DELTA:
        return satisfies_delta_conditions(divisor)
    return satisfies_xi_conditions(divisor)


def specialty_index(divisor: LeveledDivisor) -> int:
    """i(divisor) = sum over k of max(t_k - 1 - |points below threshold|, 0).

    Zero exactly for the non-special divisors; for degree-g divisors this is
    the dimension of the space of holomorphic differentials that are
    multiples of the divisor.
    """
    spec = divisor.curve
    return sum(
        max(spec.t_value(k) - 1 - condition_lhs(divisor, k), 0) for k in range(1, spec.n)
    )


def contains_nth_power(curve: CurveSpec, exponents: tuple[int, ...]) -> bool:
    return any(v >= curve.n for v in exponents)


def divisor_from_exponents(
    curve: CurveSpec, exponents: tuple[int, ...], kind: DivisorKind
) -> LeveledDivisor:
    """Levels from raw exponents; exponents of n or more are rejected outright
    (reducing them is a linear-equivalence step this type does not perform)."""
    if contains_nth_power(curve, exponents):
        raise DivisorError(
            f"exponent {max(exponents)} >= n = {curve.n}; reduce the divisor first"
        )
    if any(v < 0 for v in exponents):
        raise DivisorError("exponents must be non-negative")
    n = curve.n
    return LeveledDivisor(curve, tuple(n - 1 - v for v in exponents), kind)


# ---------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class CardinalityMatrix:
    """Per-class level counts c_{alpha, l}; row alpha sums to r_alpha."""

    curve: CurveSpec
    counts: tuple[tuple[int, tuple[int, ...]], ...]  # (alpha, counts over levels)

    def __post_init__(self):
        n = self.curve.n
        for alpha, row in self.counts:
            if len(row) != n:
                raise DivisorError("each class row needs one count per level")
            if sum(row) != self.curve.r(alpha):
                raise DivisorError(f"row for class {alpha} must sum to r_{alpha}")

    def row(self, alpha: int) -> tuple[int, ...]:
        for a, row in self.counts:
            if a == alpha:
                return row
        raise KeyError(alpha)

    def expansion_size(self) -> int:
        total = 1
        for _, row in self.counts:
            total *= _multinomial(row)
        return total


def _multinomial(row: tuple[int, ...]) -> int:
    total = 1
    remaining = sum(row)
    for c in row:
        total *= comb(remaining, c)
        remaining -= c
    return total


def enumerate_cardinality_matrices(
    spec: CurveSpec, kind: DivisorKind
) -> Iterator[CardinalityMatrix]:
    """All level-count matrices meeting the row sums and the k-conditions.

    Classes are processed in input order, levels ascending inside a class;
    after every placed count each k-condition is checked against what the
    still-unplaced points could possibly contribute, so infeasible branches
    die as early as possible.  The output order is deterministic.
    """
    n = spec.n
    targets = [spec.t_value(k) - kind.shift for k in range(1, n)]
    if any(tg < 0 for tg in targets):
        return
    classes = spec.classes
    rvals = [spec.r(a) for a in classes]
    # counts placed at level l of class ci feed the conditions k whose
    # threshold alpha*k mod n lies above l
    contributes = [
        [tuple(k for k in range(n - 1) if (a * (k + 1)) % n > l) for l in range(n)]
        for a in classes
    ]
    later = [
        [frozenset(row[l + 1] if l + 1 < n else ()) for l in range(n)]
        for row in contributes
    ]
    tail_r = [sum(rvals[i + 1 :]) for i in range(len(classes))]

    def place(ci: int, level: int, left: int, row: list[int], acc: list[int], chosen: list):
        if level == n:
            if left == 0:
                chosen.append((classes[ci], tuple(row)))
                yield from rec(ci + 1, acc, chosen)
                chosen.pop()
            return
        conds = contributes[ci][level]
        still = later[ci][level]
        for c in range(left + 1):
            row[level] = c
            for k in conds:
                acc[k] += c
            rest = left - c
            ok = True
            for k in range(n - 1):
                room = tail_r[ci] + (rest if k in still else 0)
                if acc[k] > targets[k] or acc[k] + room < targets[k]:
                    ok = False
                    break
            if ok:
                yield from place(ci, level + 1, rest, row, acc, chosen)
            for k in conds:
                acc[k] -= c
        row[level] = 0

    def rec(ci: int, acc: list[int], chosen: list):
        if ci == len(classes):
            if all(acc[k] == targets[k] for k in range(n - 1)):
                yield CardinalityMatrix(spec, tuple(chosen))
            return
        yield from place(ci, 0, rvals[ci], [0] * n, acc, chosen)

    yield from rec(0, [0] * (n - 1), [])


def expand_matrix(matrix: CardinalityMatrix, spec: CurveSpec) -> Iterator[LeveledDivisor]:
    """All level assignments with the given per-class counts, each exactly once."""
    if matrix.curve != spec:
        raise DivisorError("matrix belongs to a different curve")
    n = spec.n
    kind = _matrix_kind(matrix)
    class_points = {a: [p.index for p in spec.points if p.alpha == a] for a in spec.classes}

    def place(points: tuple[int, ...], row: tuple[int, ...], level: int) -> Iterator[dict]:
        if level == n:
            yield {}
            return
        for chosen in itertools.combinations(points, row[level]):
            rest = tuple(p for p in points if p not in chosen)
            for sub in place(rest, row, level + 1):
                out = dict(sub)
                for p in chosen:
                    out[p] = level
                yield out

    def rec(ci: int) -> Iterator[dict]:
        if ci == len(matrix.counts):
            yield {}
            return
        alpha, row = matrix.counts[ci]
        for head in place(tuple(class_points[alpha]), row, 0):
            for tail in rec(ci + 1):
                merged = dict(tail)
                merged.update(head)
                yield merged

    for assignment in rec(0):
        levels = tuple(assignment[i] for i in range(spec.point_count))
        yield LeveledDivisor(spec, levels, kind)


def _matrix_kind(matrix: CardinalityMatrix) -> DivisorKind:
    spec = matrix.curve
    deg = sum(
        (spec.n - 1 - l) * c for _, row in matrix.counts for l, c in enumerate(row)
    )
    return DivisorKind.DELTA if deg == spec.genus() else DivisorKind.XI


def enumerate_divisors(spec: CurveSpec, kind: DivisorKind) -> Iterator[LeveledDivisor]:
    """All valid divisors of the given kind, duplicate-free, deterministic order."""
    for matrix in enumerate_cardinality_matrices(spec, kind):
        yield from expand_matrix(matrix, spec)


def brute_force_divisors(spec: CurveSpec, kind: DivisorKind) -> list[LeveledDivisor]:
    """Filter of all n^points level assignments; the enumeration oracle."""
    out = []
    for levels in itertools.product(range(spec.n), repeat=spec.point_count):
        div = LeveledDivisor(spec, levels, kind)
        if satisfies_conditions(div):
            out.append(div)
    return out


def count_divisors(
    spec: CurveSpec, kind: DivisorKind, avoid: Optional[int] = None
) -> int:
    """Exact count of valid divisors, computed without expanding the matrices.

    With ``avoid`` set, counts the divisors in which that point appears with
    exponent 0 for kind DELTA, and with exponent n-1 (the base-point slot)
    for kind XI.
    """
    if avoid is not None and not 0 <= avoid < spec.point_count:
        raise DivisorError(f"no point with index {avoid}")
    fixed_level = None
    if avoid is not None:
        fixed_level = spec.n - 1 if kind is DivisorKind.DELTA else 0
    total = 0
    for matrix in enumerate_cardinality_matrices(spec, kind):
        term = 1
        for alpha, row in matrix.counts:
            r = spec.r(alpha)
            if avoid is not None and spec.points[avoid].alpha == alpha:
                if row[fixed_level] == 0:
                    term = 0
                    break
                reduced = list(row)
                reduced[fixed_level] -= 1
                term *= _multinomial(tuple(reduced))
            else:
                term *= _multinomial(row)
        total += term
    return total
