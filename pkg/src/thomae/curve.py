"""Fully ramified cyclic covers of the line and their residue arithmetic.

A curve w^n = prod_i (z - lambda_i)^{alpha_i} with every alpha_i prime to n
and the exponent sum divisible by n (so nothing happens over infinity) is
described combinatorially by n and the list of exponents.  Everything the
rest of the package needs from the curve is integer arithmetic derived from
these data; the z-values are optional and only used for evaluation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence


class CurveError(ValueError):
    """Raised for structurally unusable curve input (parse errors and such)."""


def s_value(alpha: int, k: int, n: int) -> int:
    """Floor of alpha*k/n; works for any integer k."""
    return (alpha * k) // n


@lru_cache(maxsize=None)
def k_inverse(beta: int, n: int) -> int:
    """The representative in {0..n-1} of the inverse of beta mod n."""
    if gcd(beta, n) != 1:
        raise CurveError(f"{beta} is not invertible mod {n}")
    return pow(beta, -1, n)


def e_factor(n: int) -> int:
    """1 for even n, 2 for odd n; e*n is always even."""
    if n < 2:
        raise CurveError(f"need n >= 2, got {n}")
    return 1 if n % 2 == 0 else 2


@dataclass(frozen=True)
class BranchPoint:
    """One branch point: its stable index, exponent class and optional z-value."""

    index: int
    alpha: int
    label: Optional[str] = None
    lam: Optional[Fraction] = None


@dataclass(frozen=True)
class CurveSpec:
    n: int
    points: tuple[BranchPoint, ...]

    @classmethod
    def from_alphas(
        cls,
        n: int,
        alphas: Sequence[int],
        lambdas: Optional[Sequence[Fraction]] = None,
        labels: Optional[Sequence[Optional[str]]] = None,
    ) -> "CurveSpec":
        pts = []
        for i, a in enumerate(alphas):
            lam = Fraction(lambdas[i]) if lambdas is not None else None
            lab = labels[i] if labels is not None else None
            pts.append(BranchPoint(i, a, lab, lam))
        return cls(n, tuple(pts))

    @property
    def alphas(self) -> tuple[int, ...]:
        return tuple(p.alpha for p in self.points)

    @property
    def point_count(self) -> int:
        return len(self.points)

    @property
    def classes(self) -> tuple[int, ...]:
        """Distinct exponent classes, in order of first appearance."""
        seen: list[int] = []
        for p in self.points:
            if p.alpha not in seen:
                seen.append(p.alpha)
        return tuple(seen)

    def r(self, alpha: int) -> int:
        """Number of branch points in the class alpha (derived, never stored)."""
        return sum(1 for p in self.points if p.alpha == alpha)

    @property
    def lambdas(self) -> Optional[tuple[Fraction, ...]]:
        vals = tuple(p.lam for p in self.points)
        if any(v is None for v in vals):
            return None
        return vals  # type: ignore[return-value]

    def genus(self) -> int:
        return (self.n - 1) * (self.point_count - 2) // 2

    def t_value(self, k: int) -> int:
        n = self.n
        return sum(p.alpha * k - n * s_value(p.alpha, k, n) for p in self.points) // n

    def validate(self) -> list[str]:
        """All invariant violations, empty when the curve is usable."""
        problems = []
        n = self.n
        if n < 2:
            problems.append(f"n must be at least 2, got {n}")
            return problems
        for p in self.points:
            if not 1 <= p.alpha <= n - 1:
                problems.append(f"point {p.index}: alpha {p.alpha} outside 1..{n - 1}")
            elif gcd(p.alpha, n) != 1:
                problems.append(f"point {p.index}: alpha {p.alpha} not coprime to {n}")
        total = sum(p.alpha for p in self.points)
        if total % n != 0:
            problems.append(f"exponent sum {total} is not 0 mod {n}")
        if self.point_count < 3:
            problems.append(f"need at least 3 branch points, got {self.point_count}")
        lams = [p.lam for p in self.points if p.lam is not None]
        if lams and len(lams) != self.point_count:
            problems.append("z-values must be given for all points or none")
        if len(set(lams)) != len(lams):
            problems.append("z-values must be pairwise distinct")
        return problems

    def require_valid(self) -> "CurveSpec":
        problems = self.validate()
        if problems:
            raise CurveError("; ".join(problems))
        return self

    def with_lambdas(self, lambdas: Sequence[Fraction]) -> "CurveSpec":
        if len(lambdas) != self.point_count:
            raise CurveError("wrong number of z-values")
        pts = tuple(
            BranchPoint(p.index, p.alpha, p.label, Fraction(v))
            for p, v in zip(self.points, lambdas)
        )
        return CurveSpec(self.n, pts)


def validate(spec: CurveSpec) -> list[str]:
    return spec.validate()


def genus(spec: CurveSpec) -> int:
    return spec.genus()


def t_value(spec: CurveSpec, k: int) -> int:
    return spec.t_value(k)


@lru_cache(maxsize=None)
def _thresholds(alphas: tuple[int, ...], n: int) -> tuple[tuple[int, ...], ...]:
    """_thresholds(...)[k-1][i] = alpha_i * k mod n, for k = 1..n-1."""
    return tuple(tuple((a * k) % n for a in alphas) for k in range(1, n))


def condition_thresholds(spec: CurveSpec) -> tuple[tuple[int, ...], ...]:
    return _thresholds(spec.alphas, spec.n)


def _parse_exact(value) -> Fraction:
    """Exact rational from a JSON scalar; floats are rejected on purpose."""
    if isinstance(value, bool):
        raise CurveError(f"not a number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise CurveError(f"cannot parse {value!r} as an exact rational") from exc
    if isinstance(value, float):
        raise CurveError(
            f"refusing float z-value {value!r}; pass a string like \"7/3\" or \"0.25\""
        )
    raise CurveError(f"cannot parse {value!r} as an exact rational")


def curve_from_dict(data: dict) -> CurveSpec:
    """Build a curve from the JSON document format, checking all invariants."""
    try:
        n = data["n"]
        raw_points = data["points"]
    except (KeyError, TypeError) as exc:
        raise CurveError(f"curve document needs 'n' and 'points': {exc}") from exc
    if not isinstance(n, int):
        raise CurveError(f"'n' must be an integer, got {n!r}")
    if not isinstance(raw_points, list):
        raise CurveError("'points' must be a list")
    pts = []
    for i, rp in enumerate(raw_points):
        if not isinstance(rp, dict) or "alpha" not in rp:
            raise CurveError(f"point {i}: expected an object with 'alpha'")
        alpha = rp["alpha"]
        if not isinstance(alpha, int):
            raise CurveError(f"point {i}: alpha must be an integer")
        lam = _parse_exact(rp["lambda"]) if "lambda" in rp else None
        label = rp.get("label")
        if label is not None and not isinstance(label, str):
            raise CurveError(f"point {i}: label must be a string")
        pts.append(BranchPoint(i, alpha, label, lam))
    lams = [p.lam for p in pts]
    if any(v is not None for v in lams) and any(v is None for v in lams):
        raise CurveError("either all points carry a z-value or none do")
    return CurveSpec(n, tuple(pts)).require_valid()


def load_curve(path: str) -> CurveSpec:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CurveError(f"{path}: {exc}") from exc
    return curve_from_dict(data)


def curve_to_dict(spec: CurveSpec) -> dict:
    points = []
    for p in spec.points:
        entry: dict = {"alpha": p.alpha}
        if p.label is not None:
            entry["label"] = p.label
        if p.lam is not None:
            entry["lambda"] = str(p.lam)
        points.append(entry)
    return {"n": spec.n, "points": points}
