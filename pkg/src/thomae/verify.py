"""Self-checking sweeps: every identity the library promises, run on one curve.

Each check either passes silently or contributes findings; a finding carries
the check name and a reproducer string, and the sweep never aborts early, so
one run reports everything that is wrong.  The CLI exposes this as the
``verify`` command and turns findings into exit status 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .curve import CurveSpec
from .denominators import (
    EvalMode,
    degree,
    evaluate,
    full_denominator,
    matrix_quotient,
    pmt_denominator,
    pmt_gamma_denominator,
    theta_relation_shift,
)
from .divisors import (
    DivisorKind,
    LeveledDivisor,
    brute_force_divisors,
    enumerate_divisors,
    satisfies_delta_conditions,
    satisfies_xi_conditions,
    specialty_index,
)
from .operators import (
    GroupElement,
    apply_group,
    apply_M,
    apply_N_beta,
    apply_T,
    apply_T_hat,
    t_admissible,
    t_hat_admissible,
)


@dataclass(frozen=True)
class Finding:
    check: str
    reproducer: str

    def __str__(self):
        return f"{self.check}: {self.reproducer}"


class Verifier:
    def __init__(self, spec: CurveSpec, max_vertices: int = 20000, seed: int = 0):
        spec.require_valid()
        self.spec = spec
        self.max_vertices = max_vertices
        self.seed = seed
        self.findings: list[Finding] = []
        self.checks_run: list[str] = []

    def _record(self, check: str, reproducer: str) -> None:
        self.findings.append(Finding(check, reproducer))

    def _xis(self) -> list[LeveledDivisor]:
        out = []
        for div in enumerate_divisors(self.spec, DivisorKind.XI):
            out.append(div)
            if len(out) > self.max_vertices:
                raise RuntimeError(
                    f"more than {self.max_vertices} divisors; raise --max-vertices"
                )
        return out

    def run(self, checks: Optional[Iterable[str]] = None) -> list[Finding]:
        table: dict[str, Callable[[], None]] = {
            "genus-sum": self.check_genus_sum,
            "enumeration": self.check_enumeration,
            "nonspecial-equivalence": self.check_nonspecial_equivalence,
            "operators": self.check_operators,
            "denominators": self.check_denominators,
            "evaluation": self.check_evaluation,
        }
        names = list(table) if checks is None else list(checks)
        for name in names:
            if name not in table:
                raise ValueError(f"unknown check {name!r}")
            self.checks_run.append(name)
            table[name]()
        return self.findings

    # individual checks ----------------------------------------------------

    def check_genus_sum(self) -> None:
        spec = self.spec
        total = sum(spec.t_value(k) - 1 for k in range(1, spec.n))
        if total != spec.genus():
            self._record("genus-sum", f"sum(t_k - 1) = {total} != g = {spec.genus()}")

    def check_enumeration(self) -> None:
        spec = self.spec
        if spec.n ** spec.point_count > 200000:
            return  # brute-force cross-check only affordable on small curves
        for kind in (DivisorKind.DELTA, DivisorKind.XI):
            fast = sorted(d.levels for d in enumerate_divisors(spec, kind))
            slow = sorted(d.levels for d in brute_force_divisors(spec, kind))
            if fast != slow:
                self._record(
                    "enumeration",
                    f"kind={kind.value}: staged enumeration gives {len(fast)} "
                    f"divisors, brute force {len(slow)}",
                )
            if len(set(fast)) != len(fast):
                self._record("enumeration", f"kind={kind.value}: duplicates emitted")

    def check_nonspecial_equivalence(self) -> None:
        spec = self.spec
        if spec.n ** spec.point_count > 200000:
            return
        import itertools

        g = spec.genus()
        for levels in itertools.product(range(spec.n), repeat=spec.point_count):
            div = LeveledDivisor(spec, levels, DivisorKind.DELTA)
            if div.degree != g:
                continue
            if (specialty_index(div) == 0) != satisfies_delta_conditions(div):
                self._record(
                    "nonspecial-equivalence",
                    f"levels={levels}: index {specialty_index(div)} vs conditions",
                )

    def check_operators(self) -> None:
        spec = self.spec
        n = spec.n
        for xi in self._xis():
            for beta in spec.classes:
                image = apply_N_beta(xi, beta)
                if not satisfies_xi_conditions(image):
                    self._record("operators", f"N_{beta} of {xi.levels} is invalid")
                if apply_N_beta(image, beta).levels != xi.levels:
                    self._record("operators", f"N_{beta} not an involution at {xi.levels}")
                want = apply_group(xi, GroupElement.negation(n, beta))
                if want.levels != image.levels:
                    self._record(
                        "operators", f"N_{beta} disagrees with its group element at {xi.levels}"
                    )
            if apply_M(xi, n).levels != xi.levels:
                self._record("operators", f"M^n != id at {xi.levels}")
            if not satisfies_xi_conditions(apply_M(xi, 1)):
                self._record("operators", f"M of {xi.levels} is invalid")
            for q in range(spec.point_count):
                for r in range(spec.point_count):
                    if q == r:
                        continue
                    if t_admissible(xi, q, r):
                        image = apply_T(xi, q, r)
                        if not satisfies_xi_conditions(image):
                            self._record("operators", f"T:{q},{r} of {xi.levels} is invalid")
                        if image.levels[r] != xi.levels[r]:
                            self._record(
                                "operators", f"T:{q},{r} moved the partner at {xi.levels}"
                            )
                        if apply_T(image, q, r).levels != xi.levels:
                            self._record(
                                "operators", f"T:{q},{r} not an involution at {xi.levels}"
                            )
                    if t_hat_admissible(xi, q, r):
                        image = apply_T_hat(xi, q, r)
                        if not satisfies_xi_conditions(image):
                            self._record("operators", f"That:{q},{r} of {xi.levels} is invalid")
                        if apply_T_hat(image, r, q).levels != xi.levels:
                            self._record(
                                "operators", f"That:{r},{q} does not invert at {xi.levels}"
                            )

    def check_denominators(self) -> None:
        spec = self.spec
        degrees = set()
        for xi in self._xis():
            h = full_denominator(xi)
            degrees.add(degree(h))
            slots = sorted(xi.sets(), reverse=True)
            if full_denominator(xi, slot_order=slots) != h:
                self._record("denominators", f"assembly order changes h at {xi.levels}")
            if full_denominator(apply_M(xi, 1)) != h:
                self._record("denominators", f"h not rotation invariant at {xi.levels}")
            for beta in spec.classes:
                if full_denominator(apply_N_beta(xi, beta)) != h:
                    self._record(
                        "denominators", f"h not negation invariant at {xi.levels}, beta={beta}"
                    )
            for q in range(spec.point_count):
                if xi.levels[q] != 0:
                    continue
                beta = spec.alphas[q]
                g0 = pmt_denominator(xi, beta)
                for r in range(spec.point_count):
                    if q == r or not t_admissible(xi, q, r):
                        continue
                    image = apply_T(xi, q, r)
                    shift = theta_relation_shift(xi, q, r)
                    if matrix_quotient(full_denominator(image), h) != shift:
                        self._record(
                            "denominators",
                            f"h shift wrong under T:{q},{r} at {xi.levels}",
                        )
                    if matrix_quotient(pmt_denominator(image, beta), g0) != shift:
                        self._record(
                            "denominators",
                            f"g^{beta} shift wrong under T:{q},{r} at {xi.levels}",
                        )
                    if spec.n > 2:
                        gamma = spec.alphas[r]
                        q0 = pmt_gamma_denominator(xi, q, gamma)
                        q1 = pmt_gamma_denominator(image, q, gamma)
                        if matrix_quotient(q1, q0) != shift:
                            self._record(
                                "denominators",
                                f"q^{{{q},{gamma}}} shift wrong under T:{q},{r} at {xi.levels}",
                            )
        if len(degrees) > 1:
            self._record("denominators", f"h degrees differ across divisors: {sorted(degrees)}")

    def check_evaluation(self, trials: int = 20) -> None:
        spec = self.spec
        rng = random.Random(self.seed)
        xis = self._xis()
        if not xis:
            return
        xi = xis[0]
        for trial in range(trials):
            lams = _distinct_rationals(rng, spec.point_count)
            cur = spec.with_lambdas(lams)
            div = LeveledDivisor(cur, xi.levels, DivisorKind.XI)
            h = full_denominator(div)
            base = evaluate(h, EvalMode.EXACT_RATIONAL)
            shiftc = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            shifted = cur.with_lambdas([v + shiftc for v in lams])
            hs = full_denominator(LeveledDivisor(shifted, xi.levels, DivisorKind.XI))
            if evaluate(hs, EvalMode.EXACT_RATIONAL) != base:
                self._record("evaluation", f"translation changed the value (trial {trial})")
            scale = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            scaled = cur.with_lambdas([v * scale for v in lams])
            hsc = full_denominator(LeveledDivisor(scaled, xi.levels, DivisorKind.XI))
            if evaluate(hsc, EvalMode.EXACT_RATIONAL) != base * scale ** degree(h):
                self._record("evaluation", f"scaling law fails (trial {trial})")

    # -----------------------------------------------------------------------


def _distinct_rationals(rng: random.Random, count: int) -> list[Fraction]:
    out: list[Fraction] = []
    while len(out) < count:
        v = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        if v not in out:
            out.append(v)
    return out


def run_suite(
    spec: CurveSpec,
    checks: Optional[Iterable[str]] = None,
    max_vertices: int = 20000,
    seed: int = 0,
) -> tuple[list[str], list[Finding]]:
    """Run the named checks (all by default); returns (checks run, findings)."""
    verifier = Verifier(spec, max_vertices=max_vertices, seed=seed)
    findings = verifier.run(checks)
    return verifier.checks_run, findings
