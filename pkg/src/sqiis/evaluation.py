"""Error-injection robustness harness.

Every rule-fireable combination within a size band serves as a baseline.
Injecting a tagging error means substituting exactly one of its tags for a
tag it does not contain (cardinality preserved). Each perturbed combination
is fed back through the rule base and classified:

  C0 - same domain selected as the baseline
  C1 - a different domain selected
  C2 - no topical intent: no rule fired, or an all-zero vector

The Euclidean distance between baseline and perturbed confidence vectors is
recorded per case; C0/C1 distances aggregate into cumulative tables with
buckets at 4-decimal rounding. C2 is reported as a count only.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .classifier import select_domain
from .errors import DimensionError, EmptyTagSetError, RangeError
from .rulebase import ConfidenceVector, RuleBase
from .rulegen import enumerate_combinations
from .tagset import TagSet

C0 = "C0"
C1 = "C1"
C2 = "C2"

# Table rows bucket distances at this many decimals.
BUCKET_DECIMALS = 4


@dataclass(frozen=True)
class EvalCase:
    original: TagSet
    perturbed: TagSet
    original_result: ConfidenceVector
    perturbed_result: Optional[ConfidenceVector]
    outcome_class: str
    distance: float


@dataclass(frozen=True)
class EvalReport:
    """All cases of one evaluation run plus the class totals."""

    cases: tuple[EvalCase, ...]
    originals_evaluated: int

    @property
    def total_cases(self) -> int:
        return len(self.cases)

    @property
    def c2_count(self) -> int:
        return sum(1 for case in self.cases if case.outcome_class == C2)

    def class_cases(self, outcome_class: str) -> tuple[EvalCase, ...]:
        return tuple(c for c in self.cases if c.outcome_class == outcome_class)


def perturb_one_tag(q: TagSet, n: int) -> list[TagSet]:
    """Every single-tag substitution of q over an n-tag registry.

    For each set position i (ascending) and each unset position j (ascending),
    emit q with i cleared and j set. Yields exactly |q| * (n - |q|) distinct
    combinations.
    """
    if q.is_empty:
        raise EmptyTagSetError("cannot perturb an empty combination")
    if q.width != n:
        raise DimensionError(f"combination width {q.width} != tag count {n}")
    present = q.positions()
    absent = [j for j in range(n) if not q.contains(j)]
    return [q.substitute(i, j) for i in present for j in absent]


def euclidean_distance(a: ConfidenceVector, b: ConfidenceVector) -> float:
    if len(a) != len(b):
        raise DimensionError(f"vector lengths differ: {len(a)} vs {len(b)}")
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a.values, b.values)))


def _evaluate_original(rb: RuleBase, q: TagSet, n: int) -> list[EvalCase]:
    v_orig = rb.fire(q)
    assert v_orig is not None
    baseline = select_domain(v_orig)
    assert baseline is not None
    zero = ConfidenceVector.zero(len(v_orig))

    cases = []
    for p in perturb_one_tag(q, n):
        v_pert = rb.fire(p)
        if v_pert is None:
            cases.append(EvalCase(q, p, v_orig, None, C2, euclidean_distance(v_orig, zero)))
            continue
        distance = euclidean_distance(v_orig, v_pert)
        selected = select_domain(v_pert)
        if selected is None:
            outcome = C2
        elif selected[0] == baseline[0]:
            outcome = C0
        else:
            outcome = C1
        cases.append(EvalCase(q, p, v_orig, v_pert, outcome, distance))
    return cases


def run_evaluation(
    rb: RuleBase, n: int, size_min: int, size_max: int, workers: int = 1
) -> EvalReport:
    """Perturb every fireable combination with size in [size_min, size_max].

    A combination counts as a baseline only if it fires a rule that selects a
    domain; combinations firing nothing or an all-zero vector are skipped.
    The report is aggregated in sorted case order, so serial and parallel
    runs produce identical output.
    """
    if not 1 <= size_min <= size_max <= n:
        raise RangeError(
            f"need 1 <= size_min <= size_max <= {n}, got {size_min}..{size_max}"
        )
    originals = []
    for q in enumerate_combinations(n):
        if not size_min <= q.cardinality <= size_max:
            continue
        vec = rb.fire(q)
        if vec is None or vec.is_all_zero:
            continue
        originals.append(q)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_original = list(pool.map(lambda q: _evaluate_original(rb, q, n), originals))
    else:
        per_original = [_evaluate_original(rb, q, n) for q in originals]

    cases = [case for group in per_original for case in group]
    cases.sort(key=lambda c: (c.original.mask, c.perturbed.mask))
    return EvalReport(cases=tuple(cases), originals_evaluated=len(originals))


def bucket_distance(distance: float) -> float:
    return round(distance, BUCKET_DECIMALS)


def cumulative_table(report: EvalReport, outcome_class: str) -> list[tuple[float, int, int]]:
    """(distance bucket, cases, cumulative) rows, ascending by distance."""
    if outcome_class not in (C0, C1):
        raise RangeError(f"cumulative tables exist for {C0} and {C1} only")
    counts: dict[float, int] = {}
    for case in report.class_cases(outcome_class):
        key = bucket_distance(case.distance)
        counts[key] = counts.get(key, 0) + 1
    rows = []
    cumulative = 0
    for key in sorted(counts):
        cumulative += counts[key]
        rows.append((key, counts[key], cumulative))
    return rows


def threshold_count(report: EvalReport, outcome_class: str, tau: float) -> int:
    """Cases of a class whose raw (unbucketed) distance is <= tau."""
    if outcome_class not in (C0, C1):
        raise RangeError(f"threshold counts exist for {C0} and {C1} only")
    return sum(1 for case in report.class_cases(outcome_class) if case.distance <= tau)


def render_report(report: EvalReport, taus: list[float]) -> str:
    """Tab-separated report text: one table block per class, then summary lines."""
    lines = []
    for outcome_class in (C0, C1):
        lines.append(f"class\t{outcome_class}")
        lines.append("distance\tcases\tcumulative")
        for distance, count, cumulative in cumulative_table(report, outcome_class):
            lines.append(f"{distance:.4f}\t{count}\t{cumulative}")
        lines.append("")
    lines.append(f"c2\t{report.c2_count}")
    lines.append(f"total\t{report.total_cases}")
    for tau in taus:
        for outcome_class in (C0, C1):
            lines.append(
                f"threshold\t{tau:g}\t{outcome_class}\t"
                f"{threshold_count(report, outcome_class, tau)}"
            )
    return "\n".join(lines) + "\n"


def report_as_dict(report: EvalReport, taus: list[float]) -> dict:
    """JSON-ready structure mirroring the rendered tables."""
    def table(outcome_class: str) -> list[dict]:
        return [
            {"distance": distance, "cases": count, "cumulative": cumulative}
            for distance, count, cumulative in cumulative_table(report, outcome_class)
        ]

    return {
        "c0": table(C0),
        "c1": table(C1),
        "c2_count": report.c2_count,
        "total_cases": report.total_cases,
        "originals_evaluated": report.originals_evaluated,
        "thresholds": [
            {
                "tau": tau,
                "outcome_class": outcome_class,
                "count": threshold_count(report, outcome_class, tau),
            }
            for tau in taus
            for outcome_class in (C0, C1)
        ],
    }
