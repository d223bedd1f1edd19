"""Rule storage, exact-match firing, and mode validation.

A rule maps one tag combination to a per-domain confidence vector. Firing is
pure exact bit-vector lookup; subset or superset matches never fire. A miss
is a first-class outcome (None), distinct from a rule that fires an all-zero
"no domain" vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .errors import (
    DimensionError,
    DuplicateRuleError,
    EmptyTagSetError,
    InvalidConfidenceError,
    MalformedConfigError,
    ModeViolationError,
)
from .registry import DomainRegistry, TagRegistry
from .tagset import ExclusionSet, TagSet

# Text formats carry limited precision; sum/one-hot checks allow this slack.
SUM_TOLERANCE = 1e-9


class RuleBaseMode(str, Enum):
    HAND_CRAFTED = "hand-crafted"
    SYSTEM_GENERATED = "system-generated"


@dataclass(frozen=True)
class ConfidenceVector:
    """Per-domain confidences, each in [0, 1]."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        for v in self.values:
            if not 0.0 <= v <= 1.0:
                raise InvalidConfidenceError(f"confidence {v} outside [0, 1]")

    @classmethod
    def zero(cls, length: int) -> "ConfidenceVector":
        return cls((0.0,) * length)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def is_all_zero(self) -> bool:
        return all(v == 0.0 for v in self.values)

    @property
    def max_component(self) -> float:
        return max(self.values)

    def is_normalized(self, tolerance: float = SUM_TOLERANCE) -> bool:
        return abs(sum(self.values) - 1.0) <= tolerance

    def is_one_hot(self, tolerance: float = SUM_TOLERANCE) -> bool:
        ones = sum(1 for v in self.values if abs(v - 1.0) <= tolerance)
        zeros = sum(1 for v in self.values if abs(v) <= tolerance)
        return ones == 1 and ones + zeros == len(self.values)


@dataclass(frozen=True)
class Rule:
    combination: TagSet
    confidences: ConfidenceVector

    def __post_init__(self) -> None:
        if self.combination.is_empty:
            raise EmptyTagSetError("rule combination must have at least one tag")


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str


class RuleBase:
    """Keyed collection of rules under one construction mode.

    Structural invariants (dimensions, combination uniqueness, confidence
    bounds) are enforced at construction. Mode invariants are checked by
    :meth:`validate`, which returns violations instead of raising so that
    deliberately broken rule sets can be inspected.
    """

    def __init__(
        self,
        mode: RuleBaseMode,
        rules: Iterable[Rule],
        tag_count: int,
        domain_count: int,
        exclusions: ExclusionSet | None = None,
    ) -> None:
        self.mode = RuleBaseMode(mode)
        self.tag_count = tag_count
        self.domain_count = domain_count
        self.exclusions = exclusions if exclusions is not None else ExclusionSet.empty()
        self.rules: tuple[Rule, ...] = tuple(rules)
        by_mask: dict[int, Rule] = {}
        for rule in self.rules:
            if rule.combination.width != tag_count:
                raise DimensionError(
                    f"combination width {rule.combination.width} != tag count {tag_count}"
                )
            if len(rule.confidences) != domain_count:
                raise DimensionError(
                    f"confidence length {len(rule.confidences)} != domain count {domain_count}"
                )
            if rule.combination.mask in by_mask:
                raise DuplicateRuleError(
                    f"duplicate combination mask {rule.combination.mask:#x}"
                )
            by_mask[rule.combination.mask] = rule
        self._by_mask = by_mask

    def __len__(self) -> int:
        return len(self.rules)

    def fire(self, q: TagSet) -> Optional[ConfidenceVector]:
        """Exact-match lookup: the matched rule's confidences, or None."""
        if q.is_empty:
            raise EmptyTagSetError("cannot fire on an empty tag combination")
        if q.width != self.tag_count:
            raise DimensionError(
                f"combination width {q.width} != tag count {self.tag_count}"
            )
        rule = self._by_mask.get(q.mask)
        return rule.confidences if rule is not None else None

    def validate(self) -> list[Violation]:
        """Mode-invariant violations for every rule; empty means well-formed."""
        violations = []
        for rule in self.rules:
            vec = rule.confidences
            if vec.is_all_zero:
                continue
            if self.mode is RuleBaseMode.HAND_CRAFTED and not vec.is_one_hot():
                violations.append(Violation(
                    "ModeViolation",
                    f"hand-crafted rule {rule.combination.mask:#x} is not one-hot: {vec.values}",
                ))
            if self.mode is RuleBaseMode.SYSTEM_GENERATED and not vec.is_normalized():
                violations.append(Violation(
                    "NormalizationViolation",
                    f"system-generated rule {rule.combination.mask:#x} sums to {sum(vec.values)!r}",
                ))
        if self.mode is RuleBaseMode.SYSTEM_GENERATED:
            for rule in self.rules:
                if self.exclusions.violated_by(rule.combination):
                    violations.append(Violation(
                        "ExclusionViolation",
                        f"rule {rule.combination.mask:#x} contains an excluded tag pair",
                    ))
        return violations


def load_rulebase(
    tags: TagRegistry, domains: DomainRegistry, rulebase_text: str
) -> RuleBase:
    """Parse and validate a rule-base file.

    Lines: ``mode<TAB><hand-crafted|system-generated>`` (exactly once),
    ``exclude<TAB><tag-id><TAB><tag-id>`` (zero or more), and
    ``rule<TAB><tag-id+...><TAB><domain-id>:<conf> ...``. Domains omitted from
    a rule line default to confidence 0. Mode-invariant violations reject the
    whole file.
    """
    mode: RuleBaseMode | None = None
    exclusion_pairs: list[tuple[int, int]] = []
    rules: list[Rule] = []
    for lineno, raw in enumerate(rulebase_text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        kind, _, rest = line.partition("\t")
        if kind == "mode":
            if mode is not None:
                raise MalformedConfigError(f"line {lineno}: repeated mode line")
            try:
                mode = RuleBaseMode(rest.strip())
            except ValueError:
                raise MalformedConfigError(
                    f"line {lineno}: unknown mode {rest.strip()!r}"
                ) from None
        elif kind == "exclude":
            exclusion_pairs.append(_parse_exclusion(tags, rest, lineno))
        elif kind == "rule":
            rules.append(_parse_rule(tags, domains, rest, lineno))
        else:
            raise MalformedConfigError(f"line {lineno}: unknown line kind {kind!r}")

    if mode is None:
        raise MalformedConfigError("rule-base file has no mode line")
    rb = RuleBase(
        mode,
        rules,
        tag_count=len(tags),
        domain_count=len(domains),
        exclusions=ExclusionSet.from_pairs(exclusion_pairs),
    )
    violations = rb.validate()
    if violations:
        detail = "; ".join(f"{v.kind}: {v.message}" for v in violations)
        raise ModeViolationError(detail)
    return rb


def _parse_exclusion(tags: TagRegistry, rest: str, lineno: int) -> tuple[int, int]:
    parts = [p.strip() for p in rest.split("\t") if p.strip()]
    if len(parts) != 2:
        raise MalformedConfigError(
            f"line {lineno}: expected exclude<TAB><tag-id><TAB><tag-id>"
        )
    a, b = (tags.position(p) for p in parts)
    if a == b:
        raise MalformedConfigError(f"line {lineno}: exclusion pairs a tag with itself")
    return a, b


def parse_combination(tags: TagRegistry, text: str) -> TagSet:
    """Parse a ``+``-joined list of tag ids into a TagSet (set semantics)."""
    ids = [part.strip() for part in text.split("+")]
    if not any(ids):
        raise MalformedConfigError(f"empty tag combination: {text!r}")
    return TagSet.from_positions((tags.position(i) for i in ids if i), len(tags))


def format_combination(tags: TagRegistry, combination: TagSet) -> str:
    return "+".join(combination.ids(tags))


def _parse_rule(
    tags: TagRegistry, domains: DomainRegistry, rest: str, lineno: int
) -> Rule:
    combo_text, sep, confidences_text = rest.partition("\t")
    if not sep:
        raise MalformedConfigError(
            f"line {lineno}: expected rule<TAB><combination><TAB><confidences>"
        )
    combination = parse_combination(tags, combo_text)
    values = [0.0] * len(domains)
    assigned: set[int] = set()
    for piece in confidences_text.split():
        domain_id, sep, conf_text = piece.partition(":")
        if not sep:
            raise MalformedConfigError(
                f"line {lineno}: expected <domain-id>:<confidence>, got {piece!r}"
            )
        position = domains.position(domain_id.strip())
        if position in assigned:
            raise MalformedConfigError(
                f"line {lineno}: domain {domain_id!r} assigned twice"
            )
        assigned.add(position)
        try:
            values[position] = float(conf_text)
        except ValueError:
            raise MalformedConfigError(
                f"line {lineno}: bad confidence {conf_text!r}"
            ) from None
    return Rule(combination, ConfidenceVector(tuple(values)))


def _format_confidence(value: float) -> str:
    # 12 decimals keeps normalized sums within the 1e-9 load tolerance.
    return f"{value:.12f}"


def serialize_rulebase(
    tags: TagRegistry, domains: DomainRegistry, rb: RuleBase
) -> str:
    """Render a rule base to its file format, rules in ascending mask order."""
    lines = [f"mode\t{rb.mode.value}"]
    for a, b in rb.exclusions:
        lines.append(f"exclude\t{tags.id_at(a)}\t{tags.id_at(b)}")
    for rule in sorted(rb.rules, key=lambda r: r.combination.mask):
        confs = " ".join(
            f"{domains.id_at(k)}:{_format_confidence(v)}"
            for k, v in enumerate(rule.confidences.values)
        )
        lines.append(f"rule\t{format_combination(tags, rule.combination)}\t{confs}")
    return "\n".join(lines) + "\n"
