"""Rule-base construction: weight-driven generation and hand-crafted compilation.

Two strategies produce a RuleBase. The generated strategy sums per-tag/domain
weights over the tags of each combination and normalizes the sums into a
confidence vector, skipping combinations that contain an excluded tag pair.
The hand-crafted strategy enumerates every valid combination into a label
sheet which a human fills with one domain (or NO_DOMAIN) per row; compiling
the sheet yields one-hot (or all-zero) rules.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    DuplicateRuleError,
    EmptyTagSetError,
    InvalidConfidenceError,
    InvalidWeightError,
    MalformedConfigError,
    RangeError,
    UnknownIdentifierError,
)
from .registry import DomainRegistry, TagRegistry
from .rulebase import (
    ConfidenceVector,
    Rule,
    RuleBase,
    RuleBaseMode,
    format_combination,
    parse_combination,
)
from .tagset import ExclusionSet, TagSet

# Enumeration is 2^n - 1 combinations; past 24 tags that is no longer a
# desk-scale rule base.
MAX_ENUMERABLE_TAGS = 24

NO_DOMAIN_LABEL = "NO_DOMAIN"
UNFILLED_LABEL = "?"


@dataclass(frozen=True)
class WeightMatrix:
    """Non-negative tag-by-domain weights; row = tag position, column = domain."""

    rows: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        width = None
        for i, row in enumerate(self.rows):
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise InvalidWeightError(f"row {i} has {len(row)} entries, expected {width}")
            for w in row:
                if w < 0:
                    raise InvalidWeightError(f"negative weight {w} for tag row {i}")
            if not any(w > 0 for w in row):
                raise InvalidWeightError(
                    f"tag row {i} contributes to no domain (all weights zero)"
                )

    @property
    def tag_count(self) -> int:
        return len(self.rows)

    @property
    def domain_count(self) -> int:
        return len(self.rows[0]) if self.rows else 0


@dataclass(frozen=True)
class LabelSheet:
    """One (combination, label) row per valid combination; label None = NO_DOMAIN."""

    rows: tuple[tuple[TagSet, Optional[int]], ...]
    tag_count: int
    domain_count: int
    exclusions: ExclusionSet


def enumerate_combinations(n: int) -> list[TagSet]:
    """All non-empty subsets of n tags, ascending by binary-integer value."""
    if not 1 <= n <= MAX_ENUMERABLE_TAGS:
        raise RangeError(f"tag count {n} outside 1..{MAX_ENUMERABLE_TAGS}")
    return [TagSet(mask, n) for mask in range(1, 1 << n)]


def is_valid_combination(q: TagSet, ex: ExclusionSet) -> bool:
    """False iff q contains both members of some exclusion pair."""
    return not ex.violated_by(q)


def raw_confidence(w: WeightMatrix, q: TagSet, k: int) -> float:
    """Sum of the domain-k weights of every tag present in q."""
    if q.is_empty:
        raise EmptyTagSetError("raw confidence of an empty combination")
    return sum(w.rows[i][k] for i in q.positions())


def normalize(raw: Sequence[float]) -> ConfidenceVector:
    """Divide each component by the total; a zero total yields the all-zero vector."""
    for v in raw:
        if v < 0:
            raise InvalidConfidenceError(f"negative raw confidence {v}")
    total = sum(raw)
    if total == 0:
        return ConfidenceVector.zero(len(raw))
    return ConfidenceVector(tuple(v / total for v in raw))


def generate_rulebase(w: WeightMatrix, ex: ExclusionSet) -> RuleBase:
    """One normalized rule per valid combination; excluded combinations are omitted.

    Combinations whose contributing weights are all zero still get a rule
    (all-zero confidences), so firing distinguishes "rule says no domain"
    from "no rule at all".
    """
    rules = []
    for combination in enumerate_combinations(w.tag_count):
        if not is_valid_combination(combination, ex):
            continue
        raw = [raw_confidence(w, combination, k) for k in range(w.domain_count)]
        rules.append(Rule(combination, normalize(raw)))
    return RuleBase(
        RuleBaseMode.SYSTEM_GENERATED,
        rules,
        tag_count=w.tag_count,
        domain_count=w.domain_count,
        exclusions=ex,
    )


def compile_handcrafted(sheet: LabelSheet) -> RuleBase:
    """Turn a filled label sheet into a hand-crafted rule base.

    Labeled rows become one-hot rules; NO_DOMAIN rows become all-zero rules.
    """
    rules = []
    seen: set[int] = set()
    for combination, label in sheet.rows:
        if combination.mask in seen:
            raise DuplicateRuleError(
                f"combination {combination.mask:#x} labeled twice"
            )
        seen.add(combination.mask)
        if label is None:
            vec = ConfidenceVector.zero(sheet.domain_count)
        else:
            if not 0 <= label < sheet.domain_count:
                raise UnknownIdentifierError(f"domain position {label} out of range")
            values = [0.0] * sheet.domain_count
            values[label] = 1.0
            vec = ConfidenceVector(tuple(values))
        rules.append(Rule(combination, vec))
    return RuleBase(
        RuleBaseMode.HAND_CRAFTED,
        rules,
        tag_count=sheet.tag_count,
        domain_count=sheet.domain_count,
        exclusions=sheet.exclusions,
    )


def scaffold_labelsheet(
    tags: TagRegistry, domains: DomainRegistry, ex: ExclusionSet
) -> str:
    """Emit the blank label sheet covering every valid combination.

    Each ``label`` row ends in the ``?`` placeholder; replace it with a
    domain id or NO_DOMAIN, then compile the sheet into a rule base.
    """
    lines = [
        "# Replace the trailing ? of each label line with one domain id",
        f"# ({', '.join(domains.ids)}) or {NO_DOMAIN_LABEL}.",
        f"mode\t{RuleBaseMode.HAND_CRAFTED.value}",
    ]
    for a, b in ex:
        lines.append(f"exclude\t{tags.id_at(a)}\t{tags.id_at(b)}")
    for combination in enumerate_combinations(len(tags)):
        if not is_valid_combination(combination, ex):
            continue
        lines.append(
            f"label\t{format_combination(tags, combination)}\t{UNFILLED_LABEL}"
        )
    return "\n".join(lines) + "\n"


def parse_labelsheet(
    tags: TagRegistry, domains: DomainRegistry, sheet_text: str
) -> LabelSheet:
    """Parse a (filled) label sheet; rejects unfilled, duplicate, or excluded rows."""
    mode_seen = False
    exclusion_pairs: list[tuple[int, int]] = []
    rows: list[tuple[TagSet, Optional[int]]] = []
    for lineno, raw in enumerate(sheet_text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        kind, _, rest = line.partition("\t")
        if kind == "mode":
            if rest.strip() != RuleBaseMode.HAND_CRAFTED.value:
                raise MalformedConfigError(
                    f"line {lineno}: label sheets are {RuleBaseMode.HAND_CRAFTED.value} only"
                )
            mode_seen = True
        elif kind == "exclude":
            parts = [p.strip() for p in rest.split("\t") if p.strip()]
            if len(parts) != 2:
                raise MalformedConfigError(
                    f"line {lineno}: expected exclude<TAB><tag-id><TAB><tag-id>"
                )
            exclusion_pairs.append((tags.position(parts[0]), tags.position(parts[1])))
        elif kind == "label":
            combo_text, sep, label_text = rest.partition("\t")
            if not sep:
                raise MalformedConfigError(
                    f"line {lineno}: expected label<TAB><combination><TAB><domain>"
                )
            combination = parse_combination(tags, combo_text)
            label_text = label_text.strip()
            if label_text == UNFILLED_LABEL:
                raise MalformedConfigError(f"line {lineno}: unfilled label placeholder")
            label = None if label_text == NO_DOMAIN_LABEL else domains.position(label_text)
            rows.append((combination, label))
        else:
            raise MalformedConfigError(f"line {lineno}: unknown line kind {kind!r}")
    if not mode_seen:
        raise MalformedConfigError("label sheet has no mode line")

    exclusions = ExclusionSet.from_pairs(exclusion_pairs)
    seen: set[int] = set()
    for combination, _ in rows:
        if combination.mask in seen:
            raise DuplicateRuleError(
                f"combination {combination.mask:#x} labeled twice"
            )
        seen.add(combination.mask)
        if not is_valid_combination(combination, exclusions):
            raise MalformedConfigError(
                f"combination {combination.mask:#x} contains an excluded tag pair"
            )
    return LabelSheet(
        rows=tuple(rows),
        tag_count=len(tags),
        domain_count=len(domains),
        exclusions=exclusions,
    )


def load_weights(
    tags: TagRegistry, domains: DomainRegistry, weights_text: str
) -> tuple[WeightMatrix, ExclusionSet]:
    """Parse a weight-matrix file (``weight`` and optional ``exclude`` lines).

    Pairs missing from the file default to weight 0.
    """
    cells: dict[tuple[int, int], float] = {}
    exclusion_pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(weights_text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        kind, _, rest = line.partition("\t")
        if kind == "weight":
            parts = rest.split("\t")
            if len(parts) != 3:
                raise MalformedConfigError(
                    f"line {lineno}: expected weight<TAB><tag-id><TAB><domain-id><TAB><value>"
                )
            i = tags.position(parts[0].strip())
            j = domains.position(parts[1].strip())
            if (i, j) in cells:
                raise MalformedConfigError(
                    f"line {lineno}: weight for ({parts[0]}, {parts[1]}) given twice"
                )
            try:
                cells[(i, j)] = float(parts[2])
            except ValueError:
                raise MalformedConfigError(
                    f"line {lineno}: bad weight value {parts[2]!r}"
                ) from None
        elif kind == "exclude":
            parts = [p.strip() for p in rest.split("\t") if p.strip()]
            if len(parts) != 2:
                raise MalformedConfigError(
                    f"line {lineno}: expected exclude<TAB><tag-id><TAB><tag-id>"
                )
            exclusion_pairs.append((tags.position(parts[0]), tags.position(parts[1])))
        else:
            raise MalformedConfigError(f"line {lineno}: unknown line kind {kind!r}")

    rows = tuple(
        tuple(cells.get((i, j), 0.0) for j in range(len(domains)))
        for i in range(len(tags))
    )
    return WeightMatrix(rows), ExclusionSet.from_pairs(exclusion_pairs)


def load_exclusions(tags: TagRegistry, exclusions_text: str) -> ExclusionSet:
    """Parse a file of ``exclude<TAB><tag-id><TAB><tag-id>`` lines."""
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(exclusions_text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        kind, _, rest = line.partition("\t")
        if kind != "exclude":
            raise MalformedConfigError(f"line {lineno}: unknown line kind {kind!r}")
        parts = [p.strip() for p in rest.split("\t") if p.strip()]
        if len(parts) != 2:
            raise MalformedConfigError(
                f"line {lineno}: expected exclude<TAB><tag-id><TAB><tag-id>"
            )
        pairs.append((tags.position(parts[0]), tags.position(parts[1])))
    return ExclusionSet.from_pairs(pairs)


def serialize_weights(
    tags: TagRegistry,
    domains: DomainRegistry,
    w: WeightMatrix,
    ex: ExclusionSet | None = None,
) -> str:
    """Render a weight matrix (zero entries omitted) plus exclusion lines."""
    lines = []
    for i in range(w.tag_count):
        for j in range(w.domain_count):
            if w.rows[i][j] != 0.0:
                lines.append(
                    f"weight\t{tags.id_at(i)}\t{domains.id_at(j)}\t{w.rows[i][j]:g}"
                )
    for a, b in ex or ExclusionSet.empty():
        lines.append(f"exclude\t{tags.id_at(a)}\t{tags.id_at(b)}")
    return "\n".join(lines) + "\n"
