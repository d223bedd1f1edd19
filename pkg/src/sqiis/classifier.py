"""End-to-end query classification: tag, expand candidates, fire, pick a domain.

Each candidate combination that fires a rule is scored by the maximum
component of its confidence vector; the best-scoring candidate wins and its
argmax domain is the answer. All tie-breaking is deterministic: earlier
candidate in enumeration order, then lower domain position.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NoTagsFoundError
from .lexicon import LexiconSet
from .rulebase import ConfidenceVector, RuleBase
from .tagger import TaggedQuery, candidate_tag_sets, tokenize_and_tag
from .tagset import TagSet

# Confidences that differ by no more than this are treated as tied.
TIE_TOLERANCE = 1e-12

NO_TAGS = "no-tags"
NO_RULE = "no-rule"
ZERO_CONFIDENCE = "zero-confidence"


def select_domain(c: ConfidenceVector) -> Optional[tuple[int, float]]:
    """Argmax domain position and its confidence; None for the all-zero vector.

    Components within TIE_TOLERANCE of the maximum count as tied, and the
    lowest tied position wins.
    """
    if c.is_all_zero:
        return None
    best = c.max_component
    for position, value in enumerate(c.values):
        if value >= best - TIE_TOLERANCE:
            return position, value
    raise AssertionError("unreachable: a maximum component always exists")


@dataclass(frozen=True)
class ClassificationResult:
    """Selected domain (or the reason none was selected) plus the full trace."""

    domain: Optional[int]
    confidence: Optional[float]
    fired_combination: Optional[TagSet]
    reason: Optional[str]
    tagged: TaggedQuery
    candidates: tuple[tuple[TagSet, Optional[ConfidenceVector]], ...]

    @property
    def is_domain(self) -> bool:
        return self.domain is not None


def classify(
    query: str, lex: LexiconSet, rb: RuleBase, cap: int = 64
) -> ClassificationResult:
    """Classify a raw query against loaded lexicons and a rule base.

    Raises EmptyQueryError for queries that normalize to nothing; every other
    failure to identify a domain is reported as a NO_DOMAIN result with a
    reason (no-tags, no-rule, or zero-confidence).
    """
    tq = tokenize_and_tag(query, lex)
    try:
        candidates = candidate_tag_sets(tq, cap=cap)
    except NoTagsFoundError:
        return ClassificationResult(
            domain=None,
            confidence=None,
            fired_combination=None,
            reason=NO_TAGS,
            tagged=tq,
            candidates=(),
        )

    fired = tuple((ts, rb.fire(ts)) for ts in candidates)

    best_ts: Optional[TagSet] = None
    best_vec: Optional[ConfidenceVector] = None
    for ts, vec in fired:
        if vec is None:
            continue
        if best_vec is None or vec.max_component > best_vec.max_component + TIE_TOLERANCE:
            best_ts, best_vec = ts, vec

    if best_vec is None:
        return ClassificationResult(
            domain=None,
            confidence=None,
            fired_combination=None,
            reason=NO_RULE,
            tagged=tq,
            candidates=fired,
        )
    selected = select_domain(best_vec)
    if selected is None:
        return ClassificationResult(
            domain=None,
            confidence=None,
            fired_combination=best_ts,
            reason=ZERO_CONFIDENCE,
            tagged=tq,
            candidates=fired,
        )
    position, confidence = selected
    return ClassificationResult(
        domain=position,
        confidence=confidence,
        fired_combination=best_ts,
        reason=None,
        tagged=tq,
        candidates=fired,
    )
