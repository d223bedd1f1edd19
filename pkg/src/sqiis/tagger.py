"""Query tokenization and tag attachment.

The tokenizer scans the normalized word sequence left to right and, at each
position, takes the longest n-gram found in the lexicons as one token
(greedy longest match). Words matching nothing become untagged single-word
tokens, so every word of the query lands in exactly one token.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import EmptyQueryError, NoTagsFoundError
from .lexicon import LexiconSet, normalize_words
from .tagset import TagSet


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    start: int
    word_count: int
    tags: frozenset[int]


@dataclass(frozen=True)
class TaggedQuery:
    raw: str
    tokens: tuple[TaggedToken, ...]
    tag_count: int

    def tagged_tokens(self) -> tuple[TaggedToken, ...]:
        return tuple(t for t in self.tokens if t.tags)


def tokenize_and_tag(query: str, lex: LexiconSet) -> TaggedQuery:
    """Segment a raw query into tagged tokens by greedy longest lexicon match."""
    words = normalize_words(query)
    if not words:
        raise EmptyQueryError(f"query {query!r} is empty after normalization")

    tokens: list[TaggedToken] = []
    pos = 0
    while pos < len(words):
        token = None
        longest = min(lex.max_phrase_words, len(words) - pos)
        for length in range(longest, 0, -1):
            surface = " ".join(words[pos:pos + length])
            tags = lex.lookup(surface)
            if tags:
                token = TaggedToken(surface, pos, length, tags)
                break
        if token is None:
            token = TaggedToken(words[pos], pos, 1, frozenset())
        tokens.append(token)
        pos += token.word_count
    return TaggedQuery(raw=query, tokens=tuple(tokens), tag_count=lex.tag_count)


def candidate_tag_sets(tq: TaggedQuery, cap: int = 64) -> list[TagSet]:
    """Project a tagged query onto candidate tag combinations.

    Untagged tokens are dropped. Tokens carrying several tags multiply out:
    the Cartesian product of one tag choice per token is expanded, each
    choice unioned into one TagSet. Per-token tags iterate in registry order
    and the product runs in mixed-radix order (last token fastest), so the
    output order is deterministic. Duplicates are removed keeping first
    occurrence; enumeration stops once ``cap`` distinct sets are collected.
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    choices = [sorted(t.tags) for t in tq.tokens if t.tags]
    if not choices:
        raise NoTagsFoundError(f"no token of {tq.raw!r} carries any tag")

    seen: set[int] = set()
    out: list[TagSet] = []
    for combo in itertools.product(*choices):
        mask = 0
        for position in combo:
            mask |= 1 << position
        if mask not in seen:
            seen.add(mask)
            out.append(TagSet(mask, tq.tag_count))
            if len(out) >= cap:
                break
    return out
