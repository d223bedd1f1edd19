"""Per-tag phrase lookup tables with exact-match semantics.

A phrase may be stored under several tags; lookups return every matching tag
position. Matching is exact after normalization: no stemming, no fuzziness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedConfigError
from .registry import TagRegistry

# Punctuation stripped from word boundaries; everything else is kept verbatim.
_STRIP_CHARS = ".,!?;:'\""


def normalize_words(text: str) -> list[str]:
    """Lowercase, split on whitespace, strip boundary punctuation per word.

    Words that are punctuation-only disappear entirely.
    """
    words = []
    for raw in text.lower().split():
        word = raw.strip(_STRIP_CHARS)
        if word:
            words.append(word)
    return words


def normalize_phrase(text: str) -> str:
    return " ".join(normalize_words(text))


@dataclass(frozen=True)
class LexiconSet:
    """Normalized phrase -> tag positions, plus the longest stored phrase length."""

    tag_count: int
    phrase_tags: dict[str, frozenset[int]]
    max_phrase_words: int

    @classmethod
    def from_entries(cls, tag_count: int, entries: list[tuple[int, str]]) -> "LexiconSet":
        """Build from (tag position, raw phrase) pairs; phrases are normalized here."""
        phrase_tags: dict[str, set[int]] = {}
        max_words = 1
        for position, raw_phrase in entries:
            phrase = normalize_phrase(raw_phrase)
            if not phrase:
                raise MalformedConfigError(
                    f"lexicon phrase {raw_phrase!r} is empty after normalization"
                )
            phrase_tags.setdefault(phrase, set()).add(position)
            max_words = max(max_words, phrase.count(" ") + 1)
        frozen = {p: frozenset(tags) for p, tags in phrase_tags.items()}
        return cls(tag_count=tag_count, phrase_tags=frozen, max_phrase_words=max_words)

    def lookup(self, phrase: str) -> frozenset[int]:
        """Tag positions whose lexicon contains the normalized phrase (empty on miss)."""
        return self.phrase_tags.get(normalize_phrase(phrase), frozenset())

    def phrases_for(self, position: int) -> tuple[str, ...]:
        """All phrases stored under one tag, sorted (diagnostics and serialization)."""
        return tuple(
            sorted(p for p, tags in self.phrase_tags.items() if position in tags)
        )

    def __len__(self) -> int:
        return sum(len(tags) for tags in self.phrase_tags.values())


def load_lexicons(registry: TagRegistry, lexicon_text: str) -> LexiconSet:
    """Parse ``<tag-id><TAB><phrase>`` lines into a LexiconSet.

    ``#`` starts a comment line; blank lines are ignored. Tag ids must exist
    in the registry (raises UnknownTagError otherwise).
    """
    entries: list[tuple[int, str]] = []
    for lineno, raw in enumerate(lexicon_text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag_id, sep, phrase = line.partition("\t")
        if not sep:
            raise MalformedConfigError(f"line {lineno}: expected <tag-id><TAB><phrase>")
        position = registry.position(tag_id.strip())
        if not normalize_phrase(phrase):
            raise MalformedConfigError(f"line {lineno}: empty phrase")
        entries.append((position, phrase))
    return LexiconSet.from_entries(len(registry), entries)


def serialize_lexicons(registry: TagRegistry, lex: LexiconSet) -> str:
    """Render a LexiconSet back to the lexicon file format."""
    lines = []
    for position in range(len(registry)):
        for phrase in lex.phrases_for(position):
            lines.append(f"{registry.id_at(position)}\t{phrase}")
    return "\n".join(lines) + "\n"
