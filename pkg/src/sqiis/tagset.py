"""Binary tag-membership vectors and co-occurrence exclusion pairs.

A TagSet is the unit every rule matches against: a fixed-width bit vector in
which bit i says whether the tag at registry position i is present. Width is
carried explicitly so mismatched registries are caught instead of silently
matching.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DimensionError, MalformedConfigError


@dataclass(frozen=True, order=True)
class TagSet:
    """Immutable set of tag positions over a registry of ``width`` tags."""

    mask: int
    width: int

    def __post_init__(self) -> None:
        if self.width < 1:
            raise DimensionError(f"tag set width must be >= 1, got {self.width}")
        if self.mask < 0 or self.mask >> self.width:
            raise DimensionError(
                f"mask {self.mask:#x} does not fit in {self.width} bits"
            )

    @classmethod
    def from_positions(cls, positions: Iterable[int], width: int) -> "TagSet":
        mask = 0
        for pos in positions:
            if not 0 <= pos < width:
                raise DimensionError(f"tag position {pos} outside 0..{width - 1}")
            mask |= 1 << pos
        return cls(mask, width)

    def positions(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.width) if self.mask >> i & 1)

    def bits(self) -> tuple[int, ...]:
        return tuple(self.mask >> i & 1 for i in range(self.width))

    def ids(self, registry) -> tuple[str, ...]:
        """Tag ids of the set positions, in registry order."""
        return tuple(registry.id_at(i) for i in self.positions())

    def contains(self, position: int) -> bool:
        return bool(self.mask >> position & 1)

    def union(self, other: "TagSet") -> "TagSet":
        self._check_width(other)
        return TagSet(self.mask | other.mask, self.width)

    def substitute(self, remove: int, add: int) -> "TagSet":
        """Replace one present tag with one absent tag (cardinality preserved)."""
        if not self.contains(remove):
            raise DimensionError(f"tag position {remove} not present")
        if self.contains(add):
            raise DimensionError(f"tag position {add} already present")
        return TagSet(self.mask & ~(1 << remove) | 1 << add, self.width)

    @property
    def cardinality(self) -> int:
        return bin(self.mask).count("1")

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.positions())

    def _check_width(self, other: "TagSet") -> None:
        if self.width != other.width:
            raise DimensionError(
                f"tag set widths differ: {self.width} vs {other.width}"
            )


@dataclass(frozen=True)
class ExclusionSet:
    """Unordered tag-position pairs that may not co-occur in a combination."""

    pairs: frozenset[tuple[int, int]]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "ExclusionSet":
        normalized = set()
        for a, b in pairs:
            if a == b:
                raise MalformedConfigError(
                    f"exclusion pair of a tag with itself: position {a}"
                )
            normalized.add((min(a, b), max(a, b)))
        return cls(frozenset(normalized))

    @classmethod
    def empty(cls) -> "ExclusionSet":
        return cls(frozenset())

    def violated_by(self, combination: TagSet) -> bool:
        """True iff the combination contains both members of any pair."""
        return any(
            combination.contains(a) and combination.contains(b)
            for a, b in self.pairs
        )

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.pairs))
