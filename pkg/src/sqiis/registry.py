"""Closed, ordered universes of tag and domain identifiers.

Every other component indexes tags and domains by 0-based position, so
registries are immutable after load: changing the identifier universe means
building a new engine instance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DuplicateIdentifierError,
    MalformedConfigError,
    UnknownIdentifierError,
    UnknownTagError,
)


@dataclass(frozen=True)
class Registry:
    """Ordered (id, description) entries with stable 0-based positions."""

    entries: tuple[tuple[str, str], ...]

    _unknown_error = UnknownIdentifierError

    def __post_init__(self) -> None:
        index: dict[str, int] = {}
        for ident, _ in self.entries:
            if not ident:
                raise MalformedConfigError("registry entry with empty identifier")
            if ident in index:
                raise DuplicateIdentifierError(f"duplicate identifier: {ident!r}")
            index[ident] = len(index)
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, ident: str) -> bool:
        return ident in self._index  # type: ignore[attr-defined]

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(ident for ident, _ in self.entries)

    def position(self, ident: str) -> int:
        try:
            return self._index[ident]  # type: ignore[attr-defined]
        except KeyError:
            raise self._unknown_error(f"unknown identifier: {ident!r}") from None

    def id_at(self, position: int) -> str:
        return self.entries[position][0]

    def description_at(self, position: int) -> str:
        return self.entries[position][1]


class TagRegistry(Registry):
    _unknown_error = UnknownTagError


class DomainRegistry(Registry):
    pass


_TAGS_SECTION = "[tags]"
_DOMAINS_SECTION = "[domains]"


def load_registries(config_text: str) -> tuple[TagRegistry, DomainRegistry]:
    """Parse a registry file into a (TagRegistry, DomainRegistry) pair.

    The file is line-oriented UTF-8: section headers ``[tags]`` and
    ``[domains]``, followed by ``<id><TAB><description>`` lines. ``#`` starts
    a comment line; blank lines are ignored.
    """
    sections: dict[str, list[tuple[str, str]]] = {}
    current: list[tuple[str, str]] | None = None
    for lineno, raw in enumerate(config_text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line in (_TAGS_SECTION, _DOMAINS_SECTION):
            if line in sections:
                raise MalformedConfigError(f"line {lineno}: repeated section {line}")
            current = sections.setdefault(line, [])
            continue
        if line.startswith("["):
            raise MalformedConfigError(f"line {lineno}: unknown section {line}")
        if current is None:
            raise MalformedConfigError(f"line {lineno}: entry before any section header")
        # Strip spaces only: a trailing tab marks an empty description.
        ident, sep, description = raw.strip(" ").partition("\t")
        if not sep:
            raise MalformedConfigError(f"line {lineno}: expected <id><TAB><description>")
        ident = ident.strip()
        if not ident:
            raise MalformedConfigError(f"line {lineno}: empty identifier")
        current.append((ident, description.strip()))

    tags = sections.get(_TAGS_SECTION, [])
    domains = sections.get(_DOMAINS_SECTION, [])
    if not tags or not domains:
        raise MalformedConfigError("registry file must declare at least one tag and one domain")
    return TagRegistry(tuple(tags)), DomainRegistry(tuple(domains))


def serialize_registries(tags: TagRegistry, domains: DomainRegistry) -> str:
    """Render registries back to the registry file format (load round-trips)."""
    lines = [_TAGS_SECTION]
    lines += [f"{ident}\t{desc}" for ident, desc in tags.entries]
    lines.append(_DOMAINS_SECTION)
    lines += [f"{ident}\t{desc}" for ident, desc in domains.entries]
    return "\n".join(lines) + "\n"
