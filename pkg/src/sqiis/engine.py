"""A fully loaded engine instance: registries, lexicons, and one rule base."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .classifier import ClassificationResult, classify
from .errors import MalformedConfigError
from .lexicon import LexiconSet, load_lexicons
from .refconfig import (
    CONFIG_DIR_ENV,
    DEFAULT_RULEBASE_FILENAME,
    LEXICONS_FILENAME,
    REGISTRY_FILENAME,
)
from .registry import DomainRegistry, TagRegistry, load_registries
from .rulebase import RuleBase, load_rulebase
from .tagger import TaggedQuery, tokenize_and_tag

DEFAULT_CANDIDATE_CAP = 64


@dataclass(frozen=True)
class Engine:
    tags: TagRegistry
    domains: DomainRegistry
    lexicons: LexiconSet
    rulebase: RuleBase
    cap: int = DEFAULT_CANDIDATE_CAP

    @classmethod
    def from_paths(
        cls,
        registry_path: str | Path,
        lexicons_path: str | Path,
        rulebase_path: str | Path,
        cap: int = DEFAULT_CANDIDATE_CAP,
    ) -> "Engine":
        tags, domains = load_registries(Path(registry_path).read_text(encoding="utf-8"))
        lexicons = load_lexicons(tags, Path(lexicons_path).read_text(encoding="utf-8"))
        rulebase = load_rulebase(
            tags, domains, Path(rulebase_path).read_text(encoding="utf-8")
        )
        return cls(tags, domains, lexicons, rulebase, cap=cap)

    @classmethod
    def from_dir(
        cls, directory: str | Path, cap: int = DEFAULT_CANDIDATE_CAP
    ) -> "Engine":
        """Load from a config directory laid out by seed_config."""
        base = Path(directory)
        return cls.from_paths(
            base / REGISTRY_FILENAME,
            base / LEXICONS_FILENAME,
            base / DEFAULT_RULEBASE_FILENAME,
            cap=cap,
        )

    @classmethod
    def from_env(cls, cap: int = DEFAULT_CANDIDATE_CAP) -> "Engine":
        directory = os.environ.get(CONFIG_DIR_ENV)
        if not directory:
            raise MalformedConfigError(
                f"{CONFIG_DIR_ENV} is not set; point it at a config directory"
            )
        return cls.from_dir(directory, cap=cap)

    def tag(self, query: str) -> TaggedQuery:
        return tokenize_and_tag(query, self.lexicons)

    def classify(self, query: str) -> ClassificationResult:
        return classify(query, self.lexicons, self.rulebase, cap=self.cap)
