"""Shipped reference configuration: 7 tags, 3 domains, lexicons, weights, labels.

The tag/domain universe matches the deployed setup this engine was built
around (local business, movie, and route-direction queries). Lexicon
contents, the weight matrix, and the label assignments are illustrative
operator judgment, not calibrated values; tune them per deployment.
"""

from __future__ import annotations

from pathlib import Path

from .lexicon import LexiconSet, load_lexicons
from .registry import DomainRegistry, TagRegistry, load_registries, serialize_registries
from .rulebase import RuleBase, RuleBaseMode, format_combination, serialize_rulebase
from .rulegen import (
    NO_DOMAIN_LABEL,
    WeightMatrix,
    compile_handcrafted,
    enumerate_combinations,
    generate_rulebase,
    parse_labelsheet,
    serialize_weights,
)
from .tagset import ExclusionSet

REGISTRY_FILENAME = "registry.tsv"
LEXICONS_FILENAME = "lexicons.tsv"
WEIGHTS_FILENAME = "weights.tsv"
LABELS_FILENAME = "labels.tsv"
HANDCRAFTED_RULEBASE_FILENAME = "rulebase-handcrafted.tsv"
GENERATED_RULEBASE_FILENAME = "rulebase-generated.tsv"
DEFAULT_RULEBASE_FILENAME = HANDCRAFTED_RULEBASE_FILENAME

CONFIG_DIR_ENV = "SQIIS_CONFIG_DIR"

REFERENCE_TAGS = (
    ("address", "generalized address element: road, street, or city area name"),
    ("category", "business category keyword such as restaurant or hospital"),
    ("proper_name", "name of a person or business"),
    ("movie_title", "part or whole of a movie name"),
    ("movie_performer_name", "name of a movie personality"),
    ("movie_performer_category", "performer role keyword such as actor or director"),
    ("direction_word", "route word such as from, to, or way to"),
)

REFERENCE_DOMAINS = (
    ("yellow_pages", "local business directory search"),
    ("movie", "movie listings and information search"),
    ("road_map", "route and direction search"),
)

REFERENCE_LEXICON = (
    ("address", "andheri"),
    ("address", "bandra"),
    ("address", "dadar"),
    ("address", "juhu"),
    ("address", "linking road"),
    ("address", "mg road"),
    ("address", "mumbai"),
    ("address", "pokhran road"),
    ("address", "powai"),
    ("address", "thane"),
    ("category", "bank"),
    ("category", "cafe"),
    ("category", "club"),
    ("category", "gym"),
    ("category", "hospital"),
    ("category", "petrol pump"),
    ("category", "pharmacy"),
    ("category", "restaurant"),
    ("category", "salon"),
    ("category", "theater"),
    ("proper_name", "barista"),
    ("proper_name", "cafe coffee day"),
    ("proper_name", "croma"),
    ("proper_name", "shoppers stop"),
    ("proper_name", "state bank of india"),
    # A performer's name is also a proper name; the ambiguity is intentional
    # and resolved by rule confidence.
    ("proper_name", "amitabh bachchan"),
    ("movie_title", "3 idiots"),
    ("movie_title", "dilwale dulhania le jayenge"),
    ("movie_title", "sholay"),
    ("movie_title", "slumdog millionaire"),
    ("movie_performer_name", "aamir khan"),
    ("movie_performer_name", "amitabh bachchan"),
    ("movie_performer_name", "kajol"),
    ("movie_performer_name", "shahrukh khan"),
    ("movie_performer_category", "actor"),
    ("movie_performer_category", "actress"),
    ("movie_performer_category", "director"),
    ("movie_performer_category", "music director"),
    ("movie_performer_category", "singer"),
    ("direction_word", "directions"),
    ("direction_word", "from"),
    ("direction_word", "route"),
    ("direction_word", "to"),
    ("direction_word", "towards"),
    ("direction_word", "via"),
    ("direction_word", "way to"),
)

# One phrase per tag that no other tag claims; used to build queries that tag
# to exactly one chosen combination.
CANONICAL_PHRASES = {
    "address": "andheri",
    "category": "restaurant",
    "proper_name": "croma",
    "movie_title": "sholay",
    "movie_performer_name": "kajol",
    "movie_performer_category": "actor",
    "direction_word": "towards",
}

# Illustrative weights: how strongly each tag pulls toward each domain.
REFERENCE_WEIGHTS = {
    # Addresses appear everywhere but lean toward directory and route use.
    ("address", "yellow_pages"): 0.5,
    ("address", "movie"): 0.2,
    ("address", "road_map"): 0.3,
    # Business categories are the directory signal.
    ("category", "yellow_pages"): 0.8,
    ("category", "movie"): 0.1,
    ("category", "road_map"): 0.1,
    # Names of businesses/people mostly mean a directory lookup.
    ("proper_name", "yellow_pages"): 0.6,
    ("proper_name", "movie"): 0.3,
    ("proper_name", "road_map"): 0.1,
    # The three movie tags pull hard toward the movie domain.
    ("movie_title", "yellow_pages"): 0.1,
    ("movie_title", "movie"): 0.9,
    ("movie_performer_name", "yellow_pages"): 0.2,
    ("movie_performer_name", "movie"): 0.8,
    ("movie_performer_category", "yellow_pages"): 0.1,
    ("movie_performer_category", "movie"): 0.9,
    # Route words dominate everything else.
    ("direction_word", "yellow_pages"): 0.05,
    ("direction_word", "movie"): 0.05,
    ("direction_word", "road_map"): 0.9,
}

_MOVIE_TAGS = frozenset(
    {"movie_title", "movie_performer_name", "movie_performer_category"}
)


def _reference_label(tag_ids: frozenset[str]) -> str | None:
    """Illustrative manual labeling policy for the reference tag universe."""
    if "direction_word" in tag_ids:
        return "road_map"
    if tag_ids & _MOVIE_TAGS:
        return "movie"
    if tag_ids == {"address"}:
        # A bare place name gives no topical intent.
        return None
    return "yellow_pages"


def reference_registry_text() -> str:
    tags = TagRegistry(REFERENCE_TAGS)
    domains = DomainRegistry(REFERENCE_DOMAINS)
    return serialize_registries(tags, domains)


def reference_registries() -> tuple[TagRegistry, DomainRegistry]:
    return load_registries(reference_registry_text())


def reference_lexicon_text() -> str:
    return "\n".join(f"{tag_id}\t{phrase}" for tag_id, phrase in REFERENCE_LEXICON) + "\n"


def reference_lexicons(tags: TagRegistry | None = None) -> LexiconSet:
    if tags is None:
        tags, _ = reference_registries()
    return load_lexicons(tags, reference_lexicon_text())


def reference_weight_matrix(
    tags: TagRegistry | None = None, domains: DomainRegistry | None = None
) -> WeightMatrix:
    if tags is None or domains is None:
        tags, domains = reference_registries()
    rows = [[0.0] * len(domains) for _ in range(len(tags))]
    for (tag_id, domain_id), weight in REFERENCE_WEIGHTS.items():
        rows[tags.position(tag_id)][domains.position(domain_id)] = weight
    return WeightMatrix(tuple(tuple(row) for row in rows))


def reference_weights_text() -> str:
    tags, domains = reference_registries()
    header = (
        "# Illustrative weights for the reference tag/domain universe.\n"
        "# Tune per deployment; values encode operator judgment, not training.\n"
    )
    return header + serialize_weights(tags, domains, reference_weight_matrix(tags, domains))


def reference_labelsheet_text() -> str:
    """The filled label sheet covering all combinations of the reference tags."""
    tags, _ = reference_registries()
    lines = [
        "# Filled label sheet for the reference configuration (illustrative).",
        f"mode\t{RuleBaseMode.HAND_CRAFTED.value}",
    ]
    for combination in enumerate_combinations(len(tags)):
        tag_ids = frozenset(combination.ids(tags))
        label = _reference_label(tag_ids)
        label_text = NO_DOMAIN_LABEL if label is None else label
        lines.append(f"label\t{format_combination(tags, combination)}\t{label_text}")
    return "\n".join(lines) + "\n"


def reference_handcrafted_rulebase() -> RuleBase:
    tags, domains = reference_registries()
    return compile_handcrafted(parse_labelsheet(tags, domains, reference_labelsheet_text()))


def reference_generated_rulebase() -> RuleBase:
    return generate_rulebase(reference_weight_matrix(), ExclusionSet.empty())


def seed_config(directory: str | Path) -> list[Path]:
    """Materialize the full reference configuration into a directory.

    Writes the registry, lexicons, weights, the filled label sheet, and both
    compiled rule bases. Returns the written paths.
    """
    tags, domains = reference_registries()
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    files = {
        REGISTRY_FILENAME: reference_registry_text(),
        LEXICONS_FILENAME: reference_lexicon_text(),
        WEIGHTS_FILENAME: reference_weights_text(),
        LABELS_FILENAME: reference_labelsheet_text(),
        HANDCRAFTED_RULEBASE_FILENAME: serialize_rulebase(
            tags, domains, reference_handcrafted_rulebase()
        ),
        GENERATED_RULEBASE_FILENAME: serialize_rulebase(
            tags, domains, reference_generated_rulebase()
        ),
    }
    written = []
    for name, content in files.items():
        path = target / name
        path.write_text(content, encoding="utf-8")
        written.append(path)
    return written
