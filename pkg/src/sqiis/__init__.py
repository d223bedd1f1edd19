"""Short-query intent identification engine.

Tags query tokens against per-tag lexicons, fires rules mapping tag
combinations to per-domain confidences, and selects the highest-confidence
domain. Ships both rule-base construction strategies (weight-driven
generation and hand-crafted label sheets) and an error-injection robustness
harness.
"""

from .classifier import ClassificationResult, classify, select_domain
from .engine import Engine
from .errors import SqiisError
from .evaluation import (
    EvalCase,
    EvalReport,
    cumulative_table,
    euclidean_distance,
    perturb_one_tag,
    run_evaluation,
    threshold_count,
)
from .lexicon import LexiconSet, load_lexicons
from .registry import DomainRegistry, TagRegistry, load_registries
from .rulebase import (
    ConfidenceVector,
    Rule,
    RuleBase,
    RuleBaseMode,
    load_rulebase,
    serialize_rulebase,
)
from .rulegen import (
    ExclusionSet,
    LabelSheet,
    WeightMatrix,
    compile_handcrafted,
    enumerate_combinations,
    generate_rulebase,
    is_valid_combination,
    normalize,
    parse_labelsheet,
    raw_confidence,
    scaffold_labelsheet,
)
from .tagger import TaggedQuery, TaggedToken, candidate_tag_sets, tokenize_and_tag
from .tagset import TagSet

__version__ = "0.1.0"

__all__ = [
    "ClassificationResult",
    "ConfidenceVector",
    "DomainRegistry",
    "Engine",
    "EvalCase",
    "EvalReport",
    "ExclusionSet",
    "LabelSheet",
    "LexiconSet",
    "Rule",
    "RuleBase",
    "RuleBaseMode",
    "SqiisError",
    "TagRegistry",
    "TagSet",
    "TaggedQuery",
    "TaggedToken",
    "WeightMatrix",
    "candidate_tag_sets",
    "classify",
    "compile_handcrafted",
    "cumulative_table",
    "enumerate_combinations",
    "euclidean_distance",
    "generate_rulebase",
    "is_valid_combination",
    "load_lexicons",
    "load_registries",
    "load_rulebase",
    "normalize",
    "parse_labelsheet",
    "perturb_one_tag",
    "raw_confidence",
    "run_evaluation",
    "scaffold_labelsheet",
    "select_domain",
    "serialize_rulebase",
    "threshold_count",
    "tokenize_and_tag",
]
