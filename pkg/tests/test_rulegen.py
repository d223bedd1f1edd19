import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sqiis.errors import (
    DuplicateRuleError,
    InvalidConfidenceError,
    InvalidWeightError,
    MalformedConfigError,
    RangeError,
    UnknownIdentifierError,
)
from sqiis.registry import load_registries
from sqiis.rulebase import RuleBaseMode
from sqiis.rulegen import (
    LabelSheet,
    WeightMatrix,
    compile_handcrafted,
    enumerate_combinations,
    generate_rulebase,
    is_valid_combination,
    load_exclusions,
    load_weights,
    normalize,
    parse_labelsheet,
    raw_confidence,
    scaffold_labelsheet,
    serialize_weights,
)
from sqiis.tagset import ExclusionSet, TagSet

REGISTRY = (
    "[tags]\na\t\nb\t\nc\t\nd\t\ne\t\nf\t\ng\t\n"
    "[domains]\nd1\t\nd2\t\nd3\t\n"
)


@pytest.fixture()
def regs():
    return load_registries(REGISTRY)


# --- enumeration -----------------------------------------------------------

def test_seven_tags_give_127_combinations():
    assert len(enumerate_combinations(7)) == 127


def test_single_tag_gives_one_combination():
    combos = enumerate_combinations(1)
    assert combos == [TagSet(1, 1)]


def test_three_tags_match_brute_force_subsets():
    # Oracle: all non-empty subsets enumerated independently.
    expected = set()
    for size in range(1, 4):
        for subset in itertools.combinations(range(3), size):
            expected.add(frozenset(subset))
    combos = enumerate_combinations(3)
    assert len(combos) == 7
    assert {frozenset(c.positions()) for c in combos} == expected


def test_enumeration_is_ascending_binary_order():
    masks = [c.mask for c in enumerate_combinations(5)]
    assert masks == sorted(masks)
    assert masks == list(range(1, 32))


@pytest.mark.parametrize("n", [0, -1, 25])
def test_enumeration_range_guard(n):
    with pytest.raises(RangeError):
        enumerate_combinations(n)


# --- exclusion checking ----------------------------------------------------

def test_excluded_pair_invalidates_combination():
    ex = ExclusionSet.from_pairs([(1, 3)])
    both = TagSet.from_positions([1, 3], 7)
    assert not is_valid_combination(both, ex)


def test_singleton_is_always_valid():
    ex = ExclusionSet.from_pairs([(0, 1), (1, 2)])
    assert is_valid_combination(TagSet.from_positions([1], 7), ex)


def test_self_pair_rejected():
    with pytest.raises(MalformedConfigError):
        ExclusionSet.from_pairs([(2, 2)])


@given(
    st.integers(min_value=1, max_value=31),
    st.sets(
        st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(lambda p: p[0] != p[1]),
        max_size=4,
    ),
)
def test_validity_matches_naive_double_loop(mask, pairs):
    q = TagSet(mask, 5)
    ex = ExclusionSet.from_pairs(pairs)
    naive = True
    for i in q.positions():
        for j in q.positions():
            if i != j and ((i, j) in pairs or (j, i) in pairs):
                naive = False
    assert is_valid_combination(q, ex) == naive


# --- raw confidence and normalization --------------------------------------

def test_single_tag_raw_confidence():
    w = WeightMatrix(((0.7, 0.2, 0.1),))
    assert raw_confidence(w, TagSet(1, 1), 0) == 0.7


def test_two_tag_raw_confidence_is_hand_sum():
    w = WeightMatrix(((0.1, 0.2, 0.1), (0.3, 0.1, 0.4)))
    q = TagSet.from_positions([0, 1], 2)
    assert raw_confidence(w, q, 2) == pytest.approx(0.1 + 0.4)


def test_zero_weight_row_contributes_nothing():
    w = WeightMatrix(((0.0, 1.0), (0.5, 0.5)))
    q = TagSet.from_positions([0, 1], 2)
    assert raw_confidence(w, q, 0) == 0.5


@given(st.integers(1, 255), st.integers(1, 255))
def test_raw_confidence_is_additive_over_disjoint_parts(m1, m2):
    rows = tuple((0.1 * (i + 1), 0.2 * (i + 1)) for i in range(8))
    w = WeightMatrix(rows)
    mask1 = m1 & ~m2
    mask2 = m2 & ~m1
    if mask1 == 0 or mask2 == 0:
        return
    q1, q2 = TagSet(mask1, 8), TagSet(mask2, 8)
    union = q1.union(q2)
    for k in range(2):
        assert raw_confidence(w, union, k) == pytest.approx(
            raw_confidence(w, q1, k) + raw_confidence(w, q2, k)
        )


def test_normalize_keeps_already_normalized_vector():
    assert normalize((0.2, 0.2, 0.6)).values == pytest.approx((0.2, 0.2, 0.6))


def test_normalize_divides_by_total():
    assert normalize((1.0, 1.0, 2.0)).values == (0.25, 0.25, 0.5)


def test_normalize_zero_total_gives_all_zero():
    assert normalize((0.0, 0.0, 0.0)).values == (0.0, 0.0, 0.0)


def test_normalize_rejects_negative_components():
    with pytest.raises(InvalidConfidenceError):
        normalize((-0.1, 0.5))


@given(st.lists(st.floats(0, 100), min_size=1, max_size=6))
def test_normalize_output_sums_to_one_or_is_zero(raw):
    vec = normalize(tuple(raw))
    total = sum(vec.values)
    assert vec.is_all_zero or abs(total - 1.0) <= 1e-9


# --- system-generated rule base --------------------------------------------

def test_generate_without_exclusions_yields_127_rules(regs):
    rb = generate_rulebase(_reference_like_weights(), ExclusionSet.empty())
    assert len(rb) == 127
    assert rb.mode is RuleBaseMode.SYSTEM_GENERATED
    assert rb.validate() == []


def test_one_exclusion_removes_two_pow_n_minus_two_rules():
    ex = ExclusionSet.from_pairs([(0, 1)])
    rb = generate_rulebase(_reference_like_weights(), ex)
    # Oracle: count invalid subsets by brute force.
    invalid = sum(
        1
        for combo in enumerate_combinations(7)
        if combo.contains(0) and combo.contains(1)
    )
    assert invalid == 2 ** 5
    assert len(rb) == 127 - invalid == 95


def test_generated_rules_sum_to_one_or_zero():
    rb = generate_rulebase(_reference_like_weights(), ExclusionSet.empty())
    for rule in rb.rules:
        total = sum(rule.confidences.values)
        assert rule.confidences.is_all_zero or abs(total - 1.0) <= 1e-9


def test_generation_never_yields_zero_vectors_given_row_invariant():
    # Every tag row must carry a positive entry somewhere, so every
    # combination's raw total is positive and normalization never hits the
    # all-zero branch. (All-zero rules enter only via NO_DOMAIN labels.)
    w = WeightMatrix(((1.0, 0.0), (1.0, 0.0)))
    rb = generate_rulebase(w, ExclusionSet.empty())
    assert len(rb) == 3
    assert all(not r.confidences.is_all_zero for r in rb.rules)


def _reference_like_weights() -> WeightMatrix:
    return WeightMatrix(
        (
            (0.5, 0.2, 0.3),
            (0.8, 0.1, 0.1),
            (0.6, 0.3, 0.1),
            (0.1, 0.9, 0.0),
            (0.2, 0.8, 0.0),
            (0.1, 0.9, 0.0),
            (0.05, 0.05, 0.9),
        )
    )


def test_argmax_invariant_under_uniform_scaling():
    base = _reference_like_weights()
    for lam in (0.01, 100.0):
        scaled = WeightMatrix(
            tuple(tuple(lam * w for w in row) for row in base.rows)
        )
        for combo in enumerate_combinations(7):
            vec_a = normalize([raw_confidence(base, combo, k) for k in range(3)])
            vec_b = normalize([raw_confidence(scaled, combo, k) for k in range(3)])
            for x, y in zip(vec_a.values, vec_b.values):
                assert abs(x - y) <= 1e-9


# --- weight matrix loading --------------------------------------------------

def test_weight_matrix_rejects_negative_entries():
    with pytest.raises(InvalidWeightError):
        WeightMatrix(((0.5, -0.1),))


def test_weight_matrix_rejects_all_zero_rows():
    with pytest.raises(InvalidWeightError):
        WeightMatrix(((0.5, 0.5), (0.0, 0.0)))


def test_load_weights_with_defaults():
    tags, domains = load_registries(
        "[tags]\na\t\nb\t\n[domains]\nd1\t\nd2\t\nd3\t\n"
    )
    text = "weight\ta\td1\t0.7\nweight\tb\td2\t1.0\nexclude\ta\tb\n"
    w, ex = load_weights(tags, domains, text)
    assert w.rows[0] == (0.7, 0.0, 0.0)
    assert w.rows[1] == (0.0, 1.0, 0.0)
    assert (0, 1) in ex.pairs


def test_load_weights_requires_every_tag_row(regs):
    tags, domains = regs
    # Only tag "a" gets a weight; the other six rows stay all-zero.
    with pytest.raises(InvalidWeightError):
        load_weights(tags, domains, "weight\ta\td1\t0.7\n")


def test_load_weights_rejects_duplicates_and_unknown_ids(regs):
    tags, domains = regs
    full = "".join(f"weight\t{t}\td1\t0.5\n" for t in "abcdefg")
    with pytest.raises(MalformedConfigError):
        load_weights(tags, domains, full + "weight\ta\td1\t0.9\n")
    with pytest.raises(UnknownIdentifierError):
        load_weights(tags, domains, full + "weight\tzz\td1\t0.5\n")
    with pytest.raises(UnknownIdentifierError):
        load_weights(tags, domains, full + "weight\ta\tdz\t0.5\n")
    with pytest.raises(MalformedConfigError):
        load_weights(tags, domains, full + "weight\ta\td2\tnot-a-number\n")


def test_serialize_weights_round_trip(regs):
    tags, domains = regs
    w = _reference_like_weights()
    ex = ExclusionSet.from_pairs([(1, 3)])
    text = serialize_weights(tags, domains, w, ex)
    w2, ex2 = load_weights(tags, domains, text)
    assert w2.rows == w.rows
    assert ex2 == ex


def test_load_exclusions(regs):
    tags, _ = regs
    ex = load_exclusions(tags, "# pairs\nexclude\tb\td\n")
    assert ex.pairs == {(1, 3)}
    with pytest.raises(MalformedConfigError):
        load_exclusions(tags, "weight\ta\td1\t0.5\n")


# --- hand-crafted flow -------------------------------------------------------

def test_scaffold_covers_all_valid_combinations(regs):
    tags, domains = regs
    text = scaffold_labelsheet(tags, domains, ExclusionSet.empty())
    assert text.count("label\t") == 127


def test_scaffold_two_tags_gives_three_rows():
    tags, domains = load_registries("[tags]\nx\t\ny\t\n[domains]\nd1\t\nd2\t\n")
    text = scaffold_labelsheet(tags, domains, ExclusionSet.empty())
    assert text.count("label\t") == 3


def test_scaffold_omits_excluded_combinations(regs):
    tags, domains = regs
    ex = ExclusionSet.from_pairs([(0, 1)])
    text = scaffold_labelsheet(tags, domains, ex)
    # Oracle: rows must agree with validity checking over the enumeration.
    expected = sum(
        1 for c in enumerate_combinations(len(tags)) if is_valid_combination(c, ex)
    )
    assert text.count("label\t") == expected
    assert "label\ta+b\t" not in text


def test_compile_one_hot_and_no_domain_rows(regs):
    tags, domains = regs
    sheet_text = (
        "mode\thand-crafted\n"
        "label\ta+b\td1\n"
        "label\tg\td3\n"
        "label\ta\tNO_DOMAIN\n"
    )
    sheet = parse_labelsheet(tags, domains, sheet_text)
    rb = compile_handcrafted(sheet)
    assert rb.mode is RuleBaseMode.HAND_CRAFTED
    assert rb.validate() == []
    assert rb.fire(TagSet.from_positions([0, 1], 7)).values == (1.0, 0.0, 0.0)
    assert rb.fire(TagSet.from_positions([6], 7)).values == (0.0, 0.0, 1.0)
    assert rb.fire(TagSet.from_positions([0], 7)).is_all_zero


def test_compile_rejects_duplicate_rows(regs):
    tags, domains = regs
    text = "mode\thand-crafted\nlabel\ta\td1\nlabel\ta\td2\n"
    with pytest.raises(DuplicateRuleError):
        parse_labelsheet(tags, domains, text)


def test_parse_rejects_unfilled_and_unknown_labels(regs):
    tags, domains = regs
    with pytest.raises(MalformedConfigError):
        parse_labelsheet(tags, domains, "mode\thand-crafted\nlabel\ta\t?\n")
    with pytest.raises(UnknownIdentifierError):
        parse_labelsheet(tags, domains, "mode\thand-crafted\nlabel\ta\tnothere\n")


def test_parse_rejects_rows_violating_sheet_exclusions(regs):
    tags, domains = regs
    text = "mode\thand-crafted\nexclude\ta\tb\nlabel\ta+b\td1\n"
    with pytest.raises(MalformedConfigError):
        parse_labelsheet(tags, domains, text)


def test_scaffold_fill_compile_round_trip(regs):
    tags, domains = regs
    scaffold = scaffold_labelsheet(tags, domains, ExclusionSet.empty())
    filled = scaffold.replace("\t?", "\td2")
    rb = compile_handcrafted(parse_labelsheet(tags, domains, filled))
    assert len(rb) == 127
    assert all(r.confidences.values == (0.0, 1.0, 0.0) for r in rb.rules)


def test_compile_rejects_out_of_range_label_position(regs):
    sheet = LabelSheet(
        rows=((TagSet(1, 7), 5),),
        tag_count=7,
        domain_count=3,
        exclusions=ExclusionSet.empty(),
    )
    with pytest.raises(UnknownIdentifierError):
        compile_handcrafted(sheet)
