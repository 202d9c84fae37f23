import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation

from evoalg.algebra import EvolutionAlgebra, is_perfect
from evoalg.errors import ParseError
from evoalg.fieldcore import FieldSpec
from evoalg.isotest import random_instance
from evoalg.pattern import (
    BlockSpec,
    PermSubgroup,
    SupportPattern,
    allowed_permutations,
    block_zero_cells,
    canonical_pattern,
    enumerate_patterns,
    fingerprint,
    format_cycles,
    generically_perfect,
    parse_cycles,
    permute_pattern,
    support,
)

masks = st.integers(min_value=0, max_value=(1 << 16) - 1)
perms = st.permutations(list(range(4))).map(Permutation)


def test_from_text_forms_agree():
    assert SupportPattern.from_text("* 0\n0 *") == SupportPattern.from_text("*0/0*")
    with pytest.raises(ParseError):
        SupportPattern.from_text("* x/0 *")
    with pytest.raises(ValueError):
        SupportPattern.from_text("* 0/0")


def test_support_of_matrix():
    A = EvolutionAlgebra.from_rows([[0, 2], [1, 0]])
    assert support(A) == SupportPattern.from_text("0 */* 0")


def test_generically_perfect():
    assert generically_perfect(SupportPattern.from_text("* */* 0"))
    assert not generically_perfect(SupportPattern.from_text("* */0 0"))
    assert sum(1 for _ in enumerate_patterns(2, predicates=[generically_perfect])) == 7


def test_generically_perfect_instances_are_perfect():
    F = FieldSpec.prime(10007)
    for P in enumerate_patterns(3, predicates=[generically_perfect]):
        assert is_perfect(random_instance(P, F, seed=1))


def test_cycles_round_trip():
    sigma = parse_cycles("(1,2,4,3)", 4)
    assert sigma.array_form == [1, 3, 0, 2]
    assert format_cycles(sigma) == "(1,2,4,3)"
    assert format_cycles(parse_cycles("id", 3)) == "id"
    assert parse_cycles("(1,2)(3,4)", 4).array_form == [1, 0, 3, 2]


@pytest.mark.parametrize("text", ["(1,2", "(1,5)", "(1,2)(2,3)", "(a,b)"])
def test_cycles_rejects_malformed(text):
    with pytest.raises(ParseError):
        parse_cycles(text, 4)


def test_permute_pattern_relabels_both_indices():
    P = SupportPattern.from_text("* * 0 0/0 * 0 */0 0 * 0/0 0 0 *")
    Q = permute_pattern(parse_cycles("(1,2,4,3)", 4), P)
    assert Q == SupportPattern.from_text("* 0 0 0/0 * 0 */0 0 * 0/0 0 * *")
    assert permute_pattern(parse_cycles("(1,3,4,2)", 4), Q) == P


@given(masks, perms, perms)
@settings(max_examples=100, deadline=None)
def test_permute_pattern_composes(mask, a, b):
    P = SupportPattern.from_mask(4, mask)
    a_then_b = Permutation([b.array_form[a.array_form[k]] for k in range(4)])
    assert permute_pattern(b, permute_pattern(a, P)) == permute_pattern(a_then_b, P)


def test_subgroups():
    assert len(PermSubgroup.symmetric(4)) == 24
    assert len(PermSubgroup.trivial(4)) == 1
    G = PermSubgroup.from_text(4, "(1,2) (2,3)")
    assert len(G) == 6
    assert all(g.array_form[3] == 3 for g in G)
    assert len(PermSubgroup.symmetric(4).stabilizer({1})) == 6


def test_canonical_pattern_of_two_by_two():
    assert str(canonical_pattern(SupportPattern.from_text("* */0 0"), PermSubgroup.symmetric(2))) == "0 0\n* *"


@given(masks, perms)
@settings(max_examples=200, deadline=None)
def test_canonical_pattern_is_orbit_invariant(mask, sigma):
    G = PermSubgroup.symmetric(4)
    P = SupportPattern.from_mask(4, mask)
    assert canonical_pattern(P, G) == canonical_pattern(permute_pattern(sigma, P), G)


@given(masks, perms)
@settings(max_examples=200, deadline=None)
def test_fingerprint_is_relabeling_invariant(mask, sigma):
    P = SupportPattern.from_mask(4, mask)
    assert fingerprint(P) == fingerprint(permute_pattern(sigma, P))


def test_allowed_permutations_example():
    P = SupportPattern.from_text("* * * 0/0 * * */0 * * 0/0 0 * *")
    allowed = allowed_permutations(P, BlockSpec(split=1, fixed={2}))
    assert [format_cycles(g) for g in allowed] == ["id", "(3,4)"]
    with pytest.raises(ValueError):
        allowed_permutations(P, BlockSpec(split=2))


def test_allowed_permutations_preserve_block_form():
    blocked = list(enumerate_patterns(4, fixed=block_zero_cells(4, 2)))
    for P in blocked[::97]:
        for g in allowed_permutations(P, BlockSpec(split=2)):
            assert permute_pattern(g, P).lower_left_zero(2)


def test_exchange_adds_swaps_with_last_index():
    P = SupportPattern.from_text("* * 0 */0 * 0 0/0 0 * */0 0 0 *")
    plain = allowed_permutations(P, BlockSpec(split=3))
    exchanged = allowed_permutations(P, BlockSpec(split=3, exchange=True))
    assert len(plain) == 6
    assert parse_cycles("(2,4)", 4) in exchanged
    assert len(exchanged) > len(plain)


def test_enumerate_respects_fixed_cells():
    fixed = block_zero_cells(3, 1)
    patterns = list(enumerate_patterns(3, fixed=fixed))
    assert len(patterns) == 1 << 7
    assert all(P.lower_left_zero(1) for P in patterns)
    assert patterns[0].zero_count == 9
    with pytest.raises(ValueError):
        list(enumerate_patterns(2, fixed={(2, 0): False}))


def test_fingerprint_fields():
    fp = fingerprint(SupportPattern.from_text("* */0 *"))
    assert fp.zero_count == 1
    assert fp.diag_zero_count == 0
    assert fp.degree_multiset == ((1, 2), (2, 1))
    assert len(list(itertools.islice(enumerate_patterns(1), 5))) == 2
