import random
from fractions import Fraction

import pytest
from sympy import prime
from sympy.combinatorics import Permutation

from evoalg.algebra import EvolutionAlgebra, MonomialMap, apply_monomial, is_perfect
from evoalg.errors import NotPerfectError, SamplingError
from evoalg.fieldcore import RATIONALS, FieldSpec
from evoalg.isotest import (
    IsoVerdict,
    build_scaling_system,
    decide_isomorphism,
    find_isomorphism,
    random_instance,
    solve_scaling,
)
from evoalg.pattern import SupportPattern, enumerate_patterns, generically_perfect, support


def _random_map(rng, field, n):
    perm = list(range(n))
    rng.shuffle(perm)
    return MonomialMap(Permutation(perm), tuple(field.random_nonzero(rng) for _ in range(n)))


def test_random_instance_is_reproducible(gf):
    P = SupportPattern.from_text("* * 0/0 * */* 0 *")
    assert random_instance(P, gf, seed=4) == random_instance(P, gf, seed=4)
    assert support(random_instance(P, gf, seed=4)) == P


def test_random_instance_of_empty_pattern(gf):
    P = SupportPattern.from_text("0 0/0 0")
    assert random_instance(P, gf) == EvolutionAlgebra.from_rows([[0, 0], [0, 0]], gf)


def test_random_instance_resamples_singular_draws():
    F3 = FieldSpec.prime(3)
    P = SupportPattern.from_text("* */* *")
    A = random_instance(P, F3, seed=0, max_retries=50)
    assert A.matrix[0][0] * A.matrix[1][1] != A.matrix[0][1] * A.matrix[1][0]


def test_random_instance_gives_up():
    F3 = FieldSpec.prime(3)
    P = SupportPattern.from_text("* */* *")
    with pytest.raises(SamplingError):
        for seed in range(50):
            random_instance(P, F3, seed=seed, max_retries=0)


def test_one_dimensional_scaling():
    one = EvolutionAlgebra.from_rows([[1]])
    two = EvolutionAlgebra.from_rows([[2]])
    assert solve_scaling(Permutation([0]), one, two) == (Fraction(2),)


def test_identity_scaling_solves_equal_algebras(gf):
    A = random_instance(SupportPattern.from_text("* */* 0"), gf, seed=2)
    scales = solve_scaling(Permutation([0, 1]), A, A)
    assert scales is not None
    assert apply_monomial(MonomialMap(Permutation([0, 1]), scales), A) == A


def test_support_mismatch_gives_no_system():
    A = EvolutionAlgebra.from_rows([[1, 1], [0, 1]])
    assert build_scaling_system(Permutation([0, 1]), A, EvolutionAlgebra.identity(2)) is None


def test_relabeling_pair_is_found(relabel_pair):
    M, target = relabel_pair
    mapping = find_isomorphism(M, target)
    assert mapping is not None
    assert apply_monomial(mapping, M) == target
    assert all(d in (1, -1) for d in mapping.scales)


def test_different_zero_counts_short_circuit():
    A = EvolutionAlgebra.identity(2)
    B = EvolutionAlgebra.from_rows([[1, 1], [0, 1]])
    result = decide_isomorphism(A, B)
    assert result.verdict is IsoVerdict.SUPPORT_OBSTRUCTION
    assert result.reason == "zero-count mismatch"
    assert result.mapping is None


def test_scaling_outside_the_base_field():
    A = EvolutionAlgebra.from_rows([[0, 1], [1, 0]])
    B = EvolutionAlgebra.from_rows([[0, 2], [1, 0]])
    result = decide_isomorphism(A, B)
    assert result.verdict is IsoVerdict.NO_BASE_FIELD_SCALING
    assert result.mapping is None
    F5 = FieldSpec.prime(5)
    A5 = EvolutionAlgebra.from_rows([[0, 1], [1, 0]], F5)
    B5 = EvolutionAlgebra.from_rows([[0, 2], [1, 0]], F5)
    assert decide_isomorphism(A5, B5).verdict is IsoVerdict.ISOMORPHIC
    F7 = FieldSpec.prime(7)
    A7 = EvolutionAlgebra.from_rows([[0, 1], [1, 0]], F7)
    B7 = EvolutionAlgebra.from_rows([[0, 2], [1, 0]], F7)
    assert decide_isomorphism(A7, B7).verdict is IsoVerdict.NO_BASE_FIELD_SCALING


def test_sign_scaling():
    C = EvolutionAlgebra.identity(2)
    D = EvolutionAlgebra.from_rows([[1, 0], [0, -1]])
    assert decide_isomorphism(C, D).verdict is IsoVerdict.ISOMORPHIC


def test_non_perfect_rejected():
    A = EvolutionAlgebra.from_rows([[1, 1], [1, 1]])
    with pytest.raises(NotPerfectError):
        decide_isomorphism(A, A)


def test_dimension_and_field_mismatch():
    with pytest.raises(ValueError):
        decide_isomorphism(EvolutionAlgebra.identity(2), EvolutionAlgebra.identity(3))
    with pytest.raises(ValueError):
        decide_isomorphism(EvolutionAlgebra.identity(2), EvolutionAlgebra.identity(2, FieldSpec.prime(7)))


def test_round_trip_over_prime_field(gf):
    rng = random.Random(99)
    perfect = list(enumerate_patterns(3, predicates=[generically_perfect]))
    for trial in range(500):
        n = 3 if trial % 2 else 4
        if n == 3:
            P = rng.choice(perfect)
        else:
            P = SupportPattern.from_mask(4, rng.getrandbits(16))
            while not generically_perfect(P):
                P = SupportPattern.from_mask(4, rng.getrandbits(16))
        M = random_instance(P, gf, seed=rng)
        N = apply_monomial(_random_map(rng, gf, n), M)
        mapping = find_isomorphism(M, N)
        assert mapping is not None
        assert apply_monomial(mapping, M) == N


def test_round_trip_over_rationals():
    rng = random.Random(5)
    for _ in range(40):
        P = SupportPattern.from_mask(3, rng.getrandbits(9))
        if not generically_perfect(P):
            continue
        M = random_instance(P, RATIONALS, seed=rng)
        N = apply_monomial(_random_map(rng, RATIONALS, 3), M)
        mapping = find_isomorphism(M, N)
        assert mapping is not None
        assert apply_monomial(mapping, M) == N


def test_sampled_corpus_pairs_are_isomorphic(corpus):
    checked = 0
    for table in corpus.tables:
        if table.kind != "paired" or table.parameters != "carried":
            continue
        for row, left, right in table.pairs():
            names = sorted(set(left.variables) | set(right.variables))
            values = {name: prime(k + 1) for k, name in enumerate(names)}
            L = left.instantiate(values, RATIONALS)
            R = right.instantiate(values, RATIONALS)
            if not (is_perfect(L) and is_perfect(R)):
                continue
            if f"{table.name}/{row}/instance" in corpus.errata:
                continue
            mapping = find_isomorphism(L, R)
            assert mapping is not None, f"{table.name}/{row}"
            assert apply_monomial(mapping, L) == R
            checked += 1
            if checked >= 50:
                return
    assert checked >= 50
