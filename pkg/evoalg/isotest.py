"""
Isomorphism oracle for perfect evolution algebras.

For perfect algebras every change of natural basis is monomial, so M and N
are isomorphic exactly when some relabeling matches their supports and the
scales d solve d_i**2 = r * d_j for every nonzero entry. The scaling system
is solved inside the base field only.

Functions:
    - random_instance: Seeded instantiation of a support pattern
    - build_scaling_system: Relations imposed by a candidate permutation
    - solve_scaling: Scales realising a candidate permutation, if any
    - decide_isomorphism: Three-way verdict with the map found
    - find_isomorphism: The first map in lexicographic order, or None
"""

import itertools
import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from sympy import factorint
from sympy.combinatorics import Permutation

from .algebra import EvolutionAlgebra, MonomialMap, apply_monomial, is_perfect
from .config import DEFAULT_MAX_RETRIES
from .errors import NotPerfectError, SamplingError
from .fieldcore import FieldSpec, Residue, Scalar, discrete_log, generator
from .linalg import solve_integer_system
from .pattern import SupportPattern, fingerprint, generically_perfect, support

logger = logging.getLogger(__name__)


def random_instance(
    P: SupportPattern,
    field: FieldSpec,
    seed: Union[int, random.Random] = 0,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> EvolutionAlgebra:
    """
    Put a random nonzero scalar in every set cell of P.

    Generically perfect patterns are resampled until the instance is
    perfect, at most ``max_retries`` times.

    Args:
        P: Support pattern
        field: Base field
        seed: Seed or an existing random generator
        max_retries: Resampling bound

    Returns:
        An algebra whose support is P

    Example:
        >>> A = random_instance(SupportPattern.from_text("* */0 *"), FieldSpec.prime(10007), seed=1)
        >>> support(A) == SupportPattern.from_text("* */0 *")
        True
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    must_be_perfect = generically_perfect(P)
    for attempt in range(max_retries + 1):
        rows = [
            [field.random_nonzero(rng) if cell else field.zero for cell in row]
            for row in P.bits
        ]
        A = EvolutionAlgebra.from_rows(rows, field)
        if not must_be_perfect or is_perfect(A):
            return A
        logger.warning(f"Singular instance of a generically perfect pattern over {field}, resampling (attempt {attempt + 1})")
    raise SamplingError(f"No perfect instance over {field} after {max_retries} retries")


@dataclass(frozen=True)
class ScalingRelation:
    """d_i**2 = ratio * d_j, with 1-based i and j."""

    i: int
    j: int
    ratio: Scalar


@dataclass(frozen=True)
class ScalingSystem:
    n: int
    relations: Tuple[ScalingRelation, ...]


def build_scaling_system(sigma: Permutation, M: EvolutionAlgebra, N: EvolutionAlgebra) -> Optional[ScalingSystem]:
    """
    Relations the scales must satisfy for ``MonomialMap(sigma, d)`` to send M to N.

    Returns None when sigma does not carry the support of M onto that of N.
    """
    n = M.dim
    inv = (~sigma).array_form
    relations = []
    for j in range(n):
        for i in range(n):
            target = N.matrix[j][i]
            source = M.matrix[inv[j]][inv[i]]
            if bool(target) != bool(source):
                return None
            if target:
                relations.append(ScalingRelation(i + 1, j + 1, target / source))
    return ScalingSystem(n, tuple(relations))


def _exponent_rows(system: ScalingSystem) -> List[List[int]]:
    rows = []
    for rel in system.relations:
        row = [0] * system.n
        row[rel.i - 1] += 2
        row[rel.j - 1] -= 1
        rows.append(row)
    return rows


def _solve_prime_field(system: ScalingSystem, field: FieldSpec) -> Optional[List[Scalar]]:
    p = field.modulus
    logs = [discrete_log(rel.ratio, field) for rel in system.relations]
    exponents = solve_integer_system(_exponent_rows(system), logs, p - 1)
    if exponents is None:
        return None
    g = generator(p)
    return [Residue(pow(g, x, p), p) for x in exponents]


def _valuation(x: Fraction, q: int) -> int:
    num = factorint(abs(x.numerator)).get(q, 0)
    den = factorint(x.denominator).get(q, 0)
    return num - den


def _solve_rationals(system: ScalingSystem) -> Optional[List[Scalar]]:
    n = system.n
    signs: List[Optional[int]] = [None] * n
    for rel in system.relations:
        sign = 1 if rel.ratio > 0 else -1
        current = signs[rel.j - 1]
        if current is not None and current != sign:
            return None
        signs[rel.j - 1] = sign

    primes = set()
    for rel in system.relations:
        primes.update(factorint(abs(rel.ratio.numerator)))
        primes.update(factorint(rel.ratio.denominator))

    scales = [Fraction(s if s is not None else 1) for s in signs]
    rows = _exponent_rows(system)
    for q in sorted(primes):
        exponents = solve_integer_system(rows, [_valuation(rel.ratio, q) for rel in system.relations])
        if exponents is None:
            logger.debug(f"Valuations at {q} admit no integer solution")
            return None
        scales = [d * Fraction(q) ** a for d, a in zip(scales, exponents)]
    return scales


def solve_scaling(sigma: Permutation, M: EvolutionAlgebra, N: EvolutionAlgebra) -> Optional[Tuple[Scalar, ...]]:
    """
    Scales d with ``apply_monomial(MonomialMap(sigma, d), M) == N``.

    Over GF(p) each ratio is replaced by its discrete logarithm and the
    resulting congruences modulo p - 1 are solved in integers. Over the
    rationals the valuations at every prime occurring in a ratio are solved
    separately, and signs are fixed by the signs of the ratios.

    Args:
        sigma: Candidate permutation
        M: Source algebra
        N: Target algebra

    Returns:
        The scales, or None when no base-field solution exists

    Example:
        >>> one = EvolutionAlgebra.from_rows([[1]])
        >>> solve_scaling(Permutation([0]), one, EvolutionAlgebra.from_rows([[2]]))
        (Fraction(2, 1),)
    """
    if M.dim != N.dim or M.field != N.field:
        raise ValueError("Algebras must share dimension and field")
    system = build_scaling_system(sigma, M, N)
    if system is None:
        return None
    if M.field.is_prime_field:
        scales = _solve_prime_field(system, M.field)
    else:
        scales = _solve_rationals(system)
    if scales is None:
        return None
    mapping = MonomialMap(sigma, tuple(scales))
    if apply_monomial(mapping, M) != N:
        logger.error(f"Scaling solution for sigma={sigma.array_form} does not reproduce the target")
        return None
    return mapping.scales


class IsoVerdict(str, Enum):
    ISOMORPHIC = "isomorphic"
    SUPPORT_OBSTRUCTION = "support_obstruction"
    NO_BASE_FIELD_SCALING = "no_base_field_scaling"


@dataclass(frozen=True)
class IsomorphismResult:
    verdict: IsoVerdict
    mapping: Optional[MonomialMap]
    reason: str


def _fingerprint_reason(M: EvolutionAlgebra, N: EvolutionAlgebra) -> Optional[str]:
    left, right = fingerprint(support(M)), fingerprint(support(N))
    if left.zero_count != right.zero_count:
        return "zero-count mismatch"
    if left.diag_zero_count != right.diag_zero_count:
        return "diagonal zero-count mismatch"
    if left.degree_multiset != right.degree_multiset:
        return "degree mismatch"
    if left.graph_class != right.graph_class:
        return "graph mismatch"
    return None


def decide_isomorphism(M: EvolutionAlgebra, N: EvolutionAlgebra) -> IsomorphismResult:
    """
    Search permutations in lexicographic order and solve for scales.

    Args:
        M: Perfect algebra
        N: Perfect algebra of the same dimension and field

    Returns:
        IsomorphismResult whose mapping, when present, sends M to N exactly
    """
    if M.dim != N.dim:
        raise ValueError(f"Dimensions differ: {M.dim} and {N.dim}")
    if M.field != N.field:
        raise ValueError(f"Fields differ: {M.field} and {N.field}")
    for name, A in (("first", M), ("second", N)):
        if not is_perfect(A):
            raise NotPerfectError(f"The {name} algebra is not perfect; monomial maps do not capture its isomorphisms")

    reason = _fingerprint_reason(M, N)
    if reason is not None:
        logger.info(f"Isomorphism ruled out by invariants: {reason}")
        return IsomorphismResult(IsoVerdict.SUPPORT_OBSTRUCTION, None, reason)

    support_matches = 0
    for perm in itertools.permutations(range(M.dim)):
        sigma = Permutation(list(perm))
        if build_scaling_system(sigma, M, N) is None:
            continue
        support_matches += 1
        scales = solve_scaling(sigma, M, N)
        if scales is not None:
            logger.info(f"Isomorphism found with sigma={list(perm)} after {support_matches} support matches")
            return IsomorphismResult(IsoVerdict.ISOMORPHIC, MonomialMap(sigma, scales), "isomorphic")

    if support_matches:
        return IsomorphismResult(
            IsoVerdict.NO_BASE_FIELD_SCALING,
            None,
            f"supports match under {support_matches} relabelings but no scaling exists over {M.field}",
        )
    return IsomorphismResult(IsoVerdict.SUPPORT_OBSTRUCTION, None, "no relabeling matches the supports")


def find_isomorphism(M: EvolutionAlgebra, N: EvolutionAlgebra) -> Optional[MonomialMap]:
    return decide_isomorphism(M, N).mapping
