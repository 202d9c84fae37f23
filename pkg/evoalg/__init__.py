"""
Evolution algebras over exact fields: structure matrices, basic ideals,
natural-basis changes and the classification of four-dimensional perfect
non-simple algebras.

Modules:
    - fieldcore: Rationals and prime fields, square roots, discrete logarithms
    - linalg: Exact elimination and integer systems
    - algebra: Structure matrices and monomial basis changes
    - graphmod: Associated graphs and their invariants
    - pattern: Support patterns, relabeling groups and fingerprints
    - ideals: Descendants, basic ideals and the predicates built on them
    - isotest: Isomorphism oracle
    - corpus: Text formats and the bundled tables
    - classify: Classification pipelines and table verification
    - reports, cli: Command line
"""

from .algebra import EvolutionAlgebra, MonomialMap, apply_monomial, is_perfect
from .classify import case_registry, classify_case, label_case5_cell, verify_tables
from .corpus import load_corpus, parse_matrix
from .fieldcore import FieldSpec, RATIONALS, parse_field, parse_scalar
from .ideals import is_basic_simple, is_irreducible, is_simple, maximal_basic_ideals, satisfies_condition_323
from .isotest import decide_isomorphism, find_isomorphism
from .pattern import SupportPattern, fingerprint, permute_pattern

__version__ = "0.1.0"
__all__ = [
    "EvolutionAlgebra",
    "MonomialMap",
    "apply_monomial",
    "is_perfect",
    "case_registry",
    "classify_case",
    "label_case5_cell",
    "verify_tables",
    "load_corpus",
    "parse_matrix",
    "FieldSpec",
    "RATIONALS",
    "parse_field",
    "parse_scalar",
    "is_basic_simple",
    "is_irreducible",
    "is_simple",
    "maximal_basic_ideals",
    "satisfies_condition_323",
    "decide_isomorphism",
    "find_isomorphism",
    "SupportPattern",
    "fingerprint",
    "permute_pattern",
]
