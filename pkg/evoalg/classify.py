"""
Classification pipelines for four-dimensional perfect non-simple algebras,
and verification of the bundled tables.

A family is an orbit of support patterns under the relabelings a case
allows. Every pipeline enumerates candidate patterns block by block,
canonicalises them and recomputes the ideal structure of each
representative, flagging representatives that do not match their case.

Functions:
    - classify_dim2_perfect / classify_dim3_simple: Building blocks
    - classify_case: Families of one registered case
    - label_case5_cell / classify_grid: Reducible, Irreducible and Irreducible* cells
    - classify_condition_323: Invariant classes of the Condition (3,2,3) table
    - classify_reducible: Reducible families from 1+3 and 2+2 splits
    - verify_tables: Mechanical checks of every bundled table
"""

import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy import prime

from .algebra import MonomialMap, apply_monomial
from .corpus import Corpus, PatternBlock, Table
from .errors import SpecError
from .fieldcore import RATIONALS, parse_scalar
from .graphmod import associated_graph, degree_profile, is_strongly_connected
from .ideals import (
    exchangeable_index,
    is_irreducible,
    maximal_basic_ideals,
    satisfies_condition_323,
)
from .pattern import (
    Fingerprint,
    PermSubgroup,
    SupportPattern,
    canonical_pattern,
    enumerate_patterns,
    fingerprint,
    format_cycles,
    generically_perfect,
    parse_cycles,
    permute_pattern,
)

logger = logging.getLogger(__name__)

GRID_COLUMNS = ("100", "010", "001", "110", "101", "011", "111")

STAR_LABEL = "5.1.2"


class GridLabel(str, Enum):
    REDUCIBLE = "Reducible"
    IRREDUCIBLE = "Irreducible"
    IRREDUCIBLE_STAR = "Irreducible*"


@dataclass(frozen=True)
class CaseSpec:
    """
    One case of the classification tree.

    Patterns of the case are (W U / 0 Y) with W from ``w_choices``, U any
    split x (n - split) pattern whose zero count lies in ``u_zero_counts`` and
    Y from ``y_choices``. Families are orbits under ``group``.
    """

    label: str
    split: int
    w_choices: Tuple[SupportPattern, ...]
    u_zero_counts: FrozenSet[int]
    y_choices: Tuple[SupportPattern, ...]
    group: PermSubgroup
    ideal_dim: int
    stated_count: Optional[int] = None
    description: str = ""

    def __post_init__(self):
        if not self.w_choices or not self.y_choices:
            raise SpecError(f"Case {self.label}: W and Y choices must be non-empty")
        if any(w.n != self.split for w in self.w_choices):
            raise SpecError(f"Case {self.label}: every W must be {self.split}x{self.split}")
        rest = self.y_choices[0].n
        if any(y.n != rest for y in self.y_choices):
            raise SpecError(f"Case {self.label}: Y choices differ in size")
        if self.group.degree != self.split + rest:
            raise SpecError(f"Case {self.label}: group acts on {self.group.degree} points, patterns have {self.split + rest}")
        cells = self.split * rest
        if any(not 0 <= z <= cells for z in self.u_zero_counts):
            raise SpecError(f"Case {self.label}: U has {cells} cells, zero counts {sorted(self.u_zero_counts)} impossible")

    @property
    def dim(self) -> int:
        return self.split + self.y_choices[0].n


@dataclass(frozen=True)
class Family:
    """An orbit representative with its recomputed data."""

    representative: SupportPattern
    label: str
    fingerprint: Fingerprint
    maximal_ideal_dim: int
    irreducible: bool
    anomalous: bool = False
    members: Tuple[str, ...] = ()


@dataclass(frozen=True)
class FamilySet:
    label: str
    families: Tuple[Family, ...]
    stated_count: Optional[int] = None

    @property
    def count(self) -> int:
        return len(self.families)

    @property
    def anomalies(self) -> List[Family]:
        return [f for f in self.families if f.anomalous]


def _describe(P: SupportPattern, label: str, ideal_dim: Optional[int] = None) -> Family:
    report = maximal_basic_ideals(P)
    irreducible = is_irreducible(P)
    anomalous = ideal_dim is not None and (report.maximal_dimension != ideal_dim or not irreducible)
    return Family(
        representative=P,
        label=label,
        fingerprint=fingerprint(P),
        maximal_ideal_dim=report.maximal_dimension,
        irreducible=irreducible,
        anomalous=anomalous,
    )


def _orbit_representatives(
    patterns: Iterable[SupportPattern],
    group: PermSubgroup,
    workers: int = 1,
) -> List[SupportPattern]:
    patterns = list(patterns)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            canonical = list(executor.map(lambda p: canonical_pattern(p, group), patterns))
    else:
        canonical = [canonical_pattern(p, group) for p in patterns]
    unique = {p.key: p for p in canonical}
    return [unique[k] for k in sorted(unique)]


def simple_patterns(n: int) -> List[SupportPattern]:
    """Generically perfect n x n patterns with a strongly connected graph."""
    return list(
        enumerate_patterns(
            n,
            predicates=[
                generically_perfect,
                lambda P: is_strongly_connected(associated_graph(P)),
            ],
        )
    )


def classify_dim2_perfect() -> FamilySet:
    """
    Perfect two-dimensional patterns up to relabeling.

    Example:
        >>> classify_dim2_perfect().count
        5
    """
    reps = _orbit_representatives(
        enumerate_patterns(2, predicates=[generically_perfect]), PermSubgroup.symmetric(2)
    )
    return FamilySet("dim2", tuple(_describe(P, "dim2") for P in reps), stated_count=5)


def classify_dim3_simple() -> FamilySet:
    reps = _orbit_representatives(simple_patterns(3), PermSubgroup.symmetric(3))
    return FamilySet("dim3-simple", tuple(_describe(P, "dim3-simple") for P in reps))


def assemble(W: SupportPattern, U: Sequence[Sequence[bool]], Y: SupportPattern) -> SupportPattern:
    """The block upper-triangular pattern (W U / 0 Y)."""
    m, r = W.n, Y.n
    rows = [tuple(W.bits[k]) + tuple(bool(x) for x in U[k]) for k in range(m)]
    rows += [(False,) * m + tuple(Y.bits[k]) for k in range(r)]
    return SupportPattern(tuple(rows))


def _u_blocks(rows: int, cols: int, zero_counts: FrozenSet[int]) -> List[Tuple[Tuple[bool, ...], ...]]:
    cells = rows * cols
    blocks = []
    for counter in range(1 << cells):
        bits = [bool(counter >> (cells - 1 - pos) & 1) for pos in range(cells)]
        if cells - sum(bits) in zero_counts:
            blocks.append(tuple(tuple(bits[k * cols:(k + 1) * cols]) for k in range(rows)))
    return blocks


def case_candidates(spec: CaseSpec) -> List[SupportPattern]:
    rest = spec.dim - spec.split
    u_blocks = _u_blocks(spec.split, rest, spec.u_zero_counts)
    return [assemble(W, U, Y) for W in spec.w_choices for U in u_blocks for Y in spec.y_choices]


def classify_case(spec: CaseSpec, workers: int = 1) -> FamilySet:
    """
    Families of one case.

    Args:
        spec: The case
        workers: Threads used for canonicalisation; the result does not depend on it

    Returns:
        FamilySet sorted by representative, anomalies flagged

    Example:
        >>> classify_case(case_registry()["4.1.1"]).count
        4
    """
    try:
        candidates = case_candidates(spec)
        singular = [P for P in candidates if not generically_perfect(P)]
        if singular:
            raise SpecError(f"Case {spec.label} produces {len(singular)} singular patterns")
        reps = _orbit_representatives(candidates, spec.group, workers)
        families = tuple(_describe(P, spec.label, spec.ideal_dim) for P in reps)
    except Exception as e:
        logger.error(f"Classification of case {spec.label} failed: {str(e)}")
        raise

    result = FamilySet(spec.label, families, spec.stated_count)
    logger.info(f"Case {spec.label}: {len(candidates)} candidates, {result.count} families, {len(result.anomalies)} anomalous")
    return result


def _block_group(W: SupportPattern, n: int) -> PermSubgroup:
    """Relabelings keeping {1..m} in place as a block and fixing W's pattern."""
    m = W.n
    kept = []
    for g in PermSubgroup.symmetric(n):
        arr = g.array_form
        if any(arr[i] >= m for i in range(m)):
            continue
        if all(W.bits[arr[a]][arr[b]] == W.bits[a][b] for a in range(m) for b in range(m)):
            kept.append(g)
    return PermSubgroup(n, tuple(kept))


def _without_closed_pair(W: SupportPattern) -> bool:
    report = maximal_basic_ideals(W) if generically_perfect(W) else None
    return report is not None and not any(len(s) == 2 for s in report.all_closed_proper_sets)


DIM2_PERFECT_W = {
    1: ("identity", "* 0/0 *"),
    2: ("lower triangular", "* 0/* *"),
    3: ("full", "* */* *"),
    4: ("anti-diagonal", "0 */* 0"),
    5: ("anti-diagonal with one diagonal entry", "0 */* *"),
}

STATED_DIM2_COUNTS = {
    1: (4, 10, 4, 3),
    2: (8, 14, 8, 3),
    3: (4, 10, 4, 3),
    4: (4, 10, 4, 3),
    5: (8, 14, 8, 3),
}


@lru_cache(maxsize=1)
def case_registry() -> Dict[str, CaseSpec]:
    """
    All registered cases keyed by label.

    3.x: one-dimensional maximal basic ideal, W = (w11), Y simple of dimension 3.
    4.k.s: two-dimensional maximal basic ideal, W the k-th perfect 2x2 shape,
    U with 4 - s zeros, Y simple of dimension 2.
    5.2.s: three-dimensional maximal basic ideal with no 2-basic ideal inside,
    U with s nonzero entries, Y = (w44).
    """
    registry = {}
    one = SupportPattern.from_text("*")

    y3 = tuple(simple_patterns(3))
    fix_first = PermSubgroup.generated(4, [parse_cycles("(2,3)", 4), parse_cycles("(3,4)", 4)])
    for sub, zeros in ((1, 2), (2, 1), (3, 0)):
        label = f"3.{sub}"
        registry[label] = CaseSpec(
            label=label,
            split=1,
            w_choices=(one,),
            u_zero_counts=frozenset({zeros}),
            y_choices=y3,
            group=fix_first,
            ideal_dim=1,
            description=f"one-dimensional maximal basic ideal, U with {zeros} zero entries",
        )

    y2 = tuple(simple_patterns(2))
    for k, (name, text) in DIM2_PERFECT_W.items():
        W = SupportPattern.from_text(text)
        group = _block_group(W, 4)
        for sub, zeros in enumerate((3, 2, 1, 0), start=1):
            label = f"4.{k}.{sub}"
            registry[label] = CaseSpec(
                label=label,
                split=2,
                w_choices=(W,),
                u_zero_counts=frozenset({zeros}),
                y_choices=y2,
                group=group,
                ideal_dim=2,
                stated_count=STATED_DIM2_COUNTS[k][sub - 1],
                description=f"two-dimensional maximal basic ideal, W {name}, U with {zeros} zero entries",
            )

    w3 = tuple(P for P in enumerate_patterns(3) if _without_closed_pair(P))
    fix_last = PermSubgroup.generated(4, [parse_cycles("(1,2)", 4), parse_cycles("(2,3)", 4)])
    for sub in (1, 2, 3):
        label = f"5.2.{sub}"
        registry[label] = CaseSpec(
            label=label,
            split=3,
            w_choices=w3,
            u_zero_counts=frozenset({3 - sub}),
            y_choices=(one,),
            group=fix_last,
            ideal_dim=3,
            description=f"three-dimensional maximal basic ideal without 2-basic ideals, U with {sub} nonzero entries",
        )
    logger.debug(f"Registered {len(registry)} cases")
    return registry


def stated_family_count(label: str, corpus: Optional[Corpus] = None) -> Optional[int]:
    """
    Count stated for a case.

    Cases whose text gives no number use the rows of their bundled tables,
    minus rows the errata list as repeats of an earlier family.
    """
    spec = case_registry().get(label)
    if spec is not None and spec.stated_count is not None:
        return spec.stated_count
    if corpus is None:
        return None
    tables = corpus.by_case(label)
    if not tables:
        return None
    total = 0
    for table in tables:
        rows = int(table.manifest.get("rows", "0"))
        repeats = sum(1 for key in corpus.errata if key.startswith(f"{table.name}/") and key.endswith("/distinct"))
        total += rows - repeats
    return total


def _case5_matrix(W: SupportPattern, U: Sequence[bool]) -> SupportPattern:
    if W.n != 3 or len(U) != 3:
        raise ValueError(f"Expected a 3x3 W and three U entries, got {W.n}x{W.n} and {len(U)}")
    if W.bits[2][0] or W.bits[2][1] or not W.bits[2][2]:
        raise ValueError("W must have third row (0, 0, w33)")
    return assemble(W, [(bool(u),) for u in U], SupportPattern.from_text("*"))


def label_case5_cell(W: SupportPattern, U: Sequence[bool]) -> GridLabel:
    """
    Label of the algebra (W U / 0 0 0 1).

    Example:
        >>> label_case5_cell(SupportPattern.from_text("* 0 0/0 * 0/0 0 *"), (1, 1, 1))
        <GridLabel.IRREDUCIBLE_STAR: 'Irreducible*'>
    """
    M = _case5_matrix(W, U)
    if not is_irreducible(M):
        return GridLabel.REDUCIBLE
    if satisfies_condition_323(M) is None:
        return GridLabel.IRREDUCIBLE_STAR
    return GridLabel.IRREDUCIBLE


def exchange_star(W: SupportPattern, U: Sequence[bool]) -> bool:
    """Irreducible and no index can trade places with index 4."""
    M = _case5_matrix(W, U)
    return is_irreducible(M) and exchangeable_index(M) is None


@dataclass(frozen=True)
class GridCell:
    table: str
    row: str
    column: str
    W: SupportPattern
    label: GridLabel
    printed: Optional[str] = None

    @property
    def U(self) -> Tuple[bool, ...]:
        return tuple(c == "1" for c in self.column)

    @property
    def pattern(self) -> SupportPattern:
        return _case5_matrix(self.W, self.U)


def grid_cells(table: Table) -> List[GridCell]:
    printed = table.keyed("cells")
    cells = []
    for block in table.blocks:
        labels = printed.get(block.name, "").split()
        for index, column in enumerate(GRID_COLUMNS):
            U = tuple(c == "1" for c in column)
            cells.append(
                GridCell(
                    table=table.name,
                    row=block.name,
                    column=column,
                    W=block.pattern,
                    label=label_case5_cell(block.pattern, U),
                    printed=labels[index] if index < len(labels) else None,
                )
            )
    return cells


def classify_grid(corpus: Corpus) -> Dict[str, List[GridCell]]:
    """Recomputed cells of every grid table, keyed by table name."""
    return {t.name: grid_cells(t) for t in corpus.tables if t.kind == "grid"}


def classify_condition_323(corpus: Corpus) -> FamilySet:
    """
    Group the Condition (3,2,3) table by fingerprint.

    Each family lists the rows sharing one fingerprint; the family count is
    the number of invariant classes.
    """
    tables = [t for t in corpus.tables if t.kind == "types"]
    members: Dict[Fingerprint, List[str]] = {}
    patterns: Dict[Fingerprint, SupportPattern] = {}
    for table in tables:
        for block in table.blocks:
            fp = fingerprint(block.pattern)
            members.setdefault(fp, []).append(block.name)
            patterns.setdefault(fp, block.pattern)
    families = tuple(
        Family(
            representative=patterns[fp],
            label="5.1.1",
            fingerprint=fp,
            maximal_ideal_dim=maximal_basic_ideals(patterns[fp]).maximal_dimension,
            irreducible=is_irreducible(patterns[fp]),
            members=tuple(rows),
        )
        for fp, rows in members.items()
    )
    stated = tables[0].stated("types") if tables else None
    return FamilySet("5.1.1", families, stated)


def direct_sum_patterns(P: SupportPattern, Q: SupportPattern) -> SupportPattern:
    return assemble(P, [(False,) * Q.n for _ in range(P.n)], Q)


def classify_reducible() -> FamilySet:
    """Perfect reducible four-dimensional patterns, from 1+3 and 2+2 splits, up to S4."""
    perfect = {k: list(enumerate_patterns(k, predicates=[generically_perfect])) for k in (1, 2, 3)}
    sums = [direct_sum_patterns(P, Q) for P in perfect[1] for Q in perfect[3]]
    sums += [direct_sum_patterns(P, Q) for P in perfect[2] for Q in perfect[2]]
    reps = _orbit_representatives(sums, PermSubgroup.symmetric(4))
    return FamilySet("reducible", tuple(_describe(P, "reducible") for P in reps))


@dataclass(frozen=True)
class CheckItem:
    item_id: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    """Per-item results; failures listed in the errata count as warnings."""

    items: Tuple[CheckItem, ...]
    errata: Dict[str, str] = field(hash=False)

    def status(self, item: CheckItem) -> str:
        if item.passed:
            return "PASS"
        return "WARN" if item.item_id in self.errata else "FAIL"

    @property
    def failures(self) -> List[CheckItem]:
        return [i for i in self.items if self.status(i) == "FAIL"]

    @property
    def warnings(self) -> List[CheckItem]:
        return [i for i in self.items if self.status(i) == "WARN"]

    @property
    def stale_errata(self) -> List[str]:
        """Allowlisted ids that no longer fail."""
        failing = {i.item_id for i in self.items if not i.passed}
        return sorted(k for k in self.errata if k not in failing)

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> Dict[str, int]:
        totals = {"PASS": 0, "WARN": 0, "FAIL": 0}
        for item in self.items:
            totals[self.status(item)] += 1
        return totals


def _prime_values(blocks: Sequence[PatternBlock]) -> Dict[str, int]:
    names = sorted({name for b in blocks for name in b.variables})
    return {name: prime(k + 1) for k, name in enumerate(names)}


def _relabel(sigma, A):
    return apply_monomial(MonomialMap.from_relabeling(sigma, A.field), A)


def _check_pair(table: Table, row: str, left: PatternBlock, right: PatternBlock) -> List[CheckItem]:
    prefix = f"{table.name}/{row}"
    stated = table.keyed("pairing").get(row, "search")
    n = left.pattern.n
    candidates = list(table.group()) if stated == "search" else [parse_cycles(stated, n)]
    matching = [s for s in candidates if permute_pattern(s, left.pattern) == right.pattern]
    if not matching:
        return [CheckItem(f"{prefix}/pairing", False, f"no permutation in {stated} maps the left support to the right")]
    items = [CheckItem(f"{prefix}/pairing", True, f"mapped by {format_cycles(matching[0])}")]
    values = _prime_values([left, right])
    left_inst = left.instantiate(values, RATIONALS)
    if table.parameters == "positional":
        ok = False
        for sigma in matching:
            image = _relabel(sigma, left_inst)
            if all(image.entry(k, i) == parse_scalar(v, RATIONALS) for k, i, v in right.pins):
                ok = True
                break
        items.append(CheckItem(f"{prefix}/instance", ok, "pinned entries travel with the permutation" if ok else "pinned entries do not match"))
        return items
    right_inst = right.instantiate(values, RATIONALS)
    ok = any(_relabel(sigma, left_inst) == right_inst for sigma in matching)
    items.append(CheckItem(f"{prefix}/instance", ok, "relabelled instance matches" if ok else "relabelled instance differs from the printed partner"))
    return items


def _check_distinct(table: Table, named: Sequence[Tuple[str, SupportPattern]]) -> List[CheckItem]:
    group = table.group()
    seen: Dict[Tuple[bool, ...], str] = {}
    items = []
    for name, P in named:
        key = canonical_pattern(P, group).key
        if key in seen:
            items.append(CheckItem(f"{table.name}/{name}/distinct", False, f"same orbit as {seen[key]}"))
        else:
            seen[key] = name
            items.append(CheckItem(f"{table.name}/{name}/distinct", True))
    return items


def _check_coverage(table: Table, patterns: Sequence[SupportPattern]) -> List[CheckItem]:
    spec = case_registry().get(table.case)
    if spec is None:
        return [CheckItem(f"{table.name}/coverage", False, f"unknown case {table.case}")]
    expected = {f.representative.key for f in classify_case(spec).families}
    found = {canonical_pattern(P, spec.group).key for P in patterns}
    missing, extra = len(expected - found), len(found - expected)
    return [CheckItem(f"{table.name}/coverage", not missing and not extra, f"missing={missing} extra={extra}")]


def _check_stars(table: Table, named: Sequence[Tuple[str, Sequence[SupportPattern]]]) -> List[CheckItem]:
    items = []
    for name, patterns in named:
        bad = [P for P in patterns if not (is_irreducible(P) and satisfies_condition_323(P) is None)]
        items.append(CheckItem(f"{table.name}/{name}/star", not bad, f"{len(bad)} matrices are not Irreducible*" if bad else ""))
    return items


def _verify_paired(table: Table) -> List[CheckItem]:
    items = []
    pairs = table.pairs()
    for row, left, right in pairs:
        items.extend(_check_pair(table, row, left, right))
    items.extend(_check_distinct(table, [(row, left.pattern) for row, left, _ in pairs]))
    if table.case:
        items.extend(_check_coverage(table, [left.pattern for _, left, _ in pairs]))
    if table.label == STAR_LABEL:
        items.extend(_check_stars(table, [(row, (l.pattern, r.pattern)) for row, l, r in pairs]))
    return items


def _verify_list(table: Table) -> List[CheckItem]:
    named = [(b.name, b.pattern) for b in table.blocks]
    items = _check_distinct(table, named)
    if table.case:
        items.extend(_check_coverage(table, [P for _, P in named]))
    if table.label == STAR_LABEL:
        items.extend(_check_stars(table, [(name, (P,)) for name, P in named]))
    return items


def _verify_grid(table: Table) -> List[CheckItem]:
    items = []
    cells = grid_cells(table)
    for cell in cells:
        ok = cell.printed == cell.label.value
        items.append(CheckItem(f"{table.name}/{cell.row}/{cell.column}/label", ok, f"printed {cell.printed}, computed {cell.label.value}"))
    stars = sum(1 for c in cells if c.label is GridLabel.IRREDUCIBLE_STAR)
    stated = table.stated("stars")
    items.append(CheckItem(f"{table.name}/stars", stated == stars, f"stated {stated}, computed {stars}"))
    disagreements = [
        f"{c.row}/{c.column}"
        for c in cells
        if (c.label is GridLabel.IRREDUCIBLE_STAR) != exchange_star(c.W, c.U)
    ]
    items.append(CheckItem(f"{table.name}/exchange_rule", not disagreements, " ".join(disagreements)))
    return items


_DEGREE_RE = re.compile(r"\((\d+),(\d+)\)")


def _parse_type_row(text: str) -> Dict[str, str]:
    return dict(part.split(":", 1) for part in text.split())


def _verify_types(table: Table) -> List[CheckItem]:
    items = []
    rows = table.keyed("row")
    by_type: Dict[int, List[Tuple[str, Fingerprint]]] = {}
    for block in table.blocks:
        printed = _parse_type_row(rows.get(block.name, ""))
        P = block.pattern
        degrees = [tuple(int(x) for x in m) for m in _DEGREE_RE.findall(printed.get("degrees", ""))]
        computed = degree_profile(associated_graph(P))
        ok = (
            printed.get("zeros") == str(P.zero_count)
            and printed.get("diagonal_zeros") == str(P.diag_zero_count)
            and degrees == computed
        )
        detail = f"computed zeros {P.zero_count}, diagonal zeros {P.diag_zero_count}, degrees {computed}"
        items.append(CheckItem(f"{table.name}/{block.name}/fingerprint", ok, detail))
        ok323 = is_irreducible(P) and satisfies_condition_323(P) is not None
        items.append(CheckItem(f"{table.name}/{block.name}/condition_323", ok323))
        by_type.setdefault(int(printed.get("type", "0")), []).append((block.name, fingerprint(P)))

    owners: Dict[Fingerprint, List[int]] = {}
    for type_label in sorted(by_type):
        prints = {fp for _, fp in by_type[type_label]}
        names = " ".join(name for name, _ in by_type[type_label])
        items.append(CheckItem(f"{table.name}/type{type_label:02d}/consistency", len(prints) == 1, names))
        for fp in prints:
            owners.setdefault(fp, []).append(type_label)
    collisions = [labels for labels in owners.values() if len(labels) > 1]
    for labels in collisions:
        for a_index, a in enumerate(labels):
            for b in labels[a_index + 1:]:
                items.append(CheckItem(f"{table.name}/type{a:02d}~type{b:02d}/collision", False, "declared types share a fingerprint"))
    if not collisions:
        items.append(CheckItem(f"{table.name}/collisions", True))

    stated = table.stated("types")
    expected_labels = set(range(1, (stated or 0) + 1))
    items.append(CheckItem(f"{table.name}/labels", set(by_type) == expected_labels, f"declared types {min(by_type)}..{max(by_type)}, stated {stated}"))
    items.append(CheckItem(f"{table.name}/count", len(owners) == stated, f"computed {len(owners)} classes, stated {stated}"))
    return items


_VERIFIERS: Dict[str, Callable[[Table], List[CheckItem]]] = {
    "paired": _verify_paired,
    "list": _verify_list,
    "grid": _verify_grid,
    "types": _verify_types,
}


def _verify_table(table: Table) -> List[CheckItem]:
    verifier = _VERIFIERS.get(table.kind)
    if verifier is None:
        return [CheckItem(f"{table.name}/kind", False, f"unknown table kind {table.kind!r}")]
    items = verifier(table)
    logger.info(f"Verified table {table.name}: {sum(1 for i in items if not i.passed)} failing items of {len(items)}")
    return items


def _check_star_orbits(corpus: Corpus, failing: FrozenSet[str]) -> List[CheckItem]:
    """Starred grid cells and the starred tables describe the same orbits."""
    grids = [t for t in corpus.tables if t.kind == "grid"]
    stars = corpus.by_label(STAR_LABEL)
    if not grids or not stars:
        return []
    group = PermSubgroup.generated(4, [parse_cycles("(1,2)", 4), parse_cycles("(2,3)", 4)])
    from_grid = {
        canonical_pattern(c.pattern, group).key
        for t in grids
        for c in grid_cells(t)
        if c.label is GridLabel.IRREDUCIBLE_STAR
    }
    from_tables = set()
    for table in stars:
        for block in table.blocks:
            row = block.name.split(".")[0]
            if f"{table.name}/{row}/star" in failing:
                continue
            from_tables.add(canonical_pattern(block.pattern, group).key)
    missing, extra = len(from_grid - from_tables), len(from_tables - from_grid)
    return [CheckItem("corpus/star_orbits", not missing and not extra, f"grid orbits {len(from_grid)}, missing={missing} extra={extra}")]


def verify_tables(corpus: Corpus, workers: int = 1) -> VerificationReport:
    """
    Run every mechanical check on the corpus.

    Mismatches become failing items, never exceptions; the report orders
    items by table name regardless of ``workers``.

    Args:
        corpus: Loaded corpus
        workers: Tables verified concurrently

    Returns:
        VerificationReport
    """
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            per_table = list(executor.map(_verify_table, corpus.tables))
    else:
        per_table = [_verify_table(t) for t in corpus.tables]
    items = [item for chunk in per_table for item in chunk]
    failing = frozenset(i.item_id for i in items if not i.passed)
    items.extend(_check_star_orbits(corpus, failing))
    report = VerificationReport(tuple(items), dict(corpus.errata))
    counts = report.counts()
    logger.info(f"Verification finished: {counts['PASS']} pass, {counts['WARN']} warn, {counts['FAIL']} fail")
    for key in report.stale_errata:
        logger.warning(f"Errata entry {key} no longer fails")
    return report
