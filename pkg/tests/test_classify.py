import pytest

from evoalg.classify import (
    GRID_COLUMNS,
    CaseSpec,
    GridLabel,
    case_registry,
    classify_case,
    classify_condition_323,
    classify_dim2_perfect,
    classify_dim3_simple,
    classify_grid,
    classify_reducible,
    exchange_star,
    label_case5_cell,
    stated_family_count,
    verify_tables,
)
from evoalg.corpus import load_corpus
from evoalg.errors import SpecError
from evoalg.graphmod import associated_graph, is_connected
from evoalg.pattern import (
    PermSubgroup,
    SupportPattern,
    canonical_pattern,
    enumerate_patterns,
    generically_perfect,
)

DIAGONAL = SupportPattern.from_text("* 0 0/0 * 0/0 0 *")

DIM2_COUNTS = {
    1: (4, 10, 4, 3),
    2: (8, 14, 8, 3),
    3: (4, 10, 4, 3),
    4: (4, 10, 4, 3),
    5: (8, 14, 8, 3),
}


def test_dim2_perfect_shapes():
    families = classify_dim2_perfect()
    assert families.count == 5
    assert families.stated_count == 5


def test_dim3_simple_families_are_strongly_connected():
    families = classify_dim3_simple()
    assert families.count > 0
    assert all(f.irreducible for f in families.families)
    assert all(f.maximal_ideal_dim == 0 for f in families.families)


def test_registry_labels():
    registry = case_registry()
    assert {"3.1", "3.2", "3.3", "5.2.1", "5.2.2", "5.2.3"} <= set(registry)
    assert sum(1 for label in registry if label.startswith("4.")) == 20


@pytest.mark.parametrize(
    "label,expected",
    [(f"4.{k}.{s}", counts[s - 1]) for k, counts in DIM2_COUNTS.items() for s in (1, 2, 3, 4)],
)
def test_two_dimensional_ideal_counts(label, expected):
    spec = case_registry()[label]
    families = classify_case(spec)
    assert families.count == expected
    assert families.stated_count == expected


@pytest.mark.parametrize("label,expected", [("3.1", 72), ("3.2", 72), ("3.3", 28)])
def test_one_dimensional_ideal_counts(label, expected, corpus):
    families = classify_case(case_registry()[label])
    assert families.count == expected
    assert stated_family_count(label, corpus) == expected
    assert not families.anomalies


@pytest.mark.parametrize("label,expected", [("5.2.1", 91), ("5.2.2", 91), ("5.2.3", 35)])
def test_three_dimensional_ideal_counts(label, expected, corpus):
    families = classify_case(case_registry()[label])
    assert families.count == expected
    assert stated_family_count(label, corpus) == expected
    assert all(f.irreducible and f.maximal_ideal_dim == 3 for f in families.families)
    assert not families.anomalies


def test_stated_count_without_corpus():
    assert stated_family_count("4.2.2") == 14
    assert stated_family_count("3.1") is None
    assert stated_family_count("no-such-case") is None


def test_worker_count_does_not_change_result():
    spec = case_registry()["4.2.2"]
    assert classify_case(spec, workers=1) == classify_case(spec, workers=4)


def test_case_spec_validation():
    W = SupportPattern.from_text("* */* *")
    Y = SupportPattern.from_text("*")
    with pytest.raises(SpecError):
        CaseSpec("bad", 2, (W,), frozenset({0}), (Y,), PermSubgroup.trivial(4), 2)
    with pytest.raises(SpecError):
        CaseSpec("bad", 2, (W,), frozenset({3}), (Y,), PermSubgroup.trivial(3), 2)
    with pytest.raises(SpecError):
        CaseSpec("bad", 1, (W,), frozenset({0}), (Y,), PermSubgroup.trivial(3), 2)


def test_singular_candidates_rejected():
    W = SupportPattern.from_text("0 0/* *")
    spec = CaseSpec("singular", 2, (W,), frozenset({0}), (SupportPattern.from_text("*"),), PermSubgroup.trivial(3), 2)
    with pytest.raises(SpecError):
        classify_case(spec)


def test_case5_labels():
    assert label_case5_cell(DIAGONAL, (1, 1, 1)) is GridLabel.IRREDUCIBLE_STAR
    assert label_case5_cell(DIAGONAL, (1, 0, 0)) is GridLabel.REDUCIBLE
    assert label_case5_cell(DIAGONAL, (1, 1, 0)) is GridLabel.REDUCIBLE


def test_case5_rejects_malformed_input():
    with pytest.raises(ValueError):
        label_case5_cell(SupportPattern.from_text("* 0 0/0 * 0/* 0 *"), (1, 1, 1))
    with pytest.raises(ValueError):
        label_case5_cell(DIAGONAL, (1, 1))
    with pytest.raises(ValueError):
        label_case5_cell(SupportPattern.from_text("* 0/0 *"), (1, 1, 1))


def test_grid_cells(corpus):
    grids = classify_grid(corpus)
    assert set(grids) == {"grid_a", "grid_b"}
    cells = [c for table in grids.values() for c in table]
    assert len(cells) == 196
    stars = {name: sum(1 for c in table if c.label is GridLabel.IRREDUCIBLE_STAR) for name, table in grids.items()}
    assert stars == {"grid_a": 37, "grid_b": 56}
    assert all(c.printed == c.label.value for c in cells)
    assert {c.column for c in cells} == set(GRID_COLUMNS)


def test_grid_stars_agree_with_exchange_rule(corpus):
    for table in classify_grid(corpus).values():
        for cell in table:
            assert (cell.label is GridLabel.IRREDUCIBLE_STAR) == exchange_star(cell.W, cell.U)


def test_condition_323_classes(corpus):
    families = classify_condition_323(corpus)
    assert families.count == 22
    assert families.stated_count == 24
    assert sum(len(f.members) for f in families.families) == 65
    assert all(f.irreducible for f in families.families)


def test_reducible_families_are_the_disconnected_patterns():
    families = classify_reducible()
    S4 = PermSubgroup.symmetric(4)
    disconnected = enumerate_patterns(
        4, predicates=[lambda P: not is_connected(associated_graph(P)), generically_perfect]
    )
    expected = {canonical_pattern(P, S4).key for P in disconnected}
    assert {f.representative.key for f in families.families} == expected
    assert not any(f.irreducible for f in families.families)


def test_shipped_corpus_verifies(corpus):
    report = verify_tables(corpus)
    assert report.ok, [i.item_id for i in report.failures]
    assert {i.item_id for i in report.warnings} == set(corpus.errata)
    assert report.stale_errata == []
    assert report.counts()["FAIL"] == 0


def test_verification_is_independent_of_workers(corpus):
    assert verify_tables(corpus, workers=3).items == verify_tables(corpus).items


CYCLE_PAIR = """name r01.left
dim 4
* * 0 0
0 * 0 *
0 0 * 0
0 0 0 *
vars w11 w12 w22 w24 w33 w44

name r01.right
dim 4
* 0 0 0
0 * 0 *
0 0 * 0
0 0 * *
vars w33 w11 w12 w44 w24 w22
"""


@pytest.mark.parametrize(
    "stated, passed",
    [("(1,2,4,3)", True), ("search", True), ("(1,3,4,2)", False)],
)
def test_pairing_with_a_four_cycle(tmp_path, stated, passed):
    table = tmp_path / "cycle_pair"
    table.mkdir()
    (table / "manifest.txt").write_text(f"kind=paired\nlabel=x\ngroup=(1,2) (1,2,3,4)\nrows=1\npairing.r01={stated}\n")
    (table / "patterns.pat").write_text(CYCLE_PAIR)
    report = verify_tables(load_corpus(tmp_path))
    items = {i.item_id: i.passed for i in report.items}
    assert items["cycle_pair/r01/pairing"] is passed
    if passed:
        assert items["cycle_pair/r01/instance"]
        assert report.ok
