import jsonschema
import pytest

from evoalg.algebra import EvolutionAlgebra
from evoalg.classify import verify_tables
from evoalg.errors import UnsupportedFieldError
from evoalg.isotest import decide_isomorphism
from evoalg.pattern import SupportPattern
from evoalg.reports import (
    CLASSIFY_LABELS,
    CORPUS_LABELS,
    analyze_report,
    classify_report,
    compact_pattern,
    error_report,
    format_report,
    iso_report,
    load_schema,
    validate_report,
    verify_report,
)


def test_schema_covers_every_kind():
    schema = load_schema()
    kinds = {"analyze", "iso", "classify", "verify", "error"}
    assert set(schema["properties"]["kind"]["enum"]) == kinds
    assert kinds <= set(schema["definitions"])
    assert {branch["if"]["properties"]["kind"]["const"] for branch in schema["allOf"]} == kinds
    jsonschema.Draft7Validator.check_schema(schema)


def test_compact_pattern():
    assert compact_pattern(SupportPattern.from_text("* 0/0 *")) == "*0/0*"


def test_analyze_two_maximal_ideals(two_maximal_ideals):
    report = analyze_report(two_maximal_ideals)
    validate_report(report)
    assert report["source"] == "pattern"
    assert report["maximal_basic_ideals"] == [[1, 2, 3], [1, 2, 4]]
    assert report["maximal_ideal_dim"] == 3
    assert report["condition_323"] == [[1, 2, 3], [1, 2, 4]]
    assert report["irreducible"] and not report["simple"]
    assert "maximal basic ideals: {1,2,3} {1,2,4}" in format_report(report)


def test_analyze_matrix_reports_field():
    report = analyze_report(EvolutionAlgebra.identity(3))
    validate_report(report)
    assert report["field"] == "Q"
    assert report["perfect"]
    assert not report["irreducible"]
    assert report["condition_323"] is None
    assert report["zero_counts"] == {"total": 6, "diagonal": 0}


def test_analyze_singular_matrix_notes_basis_dependence():
    report = analyze_report(EvolutionAlgebra.from_rows([[1, 1], [1, 1]]))
    assert not report["perfect"]
    assert "note: not perfect" in format_report(report)


def test_iso_reports(relabel_pair):
    M, N = relabel_pair
    report = iso_report(decide_isomorphism(M, N))
    validate_report(report)
    assert report["status"] == "success"
    assert report["sigma"] is not None
    assert len(report["scales"]) == 4

    negative = iso_report(decide_isomorphism(M, EvolutionAlgebra.identity(4)))
    validate_report(negative)
    assert negative["status"] == "negative"
    assert negative["sigma"] is None
    assert "verdict: support_obstruction" in format_report(negative)


def test_classify_report_dim2():
    report = classify_report("dim2", expected=True)
    validate_report(report)
    (section,) = report["sections"]
    assert section["count"] == 5
    assert section["matches"] is True
    assert report["status"] == "success"


def test_classify_report_without_comparison():
    report = classify_report("4.5.2")
    (section,) = report["sections"]
    assert section["stated"] == 14
    assert section["matches"] is None
    assert "count: 14 stated: 14" in format_report(report)


def test_classify_report_mismatch(corpus):
    report = classify_report("5.1.1", corpus, expected=True)
    validate_report(report)
    assert report["status"] == "negative"
    assert "MISMATCH" in format_report(report)


def test_classify_report_grid_sections(corpus):
    report = classify_report("grid", corpus, expected=True)
    counts = {s["label"]: s["count"] for s in report["sections"]}
    assert counts == {"grid_a": 37, "grid_b": 56, "grid": 93}
    assert report["status"] == "success"


def test_classify_report_5_2_has_three_sections(corpus):
    report = classify_report("5.2", corpus, expected=True)
    assert [s["count"] for s in report["sections"]] == [91, 91, 35]
    assert report["status"] == "success"


def test_classify_report_input_errors():
    with pytest.raises(ValueError):
        classify_report("9.9")
    with pytest.raises(ValueError):
        classify_report("5.1.1")
    assert set(CORPUS_LABELS) <= set(CLASSIFY_LABELS)


def test_verify_report(corpus):
    report = verify_report(verify_tables(corpus), corpus)
    validate_report(report)
    assert report["status"] == "success"
    assert report["counts"]["FAIL"] == 0
    assert all(entry["hit"] for entry in report["errata"])
    assert {t["name"] for t in report["tables"]} >= {t.name for t in corpus.tables}


def test_error_report():
    report = error_report(UnsupportedFieldError("F9 is not prime"))
    validate_report(report)
    assert report["error_type"] == "UnsupportedFieldError"
    assert format_report(report) == "error: F9 is not prime"


def test_validate_report_rejects_bad_reports():
    with pytest.raises(ValueError):
        validate_report({"kind": "nope", "status": "success"})
    report = error_report(ValueError("x"))
    del report["error_message"]
    with pytest.raises(ValueError):
        validate_report(report)
    report = iso_report(decide_isomorphism(EvolutionAlgebra.identity(2), EvolutionAlgebra.identity(2)))
    report["reason"] = None
    with pytest.raises(ValueError):
        validate_report(report)


def test_validate_report_checks_values_not_only_keys(corpus):
    report = iso_report(decide_isomorphism(EvolutionAlgebra.identity(2), EvolutionAlgebra.identity(2)))
    report["verdict"] = "probably"
    with pytest.raises(ValueError, match="verdict"):
        validate_report(report)

    report = classify_report("dim2")
    report["sections"][0]["count"] = True
    with pytest.raises(ValueError, match="sections/0/count"):
        validate_report(report)

    report = classify_report("dim2")
    report["sections"][0]["families"][0]["pattern"] = "**/x*"
    with pytest.raises(ValueError):
        validate_report(report)

    report = verify_report(verify_tables(corpus), corpus)
    report["items"][0]["status"] = "SKIP"
    with pytest.raises(ValueError, match="items/0/status"):
        validate_report(report)

    report = error_report(ValueError("x"))
    report["status"] = "success"
    with pytest.raises(ValueError):
        validate_report(report)
