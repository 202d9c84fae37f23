"""
Report builders for the evoalg command line.

Each builder returns a plain dictionary with a "kind" and a "status" key
("success", "negative" or "error") so the same object can be printed as text
or dumped as JSON. JSON output is checked against ``report_schema.json``.

Functions:
    - analyze_report: Ideal and graph data of one matrix or pattern
    - iso_report: Isomorphism verdict with the map found
    - classify_report: Families and counts for a registry label
    - verify_report: Table verification results
    - error_report: A failed command
    - validate_report: Check a report against the schema
    - format_report: Human-readable rendering
"""

import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import jsonschema

from .algebra import EvolutionAlgebra, is_perfect
from .classify import (
    GridLabel,
    FamilySet,
    VerificationReport,
    case_registry,
    classify_case,
    classify_condition_323,
    classify_dim2_perfect,
    classify_dim3_simple,
    classify_grid,
    classify_reducible,
    stated_family_count,
)
from .corpus import Corpus
from .graphmod import associated_graph, degree_profile, format_graph
from .ideals import (
    is_basic_simple,
    is_irreducible,
    is_simple,
    maximal_basic_ideals,
    satisfies_condition_323,
)
from .isotest import IsoVerdict, IsomorphismResult
from .pattern import SupportPattern, as_pattern, format_cycles, generically_perfect

logger = logging.getLogger(__name__)

SCHEMA_FILE = Path(__file__).resolve().parent / "report_schema.json"


def _sets(sets) -> List[List[int]]:
    return [sorted(s) for s in sets]


def compact_pattern(P: SupportPattern) -> str:
    """Rows over {0, *} joined by '/'."""
    return "/".join("".join("*" if x else "0" for x in row) for row in P.bits)


def analyze_report(A: Union[EvolutionAlgebra, SupportPattern]) -> Dict[str, Any]:
    """
    Collect every predicate of the ideals and graph modules for one input.

    Args:
        A: Structure matrix or bare support pattern

    Returns:
        Dictionary of kind "analyze"

    Example:
        >>> analyze_report(SupportPattern.from_text("0 */* 0"))["simple"]
        True
    """
    P = as_pattern(A)
    if isinstance(A, EvolutionAlgebra):
        perfect, field_label, source = is_perfect(A), A.field.label, "matrix"
    else:
        perfect, field_label, source = generically_perfect(P), "pattern", "pattern"
    ideals = maximal_basic_ideals(A)
    graph = associated_graph(P)
    witness = satisfies_condition_323(P)
    return {
        "kind": "analyze",
        "status": "success",
        "source": source,
        "dim": P.n,
        "field": field_label,
        "perfect": perfect,
        "simple": is_simple(A),
        "basic_simple": is_basic_simple(P),
        "irreducible": is_irreducible(A),
        "basis_independent": ideals.basis_independent,
        "zero_counts": {"total": P.zero_count, "diagonal": P.diag_zero_count},
        "degree_profile": [list(pair) for pair in degree_profile(graph)],
        "basic_ideals": _sets(ideals.all_closed_proper_sets),
        "maximal_basic_ideals": _sets(ideals.maximal_basic_ideals),
        "maximal_ideal_dim": ideals.maximal_dimension,
        "condition_323": _sets(witness) if witness else None,
        "graph": format_graph(graph).split("\n"),
    }


def iso_report(result: IsomorphismResult) -> Dict[str, Any]:
    mapping = result.mapping
    return {
        "kind": "iso",
        "status": "success" if result.verdict is IsoVerdict.ISOMORPHIC else "negative",
        "verdict": result.verdict.value,
        "reason": result.reason,
        "sigma": format_cycles(mapping.sigma) if mapping else None,
        "scales": [str(d) for d in mapping.scales] if mapping else None,
    }


def _family_entries(families: FamilySet) -> List[Dict[str, Any]]:
    return [
        {
            "pattern": compact_pattern(f.representative),
            "maximal_ideal_dim": f.maximal_ideal_dim,
            "irreducible": f.irreducible,
            "anomalous": f.anomalous,
            "members": list(f.members),
        }
        for f in families.families
    ]


def _section(label: str, count: int, stated: Optional[int], families: List[Dict[str, Any]], anomalies: int, expected: bool) -> Dict[str, Any]:
    return {
        "label": label,
        "count": count,
        "stated": stated,
        "matches": (count == stated) if expected and stated is not None else None,
        "anomalies": anomalies,
        "families": families,
    }


def _family_section(families: FamilySet, stated: Optional[int], expected: bool) -> Dict[str, Any]:
    return _section(families.label, families.count, stated, _family_entries(families), len(families.anomalies), expected)


def _grid_sections(corpus: Corpus, expected: bool) -> List[Dict[str, Any]]:
    sections = []
    total, total_stated = 0, 0
    for name, cells in classify_grid(corpus).items():
        stars = [c for c in cells if c.label is GridLabel.IRREDUCIBLE_STAR]
        stated = next(t.stated("stars") for t in corpus.tables if t.name == name)
        entries = [
            {
                "pattern": compact_pattern(c.pattern),
                "maximal_ideal_dim": maximal_basic_ideals(c.pattern).maximal_dimension,
                "irreducible": True,
                "anomalous": False,
                "members": [f"{c.row}/{c.column}"],
            }
            for c in stars
        ]
        sections.append(_section(name, len(stars), stated, entries, 0, expected))
        total += len(stars)
        total_stated = None if stated is None or total_stated is None else total_stated + stated
    sections.append(_section("grid", total, total_stated, [], 0, expected))
    return sections


CLASSIFY_LABELS = ("dim2", "dim3-simple", "3.1", "3.2", "3.3") + tuple(
    f"4.{k}.{s}" for k in range(1, 6) for s in range(1, 5)
) + ("5.1.1", "5.2", "5.2.1", "5.2.2", "5.2.3", "grid", "reducible")

# Labels whose pipeline or stated count reads the table corpus.
CORPUS_LABELS = ("3.1", "3.2", "3.3", "5.1.1", "5.2", "5.2.1", "5.2.2", "5.2.3", "grid")


def classify_report(label: str, corpus: Optional[Corpus] = None, expected: bool = False, workers: int = 1) -> Dict[str, Any]:
    """
    Run the pipeline behind a registry label.

    Args:
        label: One of CLASSIFY_LABELS
        corpus: Needed for "5.1.1", "grid" and the counts of cases stated through tables
        expected: Compare counts with stated counts
        workers: Threads for canonicalisation

    Returns:
        Dictionary of kind "classify"; status "negative" when a compared count differs
    """
    if label not in CLASSIFY_LABELS:
        raise ValueError(f"Unknown case label {label!r}; known labels: {', '.join(CLASSIFY_LABELS)}")
    if label in ("5.1.1", "grid") and corpus is None:
        raise ValueError(f"Label {label} needs the table corpus")

    registry = case_registry()
    if label in registry:
        sections = [_family_section(classify_case(registry[label], workers), stated_family_count(label, corpus), expected)]
    elif label == "5.2":
        sections = [
            _family_section(classify_case(registry[sub], workers), stated_family_count(sub, corpus), expected)
            for sub in ("5.2.1", "5.2.2", "5.2.3")
        ]
    elif label == "dim2":
        families = classify_dim2_perfect()
        sections = [_family_section(families, families.stated_count, expected)]
    elif label == "dim3-simple":
        sections = [_family_section(classify_dim3_simple(), None, expected)]
    elif label == "5.1.1":
        families = classify_condition_323(corpus)
        sections = [_family_section(families, families.stated_count, expected)]
    elif label == "grid":
        sections = _grid_sections(corpus, expected)
    else:
        sections = [_family_section(classify_reducible(), None, expected)]

    negative = any(s["matches"] is False for s in sections)
    if expected and all(s["stated"] is None for s in sections):
        logger.warning(f"No stated count is known for {label}")
    return {
        "kind": "classify",
        "status": "negative" if negative else "success",
        "label": label,
        "expected": expected,
        "sections": sections,
    }


def verify_report(report: VerificationReport, corpus: Corpus) -> Dict[str, Any]:
    tables: Dict[str, Dict[str, int]] = {}
    for item in report.items:
        table = item.item_id.split("/", 1)[0]
        tables.setdefault(table, {"PASS": 0, "WARN": 0, "FAIL": 0})[report.status(item)] += 1
    failing = {i.item_id for i in report.items if not i.passed}
    return {
        "kind": "verify",
        "status": "success" if report.ok else "negative",
        "corpus": str(corpus.path),
        "counts": report.counts(),
        "tables": [{"name": name, **totals} for name, totals in tables.items()],
        "items": [
            {"id": i.item_id, "status": report.status(i), "detail": i.detail}
            for i in report.items
        ],
        "errata": [
            {"id": key, "reason": reason, "hit": key in failing}
            for key, reason in report.errata.items()
        ],
    }


def error_report(error: Exception) -> Dict[str, Any]:
    return {
        "kind": "error",
        "status": "error",
        "error_type": type(error).__name__,
        "error_message": str(error),
    }


@lru_cache(maxsize=1)
def load_schema() -> Dict[str, Any]:
    """The JSON Schema every report is checked against."""
    return json.loads(SCHEMA_FILE.read_text(encoding="utf-8"))


def validate_report(report: Dict[str, Any]) -> None:
    """
    Check a report against ``report_schema.json``.

    Raises:
        ValueError: naming the first offending field
    """
    try:
        jsonschema.validate(instance=report, schema=load_schema())
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "report"
        logger.error(f"Invalid {report.get('kind')!r} report at {where}: {e.message}")
        raise ValueError(f"Report does not match the schema at {where}: {e.message}")


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _format_analyze(report: Dict[str, Any]) -> List[str]:
    witness = report["condition_323"]
    lines = [
        f"dim: {report['dim']}",
        f"field: {report['field']}",
        f"perfect: {_yes(report['perfect'])}",
        f"simple: {_yes(report['simple'])}",
        f"basic simple: {_yes(report['basic_simple'])}",
        f"irreducible: {_yes(report['irreducible'])}",
        f"zeros: {report['zero_counts']['total']} (diagonal {report['zero_counts']['diagonal']})",
        "degrees (out,in): " + " ".join(f"({o},{i})" for o, i in report["degree_profile"]),
        "basic ideals: " + (" ".join(_brace(s) for s in report["basic_ideals"]) or "none"),
        "maximal basic ideals: " + (" ".join(_brace(s) for s in report["maximal_basic_ideals"]) or "none"),
        "condition (3,2,3): " + (f"{_brace(witness[0])} {_brace(witness[1])}" if witness else "no"),
        "graph:",
    ]
    lines += [f"  {row}" for row in report["graph"]]
    if not report["basis_independent"]:
        lines.append("note: not perfect; basic ideals depend on the natural basis")
    return lines


def _brace(s: List[int]) -> str:
    return "{" + ",".join(str(x) for x in s) + "}"


def _format_iso(report: Dict[str, Any]) -> List[str]:
    lines = [f"verdict: {report['verdict']}", f"reason: {report['reason']}"]
    if report["sigma"] is not None:
        lines.append(f"sigma: {report['sigma']}")
        lines.append("scales: " + " ".join(report["scales"]))
    return lines


def _format_classify(report: Dict[str, Any]) -> List[str]:
    lines = []
    for section in report["sections"]:
        lines.append(f"[{section['label']}]")
        for index, family in enumerate(section["families"], start=1):
            flags = " anomalous" if family["anomalous"] else ""
            members = f" {' '.join(family['members'])}" if family["members"] else ""
            lines.append(f"  {index:3d} {family['pattern']}{members}{flags}")
        summary = f"count: {section['count']}"
        if section["stated"] is not None:
            summary += f" stated: {section['stated']}"
        if section["matches"] is not None:
            summary += " OK" if section["matches"] else " MISMATCH"
        if section["anomalies"]:
            summary += f" anomalies: {section['anomalies']}"
        lines.append(summary)
    if report["expected"] and all(s["stated"] is None for s in report["sections"]):
        lines.append(f"no stated count for {report['label']}")
    return lines


def _format_verify(report: Dict[str, Any]) -> List[str]:
    lines = [f"{item['status']} {item['id']}" + (f"  {item['detail']}" if item["detail"] and item["status"] != "PASS" else "") for item in report["items"]]
    lines.append("")
    lines.append("tables:")
    for table in report["tables"]:
        lines.append(f"  {table['name']}: {table['PASS']} pass, {table['WARN']} warn, {table['FAIL']} fail")
    lines.append("errata:")
    for entry in report["errata"]:
        mark = "hit" if entry["hit"] else "unused"
        lines.append(f"  [{mark}] {entry['id']}  {entry['reason']}")
    counts = report["counts"]
    lines.append(f"summary: {counts['PASS']} PASS, {counts['WARN']} WARN, {counts['FAIL']} FAIL")
    return lines


_FORMATTERS = {
    "analyze": _format_analyze,
    "iso": _format_iso,
    "classify": _format_classify,
    "verify": _format_verify,
    "error": lambda r: [f"error: {r['error_message']}"],
}


def format_report(report: Dict[str, Any]) -> str:
    return "\n".join(_FORMATTERS[report["kind"]](report))
