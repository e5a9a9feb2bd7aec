from __future__ import annotations

from dataclasses import asdict
from enum import Enum
from typing import Any, Dict, List, Optional

import pandas as pd

from .cabling import CableReport
from .certify import (
    AsymptoticReport,
    Certificate,
    CertifyResult,
    FirstConditionIndicators,
    Refusal,
)
from .diagram import Diagram, carter_genus, is_split
from .khovanov import EulerCheck, HomologyTable, LemmaReport, ThicknessReport
from .laurent import LaurentPoly
from .statesum import AtomData, GoodReport, SpanReport
from .validator import Issue


CORPUS_COLUMNS = ["file", "status", "n", "components", "carter_genus", "split", "chi",
                  "genus", "good", "span", "bound", "attained", "certificate", "lower_bound", "error"]


class Verdict(str, Enum):
    """Coarse outcome of a corpus row."""
    CERTIFIED = "certified"
    REFUSED = "refused"
    SKIPPED = "skipped"
    ERROR = "error"


def _header(title: str) -> List[str]:
    return [title, "-" * len(title)]


def _examples(issue: Issue) -> List[str]:
    lines = []
    # Only a small sample, for quick inspection.
    for ex in issue.examples[:2]:
        ex_str = ", ".join(f"{k}={v}" for k, v in ex.items())
        lines.append(f"    example: {ex_str}")
    return lines


# ---------- validate ----------

def format_validation(d: Diagram, issues: List[Issue]) -> str:
    lines = _header("Diagram Summary")
    lines.append(f"Crossings: {d.n} (n+ = {d.n_plus}, n- = {d.n_minus}, writhe {d.writhe})")
    lines.append(f"Components: {d.component_count} ({d.free_loops} crossingless)")
    lines.append(f"Carter genus: {carter_genus(d)}")
    lines.append(f"is_split: {str(is_split(d)).lower()}")
    lines.append("")
    lines.append("Findings:")
    if not issues:
        lines.append("- none")
    for issue in issues:
        lines.append(f"- {issue.message} ({issue.count})")
        lines.extend(_examples(issue))
    return "\n".join(lines)


def validation_to_dict(d: Diagram, issues: List[Issue]) -> Dict[str, Any]:
    return {
        "counts": {
            "crossings": d.n,
            "n_plus": d.n_plus,
            "n_minus": d.n_minus,
            "components": d.component_count,
            "free_loops": d.free_loops,
        },
        "writhe": d.writhe,
        "carter_genus": carter_genus(d),
        "is_split": is_split(d),
        "issues": [asdict(i) for i in issues],
    }


# ---------- bracket / atom / good / span ----------

def format_bracket(poly: LaurentPoly) -> str:
    return poly.to_text()


def bracket_to_dict(poly: LaurentPoly) -> Dict[str, Any]:
    return {"bracket": poly.to_json(), "text": poly.to_text(), "span": poly.span}


def format_atom(data: AtomData) -> str:
    lines = _header("Atom")
    lines.append(f"|s_A| = {data.a_circles}, |s_B| = {data.b_circles}")
    lines.append(f"chi = {data.chi}")
    lines.append(f"orientable: {str(data.orientable).lower()}")
    genus = "n/a (non-orientable)" if data.genus is None else str(data.genus)
    lines.append(f"genus = {genus}, euler genus = {data.euler_genus}")
    lines.append(f"components = {data.components}")
    return "\n".join(lines)


def atom_to_dict(data: AtomData) -> Dict[str, Any]:
    out = asdict(data)
    out["euler_genus"] = data.euler_genus
    return out


def format_good(report: GoodReport) -> str:
    lines = [f"good: {str(report.good).lower()}"]
    if report.a_violations:
        lines.append("all-A self-touching at crossings " + ", ".join(map(str, report.a_violations)))
    if report.b_violations:
        lines.append("all-B self-touching at crossings " + ", ".join(map(str, report.b_violations)))
    return "\n".join(lines)


def good_to_dict(report: GoodReport) -> Dict[str, Any]:
    return {
        "good": report.good,
        "a_violations": list(report.a_violations),
        "b_violations": list(report.b_violations),
    }


def format_span(report: SpanReport) -> str:
    lines = _header("Span")
    lines.append(f"bracket: {report.bracket.to_text()}")
    span = "absent (zero bracket)" if report.span is None else str(report.span)
    lines.append(f"span = {span}, bound 4n + 2(chi - 2) = {report.bound}")
    lines.append(f"attained: {str(report.attained).lower()}")
    lines.append(f"extreme coefficients: A^{report.max_deg_predicted} -> {report.leading_coeff}, "
                 f"A^{report.min_deg_predicted} -> {report.lowest_coeff}")
    return "\n".join(lines)


def span_to_dict(report: SpanReport) -> Dict[str, Any]:
    return {
        "bracket": report.bracket.to_json(),
        "span": report.span,
        "bound": report.bound,
        "attained": report.attained,
        "max_deg_predicted": report.max_deg_predicted,
        "min_deg_predicted": report.min_deg_predicted,
        "leading_coeff": str(report.leading_coeff),
        "lowest_coeff": str(report.lowest_coeff),
        "unit_extremes": report.unit_extremes,
    }


# ---------- cabling ----------

def format_census(report: CableReport) -> str:
    lines = _header(f"{report.m}-cable census")
    lines.append(f"crossings: {report.crossings}")
    lines.append(f"cells: {report.actual_cells} (predicted {report.predicted_cells})")
    lines.append(f"chi: {report.chi_cable}, bound 4n + 2(chi - 2) = {report.cable_bound}")
    lines.append(f"usual estimate 2(m^2 + m)n + 2m chi - 4 = {report.usual_estimate}")
    if report.span is not None:
        lines.append(f"span: {report.span} (estimate attained: {str(report.estimate_attained).lower()})")
        lines.append(f"extreme coefficients vanish: leading {str(report.leading_vanishes).lower()}, "
                     f"lowest {str(report.lowest_vanishes).lower()}")
    return "\n".join(lines)


def census_to_dict(report: CableReport) -> Dict[str, Any]:
    out = asdict(report)
    out["agrees"] = report.agrees
    out["estimate_attained"] = report.estimate_attained
    return out


# ---------- khovanov ----------

def homology_tsv(table: HomologyTable) -> str:
    return table.to_frame().to_csv(sep="\t", index=False)


def format_khovanov(table: HomologyTable,
                    thick: ThicknessReport,
                    euler: Optional[EulerCheck] = None,
                    lemma: Optional[LemmaReport] = None) -> str:
    lines = [homology_tsv(table).rstrip("\n"), ""]
    lines.append(f"total rank: {table.total_rank}")
    lines.append(f"diagonals j - 2i: {', '.join(map(str, thick.diagonals))}")
    lines.append(f"thickness: {thick.thickness}" + (" (parity anomaly)" if thick.parity_anomaly else ""))
    if euler is not None:
        lines.append(f"euler characteristic matches bracket: {str(euler.matches).lower()}")
    if lemma is not None:
        lines.append(f"extreme generators survive: {str(lemma.holds).lower()} "
                     f"(implied thickness >= {lemma.implied_thickness_lower_bound})")
    return "\n".join(lines)


def khovanov_to_dict(table: HomologyTable,
                     thick: ThicknessReport,
                     euler: Optional[EulerCheck] = None,
                     lemma: Optional[LemmaReport] = None) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "ranks": [{"i": i, "j": j, "rank": r} for (i, j), r in sorted(table.rank.items())],
        "total_rank": table.total_rank,
        "diagonals": list(thick.diagonals),
        "thickness": thick.thickness,
        "parity_anomaly": thick.parity_anomaly,
    }
    if euler is not None:
        out["euler"] = {
            "matches": euler.matches,
            "homology_side": euler.homology_side.to_json(),
            "bracket_side": euler.bracket_side.to_json(),
        }
    if lemma is not None:
        out["lemma"] = {
            "a_extreme_is_cycle": lemma.a_extreme_is_cycle,
            "b_extreme_is_nonboundary": lemma.b_extreme_is_nonboundary,
            "implied_thickness_lower_bound": lemma.implied_thickness_lower_bound,
            "a_bidegree": list(lemma.a_bidegree),
            "b_bidegree": list(lemma.b_bidegree),
        }
    return out


# ---------- certificates ----------

def result_to_dict(result: CertifyResult) -> Dict[str, Any]:
    return result.to_dict()


def _format_result(result: CertifyResult) -> List[str]:
    if isinstance(result, Refusal):
        lines = [f"{result.operation}: refused, {result.reason}"]
        for key, value in result.details.items():
            lines.append(f"    {key}: {value}")
        return lines
    lines = [f"{result.kind.value}: at least {result.lower_bound} classical crossings"
             + (" (vacuous)" if result.vacuous else "")]
    lines.append(f"    scope: {result.scope}")
    for p in result.premises:
        mark = "" if p.holds else " (FAILED)"
        lines.append(f"    premise [{p.status}] {p.name}{mark}")
    return lines


def format_certify(span_result: CertifyResult,
                   good_result: CertifyResult,
                   consistent: Optional[bool],
                   indicators: Optional[FirstConditionIndicators] = None) -> str:
    lines = _header("Crossing-number certificates")
    lines.extend(_format_result(span_result))
    lines.extend(_format_result(good_result))
    if consistent is not None:
        lines.append(f"span bound <= good bound: {str(consistent).lower()}")
    if indicators is not None:
        lines.append(f"indicator (not a certificate): span attained {indicators.span_attained}, "
                     f"genus {indicators.genus}, carter genus {indicators.carter_genus}")
    return "\n".join(lines)


def certify_to_dict(span_result: CertifyResult,
                    good_result: CertifyResult,
                    consistent: Optional[bool],
                    indicators: Optional[FirstConditionIndicators] = None) -> Dict[str, Any]:
    return {
        "span_certificate": result_to_dict(span_result),
        "good_certificate": result_to_dict(good_result),
        "bounds_consistent": consistent,
        "first_condition_indicators": None if indicators is None else asdict(indicators),
    }


def format_asymptotic(report: AsymptoticReport) -> str:
    lines = _header("Asymptotic hypothesis check")
    lines.append(report.label)
    lines.append(f"epsilon = {report.epsilon}, N = {report.n}, chi(K # mirror K) = {report.chi}")
    for e in report.entries:
        verdict = "pass" if e.passed else "fail"
        lines.append(f"m={e.m}: span {e.span} vs threshold {e.threshold} "
                     f"(estimate {e.usual_estimate}, {e.crossings} crossings) {verdict}")
    return "\n".join(lines)


def asymptotic_to_dict(report: AsymptoticReport) -> Dict[str, Any]:
    out = report.certificate().to_dict()
    out["all_passed"] = report.all_passed
    return out


# ---------- corpus ----------

def corpus_row(name: str, d: Diagram, data: AtomData, good: GoodReport,
               span: Optional[SpanReport], result: Optional[CertifyResult]) -> Dict[str, Any]:
    """One TSV row; `span` is None when the bracket guard stopped the computation."""
    if result is None:
        verdict = Verdict.SKIPPED
    elif isinstance(result, Certificate):
        verdict = Verdict.CERTIFIED
    else:
        verdict = Verdict.REFUSED
    return {
        "file": name,
        "status": verdict.value,
        "n": d.n,
        "components": d.component_count,
        "carter_genus": carter_genus(d),
        "split": is_split(d),
        "chi": data.chi,
        "genus": data.genus,
        "good": good.good,
        "span": None if span is None else span.span,
        "bound": None if span is None else span.bound,
        "attained": None if span is None else span.attained,
        "certificate": result.kind.value if isinstance(result, Certificate) else None,
        "lower_bound": result.lower_bound if isinstance(result, Certificate) else None,
        "error": None,
    }


def corpus_error_row(name: str, message: str) -> Dict[str, Any]:
    row: Dict[str, Any] = {col: None for col in CORPUS_COLUMNS}
    row.update(file=name, status=Verdict.ERROR.value, error=message)
    return row


def corpus_frame(rows: List[Dict[str, Any]]) -> pd.DataFrame:
    return pd.DataFrame(rows, columns=CORPUS_COLUMNS)


def corpus_tsv(rows: List[Dict[str, Any]]) -> str:
    return corpus_frame(rows).to_csv(sep="\t", index=False)


def corpus_to_dict(rows: List[Dict[str, Any]]) -> Dict[str, Any]:
    frame = corpus_frame(rows)
    counts = frame["status"].value_counts()
    return {
        "rows": rows,
        "counts": {v.value: int(counts.get(v.value, 0)) for v in Verdict},
    }
