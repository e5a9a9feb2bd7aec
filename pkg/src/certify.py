from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from . import __version__
from .cabling import cable
from .config import DEFAULT_BRACKET_GUARD, DEFAULT_CHUNK, DEFAULT_KHOVANOV_GUARD
from .diagram import Diagram, carter_genus, connected_sum, is_split, mirror
from .errors import ConfigError, GuardExceeded, InvariantViolation, PreconditionError
from .khovanov import lemma_certificate
from .statesum import SpanReport, atom, bracket, is_good, span_report


logger = logging.getLogger(__name__)


class CertificateKind(str, Enum):
    SPAN_LOWER_BOUND = "SpanLowerBound"
    GOOD_VIRTUAL = "GoodVirtual"
    GOOD_CLASSICAL_KNOT = "GoodClassicalKnot"
    ASYMPTOTIC_EVIDENCE = "AsymptoticEvidence"


VERIFIED = "verified"
ASSUMED = "assumed"

NON_SPLIT = "non-split (no split diagrams)"
CONNECTED = "diagram graph connected"
GOOD = "good"
ORIENTABLE = "atom orientable"
CLASSICAL = "classical: carter_genus = 0"
KNOT = "one component"
SPAN_ATTAINED = "span attains 4n + 2(chi - 2)"

_CHECKS: Dict[str, Callable[[Diagram], bool]] = {
    CONNECTED: lambda d: not is_split(d),
    GOOD: lambda d: is_good(d).good,
    ORIENTABLE: lambda d: atom(d).orientable,
    CLASSICAL: lambda d: carter_genus(d) == 0,
    KNOT: lambda d: d.is_knot,
}

CLASSICAL_SCOPE = ("minimal in the classical category: every classical diagram of the same knot "
                   "has at least lower_bound crossings; virtual diagrams are not covered")
VIRTUAL_SCOPE = "every virtual diagram equivalent to this one has at least lower_bound classical crossings"
SPAN_SCOPE = "every diagram equivalent to this one has at least lower_bound classical crossings"
FINITE_EVIDENCE = ("FINITE EVIDENCE ONLY: the hypothesis must hold for infinitely many m; "
                   "no minimality is claimed")


@dataclass(frozen=True)
class Premise:
    name: str
    status: str
    holds: bool = True


@dataclass(frozen=True)
class Certificate:
    """A lower bound on classical crossings together with what it rests on."""
    kind: CertificateKind
    lower_bound: int
    premises: Tuple[Premise, ...]
    evidence: Dict[str, Any]
    vacuous: bool = False
    scope: str = ""
    tool_version: str = __version__

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "lower_bound": self.lower_bound,
            "premises": [{"name": p.name, "status": p.status, "holds": p.holds} for p in self.premises],
            "evidence": self.evidence,
            "vacuous": self.vacuous,
            "scope": self.scope,
            "tool_version": self.tool_version,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Certificate":
        try:
            return cls(
                kind=CertificateKind(data["kind"]),
                lower_bound=int(data["lower_bound"]),
                premises=tuple(Premise(p["name"], p["status"], bool(p.get("holds", True)))
                               for p in data["premises"]),
                evidence=dict(data["evidence"]),
                vacuous=bool(data.get("vacuous", False)),
                scope=data.get("scope", ""),
                tool_version=data.get("tool_version", __version__),
            )
        except (AttributeError, KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"not a certificate: {exc!r}") from exc


@dataclass(frozen=True)
class Refusal:
    """A certificate that could not be issued, and why."""
    operation: str
    reason: str
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"refused": self.operation, "reason": self.reason, "details": self.details}


@dataclass(frozen=True)
class AsymptoticEntry:
    m: int
    crossings: int
    span: Optional[int]
    threshold: Fraction
    usual_estimate: int
    passed: bool


@dataclass(frozen=True)
class AsymptoticReport:
    """Spans of D_m(K # mirror K) against the hypothesis threshold, per m."""
    epsilon: Fraction
    n: int
    chi: int
    entries: Tuple[AsymptoticEntry, ...]
    label: str = FINITE_EVIDENCE

    @property
    def all_passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def certificate(self) -> Certificate:
        """Evidence record only; the lower bound stays vacuous."""
        return Certificate(
            kind=CertificateKind.ASYMPTOTIC_EVIDENCE,
            lower_bound=0,
            premises=(Premise(CLASSICAL, VERIFIED), Premise(KNOT, VERIFIED)),
            evidence={
                "epsilon": str(self.epsilon),
                "N": self.n,
                "chi_sum": self.chi,
                "entries": [
                    {"m": e.m, "crossings": e.crossings, "span": e.span,
                     "threshold": str(e.threshold), "usual_estimate": e.usual_estimate,
                     "passed": e.passed}
                    for e in self.entries
                ],
            },
            vacuous=True,
            scope=self.label,
        )


CertifyResult = Union[Certificate, Refusal]


def _split_premises(d: Diagram) -> List[Premise]:
    return [Premise(NON_SPLIT, ASSUMED), Premise(CONNECTED, VERIFIED, holds=not is_split(d))]


def kauffman_lower_bound(d: Diagram,
                         guard: Optional[int] = DEFAULT_BRACKET_GUARD,
                         threads: int = 1,
                         chunk: int = DEFAULT_CHUNK,
                         report: Optional[SpanReport] = None) -> CertifyResult:
    """
    Any diagram with n' crossings has span <= 4n' + 2(chi' - 2) <= 4n', so
    n' >= ceil(span / 4).
    """
    if is_split(d):
        return Refusal("kauffman_lower_bound", "diagram graph is disconnected (split)")
    if report is None:
        report = span_report(d, guard=guard, threads=threads, chunk=chunk)
    if report.span is None:
        return Refusal("kauffman_lower_bound", "bracket is the zero polynomial; span is absent")

    lower = -(-report.span // 4)
    cert = Certificate(
        kind=CertificateKind.SPAN_LOWER_BOUND,
        lower_bound=lower,
        premises=tuple(_split_premises(d)),
        evidence={"n": d.n, "span": report.span, "bound": report.bound, "attained": report.attained},
        scope=SPAN_SCOPE,
    )
    _check_own_count(cert, d)
    return cert


def good_certificate(d: Diagram,
                     bracket_guard: Optional[int] = DEFAULT_BRACKET_GUARD,
                     khovanov_guard: Optional[int] = DEFAULT_KHOVANOV_GUARD,
                     threads: int = 1,
                     chunk: int = DEFAULT_CHUNK) -> CertifyResult:
    """
    Certificate for a good diagram.

    Classical knot diagrams (carter genus 0) get the full crossing count as a
    bound against classical competitors; everything else gets n - 2 against
    all virtual competitors.
    """
    good = is_good(d)
    if not good.good:
        return Refusal("good_certificate", "diagram is not good", {
            "a_violations": list(good.a_violations),
            "b_violations": list(good.b_violations),
        })
    data = atom(d)
    if not data.orientable:
        return Refusal("good_certificate", "atom is non-orientable; the theorems assume orientable atoms",
                       {"chi": data.chi})
    if is_split(d):
        return Refusal("good_certificate", "diagram graph is disconnected (split)")

    genus = carter_genus(d)
    evidence: Dict[str, Any] = {
        "n": d.n,
        "chi": data.chi,
        "genus": data.genus,
        "a_circles": data.a_circles,
        "b_circles": data.b_circles,
        "carter_genus": genus,
        "components": d.component_count,
    }
    premises = _split_premises(d) + [Premise(GOOD, VERIFIED), Premise(ORIENTABLE, VERIFIED)]

    try:
        report = span_report(d, guard=bracket_guard, threads=threads, chunk=chunk)
        evidence.update(span=report.span, bound=report.bound, attained=report.attained,
                        leading_coeff=str(report.leading_coeff), lowest_coeff=str(report.lowest_coeff))
        if not report.attained:
            raise InvariantViolation("good diagram whose bracket does not attain the span bound")
        premises.append(Premise(SPAN_ATTAINED, VERIFIED))
    except GuardExceeded:
        logger.info("bracket guard exceeded; span attainment taken from goodness")
        evidence.update(span=None, bound=4 * d.n + 2 * (data.chi - 2), attained=None)
        premises.append(Premise(SPAN_ATTAINED, ASSUMED))

    if khovanov_guard is None or d.n <= khovanov_guard:
        lemma = lemma_certificate(d, guard=khovanov_guard)
        evidence["lemma"] = {
            "a_extreme_is_cycle": lemma.a_extreme_is_cycle,
            "b_extreme_is_nonboundary": lemma.b_extreme_is_nonboundary,
            "implied_thickness_lower_bound": lemma.implied_thickness_lower_bound,
        }

    if genus == 0 and d.is_knot:
        premises += [Premise(CLASSICAL, VERIFIED), Premise(KNOT, VERIFIED)]
        cert = Certificate(
            kind=CertificateKind.GOOD_CLASSICAL_KNOT,
            lower_bound=d.n,
            premises=tuple(premises),
            evidence=evidence,
            scope=CLASSICAL_SCOPE,
        )
    else:
        lower = max(d.n - 2, 0)
        cert = Certificate(
            kind=CertificateKind.GOOD_VIRTUAL,
            lower_bound=lower,
            premises=tuple(premises),
            evidence=evidence,
            vacuous=lower == 0,
            scope=VIRTUAL_SCOPE,
        )
        check_virtual_chain(cert)
    _check_own_count(cert, d)
    logger.info("issued %s certificate with lower bound %d", cert.kind.value, cert.lower_bound)
    return cert


def check_virtual_chain(cert: Certificate) -> None:
    """
    Re-derive n - 2 from the evidence: a competitor with n' crossings has
    chi' <= chi + 4, so 4n + 2(chi - 2) = span <= 4n' + 2(chi + 2), i.e.
    4(n - n') <= 8. The bound must satisfy this and be the smallest such n'.
    """
    if cert.vacuous:
        return
    ev = cert.evidence
    n, chi = ev["n"], ev["chi"]
    attained_span = 4 * n + 2 * (chi - 2)
    if ev.get("span") is not None and ev["span"] != attained_span:
        raise InvariantViolation(f"span {ev['span']} differs from 4n + 2(chi - 2) = {attained_span}")
    n_prime = cert.lower_bound
    if attained_span > 4 * n_prime + 2 * (chi + 2):
        raise InvariantViolation(f"lower bound {n_prime} violates 4(n - n') <= 8")
    if attained_span <= 4 * (n_prime - 1) + 2 * (chi + 2):
        raise InvariantViolation(f"lower bound {n_prime} is not the tightest value allowed by the chain")


def _check_own_count(cert: Certificate, d: Diagram) -> None:
    if cert.lower_bound > d.n:
        raise InvariantViolation(
            f"{cert.kind.value} bound {cert.lower_bound} exceeds the diagram's own {d.n} crossings"
        )


def asymptotic_check(d: Diagram,
                     epsilon: Fraction = Fraction(1),
                     ms: Sequence[int] = (1, 2),
                     guard: Optional[int] = DEFAULT_BRACKET_GUARD,
                     threads: int = 1,
                     chunk: int = DEFAULT_CHUNK) -> AsymptoticReport:
    """
    For each m compare span<D_m(K # mirror K)> with
    2(m^2 + m)N + 2m chi - 4 - (4 - eps)(m^2 + m), N = 2n.

    Only finitely many m are ever checked, so this is evidence, not proof.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise PreconditionError("epsilon must be positive")
    if not d.is_knot:
        raise PreconditionError("asymptotic check needs a knot diagram; connected sum is undefined for links")
    if carter_genus(d) != 0:
        raise PreconditionError("asymptotic check needs a classical diagram; "
                                "connected sum of virtual diagrams is not well defined")

    doubled = connected_sum(d, mirror(d))
    big_n = doubled.n
    chi = atom(doubled).chi

    entries = []
    for m in ms:
        if m < 1:
            raise PreconditionError(f"cabling multiplicity must be positive, got {m}")
        if guard is not None and m * m * big_n > guard:
            raise GuardExceeded(f"{m}-cable bracket", m * m * big_n, guard)
        cabled = cable(doubled, m)
        span = bracket(cabled, guard=guard, threads=threads, chunk=chunk).span
        weight = m * m + m
        usual = 2 * weight * big_n + 2 * m * chi - 4
        threshold = usual - (4 - epsilon) * weight
        entries.append(AsymptoticEntry(
            m=m,
            crossings=cabled.n,
            span=span,
            threshold=Fraction(threshold),
            usual_estimate=usual,
            passed=span is not None and span >= threshold,
        ))
        logger.info("m=%d: span %s vs threshold %s", m, span, threshold)

    return AsymptoticReport(epsilon=epsilon, n=big_n, chi=chi, entries=tuple(entries))


@dataclass(frozen=True)
class Verification:
    ok: bool
    failures: Tuple[str, ...]


def verify_certificate(data: Dict[str, Any],
                       d: Diagram,
                       guard: Optional[int] = DEFAULT_BRACKET_GUARD,
                       threads: int = 1) -> Verification:
    """Re-check every verified premise and the bound arithmetic from the diagram alone."""
    cert = Certificate.from_dict(data)
    failures: List[str] = []

    for premise in cert.premises:
        if premise.status != VERIFIED:
            continue
        if premise.name == SPAN_ATTAINED:
            actual = span_report(d, guard=guard, threads=threads).attained
        elif premise.name in _CHECKS:
            actual = _CHECKS[premise.name](d)
        else:
            failures.append(f"unknown verified premise {premise.name!r}")
            continue
        if actual != premise.holds:
            failures.append(f"premise {premise.name!r} recorded {premise.holds}, recomputed {actual}")

    if cert.evidence.get("n", d.n) != d.n:
        failures.append("crossing count in evidence does not match the diagram")

    if cert.kind is CertificateKind.SPAN_LOWER_BOUND:
        span = span_report(d, guard=guard, threads=threads).span
        if span is None or cert.lower_bound != math.ceil(Fraction(span, 4)):
            failures.append(f"lower bound {cert.lower_bound} does not equal ceil(span / 4) for span {span}")
    elif cert.kind is CertificateKind.GOOD_CLASSICAL_KNOT:
        if cert.lower_bound != d.n:
            failures.append("classical good-knot bound must equal the crossing count")
    elif cert.kind is CertificateKind.GOOD_VIRTUAL:
        if cert.lower_bound != max(d.n - 2, 0):
            failures.append("virtual good bound must equal max(n - 2, 0)")
        try:
            check_virtual_chain(cert)
        except InvariantViolation as exc:
            failures.append(str(exc))
    elif cert.kind is CertificateKind.ASYMPTOTIC_EVIDENCE:
        if cert.lower_bound != 0 or not cert.vacuous:
            failures.append("asymptotic evidence must not claim a lower bound")
        try:
            eps = Fraction(cert.evidence["epsilon"])
            big_n, chi = cert.evidence["N"], cert.evidence["chi_sum"]
            for entry in cert.evidence["entries"]:
                m = entry["m"]
                weight = m * m + m
                expected = 2 * weight * big_n + 2 * m * chi - 4 - (4 - eps) * weight
                if Fraction(entry["threshold"]) != expected:
                    failures.append(f"threshold for m={m} does not match the hypothesis formula")
        except (KeyError, TypeError, ValueError) as exc:
            failures.append(f"asymptotic evidence is incomplete: {exc!r}")

    if cert.lower_bound > d.n:
        failures.append("lower bound exceeds the diagram's own crossing count")
    return Verification(ok=not failures, failures=tuple(failures))


@dataclass(frozen=True)
class FirstConditionIndicators:
    """Span attainment next to the genus; an indicator, never a certificate."""
    span_attained: Optional[bool]
    genus: Optional[int]
    carter_genus: int


def first_condition_indicators(d: Diagram,
                               guard: Optional[int] = DEFAULT_BRACKET_GUARD,
                               threads: int = 1,
                               chunk: int = DEFAULT_CHUNK) -> FirstConditionIndicators:
    try:
        attained: Optional[bool] = span_report(d, guard=guard, threads=threads, chunk=chunk).attained
    except GuardExceeded:
        attained = None
    return FirstConditionIndicators(span_attained=attained,
                                    genus=atom(d).genus,
                                    carter_genus=carter_genus(d))


def bounds_consistent(span_result: CertifyResult, good_result: CertifyResult) -> Optional[bool]:
    """
    Whether the span bound stays at or below the good-diagram bound.

    Not a theorem; a False here is logged for investigation. None when
    either side was refused.
    """
    if not isinstance(span_result, Certificate) or not isinstance(good_result, Certificate):
        return None
    consistent = span_result.lower_bound <= good_result.lower_bound
    if not consistent:
        logger.warning("span bound %d exceeds %s bound %d",
                       span_result.lower_bound, good_result.kind.value, good_result.lower_bound)
    return consistent
