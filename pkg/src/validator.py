from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List

from .diagram import Diagram, carter_genus, graph_components, is_split
from .statesum import atom, is_good


@dataclass(frozen=True)
class Issue:
    """Single validation finding with a small sample of concrete examples."""
    category: str
    message: str
    count: int
    examples: List[Dict[str, Any]]


def _split(d: Diagram) -> List[Issue]:
    """Disconnected diagrams void the non-split premise of every certificate."""
    if not is_split(d):
        return []
    comps = graph_components(d)
    examples = [{"crossing_ids": [d.crossing_ids[c] for c in comp]} for comp in comps[:5]]
    pieces = len(comps) + d.free_loops
    return [Issue(
        category="topology",
        message="Diagram is split (graph disconnected)",
        count=pieces,
        examples=examples,
    )]


def _virtual(d: Diagram) -> List[Issue]:
    genus = carter_genus(d)
    if genus == 0:
        return []
    return [Issue(
        category="topology",
        message="Diagram is virtual (carter genus > 0)",
        count=genus,
        examples=[{"carter_genus": genus}],
    )]


def _non_orientable(d: Diagram) -> List[Issue]:
    data = atom(d)
    if data.orientable:
        return []
    return [Issue(
        category="atom",
        message="Atom is non-orientable",
        count=1,
        examples=[{"chi": data.chi, "euler_genus": data.euler_genus}],
    )]


def _self_touching(d: Diagram) -> List[Issue]:
    report = is_good(d)
    issues = []
    for label, bad in (("A", report.a_violations), ("B", report.b_violations)):
        if bad:
            issues.append(Issue(
                category="goodness",
                message=f"All-{label} circle touches itself",
                count=len(bad),
                examples=[{"crossing_id": cid} for cid in bad[:5]],
            ))
    return issues


def _gapped_ids(d: Diagram) -> List[Issue]:
    """Crossing ids that skip numbers are legal but often a typo."""
    ids = d.crossing_ids
    if not ids or ids[-1] == len(ids):
        return []
    missing = sorted(set(range(1, ids[-1] + 1)) - set(ids))
    return [Issue(
        category="schema",
        message="Crossing ids are not 1..n",
        count=len(missing),
        examples=[{"missing_id": cid} for cid in missing[:5]],
    )]


def validate(d: Diagram) -> List[Issue]:
    """
    Run every diagram check and return a flat list of Issues.

    Parsing and structural invariants have already been enforced by the
    time a Diagram exists; what remains are findings, not failures.
    """
    issues: List[Issue] = []
    issues.extend(_gapped_ids(d))
    issues.extend(_split(d))
    issues.extend(_virtual(d))
    issues.extend(_non_orientable(d))
    issues.extend(_self_touching(d))
    return issues
