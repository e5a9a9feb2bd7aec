from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional

from .config import CABLE_CROSSING_LIMIT, DEFAULT_BRACKET_GUARD, DEFAULT_CHUNK
from .diagram import Diagram, build_diagram
from .errors import GuardExceeded, PreconditionError
from .gauss import GaussCode, GaussEntry, Passage
from .statesum import atom, span_report


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CableReport:
    """Cell census of the m-cable against the m * (n + chi) prediction."""
    m: int
    crossings: int
    predicted_cells: int
    actual_cells: int
    chi_cable: int
    usual_estimate: int
    cable_bound: int
    span: Optional[int] = None
    leading_vanishes: Optional[bool] = None
    lowest_vanishes: Optional[bool] = None

    @property
    def agrees(self) -> bool:
        return self.actual_cells == self.predicted_cells

    @property
    def estimate_attained(self) -> Optional[bool]:
        if self.span is None:
            return None
        return self.span == self.usual_estimate


def sub_crossing_id(crossing_index: int, over_copy: int, under_copy: int, m: int) -> int:
    """Row-major id of the grid crossing where `over_copy` passes over `under_copy`."""
    return crossing_index * m * m + over_copy * m + under_copy + 1


def cable(d: Diagram, m: int, limit: Optional[int] = CABLE_CROSSING_LIMIT) -> Diagram:
    """
    Blackboard-framed m-parallel of every component.

    Copy r runs at offset r to the right of its strand. At a positive crossing
    an over copy meets the under copies in ascending order and an under copy
    meets the over copies in descending order; a negative crossing reverses
    both orders. Every grid crossing keeps the original sign.
    """
    if m < 1:
        raise PreconditionError(f"cabling multiplicity must be positive, got {m}")
    if m == 1:
        return d
    size = m * m * d.n
    if limit is not None and size > limit:
        raise GuardExceeded(f"{m}-cable", size, limit)

    index = {cid: c for c, cid in enumerate(d.crossing_ids)}
    ascending = list(range(m))
    descending = ascending[::-1]

    components: List[tuple] = []
    for comp in d.code.components:
        for r in range(m):
            word: List[GaussEntry] = []
            for entry in comp:
                c = index[entry.crossing_id]
                if entry.passage is Passage.OVER:
                    order = ascending if entry.sign > 0 else descending
                    word.extend(GaussEntry(sub_crossing_id(c, r, u, m), Passage.OVER, entry.sign)
                                for u in order)
                else:
                    order = descending if entry.sign > 0 else ascending
                    word.extend(GaussEntry(sub_crossing_id(c, o, r, m), Passage.UNDER, entry.sign)
                                for o in order)
            components.append(tuple(word))

    cabled = build_diagram(GaussCode(tuple(components)))
    logger.info("%d-cable: %d crossings, %d components", m, cabled.n, cabled.component_count)
    return cabled


def cable_census(d: Diagram,
                 m: int,
                 with_span: bool = False,
                 guard: Optional[int] = DEFAULT_BRACKET_GUARD,
                 threads: int = 1,
                 chunk: int = DEFAULT_CHUNK) -> CableReport:
    """
    Count the atom cells of D_m(d) and compare with m * Gamma, Gamma = n + chi.

    With `with_span`, also compute span<D_m> and the extreme coefficients;
    the usual estimate 2(m^2 + m) n + 2 m chi - 4 is what a good diagram attains.
    """
    base = atom(d)
    cabled = cable(d, m)
    cab = atom(cabled)
    gamma = d.n + base.chi

    span = None
    leading_vanishes = lowest_vanishes = None
    if with_span:
        report = span_report(cabled, guard=guard, threads=threads, chunk=chunk)
        span = report.span
        leading_vanishes = report.leading_coeff == 0
        lowest_vanishes = report.lowest_coeff == 0

    census = CableReport(
        m=m,
        crossings=cabled.n,
        predicted_cells=m * gamma,
        actual_cells=cab.a_circles + cab.b_circles,
        chi_cable=cab.chi,
        usual_estimate=2 * (m * m + m) * d.n + 2 * m * base.chi - 4,
        cable_bound=4 * cabled.n + 2 * (cab.chi - 2),
        span=span,
        leading_vanishes=leading_vanishes,
        lowest_vanishes=lowest_vanishes,
    )
    if not census.agrees:
        logger.warning("cable census differs: predicted %d cells, found %d",
                       census.predicted_cells, census.actual_cells)
    return census
