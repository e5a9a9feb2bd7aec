from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import networkx as nx

from .errors import InvariantViolation, PreconditionError
from .gauss import GaussCode, GaussEntry, Passage


logger = logging.getLogger(__name__)


# Local port layout, counterclockwise around each crossing. The understrand
# always occupies ports 0 and 2 and the overstrand ports 1 and 3.
#   positive: 0 under-in, 1 over-out, 2 under-out, 3 over-in
#   negative: 0 under-in, 1 over-in,  2 under-out, 3 over-out
_PORT_TABLE: Dict[Tuple[int, Passage, bool], int] = {
    (1, Passage.UNDER, True): 0,
    (1, Passage.OVER, False): 1,
    (1, Passage.UNDER, False): 2,
    (1, Passage.OVER, True): 3,
    (-1, Passage.UNDER, True): 0,
    (-1, Passage.OVER, True): 1,
    (-1, Passage.UNDER, False): 2,
    (-1, Passage.OVER, False): 3,
}


def local_port(sign: int, passage: Passage, incoming: bool) -> int:
    """Local port (0..3) of the strand end described by (sign, passage, direction)."""
    return _PORT_TABLE[(sign, passage, incoming)]


@dataclass(frozen=True)
class SpliceSite:
    """An arc of a diagram: the edge leaving visit `arc_index` of a component."""
    component_index: int = 0
    arc_index: int = 0


@dataclass(frozen=True)
class Diagram:
    """
    Abstract 4-valent graph of a virtual link diagram.

    Crossing index c owns ports 4c..4c+3. `edge_pairing[p]` is the port joined
    to p by a diagram edge. Crossingless components are only counted in
    `free_loops`.
    """
    code: GaussCode
    crossing_ids: Tuple[int, ...]
    signs: Tuple[int, ...]
    edge_pairing: Tuple[int, ...]
    component_count: int
    free_loops: int

    @property
    def n(self) -> int:
        return len(self.crossing_ids)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def is_knot(self) -> bool:
        return self.component_count == 1


def build_diagram(code: GaussCode) -> Diagram:
    """Realize the half-edge structure of a validated Gauss code."""
    code.validate()
    crossing_ids = tuple(code.crossing_ids())
    index = {cid: i for i, cid in enumerate(crossing_ids)}

    signs = [0] * len(crossing_ids)
    for comp in code.components:
        for entry in comp:
            signs[index[entry.crossing_id]] = entry.sign

    def port(entry: GaussEntry, incoming: bool) -> int:
        return 4 * index[entry.crossing_id] + local_port(entry.sign, entry.passage, incoming)

    pairing = [-1] * (4 * len(crossing_ids))
    for comp in code.components:
        k = len(comp)
        for i, entry in enumerate(comp):
            out_port = port(entry, incoming=False)
            in_port = port(comp[(i + 1) % k], incoming=True)
            pairing[out_port] = in_port
            pairing[in_port] = out_port

    diagram = Diagram(
        code=code,
        crossing_ids=crossing_ids,
        signs=tuple(signs),
        edge_pairing=tuple(pairing),
        component_count=len(code.components),
        free_loops=sum(1 for comp in code.components if not comp),
    )
    _check_structure(diagram)
    return diagram


def _check_structure(d: Diagram) -> None:
    """Edge pairing must be a fixed-point-free involution whose strands close up per component."""
    pairing = d.edge_pairing
    for p, q in enumerate(pairing):
        if q < 0 or q == p or pairing[q] != p:
            raise InvariantViolation(f"edge pairing is not a fixed-point-free involution at port {p}")

    # Strands pass straight through a crossing: port k exits through k ^ 2.
    visited = [False] * len(pairing)
    walks = 0
    for start in range(len(pairing)):
        if visited[start]:
            continue
        walks += 1
        p = start
        while not visited[p]:
            visited[p] = True
            q = p ^ 2
            visited[q] = True
            p = pairing[q]
    if walks + d.free_loops != d.component_count:
        raise InvariantViolation(
            f"strand walk found {walks + d.free_loops} components, code has {d.component_count}"
        )


def mirror(d: Diagram) -> Diagram:
    """Swap over/under at every crossing and negate its sign."""
    components = tuple(
        tuple(GaussEntry(e.crossing_id, e.passage.flipped(), -e.sign) for e in comp)
        for comp in d.code.components
    )
    return build_diagram(GaussCode(components))


def connected_sum(d1: Diagram,
                  d2: Diagram,
                  s1: Optional[SpliceSite] = None,
                  s2: Optional[SpliceSite] = None) -> Diagram:
    """
    Cut one arc of each knot diagram and cross-splice the loose ends.

    Crossings of d2 are relabelled above the largest id of d1. Sites default
    to the first arc of each diagram.
    """
    if not d1.is_knot or not d2.is_knot:
        raise PreconditionError("connected sum is only defined here for knot diagrams")
    s1 = s1 or SpliceSite()
    s2 = s2 or SpliceSite()
    _check_site(d1, s1)
    _check_site(d2, s2)

    shift = max(d1.crossing_ids, default=0)
    word1 = list(d1.code.components[0])
    word2 = [GaussEntry(e.crossing_id + shift, e.passage, e.sign) for e in d2.code.components[0]]

    if not word1:
        return build_diagram(GaussCode((tuple(word2),)))
    if not word2:
        return d1

    i, j = s1.arc_index, s2.arc_index
    spliced = word1[:i + 1] + word2[j + 1:] + word2[:j + 1] + word1[i + 1:]
    return build_diagram(GaussCode((tuple(spliced),)))


def _check_site(d: Diagram, site: SpliceSite) -> None:
    comps = d.code.components
    if not 0 <= site.component_index < len(comps):
        raise PreconditionError(f"component index {site.component_index} out of range")
    arcs = max(len(comps[site.component_index]), 1)
    if not 0 <= site.arc_index < arcs:
        raise PreconditionError(f"arc index {site.arc_index} out of range (component has {arcs} arcs)")


def diagram_graph(d: Diagram) -> nx.MultiGraph:
    """Crossings as nodes, diagram edges as multi-edges, crossingless loops as isolated nodes."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(d.n))
    for p, q in enumerate(d.edge_pairing):
        if p < q:
            graph.add_edge(p // 4, q // 4)
    graph.add_nodes_from(("loop", i) for i in range(d.free_loops))
    return graph


def graph_components(d: Diagram) -> List[List[int]]:
    """Crossing indices of every connected component that has crossings."""
    graph = diagram_graph(d)
    comps = []
    for nodes in nx.connected_components(graph):
        crossings = sorted(v for v in nodes if isinstance(v, int))
        if crossings:
            comps.append(crossings)
    return sorted(comps)


def is_split(d: Diagram) -> bool:
    """True iff the 4-valent graph (with its crossingless loops) is disconnected."""
    return nx.number_connected_components(diagram_graph(d)) > 1


def count_faces(d: Diagram) -> List[int]:
    """
    Representative ports of the faces of the ribbon graph.

    Faces are the orbits of p -> rotate(pair(p)), where rotate steps one port
    counterclockwise at the same crossing.
    """
    pairing = d.edge_pairing
    seen = [False] * len(pairing)
    faces = []
    for start in range(len(pairing)):
        if seen[start]:
            continue
        faces.append(start)
        p = start
        while not seen[p]:
            seen[p] = True
            q = pairing[p]
            p = 4 * (q // 4) + (q % 4 + 1) % 4
    return faces


def carter_genus(d: Diagram) -> int:
    """
    Genus of the closed surface that carries the diagram without virtual crossings.

    Summed over connected components; zero iff the diagram is classical.
    """
    if d.n == 0:
        return 0
    component_of: Dict[int, int] = {}
    comps = graph_components(d)
    for k, crossings in enumerate(comps):
        for c in crossings:
            component_of[c] = k

    faces = [0] * len(comps)
    for rep in count_faces(d):
        faces[component_of[rep // 4]] += 1

    genus = 0
    for k, crossings in enumerate(comps):
        v = len(crossings)
        chi = v - 2 * v + faces[k]
        genus += (2 - chi) // 2
    return genus
