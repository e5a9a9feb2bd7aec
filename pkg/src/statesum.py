from __future__ import annotations

import logging
import multiprocessing as mp
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .config import DEFAULT_BRACKET_GUARD, DEFAULT_CHUNK, ORACLE_LIMIT
from .diagram import Diagram, graph_components
from .errors import GuardExceeded
from .laurent import LaurentPoly, loop_power


logger = logging.getLogger(__name__)

A_CHOICE = 0
B_CHOICE = 1

# Minimum number of states before the enumeration is worth splitting across processes.
_PARALLEL_MIN_STATES = 1 << 16


def smoothing_partner(port: int, choice: int) -> int:
    """
    Port joined to `port` by the smoothing arc at its crossing.

    With the overstrand on local ports 1 and 3, the A-smoothing joins (0,1)
    and (2,3); the B-smoothing joins (1,2) and (3,0).
    """
    base, k = divmod(port, 4)
    if choice == A_CHOICE:
        return 4 * base + (k ^ 1)
    return 4 * base + 3 - k


@dataclass(frozen=True)
class State:
    """A smoothing choice per crossing; bit c of `mask` is 1 for a B-smoothing."""
    mask: int
    n: int

    @classmethod
    def all_a(cls, n: int) -> "State":
        return cls(0, n)

    @classmethod
    def all_b(cls, n: int) -> "State":
        return cls((1 << n) - 1, n)

    def choice(self, crossing: int) -> int:
        return (self.mask >> crossing) & 1

    @property
    def beta(self) -> int:
        return bin(self.mask).count("1")

    @property
    def alpha(self) -> int:
        return self.n - self.beta


@dataclass(frozen=True)
class StateCircles:
    """Circles of a resolved state; membership is indexed by port."""
    circle_count: int
    membership: Tuple[int, ...]


@dataclass(frozen=True)
class AtomData:
    """Cell census of the atom built from the all-A and all-B states."""
    a_circles: int
    b_circles: int
    chi: int
    genus: Optional[int]
    orientable: bool
    components: int = 1

    @property
    def euler_genus(self) -> int:
        return 2 * self.components - self.chi


@dataclass(frozen=True)
class GoodReport:
    """Crossings where an extreme-state circle touches itself."""
    good: bool
    a_violations: Tuple[int, ...]
    b_violations: Tuple[int, ...]


@dataclass(frozen=True)
class SpanReport:
    """Span of the bracket against the atom bound 4n + 2(chi - 2)."""
    bracket: LaurentPoly
    span: Optional[int]
    bound: int
    attained: bool
    max_deg_predicted: int
    min_deg_predicted: int
    leading_coeff: int
    lowest_coeff: int

    @property
    def unit_extremes(self) -> bool:
        return abs(self.leading_coeff) == 1 and abs(self.lowest_coeff) == 1


class _DisjointSet:
    """Union-find over 0..size-1 with path halving and union by rank."""

    def __init__(self, size: int) -> None:
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1


def resolve(d: Diagram, s: State) -> StateCircles:
    """Smooth every crossing per `s` and label the resulting circles by union-find."""
    ports = 4 * d.n
    uf = _DisjointSet(ports)
    for p in range(ports):
        uf.union(p, d.edge_pairing[p])
        uf.union(p, smoothing_partner(p, s.choice(p // 4)))

    # Circle indices follow the lowest port on each circle.
    index: Dict[int, int] = {}
    membership = []
    for p in range(ports):
        root = uf.find(p)
        if root not in index:
            index[root] = len(index)
        membership.append(index[root])
    return StateCircles(circle_count=len(index) + d.free_loops, membership=tuple(membership))


def walk_circles(d: Diagram, s: State) -> List[List[int]]:
    """
    Circles of a state as port sequences.

    Each walk starts at its lowest port and alternates diagram edge, smoothing
    arc; consecutive pairs (w[2t], w[2t+1]) are the edges in travel order.
    """
    ports = 4 * d.n
    seen = [False] * ports
    circles = []
    for start in range(ports):
        if seen[start]:
            continue
        walk = []
        p = start
        while not seen[p]:
            q = d.edge_pairing[p]
            seen[p] = seen[q] = True
            walk.extend((p, q))
            p = smoothing_partner(q, s.choice(q // 4))
        circles.append(walk)
    return circles


def trace_circles(d: Diagram, s: State) -> int:
    """Circle count of a state by direct port walk (independent of `resolve`)."""
    return len(walk_circles(d, s)) + d.free_loops


def _check_guard(d: Diagram, limit: Optional[int], what: str) -> None:
    if limit is not None and d.n > limit:
        raise GuardExceeded(what, d.n, limit)


def _count_cycles(perm: np.ndarray) -> np.ndarray:
    """Cycle count of each row permutation, by pointer doubling on minimum labels."""
    batch, size = perm.shape
    labels = np.broadcast_to(np.arange(size, dtype=np.int32), (batch, size)).copy()
    jump = perm
    reach = 1
    while reach < size:
        labels = np.minimum(labels, np.take_along_axis(labels, jump, axis=1))
        jump = np.take_along_axis(jump, jump, axis=1)
        reach *= 2
    return (labels == np.arange(size, dtype=np.int32)).sum(axis=1)


def _histogram_range(job: Tuple[int, Tuple[int, ...], int, int, int]) -> np.ndarray:
    """
    Count states in [lo, hi) by (beta, circle count).

    Every circle splits into two orbits of (smoothing o edge), one per
    direction of travel, so circles = cycles / 2.
    """
    n, pairing, lo, hi, chunk = job
    crossing, a_image, b_image = _port_tables_from_pairing(pairing)
    width = 2 * n + 1
    hist = np.zeros((n + 1) * width, dtype=np.int64)
    shifts = np.arange(n, dtype=np.int64)
    for start in range(lo, hi, chunk):
        masks = np.arange(start, min(start + chunk, hi), dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(bool)
        perm = np.where(bits[:, crossing], b_image, a_image)
        circles = _count_cycles(perm) // 2
        beta = bits.sum(axis=1)
        hist += np.bincount(beta * width + circles, minlength=hist.size)
    return hist.reshape(n + 1, width)


def _port_tables_from_pairing(pairing: Tuple[int, ...]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    arr = np.asarray(pairing, dtype=np.int32)
    crossing = arr // 4
    local = arr % 4
    return crossing, (4 * crossing + (local ^ 1)).astype(np.int32), (4 * crossing + 3 - local).astype(np.int32)


def state_histogram(d: Diagram, threads: int = 1, chunk: int = DEFAULT_CHUNK) -> np.ndarray:
    """
    hist[beta, k] = number of states with beta B-smoothings and k traced circles.

    The 2^n states are cut into contiguous ranges; integer histograms add up
    exactly, so the result does not depend on the schedule.
    """
    total = 1 << d.n
    jobs_count = 1 if threads <= 1 or total < _PARALLEL_MIN_STATES else threads * 4
    step = -(-total // jobs_count)
    jobs = [(d.n, d.edge_pairing, lo, min(lo + step, total), chunk) for lo in range(0, total, step)]

    logger.info("enumerating %d states in %d range(s)", total, len(jobs))
    if len(jobs) == 1:
        parts = [_histogram_range(jobs[0])]
    else:
        with mp.Pool(threads) as pool:
            parts = pool.map(_histogram_range, jobs)
    return sum(parts[1:], parts[0])


def bracket(d: Diagram,
            guard: Optional[int] = DEFAULT_BRACKET_GUARD,
            threads: int = 1,
            chunk: int = DEFAULT_CHUNK) -> LaurentPoly:
    """
    Kauffman bracket: sum over states of A^(alpha - beta) (-A^2 - A^-2)^(|s| - 1).

    `guard=None` disables the crossing guard.
    """
    _check_guard(d, guard, "bracket")
    if d.n == 0:
        return loop_power(d.free_loops - 1)

    hist = state_histogram(d, threads=threads, chunk=chunk)
    result = LaurentPoly()
    for beta, k in zip(*np.nonzero(hist)):
        count = int(hist[beta, k])
        term = loop_power(int(k) + d.free_loops - 1).shift(d.n - 2 * int(beta))
        result = result + count * term
    return result


def bracket_oracle(d: Diagram, limit: int = ORACLE_LIMIT) -> LaurentPoly:
    """
    Bracket by recursive skein resolution, for cross-checking `bracket`.

    <D> = A <D_A> + A^-1 <D_B> at the first unresolved crossing; fully resolved
    diagrams contribute (-A^2 - A^-2)^(circles - 1).
    """
    _check_guard(d, limit, "bracket oracle")
    if d.n == 0:
        return loop_power(d.free_loops - 1)

    def expand(crossing: int, mask: int) -> LaurentPoly:
        if crossing == d.n:
            return loop_power(trace_circles(d, State(mask, d.n)) - 1)
        smoothed_a = expand(crossing + 1, mask)
        smoothed_b = expand(crossing + 1, mask | (1 << crossing))
        return smoothed_a.shift(1) + smoothed_b.shift(-1)

    return expand(0, 0)


def _orientable(d: Diagram, a_walks: List[List[int]], b_walks: List[List[int]]) -> bool:
    """
    Orient one cell and propagate across shared edges; a conflict means the
    atom is non-orientable. Each diagram edge bounds one A-cell and one B-cell,
    which must traverse it in opposite directions.
    """
    def directions(walks: List[List[int]]) -> Dict[int, Tuple[int, int]]:
        out: Dict[int, Tuple[int, int]] = {}
        for cell, walk in enumerate(walks):
            for t in range(0, len(walk), 2):
                p, q = walk[t], walk[t + 1]
                out[min(p, q)] = (cell, 1 if p < q else -1)
        return out

    a_dir = directions(a_walks)
    b_dir = directions(b_walks)

    # Nodes: ("A", cell) and ("B", cell); edge weight is the required product of orientations.
    adjacency: Dict[Tuple[str, int], List[Tuple[Tuple[str, int], int]]] = {}
    for edge, (a_cell, a_sign) in a_dir.items():
        b_cell, b_sign = b_dir[edge]
        relation = -a_sign * b_sign
        adjacency.setdefault(("A", a_cell), []).append((("B", b_cell), relation))
        adjacency.setdefault(("B", b_cell), []).append((("A", a_cell), relation))

    orientation: Dict[Tuple[str, int], int] = {}
    for root in adjacency:
        if root in orientation:
            continue
        orientation[root] = 1
        queue = deque([root])
        while queue:
            node = queue.popleft()
            for other, relation in adjacency[node]:
                wanted = orientation[node] * relation
                if other not in orientation:
                    orientation[other] = wanted
                    queue.append(other)
                elif orientation[other] != wanted:
                    return False
    return True


def atom(d: Diagram) -> AtomData:
    """Circle counts of the extreme states, Euler characteristic, genus and orientability."""
    if d.n == 0:
        loops = d.free_loops
        return AtomData(a_circles=loops, b_circles=loops, chi=2 * loops, genus=0,
                        orientable=True, components=loops)

    a_walks = walk_circles(d, State.all_a(d.n))
    b_walks = walk_circles(d, State.all_b(d.n))
    a = len(a_walks) + d.free_loops
    b = len(b_walks) + d.free_loops
    chi = a + b - d.n
    components = len(graph_components(d)) + d.free_loops
    orientable = _orientable(d, a_walks, b_walks)
    if not orientable:
        logger.warning("atom is non-orientable (chi=%d)", chi)
    genus = (2 * components - chi) // 2 if orientable else None
    return AtomData(a_circles=a, b_circles=b, chi=chi, genus=genus,
                    orientable=orientable, components=components)


def is_good(d: Diagram) -> GoodReport:
    """At every crossing the two smoothing arcs must lie on distinct circles, in both extreme states."""
    if d.n == 0:
        return GoodReport(good=True, a_violations=(), b_violations=())
    a_members = resolve(d, State.all_a(d.n)).membership
    b_members = resolve(d, State.all_b(d.n)).membership

    a_bad = []
    b_bad = []
    for c, cid in enumerate(d.crossing_ids):
        # A arcs are (0,1) and (2,3); B arcs are (1,2) and (3,0).
        if a_members[4 * c] == a_members[4 * c + 2]:
            a_bad.append(cid)
        if b_members[4 * c + 1] == b_members[4 * c + 3]:
            b_bad.append(cid)
    return GoodReport(good=not a_bad and not b_bad,
                      a_violations=tuple(a_bad), b_violations=tuple(b_bad))


def span_report(d: Diagram,
                guard: Optional[int] = DEFAULT_BRACKET_GUARD,
                threads: int = 1,
                chunk: int = DEFAULT_CHUNK,
                poly: Optional[LaurentPoly] = None) -> SpanReport:
    """
    Compare span<d> with 4n + 2(chi - 2).

    The all-A state alone reaches degree n + 2(|s_A| - 1) and the all-B state
    alone reaches -n - 2(|s_B| - 1); the bound is attained iff neither
    extreme coefficient cancels.
    """
    poly = poly if poly is not None else bracket(d, guard=guard, threads=threads, chunk=chunk)
    data = atom(d)
    bound = 4 * d.n + 2 * (data.chi - 2)
    max_pred = d.n + 2 * (data.a_circles - 1)
    min_pred = -d.n - 2 * (data.b_circles - 1)
    leading = poly.coefficient(max_pred)
    lowest = poly.coefficient(min_pred)
    span = poly.span
    return SpanReport(
        bracket=poly,
        span=span,
        bound=bound,
        attained=span is not None and span == bound,
        max_deg_predicted=max_pred,
        min_deg_predicted=min_pred,
        leading_coeff=leading,
        lowest_coeff=lowest,
    )
