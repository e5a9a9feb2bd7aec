from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import pandas as pd

from .config import DEFAULT_KHOVANOV_GUARD
from .diagram import Diagram
from .errors import GuardExceeded, InvariantViolation
from .gf2 import XorBasis, gf2_rank
from .laurent import LaurentPoly
from .statesum import State, atom, is_good, resolve


logger = logging.getLogger(__name__)

Bidegree = Tuple[int, int]


def _graded_sum(counts: Dict[Bidegree, int]) -> LaurentPoly:
    terms: Dict[int, int] = {}
    for (i, j), count in counts.items():
        terms[j] = terms.get(j, 0) + (-count if i % 2 else count)
    return LaurentPoly(terms)


@dataclass(frozen=True)
class _StateData:
    """Circles of one vertex of the cube; free loops take the last indices."""
    circles: int
    membership: Tuple[int, ...]
    representative: Tuple[int, ...]


@dataclass
class ChainComplex:
    """
    GF(2) Khovanov complex of a diagram.

    A generator is (state mask, label mask) where bit a of the label is set
    when circle a carries v+. `differential[(i, j)][k]` is the image of the
    k-th generator of block (i, j) as a bitset over block (i + 1, j).
    """
    n: int
    n_plus: int
    n_minus: int
    states: Dict[int, _StateData]
    blocks: Dict[Bidegree, List[Tuple[int, int]]]
    index: Dict[Tuple[int, int], Tuple[Bidegree, int]]
    differential: Dict[Bidegree, List[int]] = field(default_factory=dict)
    zero_edges: int = 0

    def bidegree(self, state: int, label: int) -> Bidegree:
        beta = bin(state).count("1")
        k = self.states[state].circles
        plus = bin(label).count("1")
        i = beta - self.n_minus
        j = beta + (2 * plus - k) + self.n_plus - 2 * self.n_minus
        return i, j

    def dimensions(self) -> Dict[Bidegree, int]:
        return {key: len(gens) for key, gens in self.blocks.items()}

    def chain_euler(self) -> LaurentPoly:
        """Alternating sum of chain dimensions as a polynomial in q."""
        return _graded_sum(self.dimensions())


@dataclass(frozen=True)
class HomologyTable:
    """GF(2) Khovanov homology ranks by bidegree (i, j); zero ranks omitted."""
    rank: Dict[Bidegree, int]

    @property
    def total_rank(self) -> int:
        return sum(self.rank.values())

    def euler(self) -> LaurentPoly:
        """Graded Euler characteristic sum (-1)^i q^j rank(i, j), as a polynomial in q."""
        return _graded_sum(self.rank)

    def to_frame(self) -> pd.DataFrame:
        rows = [{"i": i, "j": j, "rank": r} for (i, j), r in sorted(self.rank.items())]
        return pd.DataFrame(rows, columns=["i", "j", "rank"])


@dataclass(frozen=True)
class ThicknessReport:
    """Occupied diagonals delta = j - 2i and the thickness they span."""
    diagonals: Tuple[int, ...]
    thickness: int
    parity_anomaly: bool = False


@dataclass(frozen=True)
class LemmaReport:
    """Checks on the two extreme generators used to bound thickness from below."""
    a_extreme_is_cycle: bool
    b_extreme_is_nonboundary: bool
    implied_thickness_lower_bound: int
    a_bidegree: Bidegree
    b_bidegree: Bidegree
    good: bool
    genus: Optional[int]
    orientable: bool

    @property
    def holds(self) -> bool:
        return self.a_extreme_is_cycle and self.b_extreme_is_nonboundary


@dataclass(frozen=True)
class EulerCheck:
    matches: bool
    homology_side: LaurentPoly
    bracket_side: LaurentPoly


def _state_data(d: Diagram, mask: int) -> _StateData:
    circles = resolve(d, State(mask, d.n))
    traced = circles.circle_count - d.free_loops
    representative = [0] * traced
    for p in reversed(range(len(circles.membership))):
        representative[circles.membership[p]] = p
    return _StateData(circles=circles.circle_count,
                      membership=circles.membership,
                      representative=tuple(representative))


def cube(d: Diagram, guard: Optional[int] = DEFAULT_KHOVANOV_GUARD) -> ChainComplex:
    """
    Build the cube of resolutions over GF(2) and check d o d = 0.

    i = beta - n_-, j = beta + (#v+ - #v-) + n_+ - 2 n_-. Cube edges merge two
    circles, split one, or (virtual diagrams only) turn one circle into one;
    the last kind carries the zero map.
    """
    if guard is not None and d.n > guard:
        raise GuardExceeded("khovanov", d.n, guard)
    if not atom(d).orientable:
        logger.warning("atom is non-orientable; computing GF(2) homology anyway")

    states = {mask: _state_data(d, mask) for mask in range(1 << d.n)}
    complex_ = ChainComplex(n=d.n, n_plus=d.n_plus, n_minus=d.n_minus,
                            states=states, blocks={}, index={})

    for mask, data in states.items():
        for label in range(1 << data.circles):
            key = complex_.bidegree(mask, label)
            block = complex_.blocks.setdefault(key, [])
            complex_.index[(mask, label)] = (key, len(block))
            block.append((mask, label))

    for key, gens in complex_.blocks.items():
        complex_.differential[key] = [0] * len(gens)

    for mask, data in states.items():
        for c in range(d.n):
            if mask >> c & 1:
                continue
            complex_.zero_edges += _add_edge(d, complex_, mask, c)

    _check_square_zero(complex_)
    logger.info("khovanov complex: %d generators, %d zero-map edges",
                len(complex_.index), complex_.zero_edges)
    return complex_


def _add_edge(d: Diagram, complex_: ChainComplex, mask: int, c: int) -> int:
    """Add the cube-edge map from `mask` across crossing c; returns 1 for a zero map."""
    target = mask | (1 << c)
    src = complex_.states[mask]
    dst = complex_.states[target]
    traced_src = src.circles - d.free_loops
    traced_dst = dst.circles - d.free_loops

    touched_src = sorted({src.membership[4 * c + t] for t in range(4)})
    touched_dst = sorted({dst.membership[4 * c + t] for t in range(4)})
    if len(touched_src) == 1 and len(touched_dst) == 1:
        return 1

    # Untouched circles keep their ports; free loops keep their offset.
    carry: List[Tuple[int, int]] = []
    for a in range(traced_src):
        if a not in touched_src:
            carry.append((a, dst.membership[src.representative[a]]))
    for f in range(d.free_loops):
        carry.append((traced_src + f, traced_dst + f))

    diff = complex_.differential
    for label in range(1 << src.circles):
        base = 0
        for a, b in carry:
            if label >> a & 1:
                base |= 1 << b
        if len(touched_src) == 2:
            x1, x2 = touched_src
            (y,) = touched_dst
            plus = (label >> x1 & 1) + (label >> x2 & 1)
            if plus == 0:
                continue
            images = [base | (1 << y)] if plus == 2 else [base]
        else:
            (x,) = touched_src
            y1, y2 = touched_dst
            if label >> x & 1:
                images = [base | (1 << y1), base | (1 << y2)]
            else:
                images = [base]

        key, local = complex_.index[(mask, label)]
        vec = diff[key][local]
        for image in images:
            target_key, target_local = complex_.index[(target, image)]
            if target_key != (key[0] + 1, key[1]):
                raise InvariantViolation(
                    f"cube edge does not preserve the quantum grading: {key} -> {target_key}"
                )
            vec ^= 1 << target_local
        diff[key][local] = vec
    return 0


def _apply(columns: List[int], vec: int) -> int:
    out = 0
    while vec:
        low = vec & -vec
        out ^= columns[low.bit_length() - 1]
        vec ^= low
    return out


def _check_square_zero(complex_: ChainComplex) -> None:
    for (i, j), columns in complex_.differential.items():
        following = complex_.differential.get((i + 1, j))
        if following is None:
            continue
        for local, vec in enumerate(columns):
            if _apply(following, vec):
                raise InvariantViolation(f"d o d != 0 on generator {local} of block ({i}, {j})")


def homology(c: ChainComplex) -> HomologyTable:
    """rank(i, j) = dim C(i, j) - rank d(i, j) - rank d(i - 1, j), by GF(2) elimination."""
    ranks = {key: gf2_rank(columns) for key, columns in c.differential.items()}
    table: Dict[Bidegree, int] = {}
    for (i, j), gens in c.blocks.items():
        r = len(gens) - ranks.get((i, j), 0) - ranks.get((i - 1, j), 0)
        if r:
            table[(i, j)] = r
    return HomologyTable(rank=table)


def thickness(t: HomologyTable) -> ThicknessReport:
    """Number of diagonal slots (step 2) between the extreme occupied diagonals."""
    diagonals = sorted({j - 2 * i for (i, j) in t.rank})
    if not diagonals:
        raise InvariantViolation("homology vanished; a nonempty diagram always has nonzero homology")
    width = diagonals[-1] - diagonals[0]
    anomaly = any((b - a) % 2 for a, b in zip(diagonals, diagonals[1:]))
    if anomaly:
        logger.warning("diagonals %s differ by odd amounts; rounding thickness up", diagonals)
    return ThicknessReport(
        diagonals=tuple(diagonals),
        thickness=math.ceil(Fraction(width, 2)) + 1,
        parity_anomaly=anomaly,
    )


def euler_check(d: Diagram, table: HomologyTable, poly: LaurentPoly) -> EulerCheck:
    """
    Compare the graded Euler characteristic at q = -A^-2 with
    (-A^2 - A^-2) <d> (-A)^(-3w).
    """
    substituted = LaurentPoly({-2 * j: (-1) ** (j % 2) * c for j, c in table.euler().terms()})
    w = d.writhe
    framing = LaurentPoly.monomial(-3 * w, (-1) ** (w % 2))
    expected = LaurentPoly.loop_value() * poly * framing
    return EulerCheck(matches=substituted == expected,
                      homology_side=substituted,
                      bracket_side=expected)


def lemma_certificate(d: Diagram,
                      complex_: Optional[ChainComplex] = None,
                      guard: Optional[int] = DEFAULT_KHOVANOV_GUARD) -> LemmaReport:
    """
    Check that the all-A state with v- on every circle is a cycle and the
    all-B state with v+ on every circle is not a boundary.

    Both generators then survive in homology, so the thickness is at least
    |delta_B - delta_A| / 2 + 1.
    """
    complex_ = complex_ if complex_ is not None else cube(d, guard=guard)
    good = is_good(d).good
    data = atom(d)

    a_mask = 0
    b_mask = (1 << d.n) - 1
    a_gen = (a_mask, 0)
    b_gen = (b_mask, (1 << complex_.states[b_mask].circles) - 1)

    a_key, a_local = complex_.index[a_gen]
    a_is_cycle = complex_.differential[a_key][a_local] == 0

    b_key, b_local = complex_.index[b_gen]
    incoming = complex_.differential.get((b_key[0] - 1, b_key[1]), [])
    basis = XorBasis()
    for vec in incoming:
        basis.add(vec)
    b_nonboundary = not basis.contains(1 << b_local)

    delta_a = a_key[1] - 2 * a_key[0]
    delta_b = b_key[1] - 2 * b_key[0]
    implied = math.ceil(Fraction(abs(delta_b - delta_a), 2)) + 1

    return LemmaReport(
        a_extreme_is_cycle=a_is_cycle,
        b_extreme_is_nonboundary=b_nonboundary,
        implied_thickness_lower_bound=implied,
        a_bidegree=a_key,
        b_bidegree=b_key,
        good=good,
        genus=data.genus,
        orientable=data.orientable,
    )
