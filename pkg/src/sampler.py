from __future__ import annotations

import logging
import random
from typing import List, Optional

from .gauss import GaussCode, GaussEntry, Passage


logger = logging.getLogger(__name__)

DEFAULT_SEED = 42

# Rejection attempts for alternating codes before giving up on alternation.
_ALTERNATING_ATTEMPTS = 200


def _cut_points(rng: random.Random, length: int, components: int) -> List[int]:
    """Split `length` visits into `components` non-empty runs; returns the run boundaries."""
    inner = sorted(rng.sample(range(1, length), components - 1)) if components > 1 else []
    return [0] + inner + [length]


def random_gauss_code(rng: random.Random,
                      n: int,
                      components: int = 1,
                      alternating: bool = False) -> GaussCode:
    """
    A random valid signed Gauss code with `n` crossings.

    Visits are shuffled and cut into `components` non-empty components (a
    0-crossing request gives crossingless circles). Every such code is a
    virtual diagram; most are not classical.
    """
    if n < 0 or components < 1:
        raise ValueError("need n >= 0 and at least one component")
    if n == 0:
        return GaussCode(tuple(() for _ in range(components)))
    if components > 2 * n:
        raise ValueError(f"{components} components cannot share {2 * n} visits")

    signs = {cid: rng.choice((1, -1)) for cid in range(1, n + 1)}
    attempts = _ALTERNATING_ATTEMPTS if alternating else 1
    for _ in range(attempts):
        slots = [cid for cid in range(1, n + 1) for _ in range(2)]
        rng.shuffle(slots)
        cuts = _cut_points(rng, len(slots), components)

        passages = _alternating_passages(slots, cuts) if alternating else _random_passages(rng, slots)
        if passages is None:
            continue

        words = []
        for a, b in zip(cuts, cuts[1:]):
            words.append(tuple(GaussEntry(slots[k], passages[k], signs[slots[k]]) for k in range(a, b)))
        return GaussCode(tuple(words)).validate()

    logger.debug("no alternating arrangement in %d attempts; falling back", attempts)
    return random_gauss_code(rng, n, components, alternating=False)


def _random_passages(rng: random.Random, slots: List[int]) -> List[Passage]:
    first_over = {cid: rng.random() < 0.5 for cid in set(slots)}
    seen = set()
    out = []
    for cid in slots:
        over = first_over[cid] if cid not in seen else not first_over[cid]
        seen.add(cid)
        out.append(Passage.OVER if over else Passage.UNDER)
    return out


def _alternating_passages(slots: List[int], cuts: List[int]) -> Optional[List[Passage]]:
    """O/U by parity inside each component; None if some crossing gets two equal passages."""
    out: List[Passage] = []
    for a, b in zip(cuts, cuts[1:]):
        if (b - a) % 2:
            return None
        out.extend(Passage.OVER if (k - a) % 2 == 0 else Passage.UNDER for k in range(a, b))
    by_crossing = {}
    for cid, passage in zip(slots, out):
        if by_crossing.get(cid) == passage:
            return None
        by_crossing[cid] = passage
    return out


def random_corpus(seed: int = DEFAULT_SEED,
                  count: int = 100,
                  max_crossings: int = 6) -> List[GaussCode]:
    """
    Reproducible batch of random codes with 1..max_crossings crossings.

    Roughly one code in five is a two-component link and one in three is
    drawn alternating.
    """
    rng = random.Random(seed)
    codes = []
    for _ in range(count):
        n = rng.randint(1, max_crossings)
        components = 2 if n >= 2 and rng.random() < 0.2 else 1
        alternating = rng.random() < 0.3
        codes.append(random_gauss_code(rng, n, components, alternating))
    return codes
