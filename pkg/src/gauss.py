from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

from .errors import GaussCodeError


_TOKEN = re.compile(r"([OU])([0-9]+)([+-])")
_LOOP_TOKEN = "0"


class Passage(str, Enum):
    """Which strand of a crossing a Gauss-code visit travels on."""
    OVER = "O"
    UNDER = "U"

    def flipped(self) -> "Passage":
        return Passage.UNDER if self is Passage.OVER else Passage.OVER


@dataclass(frozen=True)
class GaussEntry:
    """One visit of a component to a classical crossing."""
    crossing_id: int
    passage: Passage
    sign: int

    def __post_init__(self) -> None:
        if self.crossing_id < 1:
            raise GaussCodeError(f"crossing ids must be >= 1, got {self.crossing_id}",
                                 crossing_id=self.crossing_id)
        if self.sign not in (1, -1):
            raise GaussCodeError(f"crossing sign must be +1 or -1, got {self.sign}",
                                 crossing_id=self.crossing_id)

    def __str__(self) -> str:
        return f"{self.passage.value}{self.crossing_id}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class GaussCode:
    """
    Signed Gauss code of a virtual link diagram.

    Each component is the cyclic sequence of its crossing visits; an empty
    component is a crossingless circle. Virtual crossings are not recorded.
    """
    components: Tuple[Tuple[GaussEntry, ...], ...]

    def crossing_ids(self) -> List[int]:
        return sorted({e.crossing_id for comp in self.components for e in comp})

    def validate(self) -> "GaussCode":
        """Check the pairing invariants; returns self so calls can be chained."""
        if not self.components:
            raise GaussCodeError("a Gauss code needs at least one component")

        seen: Dict[int, List[GaussEntry]] = defaultdict(list)
        for comp in self.components:
            for entry in comp:
                seen[entry.crossing_id].append(entry)

        for cid in sorted(seen):
            visits = seen[cid]
            if len(visits) == 1:
                raise GaussCodeError(f"crossing {cid} appears only once", crossing_id=cid)
            if len(visits) > 2:
                raise GaussCodeError(f"crossing {cid} appears {len(visits)} times", crossing_id=cid)
            first, second = visits
            if first.passage == second.passage:
                raise GaussCodeError(
                    f"crossing {cid} has two {first.passage.name.lower()} passages",
                    crossing_id=cid,
                )
            if first.sign != second.sign:
                raise GaussCodeError(f"sign mismatch at crossing {cid}", crossing_id=cid)
        return self


def parse_gauss(text: str) -> GaussCode:
    """
    Parse `.gauss` text.

    `#` starts a comment, components are separated by `;` or blank lines and
    entries are tokens like `O12+`. A component consisting of the single token
    `0` is a crossingless circle.
    """
    components: List[Tuple[GaussEntry, ...]] = []
    entries: List[GaussEntry] = []
    loop_at: List[int] = []

    def flush() -> None:
        if loop_at and entries:
            raise GaussCodeError("the loop token 0 must be alone in its component",
                                 position=loop_at[0])
        if loop_at:
            components.append(())
        elif entries:
            components.append(tuple(entries))
        entries.clear()
        loop_at.clear()

    offset = 0
    for line in text.splitlines(keepends=True):
        content = line.split("#", 1)[0]
        if not content.strip():
            flush()
        else:
            for match in re.finditer(r";|[^\s;]+", content):
                token = match.group(0)
                position = offset + match.start()
                if token == ";":
                    flush()
                elif token == _LOOP_TOKEN:
                    if loop_at:
                        raise GaussCodeError("repeated loop token", position=position)
                    loop_at.append(position)
                else:
                    parsed = _TOKEN.fullmatch(token)
                    if parsed is None:
                        raise GaussCodeError(f"unexpected token {token!r}", position=position)
                    passage, cid, sign = parsed.groups()
                    entries.append(GaussEntry(
                        crossing_id=int(cid),
                        passage=Passage(passage),
                        sign=1 if sign == "+" else -1,
                    ))
        offset += len(line)
    flush()

    return GaussCode(components=tuple(components)).validate()


def serialize_gauss(code: GaussCode) -> str:
    """Inverse of parse_gauss: one line, components joined by ` ; `."""
    parts = []
    for comp in code.components:
        parts.append(" ".join(str(e) for e in comp) if comp else _LOOP_TOKEN)
    return " ; ".join(parts)
