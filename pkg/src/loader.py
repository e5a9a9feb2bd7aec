from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from .diagram import Diagram, build_diagram
from .errors import AtomcertError, GaussCodeError
from .gauss import parse_gauss


logger = logging.getLogger(__name__)

GAUSS_SUFFIX = ".gauss"


def load_gauss(path: Path) -> Diagram:
    """Load a `.gauss` file and fail fast on missing or empty inputs."""
    if not path.exists():
        raise FileNotFoundError(f"Missing file: {path}")

    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise GaussCodeError(f"{path.name}: not UTF-8 text", position=exc.start) from exc
    if not any(line.split("#", 1)[0].strip() for line in text.splitlines()):
        raise GaussCodeError(f"Empty file: {path}")

    try:
        return build_diagram(parse_gauss(text))
    except GaussCodeError as exc:
        wrapped = GaussCodeError(f"{path.name}: {exc}", crossing_id=exc.crossing_id)
        wrapped.position = exc.position
        raise wrapped from exc


@dataclass(frozen=True)
class CorpusEntry:
    """One corpus file: either a diagram or the error that stopped it."""
    path: Path
    diagram: Optional[Diagram]
    error: Optional[str] = None


def corpus_files(inputs: List[Path]) -> List[Path]:
    """Expand directories into their `.gauss` files, sorted by name."""
    files: List[Path] = []
    for item in inputs:
        if item.is_dir():
            files.extend(sorted(item.glob(f"*{GAUSS_SUFFIX}")))
        elif item.exists():
            files.append(item)
        else:
            raise FileNotFoundError(f"Missing file: {item}")
    return files


def load_corpus(inputs: List[Path]) -> List[CorpusEntry]:
    """
    Load every corpus file.

    A file that fails to load becomes an entry with `error` set; the rest of
    the corpus still loads.
    """
    entries = []
    for path in corpus_files(inputs):
        try:
            entries.append(CorpusEntry(path=path, diagram=load_gauss(path)))
        except (AtomcertError, OSError) as exc:
            logger.warning("skipping %s: %s", path, exc)
            entries.append(CorpusEntry(path=path, diagram=None, error=str(exc)))
    return entries
