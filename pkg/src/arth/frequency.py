"""Word usage-frequency store backed by a `word<TAB>count` TSV list.

Out-of-vocabulary words fall back to a floor of 1, which treats unseen
words as maximally rare while keeping downstream log transforms finite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path


class FrequencyFormatError(ValueError):
    """The file contained no valid `word<TAB>count` lines."""


@dataclass
class FrequencyStore:
    counts: dict[str, int]
    floor: int = 1
    skipped_lines: list[int] = field(default_factory=list)


def load_frequency_list(path: str | Path) -> FrequencyStore:
    """Load a frequency TSV. Keys are lowercased and duplicates summed;
    malformed lines are skipped and reported via `skipped_lines`."""
    counts: dict[str, int] = {}
    skipped = []
    for lineno, line in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            skipped.append(lineno)
            continue
        word, raw_count = parts
        try:
            count = int(raw_count)
        except ValueError:
            skipped.append(lineno)
            continue
        if not word or count < 1:
            skipped.append(lineno)
            continue
        key = word.lower()
        counts[key] = counts.get(key, 0) + count
    if not counts:
        raise FrequencyFormatError(f"no valid frequency entries in {path}")
    return FrequencyStore(counts=counts, skipped_lines=skipped)


def bundled_frequency_list() -> FrequencyStore:
    """The frequency list shipped with the package (film-subtitle counts)."""
    with resources.as_file(resources.files("arth.data") / "frequencies.tsv") as path:
        return load_frequency_list(path)


def save_frequency_list(store: FrequencyStore, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for word in sorted(store.counts):
            f.write(f"{word}\t{store.counts[word]}\n")


def lookup(store: FrequencyStore, word: str) -> int:
    """Case-insensitive count, or the store floor when absent."""
    return store.counts.get(word.lower(), store.floor)


def lookup_lemma(store: FrequencyStore, lemma: str, surface: str | None = None) -> int:
    """Lemma-level lookup with a surface-form fallback before the floor."""
    count = store.counts.get(lemma.lower())
    if count is not None:
        return count
    if surface is not None:
        count = store.counts.get(surface.lower())
        if count is not None:
            return count
    return store.floor
