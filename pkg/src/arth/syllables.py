"""Syllable counting: a rule-based vowel-group counter and a trainable
multinomial Naive Bayes classifier, plus the exact-match evaluation harness
used to compare the two.

The bundled lexicon (data/syllables.tsv) is derived from the CMU
pronouncing dictionary: the syllable count of a word is the number of
stress-marked phonemes in its pronunciation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

VOWELS = set("aeiou")
MAX_SYLLABLES = 12


class InvalidWordError(ValueError):
    """Raised for empty or non-alphabetic input."""


class TrainingError(ValueError):
    pass


class EvaluationError(ValueError):
    pass


def _check_word(word: str) -> None:
    if not word or not word.isalpha() or word.lower() != word:
        raise InvalidWordError(f"expected a lowercase alphabetic word, got {word!r}")


def _is_vocalic(word: str, i: int) -> bool:
    ch = word[i]
    if ch in VOWELS:
        return True
    if ch == "y":
        # vocalic y: not word-initial, not adjacent to another vowel
        before = i > 0 and word[i - 1] in VOWELS
        after = i + 1 < len(word) and word[i + 1] in VOWELS
        return i > 0 and not before and not after
    return False


def vowel_groups(word: str) -> int:
    """Number of maximal vowel runs; diphthongs count once by construction."""
    groups = 0
    prev = False
    for i in range(len(word)):
        v = _is_vocalic(word, i)
        if v and not prev:
            groups += 1
        prev = v
    return groups


def _ends_consonant_le(word: str) -> bool:
    return (
        len(word) >= 3
        and word.endswith("le")
        and word[-3] not in VOWELS
        and word[-3] != "y"
    )


def count_syllables_rule(word: str) -> int:
    """Rule-based syllable count, always >= 1.

    Vowel groups, minus one for a word-final silent "e" (kept when the "e"
    belongs to a consonant+"le" ending or is the only vowel group).
    """
    _check_word(word)
    count = vowel_groups(word)
    if _ends_consonant_le(word):
        pass  # the final "le" keeps its own vowel group
    elif (
        word.endswith("e")
        and len(word) >= 2
        and word[-2] not in VOWELS
        and word[-2] != "y"
        and count > 1
    ):
        count -= 1
    return min(max(count, 1), MAX_SYLLABLES)


# ---------------------------------------------------------------------------
# lexicon

@dataclass
class SyllableLexicon:
    entries: dict[str, int]

    def __len__(self) -> int:
        return len(self.entries)


def load_syllable_lexicon(path: str | Path) -> SyllableLexicon:
    """Read a `word<TAB>count` TSV into a lexicon."""
    entries = {}
    for line in Path(path).read_text("utf-8").splitlines():
        if not line.strip():
            continue
        word, count = line.split("\t")
        entries[word] = min(max(int(count), 1), MAX_SYLLABLES)
    return SyllableLexicon(entries)


def bundled_lexicon() -> SyllableLexicon:
    """The CMU-derived lexicon shipped with the package."""
    with resources.as_file(resources.files("arth.data") / "syllables.tsv") as path:
        return load_syllable_lexicon(path)


# ---------------------------------------------------------------------------
# Naive Bayes classifier

FEATURE_SCHEMA = (
    "adjusted_vowel_groups",  # rule counter's count (silent-e adjusted)
    "ends_in_e",
    "ends_consonant_le",
    "length_bucket",          # 1-3, 4-6, 7-9, 10+
)


def _features(word: str) -> tuple:
    length = len(word)
    bucket = 0 if length <= 3 else 1 if length <= 6 else 2 if length <= 9 else 3
    return (
        count_syllables_rule(word),
        word.endswith("e"),
        _ends_consonant_le(word),
        bucket,
    )


@dataclass
class NBModel:
    class_log_priors: dict[int, float]
    # feature index -> class -> value -> log likelihood
    feature_log_likelihoods: list[dict[int, dict[object, float]]]
    feature_values: list[list]
    class_counts: dict[int, int]
    smoothing_alpha: float
    feature_schema: tuple = FEATURE_SCHEMA


def train_nb(lexicon: SyllableLexicon, alpha: float = 1.0) -> NBModel:
    """Fit a multinomial Naive Bayes model with Laplace smoothing `alpha`."""
    if alpha <= 0:
        raise TrainingError("smoothing alpha must be > 0")
    if not lexicon.entries:
        raise TrainingError("empty training lexicon")

    class_counts: dict[int, int] = {}
    value_counts: list[dict[int, dict[object, int]]] = [{} for _ in FEATURE_SCHEMA]
    observed: list[set] = [set() for _ in FEATURE_SCHEMA]
    for word, label in lexicon.entries.items():
        class_counts[label] = class_counts.get(label, 0) + 1
        for i, value in enumerate(_features(word)):
            per_class = value_counts[i].setdefault(label, {})
            per_class[value] = per_class.get(value, 0) + 1
            observed[i].add(value)

    total = len(lexicon.entries)
    log_priors = {c: math.log(n / total) for c, n in class_counts.items()}
    feature_values = [sorted(vals, key=repr) for vals in observed]
    log_likelihoods: list[dict[int, dict[object, float]]] = []
    for i in range(len(FEATURE_SCHEMA)):
        table: dict[int, dict[object, float]] = {}
        for label, n in class_counts.items():
            denominator = n + alpha * len(feature_values[i])
            table[label] = {
                value: math.log((value_counts[i].get(label, {}).get(value, 0) + alpha)
                                / denominator)
                for value in feature_values[i]
            }
        log_likelihoods.append(table)
    return NBModel(
        class_log_priors=log_priors,
        feature_log_likelihoods=log_likelihoods,
        feature_values=feature_values,
        class_counts=class_counts,
        smoothing_alpha=alpha,
    )


def nb_log_posteriors(model: NBModel, word: str) -> dict[int, float]:
    """Unnormalized log posterior per class."""
    _check_word(word)
    feats = _features(word)
    scores = {}
    for label, prior in model.class_log_priors.items():
        score = prior
        for i, value in enumerate(feats):
            table = model.feature_log_likelihoods[i][label]
            if value in table:
                score += table[value]
            else:
                # feature value never observed in training: smoothed floor
                n_values = len(model.feature_values[i])
                score += math.log(
                    model.smoothing_alpha
                    / (model.class_counts[label] + model.smoothing_alpha * n_values)
                )
        scores[label] = score
    return scores


def count_syllables_nb(model: NBModel, word: str) -> int:
    """Argmax class under the model; ties go to the smaller count."""
    scores = nb_log_posteriors(model, word)
    best = None
    best_score = -math.inf
    for label in sorted(scores):
        if scores[label] > best_score + 1e-12:
            best, best_score = label, scores[label]
    return best


def evaluate_accuracy(counter: Callable[[str], int], test: SyllableLexicon) -> float:
    """Fraction of exact-match predictions over the test lexicon."""
    if not test.entries:
        raise EvaluationError("empty test lexicon")
    hits = sum(1 for word, label in test.entries.items() if counter(word) == label)
    return hits / len(test.entries)
