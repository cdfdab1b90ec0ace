"""Vocabulary quiz generation and evaluation.

Question prompts follow a fixed template; the correct option is the gloss
of the Lesk-chosen sense, and distractors come from (in priority order)
antonym glosses, dissimilar senses of the same word, and dissimilar
vocabulary words. Dissimilarity means Wu-Palmer similarity below 0.5, with
an undefined similarity counted as dissimilar.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .clustering import ClusterModel, WordProfile, kmeans
from .preprocess import PreprocessedDoc
from .wordnet import (
    SenseChoice,
    Synset,
    WordNetKB,
    CrossPOSError,
    SimilarityUndefinedError,
    simplified_lesk,
    synsets,
    wup_similarity,
)

DISSIMILARITY_THRESHOLD = 0.5
QUESTIONS_PER_CLUSTER = 4
RETEST_QUESTIONS_PER_GROUP = 3
EASY_FRACTION = 0.75
HARD_FRACTION = 0.25
MAX_GLOSS_WORDS = 12


class InsufficientDistractorsError(ValueError):
    """Fewer than three acceptable wrong options exist for a word."""


class QuizValidationError(ValueError):
    pass


@dataclass
class QuizQuestion:
    id: str
    cluster_id: int
    word: str
    sentence: str
    prompt: str
    options: list[str]
    correct_index: int
    group_id: str | None = None


@dataclass
class Quiz:
    questions: list[QuizQuestion]
    rng_seed: int
    kind: str  # "initial" or "retest"
    retest_cluster_ids: list[int] = field(default_factory=list)
    defaulted_hard: list[int] = field(default_factory=list)


@dataclass
class ClusterVerdict:
    cluster_id: int
    asked: int
    correct: int
    verdict: str  # Easy | Hard | Retest
    group_id: str | None = None


def trim_gloss(definition: str, max_words: int = MAX_GLOSS_WORDS) -> str:
    words = definition.split()
    if len(words) <= max_words:
        return definition
    return " ".join(words[:max_words]) + "..."


def select_words(
    cluster_members: list[str],
    doc: PreprocessedDoc,
    n: int,
    rng: random.Random,
    kb: WordNetKB,
) -> list[tuple[str, str]]:
    """Uniformly sample up to n cluster lemmas that occur in the document
    and are known to the KB, each paired with the shortest sentence
    containing it (earliest on ties)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    eligible = []
    for lemma in cluster_members:
        occurrences = doc.content_words.get(lemma)
        if not occurrences or not synsets(kb, lemma):
            continue
        best = min(
            occurrences,
            key=lambda occ: (len(doc.sentences[occ[0]].tokens), occ[0]),
        )
        eligible.append((lemma, doc.sentences[best[0]].text.strip()))
    if len(eligible) <= n:
        return eligible
    return rng.sample(eligible, n)


def form_question(word: str, sentence: str) -> str:
    return f'What is the meaning of {word} in the sentence "{sentence}"?'


def correct_option(kb: WordNetKB, word: str, sentence_tokens: list[str],
                   stoplist: set[str]) -> tuple[str, SenseChoice]:
    """Definition of the Lesk-chosen sense for the word in context."""
    choice = simplified_lesk(kb, word, sentence_tokens, stoplist)
    return trim_gloss(choice.synset.definition()), choice


def _is_dissimilar(kb: WordNetKB, candidate: Synset, reference: Synset) -> bool:
    try:
        return wup_similarity(kb, candidate, reference) < DISSIMILARITY_THRESHOLD
    except (SimilarityUndefinedError, CrossPOSError):
        return True


def wrong_options(
    kb: WordNetKB,
    word: str,
    correct_sense: Synset,
    vocabulary: list[str],
    rng: random.Random,
) -> list[str]:
    """Three distinct wrong glosses, assembled in priority order:
    antonym senses, dissimilar other senses of the word, then dissimilar
    random vocabulary words."""
    correct_gloss = trim_gloss(correct_sense.definition())
    chosen: list[str] = []

    def try_add(definition: str) -> bool:
        gloss = trim_gloss(definition)
        if gloss and gloss != correct_gloss and gloss not in chosen:
            chosen.append(gloss)
        return len(chosen) >= 3

    # 1. glosses of antonym senses of the word
    for sense in synsets(kb, word):
        for _, antonym_id in sense.antonym_links:
            if try_add(kb.synsets[antonym_id].definition()):
                return chosen

    # 2. dissimilar same-POS senses of the word's other senses
    for sense in synsets(kb, word):
        if sense.id == correct_sense.id or sense.pos != correct_sense.pos:
            continue
        if _is_dissimilar(kb, sense, correct_sense):
            if try_add(sense.definition()):
                return chosen

    # 3. dissimilar vocabulary words, drawn in random order
    pool = [lemma for lemma in vocabulary if lemma != word]
    rng.shuffle(pool)
    for lemma in pool:
        senses = synsets(kb, lemma)
        if not senses:
            continue
        best_similarity_ok = all(
            _is_dissimilar(kb, sense, correct_sense)
            for sense in senses
            if sense.pos == correct_sense.pos
        )
        if best_similarity_ok:
            if try_add(senses[0].definition()):
                return chosen
    raise InsufficientDistractorsError(word)


def _build_question(
    kb: WordNetKB,
    stoplist: set[str],
    question_id: str,
    cluster_id: int,
    word: str,
    sentence: str,
    vocabulary: list[str],
    rng: random.Random,
    group_id: str | None = None,
) -> QuizQuestion:
    tokens = sentence.split()
    correct_gloss, choice = correct_option(kb, word, tokens, stoplist)
    wrong = wrong_options(kb, word, choice.synset, vocabulary, rng)
    options = [correct_gloss, *wrong]
    rng.shuffle(options)
    return QuizQuestion(
        id=question_id,
        cluster_id=cluster_id,
        word=word,
        sentence=sentence,
        prompt=form_question(word, sentence),
        options=options,
        correct_index=options.index(correct_gloss),
        group_id=group_id,
    )


def _cluster_members(model: ClusterModel, cluster_id: int) -> list[str]:
    return sorted(l for l, c in model.assignments.items() if c == cluster_id)


def generate_quiz(
    model: ClusterModel,
    doc: PreprocessedDoc,
    kb: WordNetKB,
    rng_seed: int,
    stoplist: set[str],
) -> Quiz:
    """Four questions per cluster, clusters visited hardest first; clusters
    with nothing askable are marked hard by default."""
    rng = random.Random(rng_seed)
    vocabulary = sorted(model.assignments)
    questions: list[QuizQuestion] = []
    defaulted = []
    counter = 0
    for cluster_id in model.difficulty_rank:
        members = _cluster_members(model, cluster_id)
        candidates = select_words(members, doc, len(members) or 1, rng, kb) if members else []
        rng.shuffle(candidates)
        built = 0
        for word, sentence in candidates:
            if built >= QUESTIONS_PER_CLUSTER:
                break
            try:
                question = _build_question(
                    kb, stoplist, f"q{counter}", cluster_id, word, sentence,
                    vocabulary, rng,
                )
            except InsufficientDistractorsError:
                continue
            questions.append(question)
            counter += 1
            built += 1
        if built == 0:
            defaulted.append(cluster_id)
    return Quiz(questions=questions, rng_seed=rng_seed, kind="initial",
                defaulted_hard=defaulted)


def evaluate_quiz(quiz: Quiz, answers: dict[str, int]) -> list[ClusterVerdict]:
    """Per-cluster verdicts for an initial quiz (75%/25% rule) or per-group
    verdicts for a retest quiz (2-of-3 rule). Unanswered counts as wrong."""
    by_id = {q.id: q for q in quiz.questions}
    for question_id in answers:
        if question_id not in by_id:
            raise QuizValidationError(f"unknown question id: {question_id}")

    if quiz.kind == "retest":
        return _evaluate_groups(quiz, answers)

    tallies: dict[int, list[int]] = {}
    for question in quiz.questions:
        tallies.setdefault(question.cluster_id, [0, 0])
        tallies[question.cluster_id][0] += 1
        if answers.get(question.id) == question.correct_index:
            tallies[question.cluster_id][1] += 1
    verdicts = []
    for cluster_id in sorted(tallies):
        asked, correct = tallies[cluster_id]
        fraction = correct / asked
        if fraction >= EASY_FRACTION:
            verdict = "Easy"
        elif fraction <= HARD_FRACTION:
            verdict = "Hard"
        else:
            verdict = "Retest"
        verdicts.append(ClusterVerdict(cluster_id, asked, correct, verdict))
    return verdicts


def _evaluate_groups(quiz: Quiz, answers: dict[str, int]) -> list[ClusterVerdict]:
    tallies: dict[str, list[int]] = {}
    cluster_of: dict[str, int] = {}
    for question in quiz.questions:
        tallies.setdefault(question.group_id, [0, 0])
        cluster_of[question.group_id] = question.cluster_id
        tallies[question.group_id][0] += 1
        if answers.get(question.id) == question.correct_index:
            tallies[question.group_id][1] += 1
    verdicts = []
    for group_id in sorted(tallies):
        asked, correct = tallies[group_id]
        # 2-of-3 rule, generalized to groups with fewer askable words
        verdict = "Easy" if correct / asked >= 2 / 3 else "Hard"
        verdicts.append(
            ClusterVerdict(cluster_of[group_id], asked, correct, verdict,
                           group_id=group_id)
        )
    return verdicts


class NotRefinableError(ValueError):
    """The cluster has fewer than two members; its verdict stays Hard."""


def refine_cluster(
    cluster_id: int,
    model: ClusterModel,
    profiles: list[WordProfile],
    doc: PreprocessedDoc,
    kb: WordNetKB,
    rng_seed: int,
    stoplist: set[str],
) -> tuple[ClusterModel, Quiz, dict[str, list[str]]]:
    """Split a Retest cluster into two groups with K-means (k=2) and build a
    six-question retest quiz, three per group. Returns the sub-model, the
    quiz, and the group membership map."""
    members = [p for p in profiles if p.cluster == cluster_id]
    if len(members) < 2:
        raise NotRefinableError(f"cluster {cluster_id} has {len(members)} member(s)")
    points = [p.features_z for p in members]
    distinct = len(set(points))
    sub = kmeans(points, min(2, distinct), rng_seed)
    groups: dict[str, list[str]] = {}
    for profile, label in zip(members, sub.labels):
        group_id = f"{cluster_id}.{int(label)}"
        groups.setdefault(group_id, []).append(profile.lemma)
        sub.assignments[profile.lemma] = int(label)

    rng = random.Random(rng_seed)
    vocabulary = sorted(model.assignments)
    questions = []
    counter = 0
    for group_id in sorted(groups):
        candidates = select_words(sorted(groups[group_id]), doc, len(groups[group_id]), rng, kb)
        rng.shuffle(candidates)
        built = 0
        for word, sentence in candidates:
            if built >= RETEST_QUESTIONS_PER_GROUP:
                break
            try:
                question = _build_question(
                    kb, stoplist, f"r{cluster_id}.{counter}", cluster_id, word,
                    sentence, vocabulary, rng, group_id=group_id,
                )
            except InsufficientDistractorsError:
                continue
            questions.append(question)
            counter += 1
            built += 1
    quiz = Quiz(questions=questions, rng_seed=rng_seed, kind="retest",
                retest_cluster_ids=[cluster_id])
    return sub, quiz, groups
