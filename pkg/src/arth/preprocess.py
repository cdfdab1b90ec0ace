"""Text preprocessing: sentence splitting, tokenization, stopword removal,
stemming and lemmatization, composed into a document pipeline.

The tokenizer is deterministic and span-exact: every token records the byte
offsets of its surface form, and every sentence records the slice of the
original text it covers, so the original document can always be rebuilt.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from .porter import stem as porter_stem
from .wordnet import PartOfSpeech, WordNetKB

# terminal punctuation that may end a sentence
_TERMINALS = ".!?"

# tokens that end with "." but never close a sentence
ABBREVIATIONS = {"dr", "mr", "mrs", "ms", "etc", "e.g", "i.e", "st", "vs"}

# word-ish runs (letters/digits, internal apostrophes) or single other glyphs
_TOKEN_RE = re.compile(r"[A-Za-z0-9]+(?:'[A-Za-z0-9]+)*|[^\sA-Za-z0-9]")

_ALPHA_RE = re.compile(r"^[A-Za-z]+(?:'[A-Za-z]+)*$")


@dataclass
class Token:
    surface: str
    normalized: str
    sentence_index: int
    char_span: tuple[int, int]
    is_stopword: bool = False
    is_word: bool = True
    lemma: str | None = None


@dataclass
class Sentence:
    index: int
    text: str
    tokens: list[Token]
    span: tuple[int, int] = (0, 0)


@dataclass
class PreprocessedDoc:
    original: str
    sentences: list[Sentence]
    # lemma -> [(sentence_index, token_index), ...]
    content_words: dict[str, list[tuple[int, int]]] = field(default_factory=dict)

    def token_at(self, sentence_index: int, token_index: int) -> Token:
        return self.sentences[sentence_index].tokens[token_index]


def default_stoplist() -> set[str]:
    """The bundled English stopword list."""
    text = resources.files("arth.data").joinpath("stopwords.txt").read_text("utf-8")
    return _parse_stoplist(text)


def load_stoplist(path: str | Path) -> set[str]:
    """Load a stopword file: one lowercase word per line, '#' comments ignored."""
    return _parse_stoplist(Path(path).read_text("utf-8"))


def _parse_stoplist(text: str) -> set[str]:
    words = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            words.add(line.lower())
    return words


def _sentence_spans(text: str) -> list[tuple[int, int]]:
    """Split on terminal punctuation followed by whitespace and an uppercase
    letter, skipping the abbreviation list. Returns (start, end) slices."""
    spans = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in _TERMINALS:
            # consume a run of terminals such as "?!" or "..."
            j = i + 1
            while j < n and text[j] in _TERMINALS:
                j += 1
            # the word immediately before the punctuation
            k = i
            while k > start and not text[k - 1].isspace():
                k -= 1
            prev = text[k:i].lower()
            is_abbrev = ch == "." and (prev in ABBREVIATIONS or len(prev) == 1)
            # lookahead: whitespace then an uppercase letter
            m = j
            while m < n and text[m].isspace():
                m += 1
            if not is_abbrev and m > j and m < n and text[m].isupper():
                spans.append((start, j))
                start = m
                i = m
                continue
            if not is_abbrev and m >= n:
                spans.append((start, j))
                start = n
                i = n
                continue
            i = j
        else:
            i += 1
    if start < n:
        spans.append((start, n))
    return spans


def tokenize(text: str) -> list[Sentence]:
    """Split text into sentences and tokens with exact character spans."""
    sentences = []
    for idx, (start, end) in enumerate(_sentence_spans(text)):
        chunk = text[start:end]
        tokens = []
        for match in _TOKEN_RE.finditer(chunk):
            surface = match.group()
            span = (start + match.start(), start + match.end())
            normalized = surface.lower().strip("'")
            tokens.append(
                Token(
                    surface=surface,
                    normalized=normalized,
                    sentence_index=idx,
                    char_span=span,
                    is_word=bool(_ALPHA_RE.match(surface)),
                )
            )
        sentences.append(Sentence(index=idx, text=chunk, tokens=tokens, span=(start, end)))
    return sentences


def remove_stopwords(tokens: list[Token], stoplist: set[str]) -> list[Token]:
    """Keep word tokens not in the stoplist; flag removed ones in place."""
    kept = []
    for token in tokens:
        if token.is_word and token.normalized in stoplist:
            token.is_stopword = True
        elif token.is_word:
            kept.append(token)
    return kept


def stem(word: str) -> str:
    """Porter stem of a lowercase alphabetic word."""
    return porter_stem(word)


def lemmatize(word: str, pos: PartOfSpeech, kb: WordNetKB) -> str:
    """WordNet morphy lemma for the given part of speech; the word itself
    when no known base form exists."""
    return kb.morphy(word, pos) or word


# POS order tried when a token's part of speech is unknown
_POS_FALLBACK = (
    PartOfSpeech.NOUN,
    PartOfSpeech.VERB,
    PartOfSpeech.ADJ,
    PartOfSpeech.ADV,
)


def _lemmatize_unknown_pos(word: str, kb: WordNetKB) -> str:
    for pos in _POS_FALLBACK:
        lemma = kb.morphy(word, pos)
        if lemma is not None:
            return lemma
    return word


def preprocess(text: str, stoplist: set[str], kb: WordNetKB) -> PreprocessedDoc:
    """Tokenize, drop stopwords, lemmatize, and index content words by lemma."""
    sentences = tokenize(text)
    content_words: dict[str, list[tuple[int, int]]] = {}
    for sentence in sentences:
        kept = remove_stopwords(sentence.tokens, stoplist)
        kept_ids = {id(t) for t in kept}
        for token_index, token in enumerate(sentence.tokens):
            if id(token) not in kept_ids:
                continue
            lemma = _lemmatize_unknown_pos(token.normalized, kb)
            token.lemma = lemma
            content_words.setdefault(lemma, []).append((sentence.index, token_index))
    return PreprocessedDoc(original=text, sentences=sentences, content_words=content_words)
