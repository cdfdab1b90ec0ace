"""Re-render a document with dictionary glosses bracketed after every
occurrence of a hard word. Each occurrence is disambiguated against its own
sentence, and the recorded insertion offsets make the annotation exactly
reversible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .preprocess import PreprocessedDoc
from .quiz import trim_gloss
from .wordnet import WordNetKB, simplified_lesk, synsets


@dataclass
class AnnotatedText:
    text: str
    # (offset into the original text, inserted string, lemma), sorted by offset
    insertions: list[tuple[int, str, str]] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "text": self.text,
            "insertions": [
                {"offset": offset, "inserted": inserted, "lemma": lemma}
                for offset, inserted, lemma in self.insertions
            ],
            "skipped": self.skipped,
        }


def annotate(doc: PreprocessedDoc, hard_lemmas: set[str], kb: WordNetKB,
             stoplist: set[str]) -> AnnotatedText:
    """Insert ` (gloss)` after every token whose lemma is in hard_lemmas.

    The gloss is the definition of the sense chosen by simplified Lesk for
    the occurrence's own sentence. Lemmas the KB does not know are left
    unannotated and reported in `skipped`.
    """
    insertions: list[tuple[int, str, str]] = []
    skipped: list[str] = []
    for lemma in sorted(hard_lemmas):
        occurrences = doc.content_words.get(lemma, [])
        if not occurrences:
            continue
        if not synsets(kb, lemma):
            skipped.append(lemma)
            continue
        for sentence_index, token_index in occurrences:
            sentence = doc.sentences[sentence_index]
            token = sentence.tokens[token_index]
            context = [t.normalized for t in sentence.tokens if t.is_word]
            choice = simplified_lesk(kb, lemma, context, stoplist)
            gloss = trim_gloss(choice.synset.definition())
            insertions.append((token.char_span[1], f" ({gloss})", lemma))
    insertions.sort(key=lambda ins: ins[0])
    return AnnotatedText(
        text=apply_insertions(doc.original, insertions),
        insertions=insertions,
        skipped=skipped,
    )


def apply_insertions(original: str, insertions: list[tuple[int, str, str]]) -> str:
    parts = []
    cursor = 0
    for offset, inserted, _ in insertions:
        parts.append(original[cursor:offset])
        parts.append(inserted)
        cursor = offset
    parts.append(original[cursor:])
    return "".join(parts)


def strip_insertions(annotated: AnnotatedText) -> str:
    """Inverse of annotate: removing every recorded insertion recovers the
    original text byte for byte."""
    # removing left to right keeps each remaining insertion at its original
    # offset, since everything before it has already been restored
    out = annotated.text
    for offset, inserted, _ in annotated.insertions:
        assert out[offset: offset + len(inserted)] == inserted
        out = out[:offset] + out[offset + len(inserted):]
    return out
