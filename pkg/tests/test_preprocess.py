import string

from hypothesis import given, settings
from hypothesis import strategies as st

from arth.preprocess import (
    Token,
    default_stoplist,
    lemmatize,
    preprocess,
    remove_stopwords,
    tokenize,
)
from arth.wordnet import PartOfSpeech


def test_single_sentence_word_tokens():
    sentences = tokenize("I am going to bank for picnic.")
    assert len(sentences) == 1
    words = [t.surface for t in sentences[0].tokens if t.is_word]
    assert words == ["I", "am", "going", "to", "bank", "for", "picnic"]
    punct = [t for t in sentences[0].tokens if not t.is_word]
    assert [t.surface for t in punct] == ["."]


def test_empty_input():
    assert tokenize("") == []


def test_abbreviation_does_not_split():
    sentences = tokenize("Dr. Smith left. He ran.")
    assert len(sentences) == 2
    assert sentences[0].text == "Dr. Smith left."
    assert sentences[1].text == "He ran."


def test_terminal_bang_and_question():
    sentences = tokenize("Stop! Really? Yes.")
    assert [s.text for s in sentences] == ["Stop!", "Really?", "Yes."]


def test_lowercase_continuation_does_not_split():
    assert len(tokenize("It was 3.5 meters. the end")) == 1


def test_char_spans_exact():
    text = 'He said "hi" to Dr. Brown, twice!'
    for sentence in tokenize(text):
        for token in sentence.tokens:
            start, end = token.char_span
            assert text[start:end] == token.surface


def test_digit_tokens_are_not_words():
    tokens = tokenize("There are 42 cats")[0].tokens
    by_surface = {t.surface: t for t in tokens}
    assert not by_surface["42"].is_word
    assert by_surface["cats"].is_word


ASCII_TEXT = st.text(
    alphabet=string.ascii_letters + string.digits + " .,!?'\"-\n",
    max_size=300,
)


@given(ASCII_TEXT)
@settings(max_examples=200)
def test_span_fidelity_property(text):
    for sentence in tokenize(text):
        for token in sentence.tokens:
            start, end = token.char_span
            assert text[start:end] == token.surface


@given(ASCII_TEXT)
@settings(max_examples=200)
def test_sentence_reconstruction_property(text):
    sentences = tokenize(text)
    rebuilt = []
    cursor = 0
    for sentence in sentences:
        start, end = sentence.span
        rebuilt.append(text[cursor:start])  # inter-sentence whitespace
        assert text[start:end] == sentence.text
        rebuilt.append(sentence.text)
        cursor = end
    rebuilt.append(text[cursor:])
    assert "".join(rebuilt) == text


def _word_tokens(words):
    return [
        Token(surface=w, normalized=w.lower(), sentence_index=0,
              char_span=(0, len(w)))
        for w in words
    ]


def test_remove_stopwords_bundled_list():
    stoplist = default_stoplist()
    tokens = _word_tokens(["i", "am", "going", "to", "bank"])
    kept = remove_stopwords(tokens, stoplist)
    assert [t.surface for t in kept] == ["going", "bank"]
    assert tokens[0].is_stopword and tokens[1].is_stopword
    assert not tokens[2].is_stopword


def test_remove_stopwords_empty():
    assert remove_stopwords([], {"the"}) == []


def test_remove_stopwords_all_removed():
    tokens = _word_tokens(["the", "a", "to"])
    assert remove_stopwords(tokens, {"the", "a", "to"}) == []


@given(st.lists(st.sampled_from(["the", "cat", "dog", "a", "ran"]), max_size=20))
def test_stopword_removal_never_removes_nonmembers(words):
    stoplist = {"the", "a"}
    tokens = _word_tokens(words)
    kept = remove_stopwords(tokens, stoplist)
    removed = [t for t in tokens if t not in kept]
    assert all(t.normalized in stoplist for t in removed)


def test_lemmatize_adjective_exception(kb):
    assert lemmatize("better", PartOfSpeech.ADJ, kb) == "good"


def test_lemmatize_noun_detachment(kb):
    assert lemmatize("cats", PartOfSpeech.NOUN, kb) == "cat"


def test_lemmatize_passthrough(kb):
    assert lemmatize("lemma", PartOfSpeech.NOUN, kb) == "lemma"


def test_lemmatize_idempotent_over_kb_lemmas(kb):
    for (lemma, pos) in kb.index:
        p = PartOfSpeech(pos)
        once = lemmatize(lemma, p, kb)
        assert lemmatize(once, p, kb) == once


def test_preprocess_composition(kb, stoplist):
    doc = preprocess("The cats ran. The cat sat.", stoplist, kb)
    assert "cat" in doc.content_words
    assert len(doc.content_words["cat"]) == 2
    assert "run" in doc.content_words
    assert "sit" in doc.content_words
    assert "the" not in doc.content_words
    for lemma, occurrences in doc.content_words.items():
        for sentence_index, token_index in occurrences:
            assert doc.token_at(sentence_index, token_index).lemma == lemma


def test_preprocess_empty(kb, stoplist):
    doc = preprocess("", stoplist, kb)
    assert doc.sentences == [] and doc.content_words == {}


def test_preprocess_all_stopwords(kb, stoplist):
    assert preprocess("to the a an", stoplist, kb).content_words == {}
