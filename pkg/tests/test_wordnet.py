import itertools
import shutil
from pathlib import Path

import pytest

from arth.wordnet import (
    CrossPOSError,
    IntegrityError,
    PartOfSpeech,
    SimilarityUndefinedError,
    UnknownWordError,
    antonyms,
    depth,
    lcs,
    load_wordnet,
    save_wordnet,
    simplified_lesk,
    synsets,
    wup_similarity,
)

TOY_DIR = Path(__file__).resolve().parents[1] / "src" / "arth" / "data" / "wordnet_toy"


def _noun(kb, lemma, idx=0):
    return synsets(kb, lemma, PartOfSpeech.NOUN)[idx]


# -- parsing ----------------------------------------------------------------

def test_toy_synset_census(kb):
    assert len(kb.synsets) == 17
    by_pos = {p: sum(1 for s in kb.synsets.values() if s.pos == p) for p in "nvar"}
    assert by_pos == {"n": 10, "v": 3, "a": 3, "r": 1}


def test_noun_roots(kb):
    noun_roots = sorted(r for r in kb.roots if r[0] == "n")
    assert noun_roots == [("n", 1), ("n", 10)]


def test_multiword_lemmas_and_sense_order(kb):
    dog = _noun(kb, "dog")
    assert dog.lemmas == ["dog", "domestic_dog"]
    bank = synsets(kb, "bank", PartOfSpeech.NOUN)
    assert [s.offset for s in bank] == [8, 9]  # file/index order preserved


def test_synsets_all_pos_noun_first(kb):
    assert synsets(kb, "missingword") == []
    run = synsets(kb, "run")
    assert run and all(s.pos == "v" for s in run)


def test_definition_strips_example(kb):
    dog = _noun(kb, "dog")
    assert dog.definition() == (
        "a domesticated carnivorous mammal kept by people as a pet or for work"
    )
    assert '"' not in dog.definition()


def test_exception_lists_loaded(kb):
    assert kb.morphy("ran", PartOfSpeech.VERB) == "run"
    assert kb.morphy("better", PartOfSpeech.ADJ) == "good"
    # an exception entry whose base form has no synset is not a valid result
    assert kb.exceptions["n"]["teeth"] == ["tooth"]
    assert kb.morphy("teeth", PartOfSpeech.NOUN) is None


def test_morphy_detachment_and_misses(kb):
    assert kb.morphy("cats", PartOfSpeech.NOUN) == "cat"
    assert kb.morphy("dogs", PartOfSpeech.NOUN) == "dog"
    assert kb.morphy("qwzx", PartOfSpeech.NOUN) is None
    assert kb.morphy("cat", PartOfSpeech.VERB) is None


def test_antonym_links_symmetric(kb):
    assert antonyms(kb, "happy") == ["unhappy"]
    assert antonyms(kb, "unhappy") == ["happy"]
    assert antonyms(kb, "dog") == []


# -- integrity --------------------------------------------------------------

def _corrupt_copy(tmp_path, old, new, filename="data.noun"):
    broken = tmp_path / "broken"
    shutil.copytree(TOY_DIR, broken)
    target = broken / filename
    text = target.read_text("utf-8")
    assert old in text
    target.write_text(text.replace(old, new), "utf-8")
    return broken


def test_dangling_hypernym_rejected(tmp_path):
    broken = _corrupt_copy(tmp_path, "@ 00000002 n 0000 | a small", "@ 00000099 n 0000 | a small")
    with pytest.raises(IntegrityError):
        load_wordnet(broken)


def test_hypernym_cycle_rejected(tmp_path):
    # animal -> dog -> animal
    broken = _corrupt_copy(tmp_path, "@ 00000001 n 0000 ~ 00000003", "@ 00000003 n 0000 ~ 00000003")
    with pytest.raises(IntegrityError):
        load_wordnet(broken)


def test_dangling_index_entry_rejected(tmp_path):
    broken = _corrupt_copy(tmp_path, "zygote n 1 1 @ 1 0 00000007",
                           "zygote n 1 1 @ 1 0 00000070", filename="index.noun")
    with pytest.raises(IntegrityError):
        load_wordnet(broken)


def test_missing_file_rejected(tmp_path):
    partial = tmp_path / "partial"
    shutil.copytree(TOY_DIR, partial)
    (partial / "data.verb").unlink()
    with pytest.raises(OSError):
        load_wordnet(partial)


def test_round_trip_serialization(kb, tmp_path):
    out = tmp_path / "round"
    save_wordnet(kb, out)
    reloaded = load_wordnet(out)
    assert reloaded == kb
    # and a second cycle through the serializer is byte-identical
    again = tmp_path / "again"
    save_wordnet(reloaded, again)
    for path in sorted(out.iterdir()):
        assert (again / path.name).read_bytes() == path.read_bytes()


# -- taxonomy ---------------------------------------------------------------

def test_depths(kb):
    expect = {"entity": 1, "animal": 2, "dog": 3, "cat": 3,
              "working_dog": 4, "zygote": 2, "abstraction": 1}
    for lemma, d in expect.items():
        assert depth(kb, _noun(kb, lemma)) == d, lemma


def test_multi_parent_takes_shorter_path(kb):
    # puppy has parents animal (2 hops to root) and working_dog (4 hops)
    assert depth(kb, _noun(kb, "puppy")) == 3


def test_lcs_basics(kb):
    dog, cat = _noun(kb, "dog"), _noun(kb, "cat")
    animal = _noun(kb, "animal")
    assert lcs(kb, dog, cat) is animal
    assert lcs(kb, dog, dog) is dog
    assert lcs(kb, dog, _noun(kb, "puppy")) is dog  # self as ancestor
    assert lcs(kb, dog, _noun(kb, "abstraction")) is None


def test_lcs_cross_pos_rejected(kb):
    with pytest.raises(CrossPOSError):
        lcs(kb, _noun(kb, "dog"), synsets(kb, "run", PartOfSpeech.VERB)[0])


def test_wup_hand_computed(kb):
    dog, cat = _noun(kb, "dog"), _noun(kb, "cat")
    # depths 3 and 3, lcs depth 2
    assert wup_similarity(kb, dog, cat) == pytest.approx(2 * 2 / (3 + 3), abs=1e-9)


def test_wup_identity_symmetry_bounds(kb):
    nouns = [s for s in kb.synsets.values() if s.pos == "n"]
    for s in nouns:
        assert wup_similarity(kb, s, s) == pytest.approx(1.0, abs=1e-12)
    for s1, s2 in itertools.combinations(nouns, 2):
        try:
            a = wup_similarity(kb, s1, s2)
        except SimilarityUndefinedError:
            continue
        assert 0.0 < a <= 1.0
        assert a == pytest.approx(wup_similarity(kb, s2, s1), abs=1e-12)


def test_wup_disjoint_roots_undefined(kb):
    with pytest.raises(SimilarityUndefinedError):
        wup_similarity(kb, _noun(kb, "dog"), _noun(kb, "abstraction"))


def test_wup_cross_pos_rejected(kb):
    with pytest.raises(CrossPOSError):
        wup_similarity(kb, _noun(kb, "dog"), synsets(kb, "happy")[0])


# -- disambiguation ---------------------------------------------------------

def _oracle_lesk(kb, word, tokens, stoplist):
    """Independent brute-force scorer: count shared non-stopword types
    between the sentence and each gloss; max wins, first sense on ties."""
    import re

    def words_of(text):
        return {w for w in re.findall(r"[a-z]+(?:'[a-z]+)*", text.lower())
                if w not in stoplist}

    context = set()
    for t in tokens:
        context |= words_of(t)
    context.discard(word.lower())
    senses = synsets(kb, word)
    scores = [len(context & words_of(s.gloss)) for s in senses]
    return senses[max(range(len(senses)), key=lambda i: (scores[i], -i))]


LESK_CASES = [
    ("bank", "I am going to bank for depositing money".split()),
    ("bank", "they sat down for a picnic near the river".split()),
    ("bank", "nothing in this sentence overlaps either gloss".split()),
    ("dog", "the animal barked at the stranger".split()),
    ("run", "she will run a race".split()),
    ("happy", "a happy feeling of joy".split()),
    ("zygote", "the egg divides into cells".split()),
    ("divide", "the zygote divides into many cells".split()),
]


def test_bank_money_context_is_financial(kb, stoplist):
    choice = simplified_lesk(kb, "bank", LESK_CASES[0][1], stoplist)
    assert choice.synset.offset == 8
    assert choice.overlap_score > 0


def test_bank_river_context_is_riverbank(kb, stoplist):
    choice = simplified_lesk(kb, "bank", LESK_CASES[1][1], stoplist)
    assert choice.synset.offset == 9


def test_zero_overlap_falls_back_to_first_sense(kb, stoplist):
    choice = simplified_lesk(kb, "bank", LESK_CASES[2][1], stoplist)
    assert choice.synset.offset == 8
    assert choice.overlap_score == 0


def test_engineered_tie_prefers_first_sense(kb, stoplist):
    # "water" appears only in the river gloss, "money" only in the financial
    # one: one overlap each, exact tie, first (financial) sense wins
    tokens = "money or water".split()
    import re
    for offset in (8, 9):
        gloss = kb.synsets[("n", offset)].gloss.lower()
        hits = [t for t in tokens if re.search(rf"\b{t}\b", gloss)]
        assert len(hits) == 1
    choice = simplified_lesk(kb, "bank", tokens, stoplist)
    assert choice.synset.offset == 8


def test_unknown_word_rejected(kb, stoplist):
    with pytest.raises(UnknownWordError):
        simplified_lesk(kb, "qwzx", ["context"], stoplist)


@pytest.mark.parametrize("word,tokens", LESK_CASES)
def test_lesk_matches_brute_force_oracle(kb, stoplist, word, tokens):
    choice = simplified_lesk(kb, word, tokens, stoplist)
    assert choice.synset is _oracle_lesk(kb, word, tokens, stoplist)


def test_lesk_oracle_sweep_all_lemmas(kb, stoplist):
    contexts = [case[1] for case in LESK_CASES]
    lemmas = sorted({lemma for (lemma, _pos) in kb.index})
    for lemma in lemmas:
        for tokens in contexts:
            choice = simplified_lesk(kb, lemma, tokens, stoplist)
            assert choice.synset is _oracle_lesk(kb, lemma, tokens, stoplist), (
                lemma, tokens)
