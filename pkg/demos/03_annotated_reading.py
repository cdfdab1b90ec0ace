"""Show the annotation step on its own: mark a few words hard and re-render
the text with each occurrence glossed by the sense picked for its own
sentence. The same word gets different glosses in different contexts."""

from arth.annotate import annotate, strip_insertions
from arth.preprocess import default_stoplist, preprocess
from arth.session import TOY_WORDNET
from arth.wordnet import load_wordnet

TEXT = (
    "I am going to bank for depositing money. "
    "They enjoyed a picnic near the river bank. "
    "The zygote divides into many cells."
)


def main():
    kb = load_wordnet(TOY_WORDNET)
    stoplist = default_stoplist()
    doc = preprocess(TEXT, stoplist, kb)

    result = annotate(doc, {"bank", "zygote"}, kb, stoplist)
    print("annotated text:\n")
    print(result.text)

    print("\ninsertions (offset into the original text):")
    for offset, inserted, lemma in result.insertions:
        print(f"  {offset:4d} {lemma:8s} {inserted!r}")

    restored = strip_insertions(result)
    print("\nstripping the insertions restores the original:",
          restored == TEXT)


if __name__ == "__main__":
    main()
