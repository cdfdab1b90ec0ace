"""Walk through the vocabulary-difficulty pipeline on a short story:
tokenize, drop stopwords, lemmatize, profile each word by syllables and
corpus frequency, then cluster the profiles with K-means."""

from arth.clustering import build_profiles, choose_k, cluster_report, fit_cluster_model
from arth.frequency import bundled_frequency_list
from arth.preprocess import default_stoplist, preprocess
from arth.session import TOY_WORDNET
from arth.syllables import count_syllables_rule
from arth.wordnet import load_wordnet

STORY = (
    "The happy cat saw the dog near the bank. "
    "A zygote divides into many cells. "
    "The unhappy puppy ran quickly to the river bank for a picnic."
)


def main():
    kb = load_wordnet(TOY_WORDNET)
    stoplist = default_stoplist()
    freq = bundled_frequency_list()

    doc = preprocess(STORY, stoplist, kb)
    print("content lemmas:", sorted(doc.content_words))

    profiles = build_profiles(doc, freq)
    for p in sorted(profiles, key=lambda p: p.frequency):
        print(f"  {p.lemma:10s} syllables={p.syllables} "
              f"(rule says {count_syllables_rule(p.lemma)}) "
              f"corpus count={p.frequency}")

    k = choose_k(len(profiles))
    print(f"\n{len(profiles)} unique words -> k = {k}")

    model, params = fit_cluster_model(profiles, k, seed=0)
    report = cluster_report(model, profiles, params)
    print("clusters, hardest first:")
    for cluster_id in report["difficulty_rank"]:
        cluster = report["clusters"][cluster_id]
        print(f"  cluster {cluster_id}: {', '.join(cluster['members'])}")


if __name__ == "__main__":
    main()
