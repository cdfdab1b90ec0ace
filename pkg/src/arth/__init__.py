"""Personalized reading assistance: cluster a text's vocabulary by
difficulty, probe the reader with an auto-generated quiz, and re-render the
text with glosses next to the words the reader found hard."""

from .annotate import AnnotatedText, annotate, strip_insertions
from .clustering import (
    ClusterModel,
    WordProfile,
    build_profiles,
    choose_k,
    fit_cluster_model,
    kmeans,
    minmax_normalize,
    rank_clusters,
    zscore_normalize,
)
from .frequency import (
    FrequencyStore,
    bundled_frequency_list,
    load_frequency_list,
    lookup,
)
from .preprocess import (
    PreprocessedDoc,
    Sentence,
    Token,
    default_stoplist,
    lemmatize,
    preprocess,
    remove_stopwords,
    stem,
    tokenize,
)
from .quiz import (
    ClusterVerdict,
    Quiz,
    QuizQuestion,
    evaluate_quiz,
    generate_quiz,
    refine_cluster,
)
from .session import Resources, SessionConfig, SessionStore, create_session
from .syllables import (
    NBModel,
    SyllableLexicon,
    bundled_lexicon,
    count_syllables_nb,
    count_syllables_rule,
    evaluate_accuracy,
    train_nb,
)
from .wordnet import (
    PartOfSpeech,
    Synset,
    WordNetKB,
    antonyms,
    depth,
    lcs,
    load_wordnet,
    save_wordnet,
    simplified_lesk,
    synsets,
    wup_similarity,
)

__version__ = "0.1.0"
