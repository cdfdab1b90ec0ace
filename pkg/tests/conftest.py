import pytest

from arth.frequency import FrequencyStore
from arth.preprocess import default_stoplist
from arth.session import TOY_WORDNET
from arth.wordnet import load_wordnet


@pytest.fixture(scope="session")
def kb():
    return load_wordnet(TOY_WORDNET)


@pytest.fixture(scope="session")
def stoplist():
    return default_stoplist()


@pytest.fixture()
def freq_store():
    return FrequencyStore(
        counts={
            "the": 1000, "cat": 500, "dog": 480, "bank": 300, "happy": 260,
            "run": 240, "sit": 150, "animal": 120, "puppy": 80, "picnic": 40,
            "divide": 30, "zygote": 2,
        }
    )
