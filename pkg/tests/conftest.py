import pytest

from roomvoice.nlu.corpus import load_bundled_corpus
from roomvoice.nlu.model import train


@pytest.fixture(scope="session")
def bundled_corpus():
    return load_bundled_corpus()


@pytest.fixture(scope="session")
def bundled_model(bundled_corpus):
    return train(bundled_corpus)
