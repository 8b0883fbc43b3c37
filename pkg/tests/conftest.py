import os

import pytest

from eudsplit import SplitConfig, load_conllu

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def data_path(name: str) -> str:
    return os.path.join(DATA_DIR, name)


@pytest.fixture(scope="session")
def suite():
    return load_conllu(data_path("suite.conllu"))


@pytest.fixture(scope="session")
def goldens():
    """The four hand-transcribed showcase sentences, keyed by sent_id."""
    return {s.sent_id: s for s in load_conllu(data_path("goldens.conllu"))}


@pytest.fixture(scope="session")
def stench_tree():
    return load_conllu(data_path("stench_tree.conllu"))[0]


@pytest.fixture
def fixed_cfg():
    return SplitConfig(mode="fixed")


@pytest.fixture
def faithful_cfg():
    return SplitConfig(mode="faithful")


def arcs_of(forest):
    """(head, dep, label) triples of a forest, sorted."""
    return sorted((h, d, label) for d, (h, label) in enumerate(forest.parents, start=1))


def edges_of(sentence):
    """(head, dep, label) triples of a sentence's enhanced graph, sorted."""
    return sorted((h, t.id, rel) for t in sentence.tokens for h, rel in t.deps)
