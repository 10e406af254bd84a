import pytest

from helpers import PATH8, PERFECT15, small_trees
from model import parse_signature


@pytest.fixture(autouse=True)
def _no_budget_env(monkeypatch):
    monkeypatch.delenv("LA_MEM_BUDGET", raising=False)


@pytest.fixture(scope="module")
def t110010():
    return parse_signature("110010")


@pytest.fixture(scope="module")
def t1010():
    return parse_signature("1010")


@pytest.fixture(scope="module")
def path8():
    return parse_signature(PATH8)


@pytest.fixture(scope="module")
def perfect15():
    return parse_signature(PERFECT15)


@pytest.fixture(scope="module")
def single():
    return parse_signature("")


@pytest.fixture(scope="module")
def generated():
    return small_trees(count=60)
