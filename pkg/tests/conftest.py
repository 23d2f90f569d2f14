import random

import pytest

from stallings import F2, Word
from stallings.experiments import random_subgroup, random_word


@pytest.fixture
def rng():
    return random.Random(12345)


def w(text, alphabet=F2):
    return Word.parse(text, alphabet)
