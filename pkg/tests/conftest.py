import pytest
from hypothesis import strategies as st

from freegroup import Alphabet, parse_word

F2 = Alphabet.default(2)
F3 = Alphabet.default(3)


@pytest.fixture
def w2():
    """Parse a word over {a, b}."""
    return lambda text: parse_word(text, F2)


def raw_codes(rank=3, max_size=20):
    letters = [c for g in range(1, rank + 1) for c in (g, -g)]
    return st.lists(st.sampled_from(letters), max_size=max_size)
