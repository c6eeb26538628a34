import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scimap._accel import use_backend
from scimap.corpus import bounded_distance, damerau_levenshtein, normalize_title, title_similarity

from oracles import osa_oracle

text = st.text(alphabet="abcde", max_size=12)


@pytest.mark.parametrize(
    "a, b, expected",
    [("", "abc", 3), ("abc", "", 3), ("", "", 0), ("CA", "AC", 1), ("kitten", "sitting", 3),
     ("ca", "abc", 3), ("abcdef", "abcdfe", 1), ("naïve", "naive", 1)],
)
def test_known_distances(a, b, expected):
    assert osa_oracle(a, b) == expected
    assert damerau_levenshtein(a, b) == expected


def test_matches_oracle_on_random_pairs():
    rng = random.Random(7)
    for _ in range(500):
        a = "".join(rng.choice("abc") for _ in range(rng.randint(0, 9)))
        b = "".join(rng.choice("abc") for _ in range(rng.randint(0, 9)))
        assert damerau_levenshtein(a, b) == osa_oracle(a, b), (a, b)


@given(text, text)
def test_symmetric_and_identity(a, b):
    d = damerau_levenshtein(a, b)
    assert d == damerau_levenshtein(b, a)
    assert (d == 0) == (a == b)


@settings(max_examples=200)
@given(text, text, text)
def test_triangle_inequality(a, b, c):
    assert damerau_levenshtein(a, c) <= damerau_levenshtein(a, b) + damerau_levenshtein(b, c)


@given(text, text, st.integers(min_value=0, max_value=6))
def test_bounded_agrees_below_bound(a, b, bound):
    full = damerau_levenshtein(a, b)
    got = bounded_distance(a, b, bound)
    assert got == (full if full <= bound else bound + 1)


def test_python_backend_agrees():
    rng = random.Random(3)
    pairs = [("".join(rng.choice("xyz") for _ in range(rng.randint(0, 8))),
              "".join(rng.choice("xyz") for _ in range(rng.randint(0, 8)))) for _ in range(100)]
    compiled = [damerau_levenshtein(a, b) for a, b in pairs]
    with use_backend("numpy"):
        plain = [damerau_levenshtein(a, b) for a, b in pairs]
    assert compiled == plain


def test_title_similarity_examples():
    assert title_similarity("Knowledge Circulation", "knowledge circulation") == 100.0
    assert title_similarity("abcd", "abce") == 75.0
    assert title_similarity("abcd", "wxyz") == 0.0


def test_similarity_ignores_case_and_punctuation():
    assert title_similarity("Knowledge, circulation!", "knowledge   circulation") == 100.0
    assert normalize_title("  A  B.  ") == "a b"


def test_similarity_nothing_to_compare():
    with pytest.raises(ValueError, match="nothing to compare"):
        title_similarity("", "")


@given(text, text)
def test_similarity_is_100_iff_equal_after_normalisation(a, b):
    if not (normalize_title(a) or normalize_title(b)):
        return
    s = title_similarity(a, b)
    assert 0.0 <= s <= 100.0
    assert (s == 100.0) == (normalize_title(a) == normalize_title(b))
