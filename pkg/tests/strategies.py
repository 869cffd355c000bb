from fractions import Fraction

from hypothesis import strategies as st

small_ints = st.integers(-6, 6)
rationals = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 5))
nonzero_rationals = rationals.filter(bool)


def matrices(n, elements=small_ints):
    return st.lists(st.lists(elements, min_size=n, max_size=n), min_size=n, max_size=n)


def letters(n):
    return st.tuples(st.integers(1, n), st.integers(1, n))


def words(n, max_len=4):
    return st.lists(letters(n), min_size=0, max_size=max_len)
