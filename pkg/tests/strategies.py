from hypothesis import strategies as st

from golombic.freegroup import Word

pairs = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
raw_words = st.lists(pairs, max_size=8)
words = raw_words.map(Word)
small_words = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), max_size=5).map(Word)
