"""Shared hypothesis strategies."""

from __future__ import annotations

from hypothesis import strategies as st

from episturmian.directive import DirectiveSequence


@st.composite
def ar_directives(draw, d: int | None = None, max_pre: int = 3, max_extra: int = 3):
    """Eventually periodic directives whose period contains every letter."""
    if d is None:
        d = draw(st.integers(2, 3))
    pre = draw(st.lists(st.integers(0, d - 1), max_size=max_pre))
    extra = draw(st.lists(st.integers(0, d - 1), max_size=max_extra))
    per = draw(st.permutations(list(range(d)) + extra))
    return DirectiveSequence(d, tuple(pre), tuple(per))
