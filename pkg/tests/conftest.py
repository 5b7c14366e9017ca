from fractions import Fraction

from hypothesis import strategies as st

from cgaverma.polyring import MultiPoly

rationals = st.fractions(max_denominator=7).filter(lambda x: abs(x) <= 20)
small_rationals = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


@st.composite
def z_polys(draw, max_vars=3, max_exp=3, max_terms=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.lists(st.integers(0, max_exp), min_size=max_vars, max_size=max_vars)))
        terms[e] = draw(small_rationals)
    return MultiPoly("z", terms)
