from fractions import Fraction

import sympy
from hypothesis import strategies as st

from qgw.ncpoly import NCPoly
from qgw.scalar import MPoly, Scalar

PARAMS = ("r", "s", "m")


def mpoly_to_sympy(p: MPoly):
    total = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for name, e in mono:
            term *= sympy.Symbol(name) ** e
        total += term
    return total


def to_sympy(x: Scalar):
    return mpoly_to_sympy(x.num) / mpoly_to_sympy(x.den)


def sympy_equal(x: Scalar, expr) -> bool:
    return sympy.cancel(to_sympy(x) - expr) == 0


@st.composite
def mpolys(draw, variables=PARAMS, max_terms=3, max_exp=2, nonzero=False):
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    terms = {}
    for _ in range(n):
        mono = tuple((v, e) for v in variables if (e := draw(st.integers(0, max_exp))))
        terms[mono] = Fraction(draw(st.integers(-3, 3).filter(bool)), draw(st.integers(1, 2)))
    p = MPoly(terms)
    if nonzero and p.is_zero():
        p = MPoly.const(1)
    return p


@st.composite
def scalars(draw, variables=PARAMS, nonzero=False):
    num = draw(mpolys(variables, nonzero=nonzero))
    den = draw(mpolys(variables, max_terms=2, nonzero=True))
    return Scalar(num, den)


LETTERS = ("a", "b", "c", "d")


@st.composite
def ncpolys(draw, letters=LETTERS, max_terms=3, max_len=3, slots=(1,)):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        length = draw(st.integers(0, max_len))
        word = tuple((draw(st.sampled_from(letters)), draw(st.sampled_from(slots))) for _ in range(length))
        terms[word] = draw(scalars(variables=("r",)))
    return NCPoly(terms, letters)
