import pytest

from qgw.errors import DSLSyntaxError, UnknownGenerator
from qgw.expr import parse_ncpoly, parse_rational, parse_scalar, tokenize
from qgw.scalar import param

GENS = ("a", "b", "c", "d", "f")


def test_scalar_grammar():
    r = param("r")
    assert parse_scalar("r^-1") == r.inverse()
    assert parse_scalar("2*r^(-2) + 1/3") == 2 * r ** -2 + param("r") ** 0 / 3
    assert parse_scalar("-(r - 1)") == 1 - r


def test_rational():
    from fractions import Fraction

    assert parse_rational("3/4") == Fraction(3, 4)
    with pytest.raises(DSLSyntaxError):
        parse_rational("r")


def test_commutator_and_products():
    x = parse_ncpoly("[c,d] - m*c^2", GENS, ("m",))
    y = parse_ncpoly("c*d - d*c - m*c*c", GENS, ("m",))
    assert x == y


def test_inverse_powers():
    x = parse_ncpoly("f^-2", GENS, (), {"f": "finv"}, GENS + ("finv",))
    assert str(x) == "finv*finv"
    with pytest.raises(DSLSyntaxError):
        parse_ncpoly("a^-1", GENS, (), {"f": "finv"}, GENS + ("finv",))


def test_slot_tags():
    x = parse_ncpoly("a@2*c", GENS)
    assert x.slots() == {1, 2}
    assert str(x) == "c*a@2"


def test_unknown_name_with_strict_params():
    with pytest.raises(UnknownGenerator):
        parse_ncpoly("x*a", GENS, ("r",))


def test_error_positions():
    with pytest.raises(DSLSyntaxError) as info:
        parse_scalar("r + $")
    assert info.value.lineno == 1 and info.value.offset == 5
    with pytest.raises(DSLSyntaxError) as info:
        parse_scalar("(r + 1")
    assert "expected ')'" in str(info.value) or "column" in str(info.value)


def test_division_only_by_scalars():
    with pytest.raises(DSLSyntaxError):
        parse_ncpoly("a/b", GENS)


def test_token_columns():
    toks = tokenize("  ab@2 +c")
    assert [(t.text, t.col) for t in toks[:3]] == [("ab", 3), ("+", 8), ("c", 9)]
    assert toks[0].slot == 2
