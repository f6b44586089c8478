import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgw.errors import ConfigError, DependenceViolation
from qgw.morphism import (MorphismSpec, check_coalgebra_compat, check_exponential_correspondence,
                          check_k_zero_collapse, check_morphism, check_n_independence, convert_jordanian,
                          convert_q, derive_image_relations, image_determinant, log_of_monomial,
                          q_exponents, spot_identities)
from qgw.presentations import catalog
from qgw.scalar import Scalar, param

GRS = catalog("Grs")
GMK = catalog("Gmk")
S = Scalar.parse


@pytest.mark.parametrize("N", [1, 2, 3])
def test_spot_identities(N):
    for source in (GRS, GMK):
        for label, nf in spot_identities(MorphismSpec(source, N)).items():
            assert nf.is_zero(), label


def test_n_must_be_positive():
    with pytest.raises(ConfigError):
        MorphismSpec(GRS, 0)
    with pytest.raises(ConfigError):
        check_exponential_correspondence(0)


def test_lattice_conversion_examples():
    p, q = param("p"), param("q")
    assert convert_q(S("r^-1*s^2"), 2) == p
    assert convert_q(S("r^-2"), 5) == p * q
    assert convert_q(S("r*s - r^-1*s"), 1) == q.inverse() - p
    assert convert_jordanian(S("m - 3*k"), 3) == param("h'")
    assert convert_jordanian(S("m + 2*k"), 2) == param("h")
    with pytest.raises(DependenceViolation):
        convert_q(S("s"), 2)  # exponent (0, 1) is off the N = 2 lattice
    with pytest.raises(DependenceViolation):
        convert_q(S("1/(1 - r)"), 1)


def test_q_exponents():
    assert q_exponents(-1, 3, 3) == (1, 0)
    assert q_exponents(-1, -3, 3) == (0, 1)
    assert q_exponents(0, 1, 2) is None


@settings(max_examples=60, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 4))
def test_lattice_conversion_roundtrip(alpha, beta, N):
    r, s = param("r"), param("s")
    c = (r.inverse() * s**N) ** alpha * (r.inverse() * s ** (-N)) ** beta
    converted = convert_q(c, N)
    assert converted == param("p") ** alpha * param("q") ** beta
    assert converted.substitute({"p": r.inverse() * s**N, "q": r.inverse() * s ** (-N)}) == c


def test_derived_relations_grs():
    dp = derive_image_relations(MorphismSpec(GRS, 2))
    rendered = dict(line.split(" = ", 1) for line in dp.render())
    assert rendered["b'*a'"] == "p^-1*a'*b'"
    assert rendered["c'*a'"] == "q^-1*a'*c'"
    assert rendered["c'*b'"] == "p*q^-1*b'*c'"
    assert rendered["d'*a'"] == "(-p + q^-1)*b'*c' + a'*d'"
    assert dp.target_params == ("p", "q")


def test_derived_relations_gmk():
    dp = derive_image_relations(MorphismSpec(GMK, 1))
    assert dp.target_params == ("h", "h'")
    rendered = dict(line.split(" = ", 1) for line in dp.render())
    assert rendered["d'*c'"] == "c'*d' - h'*c'*c'"


@pytest.mark.parametrize("source", ["Grs", "Gmk"])
def test_morphism_and_n_independence(source):
    p = catalog(source)
    for N in (1, 2):
        report = check_morphism(MorphismSpec(p, N))
        assert report.passed, report.witnesses
    assert check_n_independence(p, (1, 2, 3)).passed


def test_coalgebra_compat_notes_antipode():
    report = check_coalgebra_compat(MorphismSpec(GMK, 2))
    assert report.passed
    assert any("antipode" in w.location for w in report.witnesses)


def test_image_determinant_factors():
    info = image_determinant(MorphismSpec(GRS, 1))
    factors = {g: str(c) for g, c in info["factors"].items()}
    assert factors["a'"] == "1" and factors["d'"] == "1"
    assert factors["b'"] == "s^2" and factors["c'"] == "s^-2"  # p/q and q/p at N = 1
    jordan = image_determinant(MorphismSpec(GMK, 1))["factors"]
    assert jordan["c'"] is not None and jordan["c'"] == Scalar.parse("1")
    assert jordan["a'"] is None


def test_k_zero_collapse_and_exponential_correspondence():
    assert check_k_zero_collapse((1, 2)).passed
    for N in (1, 3):
        report = check_exponential_correspondence(N)
        assert report.passed, report.witnesses
    assert check_exponential_correspondence(2).derived["log p"] == "m + 2*k"


def test_log_of_monomial():
    assert log_of_monomial(S("r^-1*s^2")) == {"m": 1, "k": 2}
    with pytest.raises(DependenceViolation):
        log_of_monomial(S("2*r"))
