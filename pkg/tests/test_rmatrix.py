import json

import pytest
import sympy
from sympy.physics.quantum import TensorProduct

from conftest import sympy_equal
from qgw.errors import PoleAtZero, UnknownPresentation
from qgw.linalg import Matrix, to_lex
from qgw.presentations import data_dir
from qgw.rmatrix import (RMATRIX_NAMES, contract, contract_check, extract_block, get_plan, load_rmatrix,
                         qybe_check, reorder_consistency_check, transformed, triangularity_check,
                         unipotent_check)
from qgw.scalar import Scalar, param

BLOCK9 = [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (1, 2), (2, 0), (2, 1), (2, 2)]


def sympy_lex(name):
    """Independent reading of a shipped R-matrix: raw JSON -> sympy, block order undone by hand."""
    data = json.loads((data_dir() / f"{name}.json").read_text())
    d = data["dim"]
    raw = sympy.Matrix([[sympy.sympify(e.replace("^", "**")) for e in row] for row in data["entries"]])
    if data["order"] == "lex":
        return raw, d
    lex = sympy.zeros(d * d)
    for p, (i, j) in enumerate(BLOCK9):
        for q, (k, l) in enumerate(BLOCK9):
            lex[i * d + j, k * d + l] = raw[p, q]
    return lex, d


def sympy_qybe_residual(R, d):
    eye = sympy.eye(d)
    P = sympy.zeros(d * d)
    for i in range(d):
        for j in range(d):
            P[i * d + j, j * d + i] = 1
    R12 = TensorProduct(R, eye)
    R23 = TensorProduct(eye, R)
    P23 = TensorProduct(eye, P)
    R13 = P23 * R12 * P23
    return (R12 * R13 * R23 - R23 * R13 * R12).applyfunc(sympy.cancel)


@pytest.mark.parametrize("name", RMATRIX_NAMES)
def test_qybe_matches_sympy_oracle(name):
    R, d = sympy_lex(name)
    assert sympy_qybe_residual(R, d) == sympy.zeros(d**3)
    assert qybe_check(load_rmatrix(name).lex(), name).passed


def test_reader_matches_oracle_reader():
    for name in RMATRIX_NAMES:
        ours = load_rmatrix(name).lex()
        theirs, _ = sympy_lex(name)
        for i in range(ours.rows):
            for j in range(ours.cols):
                assert sympy_equal(ours[i, j], theirs[i, j])


def test_lookup():
    assert load_rmatrix("r_gmk").name == "R_Gmk"
    with pytest.raises(UnknownPresentation):
        load_rmatrix("R_nope")


def test_triangularity():
    assert triangularity_check(load_rmatrix("R_Gmk").lex()).passed
    assert triangularity_check(load_rmatrix("R_h2").lex()).passed
    at_point = load_rmatrix("R_Grs").lex().substitute({"r": 2, "s": 3})
    report = triangularity_check(at_point)
    assert not report.passed and report.witnesses
    assert not triangularity_check(load_rmatrix("R_GLr2").lex().substitute({"r": 2})).passed


def test_unipotent_and_reorder():
    for name in ("R_Gmk", "R_h2"):
        assert unipotent_check(load_rmatrix(name).lex()).passed
    assert not unipotent_check(load_rmatrix("R_Grs").lex()).passed
    assert reorder_consistency_check().passed


def test_extract_block():
    R = load_rmatrix("R_Gmk").matrix  # block order: first four indices are the 2x2 block
    block = extract_block(R, range(4))
    h2 = load_rmatrix("R_h2").matrix.substitute({"h": param("m")})
    assert block == h2


def test_contraction_reproduces_shipped_matrices():
    assert contract("paper9") == load_rmatrix("R_Gmk").matrix
    assert contract("paper4") == load_rmatrix("R_h2").matrix
    assert contract("paper9-curved") == load_rmatrix("R_Gmk").matrix
    assert contract_check("paper9", load_rmatrix("R_Gmk").matrix, "R_Gmk").passed


def test_contraction_matches_sympy_limit():
    R, _ = sympy_lex("R_q_blocked")
    t, m, k = sympy.symbols("t m k")
    eta = sympy.Symbol("eta")
    G = sympy.Matrix([[1, eta, 0], [0, 1, 0], [0, 0, 1]])
    Gi = G.inv()
    X = TensorProduct(Gi, Gi) * R * TensorProduct(G, G)
    path = {sympy.Symbol("r"): 1 + m * t, sympy.Symbol("s"): 1 + k * t, eta: 1 / t}
    ours = to_lex(contract("paper9"), "block9")
    for i in range(9):
        for j in range(9):
            expected = sympy.limit(sympy.cancel(X[i, j].subs(path)), t, 0)
            assert sympy_equal(ours[i, j], expected), (i, j)


def test_k_zero_specialization():
    got = contract("paper9", {"k": 0})
    assert got == load_rmatrix("R_Gmk").matrix.substitute({"k": 0})


def test_pole_reports_location():
    plan = get_plan("paper9")
    plan.path["eta"] = Scalar.parse("1/t^2")
    with pytest.raises(PoleAtZero) as info:
        contract(plan)
    assert "entry" in str(info.value)


def test_path_constraint_validation():
    plan = get_plan("paper9")
    assert plan.validate() == []
    plan.path["eta"] = Scalar.parse("2/t")
    assert plan.validate()


def test_transformed_is_similar():
    X = transformed(get_plan("paper4"))
    assert X.trace() == load_rmatrix("R_GLr2").lex().trace()
    assert isinstance(X, Matrix)
