"""Shipped R-matrices and the checks run on them.

Covers the quantum Yang-Baxter equation, triangularity, the block reordering of
the G_{r,s} matrix, extraction of the GL_h(2) block, and the contraction engine
that produces the Jordanian matrices as singular limits of similarity
transforms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DimensionMismatch, PoleAtZero, UnknownPresentation
from .linalg import (BLOCK9, Matrix, flip, from_lex, inverse, kron, leg_embed, matrix_from_json,
                     reorder, to_lex)
from .presentations import data_dir
from .report import CheckReport, timed
from .scalar import ONE, Scalar, as_scalar, limit_at_zero, param

RMATRIX_NAMES = ("R_Grs", "R_q_blocked", "R_GLr2", "R_Gmk", "R_h2")


@dataclass
class RMatrixEntry:
    name: str
    matrix: Matrix
    order: str  # "lex" or "block9"
    params: tuple
    d: int
    note: str = ""

    def lex(self) -> Matrix:
        return to_lex(self.matrix, self.order)


@lru_cache(maxsize=None)
def _load(name: str, directory: str) -> RMatrixEntry:
    from pathlib import Path

    path = Path(directory) / f"{name}.json"
    if not path.exists():
        raise UnknownPresentation(f"unknown R-matrix {name!r}; known: {', '.join(RMATRIX_NAMES)}")
    matrix, meta = matrix_from_json(path)
    return RMatrixEntry(meta.get("name", name), matrix, meta.get("order", "lex"),
                        tuple(meta.get("params", ())), meta["dim"], meta.get("note", ""))


def load_rmatrix(name: str) -> RMatrixEntry:
    lookup = {n.lower(): n for n in RMATRIX_NAMES}
    canonical = lookup.get(name.lower(), name)
    return _load(canonical, str(data_dir()))


def _dim(R: Matrix) -> int:
    d = int(round(R.rows ** 0.5))
    if d * d != R.rows or R.rows != R.cols:
        raise DimensionMismatch(f"R must be d^2 x d^2, got {R.shape}")
    return d


def _fmt_index(p: int, d: int) -> str:
    i, j = divmod(p, d)
    return f"({i + 1}{j + 1})"


def _location(i: int, j: int, d: int, size: int | None = None) -> str:
    return f"entry ({i + 1},{j + 1})"


def qybe_sides(R: Matrix) -> tuple[Matrix, Matrix]:
    d = _dim(R)
    r12, r13, r23 = (leg_embed(R, legs, d) for legs in ((1, 2), (1, 3), (2, 3)))
    return r12 @ r13 @ r23, r23 @ r13 @ r12


def qybe_check(R: Matrix, subject: str = "R") -> CheckReport:
    """R12 R13 R23 == R23 R13 R12, exactly.  ``R`` in lexicographic convention."""
    report = CheckReport("qybe", subject)
    with timed(report):
        lhs, rhs = qybe_sides(R)
        diff = lhs.first_difference(rhs)
        if diff is not None:
            i, j, res = diff
            report.fail(_location(i, j, lhs.rows), res)
        report.derived["size"] = lhs.rows
    return report


def triangularity_check(R: Matrix, subject: str = "R") -> CheckReport:
    """(P R P) R == identity, with P the tensor flip."""
    report = CheckReport("triangularity", subject)
    with timed(report):
        d = _dim(R)
        P = flip(d)
        product = (P @ R @ P) @ R
        diff = product.first_difference(Matrix.identity(R.rows))
        if diff is not None:
            i, j, res = diff
            report.fail(_location(i, j, R.rows), res)
    return report


def unipotent_check(R: Matrix, subject: str = "R", power: int = 3) -> CheckReport:
    report = CheckReport("unipotent", subject)
    with timed(report):
        N = R - Matrix.identity(R.rows)
        diff = (N**power).first_difference(Matrix.zeros(R.rows))
        if diff is not None:
            i, j, res = diff
            report.fail(_location(i, j, R.rows), res)
    return report


def reorder_consistency_check() -> CheckReport:
    """The lexicographic and block-ordered forms of the G_{r,s} R-matrix agree."""
    report = CheckReport("reorder-consistency", "R_Grs -> R_q_blocked")
    with timed(report):
        lex = load_rmatrix("R_Grs").matrix
        blocked = load_rmatrix("R_q_blocked").matrix
        moved = reorder(lex, BLOCK9)
        for i in range(9):
            for j in range(9):
                diff = moved[i, j] - blocked[i, j]
                if not diff.is_zero():
                    report.fail(f"block entry ({i + 1},{j + 1})", diff)
        report.derived["entries_compared"] = 81
        report.derived["block9_labels"] = ["".join(map(str, ij)) for ij in BLOCK9.labels()]
    return report


def extract_block(R: Matrix, rows, cols=None) -> Matrix:
    return R.submatrix(list(rows), list(rows if cols is None else cols))


# contraction -------------------------------------------------------------------


def jordan_g(eta) -> Matrix:
    return Matrix([[ONE, as_scalar(eta)], [0, ONE]])


def block_G(eta) -> Matrix:
    """G = diag(g, 1) with g = [[1, eta], [0, 1]]."""
    return Matrix([[ONE, as_scalar(eta), 0], [0, ONE, 0], [0, 0, ONE]])


@dataclass
class ContractionPlan:
    name: str
    source: str
    transform: Matrix  # in the symbol "eta"
    path: dict  # parameter -> Scalar in the limit variable
    limit_var: str = "t"
    constraint: dict = field(default_factory=dict)  # identities the path must satisfy

    def validate(self) -> list:
        """Constraint violations along the path (empty when the path is valid)."""
        bad = []
        for lhs_text, rhs_text in self.constraint.items():
            lhs = Scalar.parse(lhs_text).substitute(self.path)
            rhs = Scalar.parse(rhs_text).substitute(self.path)
            if lhs != rhs:
                bad.append(f"{lhs_text} = {rhs_text} fails along the path: {lhs} vs {rhs}")
        return bad


def _t(text: str) -> Scalar:
    return Scalar.parse(text)


PLANS = {
    "paper9": lambda: ContractionPlan(
        "paper9", "R_q_blocked", block_G(param("eta")),
        {"r": _t("1 + m*t"), "s": _t("1 + k*t"), "eta": _t("1/t")},
        constraint={"eta": "m/(r - 1)", "(1 - s)/(1 - r)": "k/m"}),
    "paper4": lambda: ContractionPlan(
        "paper4", "R_GLr2", jordan_g(param("eta")),
        {"r": _t("1 + h*t"), "eta": _t("1/t")},
        constraint={"eta": "h/(r - 1)"}),
    # second-order perturbation of the s path; the limit must not change
    "paper9-curved": lambda: ContractionPlan(
        "paper9-curved", "R_q_blocked", block_G(param("eta")),
        {"r": _t("1 + m*t"), "s": _t("1 + k*t + c*t^2"), "eta": _t("1/t")},
        constraint={"eta": "m/(r - 1)"}),
}


def get_plan(name: str) -> ContractionPlan:
    if name not in PLANS:
        raise UnknownPresentation(f"unknown contraction plan {name!r}; known: {', '.join(PLANS)}")
    return PLANS[name]()


def transformed(plan: ContractionPlan, source: Matrix | None = None) -> Matrix:
    """(G^-1 (x) G^-1) R (G (x) G) in lexicographic convention, before the limit."""
    entry = load_rmatrix(plan.source)
    R = entry.lex() if source is None else source
    G = plan.transform
    Ginv = inverse(G)
    return kron(Ginv, Ginv) @ R @ kron(G, G)


def contract(plan: ContractionPlan | str, bindings: dict | None = None, source: Matrix | None = None) -> Matrix:
    """Limit of the similarity transform along ``plan.path``, in the source's order.

    ``bindings`` specialize parameters of the path first (e.g. ``{"k": 0}``).
    ``source`` optionally replaces the shipped source matrix (lex convention).
    """
    if isinstance(plan, str):
        plan = get_plan(plan)
    entry = load_rmatrix(plan.source)
    path = dict(plan.path)
    if bindings:
        path = {name: value.substitute(bindings) for name, value in path.items()}
    X = transformed(plan, source)
    out = Matrix.zeros(X.rows)
    d = entry.d
    for i in range(X.rows):
        for j in range(X.cols):
            e = X[i, j]
            if e.is_zero():
                continue
            try:
                out.entries[i][j] = limit_at_zero(e.substitute(path), plan.limit_var)
            except PoleAtZero as exc:
                where = f"{_fmt_index(i, d)},{_fmt_index(j, d)}"
                raise PoleAtZero(f"entry {where} (lex): {exc}", location=(i, j)) from None
    return from_lex(out, entry.order)


def contract_check(plan_name: str, expected: Matrix, subject: str, bindings: dict | None = None) -> CheckReport:
    report = CheckReport("contract", subject)
    with timed(report):
        plan = get_plan(plan_name)
        for problem in plan.validate():
            report.fail("path", problem)
        try:
            got = contract(plan, bindings)
        except PoleAtZero as exc:
            report.fail("limit", exc)
            return report
        diff = got.first_difference(expected)
        if diff is not None:
            i, j, res = diff
            report.fail(_location(i, j, got.rows), f"limit minus expected = {res}")
        report.derived["plan"] = plan_name
    return report
