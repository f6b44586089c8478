"""Shipped perturbations of the golden data, used to show the checks are not vacuous.

Entry coordinates in mutations.json are 1-based and refer to the file's own
index convention (block order for R_Gmk).
"""

from __future__ import annotations

import json

from .hopf import check_antipode, hopf_data, rtt_residuals, t_matrix
from .presentations import CATALOG_FILES, catalog, data_dir, parse_presentation
from .report import CheckReport
from .rewrite import check_local_confluence
from .rmatrix import load_rmatrix, qybe_check, triangularity_check
from .scalar import Scalar

MUTATED_CHECKS = ("qybe", "triangularity", "rtt", "antipode", "confluence")


def load_mutations() -> dict:
    return json.loads((data_dir() / "mutations.json").read_text(encoding="utf-8"))


def mutated_rmatrix(spec: dict):
    """The mutated R-matrix in lexicographic convention."""
    entry = load_rmatrix(spec["rmatrix"])
    i, j = spec["entry"]
    old = entry.matrix[i - 1, j - 1]
    if old != Scalar.parse(spec["was"]):
        raise ValueError(f"{spec['rmatrix']} entry ({i},{j}) is {old}, expected {spec['was']}")
    m = entry.matrix.with_entry(i - 1, j - 1, Scalar.parse(spec["value"]))
    from .linalg import to_lex

    return to_lex(m, entry.order)


def run_mutation(check: str, spec: dict | None = None) -> CheckReport:
    """Run ``check`` on its mutated input; the returned report is expected to fail."""
    spec = spec if spec is not None else load_mutations()[check]
    if check == "qybe":
        report = qybe_check(mutated_rmatrix(spec), f"{spec['rmatrix']} mutated")
    elif check == "triangularity":
        report = triangularity_check(mutated_rmatrix(spec), f"{spec['rmatrix']} mutated")
    elif check == "rtt":
        p = catalog(spec["algebra"])
        report = rtt_residuals(mutated_rmatrix(spec), t_matrix(p), p, f"{spec['rmatrix']} mutated / {p.name}")
    elif check == "antipode":
        p = catalog(spec["algebra"])
        rows = [list(row) for row in hopf_data(p)["adjugate"]]
        i, j = spec["adjugate_entry"]
        if rows[i - 1][j - 1] != spec["was"]:
            raise ValueError(f"adjugate entry ({i},{j}) is {rows[i - 1][j - 1]}, expected {spec['was']}")
        rows[i - 1][j - 1] = spec["value"]
        report = check_antipode(p, rows)
        report.subject += " mutated"
    elif check == "confluence":
        key = spec["algebra"].lower()
        text = (data_dir() / CATALOG_FILES[key]).read_text(encoding="utf-8")
        if spec["replace"] not in text:
            raise ValueError(f"line {spec['replace']!r} not found in {CATALOG_FILES[key]}")
        p = parse_presentation(text.replace(spec["replace"], spec["with"]))
        report = check_local_confluence(p.rewrite_system(1))
        report.subject += " mutated"
    else:
        raise KeyError(check)
    report.derived["mutation"] = {k: v for k, v in spec.items()}
    return report
