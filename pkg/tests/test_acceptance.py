"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

All comparisons are exact (tolerance zero).
"""

import shutil
import subprocess
import sys
import time

import pytest

from qgw.hopf import (check_antipode, check_bialgebra, check_central, check_grouplike, derive_relations,
                      rtt_residuals, span_equal, t_matrix)
from qgw.morphism import (MorphismSpec, check_coalgebra_compat, check_exponential_correspondence,
                          check_k_zero_collapse, check_morphism, check_n_independence, spot_identities)
from qgw.mutations import MUTATED_CHECKS, run_mutation
from qgw.presentations import catalog
from qgw.rewrite import check_local_confluence, check_normal_forms, check_termination_order
from qgw.rmatrix import (contract, extract_block, load_rmatrix, qybe_check, reorder_consistency_check,
                         triangularity_check)
from qgw.scalar import param


@pytest.fixture
def verdict(capsys):
    def emit(n: int, problems: list, summary: str):
        ok = not problems
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {summary}")
            for line in problems:
                print(f"    {line}")
        assert ok, problems

    return emit


def failures(report) -> list:
    if report.passed:
        return []
    return [f"{report.check} {report.subject}: {w.location}: {w.residual}" for w in report.witnesses] \
        or [report.summary()]


def test_criterion_1_golden_data(verdict):
    start = time.perf_counter()
    report = reorder_consistency_check()
    elapsed = time.perf_counter() - start
    problems = failures(report)
    if report.derived.get("entries_compared") != 81:
        problems.append(f"compared {report.derived.get('entries_compared')} entries, expected 81")
    if elapsed >= 1:
        problems.append(f"took {elapsed:.2f} s (limit 1 s)")
    verdict(1, problems, f"reorder(R_Grs, block9) == R_q_blocked, 81 exact entries, {elapsed:.3f} s")


def test_criterion_2_qybe(verdict):
    problems, times = [], []
    for name in ("R_Grs", "R_Gmk"):
        start = time.perf_counter()
        report = qybe_check(load_rmatrix(name).lex(), name)
        times.append(time.perf_counter() - start)
        problems += failures(report)
        if report.derived.get("size") != 27:
            problems.append(f"{name}: products are {report.derived.get('size')}x, expected 27x27")
        if times[-1] >= 30:
            problems.append(f"{name}: took {times[-1]:.1f} s (limit 30 s)")
    verdict(2, problems, "R12 R13 R23 == R23 R13 R12 for R_Grs and R_Gmk "
                         f"({times[0]:.2f} s, {times[1]:.2f} s)")


def test_criterion_3_triangularity(verdict):
    problems = failures(triangularity_check(load_rmatrix("R_Gmk").lex(), "R_Gmk"))
    at_point = load_rmatrix("R_Grs").lex().substitute({"r": 2, "s": 3})
    bad = triangularity_check(at_point, "R_Grs at r=2, s=3")
    if bad.passed or not bad.witnesses:
        problems.append("R_Grs at r=2, s=3 unexpectedly triangular (no witness)")
    witness = bad.witnesses[0].location if bad.witnesses else "none"
    verdict(3, problems, f"(P R P) R == I9 for R_Gmk; R_Grs(2,3) fails at {witness}")


def test_criterion_4_contraction(verdict):
    problems = []
    R_Gmk = load_rmatrix("R_Gmk").matrix
    R_h2 = load_rmatrix("R_h2").matrix
    got = contract("paper9")
    diff = got.first_difference(R_Gmk)
    if diff is not None:
        problems.append(f"9x9 limit differs at block entry ({diff[0] + 1},{diff[1] + 1}): {diff[2]}")
    diff = contract("paper4").first_difference(R_h2)
    if diff is not None:
        problems.append(f"4x4 limit differs at entry ({diff[0] + 1},{diff[1] + 1}): {diff[2]}")
    block = extract_block(R_Gmk, range(4))
    if block != R_h2.substitute({"h": param("m")}):
        problems.append("top-left 4x4 block of R_Gmk differs from R_h2 at h = m")
    verdict(4, problems, "contraction limit == R_Gmk (81 entries); 4x4 plan == R_h2; block == R_h2|h=m")


def test_criterion_5_rtt(verdict):
    problems, ranks = [], []
    for name, rname in (("Gmk", "R_Gmk"), ("Grs", "R_Grs")):
        p = catalog(name)
        R, T = load_rmatrix(rname).lex(), t_matrix(p)
        report = rtt_residuals(R, T, p)
        problems += failures(report)
        if report.derived["zero_entries"] != 81:
            problems.append(f"{name}: {report.derived['zero_entries']}/81 residuals vanish")
        span = span_equal(derive_relations(R, T, p), p.relation_polys(), p.letter_order[:5], name)
        problems += failures(span)
        if span.derived["word_space"] != 25:
            problems.append(f"{name}: word space has dimension {span.derived['word_space']}, expected 25")
        ranks.append(f"{name} rank {span.derived['rank_x']}")
    verdict(5, problems, "81/81 RTT residuals vanish for both algebras; spans equal (" + ", ".join(ranks) + ")")


def test_criterion_6_rewriting(verdict):
    problems = []
    for name in ("Grs", "Gmk"):
        sys_ = catalog(name).rewrite_system()
        problems += failures(check_termination_order(sys_))
        problems += failures(check_local_confluence(sys_))
        problems += failures(check_normal_forms(sys_, samples=1000, max_degree=4, seed=0))
    verdict(6, problems, "termination order, all overlaps resolve, normalize idempotent and "
                         "strategy-independent on 1000 random words (both catalogs)")


def test_criterion_7_hopf(verdict):
    problems = []
    for name in ("Grs", "Gmk"):
        p = catalog(name)
        for check in (check_bialgebra, check_antipode, check_central, check_grouplike):
            problems += failures(check(p))
    grs = check_grouplike(catalog("Grs")).derived["commutation"]["delta"]
    if grs.get("b") != "s":
        problems.append(f"delta*b = c*b*delta with c = {grs.get('b')}, expected s")
    if grs.get("central") is not False:
        problems.append("delta unexpectedly central in Grs")
    verdict(7, problems, "Delta/eps respect relations, coassociativity, counit, M T = T M = D 1, "
                         "D central and group-like, delta group-like with delta b = s b delta")


def test_criterion_8_morphisms(verdict):
    problems = []
    Ns = (1, 2, 3)
    for name in ("Grs", "Gmk"):
        p = catalog(name)
        for N in Ns:
            spec = MorphismSpec(p, N)
            problems += failures(check_morphism(spec))
            problems += failures(check_coalgebra_compat(spec))
            for label, nf in spot_identities(spec).items():
                if not nf.is_zero():
                    problems.append(f"{name} N={N}: {label} = {nf}")
        problems += failures(check_n_independence(p, Ns))
    problems += failures(check_k_zero_collapse(Ns))
    for N in Ns:
        problems += failures(check_exponential_correspondence(N))
    verdict(8, problems, "images close for N = 1,2,3 with coefficients in p,q / h,h'; spot identities, "
                         "coproduct compatibility, k=0 collapse, exponent identities")


def test_criterion_9_mutations(verdict):
    problems, seen = [], []
    for check in MUTATED_CHECKS:
        report = run_mutation(check)
        if report.passed or not report.witnesses:
            problems.append(f"{check}: mutated input still passes")
        else:
            seen.append(f"{check} @ {report.witnesses[0].location}")
    verdict(9, problems, "every mutation caught: " + "; ".join(seen))


def test_criterion_10_end_to_end(verdict):
    exe = shutil.which("qgw")
    cmd = [exe] if exe else [sys.executable, "-m", "qgw.cli"]
    start = time.perf_counter()
    proc = subprocess.run(cmd + ["check", "all", "--paper"], capture_output=True, text=True, timeout=300)
    elapsed = time.perf_counter() - start
    problems = []
    if proc.returncode != 0:
        problems.append(f"exit code {proc.returncode}")
        problems += [line for line in proc.stdout.splitlines() if "FAIL" in line][:10]
        problems += proc.stderr.splitlines()[-5:]
    if elapsed >= 300:
        problems.append(f"took {elapsed:.0f} s (limit 300 s)")
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else "no output"
    verdict(10, problems, f"qgw check all --paper: exit {proc.returncode}, {tail}, {elapsed:.1f} s")
