"""Named check suites run by ``qgw check``.

Each suite returns a list of CheckReports.  Reports whose subject ends in
"[expected failure]" pass exactly when the wrapped check fails with a witness:
they cover non-triangularity at a generic point, the -r*c variant of the antipode block,
and the shipped mutations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError
from .hopf import (check_antipode, check_bialgebra, check_central, check_grouplike, derive_relations,
                   hopf_data, rtt_residuals, span_equal, t_matrix)
from .morphism import (MorphismSpec, check_exponential_correspondence, check_k_zero_collapse, check_morphism,
                       check_n_independence, image_determinant, prime)
from .mutations import run_mutation
from .presentations import catalog
from .report import CheckReport, timed
from .rewrite import check_local_confluence, check_normal_forms, check_termination_order
from .rmatrix import (contract, contract_check, extract_block, load_rmatrix, qybe_check,
                      reorder_consistency_check, triangularity_check, unipotent_check)
from .scalar import param

CHECKS = ("termination", "confluence", "qybe", "triangularity", "reorder-consistency", "contract",
          "rtt", "span", "bialgebra", "antipode", "central", "grouplike", "morphism", "exp-correspondence")
ALGEBRAS = ("Grs", "Gmk")
ALL_ALGEBRAS = ("Grs", "Gmk", "GLr2", "GLh2")
RMATRICES = ("R_Grs", "R_q_blocked", "R_GLr2", "R_Gmk", "R_h2")
PAIRS = {"Grs": "R_Grs", "Gmk": "R_Gmk", "GLr2": "R_GLr2", "GLh2": "R_h2"}
GENERIC_POINTS = {"R_Grs": {"r": 2, "s": 3}, "R_GLr2": {"r": 2}, "R_q_blocked": {"r": 2, "s": 3}}


@dataclass
class SuiteConfig:
    checks: tuple
    algebras: tuple = ALGEBRAS
    Ns: tuple = (1, 2, 3)
    samples: int = 1000
    mutations: bool = True
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.checks:
            raise ConfigError("no checks selected")
        unknown = [c for c in self.checks if c not in CHECKS]
        if unknown:
            raise ConfigError(f"unknown check(s): {', '.join(unknown)}; known: {', '.join(CHECKS)}")
        for N in self.Ns:
            if not isinstance(N, int) or N < 1:
                raise ConfigError(f"N must be a positive integer, got {N!r}")


def expect_failure(report: CheckReport, why: str) -> CheckReport:
    """Wrap a report that is supposed to fail; passes iff it failed with a witness."""
    out = CheckReport(report.check, f"{report.subject} [expected failure]", elapsed_ms=report.elapsed_ms)
    out.derived = dict(report.derived)
    out.derived["expected"] = why
    if report.passed or not report.witnesses:
        out.fail("expected failure", "the check passed; the perturbation was not detected")
    for w in report.witnesses[:3]:
        out.note(w.location, w.residual)
    return out


def _presentations(cfg: SuiteConfig, default=ALGEBRAS):
    return [catalog(name) for name in (cfg.algebras or default)]


# suites ---------------------------------------------------------------------------


def suite_termination(cfg: SuiteConfig) -> list:
    out = []
    for p in _presentations(cfg):
        for n in (1, 2, 3):
            out.append(check_termination_order(p.rewrite_system(n)))
    return out


def suite_confluence(cfg: SuiteConfig) -> list:
    out = []
    for p in _presentations(cfg):
        for n in (1, 2, 3):
            out.append(check_local_confluence(p.rewrite_system(n)))
        out.append(check_normal_forms(p.rewrite_system(1), samples=cfg.samples))
    if cfg.mutations:
        out.append(expect_failure(run_mutation("confluence"), "deleting the m^2*a*c term breaks an overlap"))
    return out


def suite_qybe(cfg: SuiteConfig) -> list:
    out = [qybe_check(load_rmatrix(name).lex(), name) for name in RMATRICES]
    if cfg.mutations:
        out.append(expect_failure(run_mutation("qybe"), "single-entry mutation"))
    return out


def suite_triangularity(cfg: SuiteConfig) -> list:
    out = [triangularity_check(load_rmatrix(name).lex(), name) for name in ("R_Gmk", "R_h2")]
    for name, point in GENERIC_POINTS.items():
        R = load_rmatrix(name).lex().substitute(point)
        label = ",".join(f"{k}={v}" for k, v in point.items())
        out.append(expect_failure(triangularity_check(R, f"{name} at {label}"), "not triangular at a generic point"))
    if cfg.mutations:
        out.append(expect_failure(run_mutation("triangularity"), "single-entry mutation"))
    return out


def suite_reorder(cfg: SuiteConfig) -> list:
    return [reorder_consistency_check()]


def _compare(check: str, subject: str, got, expected) -> CheckReport:
    report = CheckReport(check, subject)
    with timed(report):
        diff = got.first_difference(expected)
        if diff is not None:
            i, j, res = diff
            report.fail(f"entry ({i + 1},{j + 1})", res)
    return report


def suite_contract(cfg: SuiteConfig) -> list:
    gmk = load_rmatrix("R_Gmk").matrix
    h2 = load_rmatrix("R_h2").matrix
    h2_at_m = h2.substitute({"h": param("m")})
    out = [
        contract_check("paper9", gmk, "R_q_blocked -> R_Gmk"),
        contract_check("paper4", h2, "R_GLr2 -> R_h2"),
        contract_check("paper9-curved", gmk, "R_q_blocked -> R_Gmk along s = 1 + k*t + c*t^2"),
    ]
    k0 = contract("paper9", {"k": 0})
    out.append(_compare("contract", "k = 0 before the limit = R_Gmk at k = 0", k0, gmk.substitute({"k": 0})))
    out.append(_compare("contract", "top-left 4x4 of R_Gmk = R_h2 at h = m", extract_block(gmk, range(4)), h2_at_m))
    out.append(_compare("contract", "top-left 4x4 of R_q_blocked = R_GLr2",
                        extract_block(load_rmatrix("R_q_blocked").matrix, range(4)), load_rmatrix("R_GLr2").matrix))
    out.append(unipotent_check(load_rmatrix("R_Gmk").lex(), "R_Gmk"))
    return out


def suite_rtt(cfg: SuiteConfig) -> list:
    out = []
    for p in _presentations(cfg):
        R = load_rmatrix(PAIRS[p.name]).lex()
        out.append(rtt_residuals(R, t_matrix(p), p, f"{PAIRS[p.name]} / {p.name}"))
    if cfg.mutations:
        out.append(expect_failure(run_mutation("rtt"), "single-entry mutation"))
    return out


def suite_span(cfg: SuiteConfig) -> list:
    out = []
    for p in _presentations(cfg):
        R = load_rmatrix(PAIRS[p.name]).lex()
        derived = derive_relations(R, t_matrix(p), p)
        report = span_equal(derived, p.relation_polys(), p.generators, f"RTT({PAIRS[p.name]}) vs {p.name}")
        report.derived["derived_relations"] = len(derived)
        out.append(report)
    return out


def suite_bialgebra(cfg: SuiteConfig) -> list:
    return [check_bialgebra(p) for p in _presentations(cfg)]


def suite_antipode(cfg: SuiteConfig) -> list:
    out = [check_antipode(p) for p in _presentations(cfg)]
    grs = catalog("grs")
    variant = hopf_data(grs).get("adjugate_rc_variant")
    if variant is not None and "Grs" in [p.name for p in _presentations(cfg)]:
        report = check_antipode(grs, variant)
        report.subject += " (variant block, -r*c in position (1,2))"
        out.append(expect_failure(report, "the -r*c block is not an adjugate; -r*b is"))
    if cfg.mutations:
        out.append(expect_failure(run_mutation("antipode"), "deleting the m^2*c term of M12"))
    return out


def suite_central(cfg: SuiteConfig) -> list:
    return [check_central(p) for p in _presentations(cfg)]


def suite_grouplike(cfg: SuiteConfig) -> list:
    out = []
    for p in _presentations(cfg):
        report = check_grouplike(p)
        if p.name == "Grs":
            factor = report.derived["commutation"]["delta"]["b"]
            if factor != "s":
                report.fail("delta*b = c*b*delta", f"c = {factor}, expected s")
            if report.derived["commutation"]["delta"]["central"]:
                report.fail("delta", "delta is central; expected a non-centrality witness")
        out.append(report)
    return out


def suite_morphism(cfg: SuiteConfig) -> list:
    out = []
    for name in ("Grs", "Gmk"):
        p = catalog(name)
        for N in cfg.Ns:
            spec = MorphismSpec(p, N)
            report = check_morphism(spec)
            info = image_determinant(spec)
            commuting = [g for g, c in info["factors"].items() if c is not None and c.is_one()]
            if not commuting:
                report.fail("D'", "f^(2N) D commutes with no primed generator")
            report.derived["D' commutes with"] = commuting
            out.append(report)
        out.append(check_n_independence(p, cfg.Ns))
    out.append(check_k_zero_collapse(cfg.Ns))
    return out


def suite_exp(cfg: SuiteConfig) -> list:
    return [check_exponential_correspondence(N) for N in cfg.Ns]


SUITES = {
    "termination": suite_termination,
    "confluence": suite_confluence,
    "qybe": suite_qybe,
    "triangularity": suite_triangularity,
    "reorder-consistency": suite_reorder,
    "contract": suite_contract,
    "rtt": suite_rtt,
    "span": suite_span,
    "bialgebra": suite_bialgebra,
    "antipode": suite_antipode,
    "central": suite_central,
    "grouplike": suite_grouplike,
    "morphism": suite_morphism,
    "exp-correspondence": suite_exp,
}


def run_one(name: str, cfg: SuiteConfig) -> list:
    return SUITES[name](cfg)


def run_suite(cfg: SuiteConfig, parallel: bool = False) -> tuple[list, int]:
    """Run the configured suites in order; returns (reports, exit code)."""
    if parallel and len(cfg.checks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor() as pool:
            futures = [pool.submit(run_one, name, cfg) for name in cfg.checks]
            groups = [f.result() for f in futures]
    else:
        groups = [run_one(name, cfg) for name in cfg.checks]
    reports = [r for group in groups for r in group]
    return reports, 0 if all(r.passed for r in reports) else 1
