"""
Verify Command
Cross-checks between independent computation paths, grouped into suites.

Mandatory checks decide the exit code. Checks on displays whose printed form
is known to disagree with the recomputed value run as informational.
"""

import argparse
import json
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from brillnoether import BNSetup, gp_chain_report, koszul_ABB, verify_vandermonde
from config import get_settings
from errors import EXIT_OK, EXIT_VERIFY_FAILED, ParameterRange
from formulas import (
    KoszulSetup,
    bn_corollary_slope,
    ehpetri_ratio,
    emitted_mg_classes,
    gp_class,
    gp_slope,
    harris_morrison_bound,
    khosla_b0,
    khosla_slope_display,
    koszul_bound_check,
    koszul_slope,
    lin_b1t_report,
    lin_recursion_check,
    lin_symmetry_check,
    logan_check,
    mrc_c0n_check,
    mrc_class,
    mrc_remark_class,
    nfold_bn_w_check,
    pencil_relation,
    pointed2_check,
    rank_identity_check,
    section5_vectors,
    syz_class,
    two_cover_slope,
    wahl_class,
)
from grassmann import (
    GrassmannianAmbient,
    barC1_lin_pairing,
    barC1_lin_pairing_closed,
    barCjt_lin_pairing,
    castelnuovo,
    castelnuovo_rs,
    limitlinj_counts,
    lin_one_total_ramification,
    schubert_number_lr,
    schubert_oracle_sweep,
    schubert_sum_identity,
)
from models import CheckResult, VerificationReport
from moduli import khosla_bj_range, khosla_bj_via_pairing, lin_one_class, pointed_lin_via_bn_w, slope
from numeric import determinant, determinant_bareiss, inv_factorial_or_zero, vandermonde_reciprocal

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Grid:
    schubert_dim: int
    vandermonde_r: range
    vandermonde_s: range
    koszul_s: range
    koszul_i: range
    series_i: range
    koszul_chain: Tuple[Tuple[int, int], ...]
    gp_r: range
    gp_s: range
    gp_chain: Tuple[Tuple[int, int], ...]
    petri_r: range
    lin_r: range
    lin_s: range
    logan_r: range
    pointed2_r: range
    sum_r: range
    sum_s: range
    mrc_g: range
    mrc_r: range
    khosla_s: Tuple[int, ...]
    nfold_g: range


GRIDS: Dict[str, Grid] = {
    "small": Grid(
        schubert_dim=9, vandermonde_r=range(2, 4), vandermonde_s=range(2, 4),
        koszul_s=range(2, 5), koszul_i=range(0, 4), series_i=range(0, 11), koszul_chain=((2, 0),),
        gp_r=range(1, 4), gp_s=range(2, 4), gp_chain=((2, 2),), petri_r=range(1, 5),
        lin_r=range(1, 3), lin_s=range(1, 3), logan_r=range(2, 5), pointed2_r=range(1, 4),
        sum_r=range(1, 3), sum_s=range(1, 3), mrc_g=range(3, 6), mrc_r=range(1, 3),
        khosla_s=(2, 3), nfold_g=range(3, 8),
    ),
    "default": Grid(
        schubert_dim=12, vandermonde_r=range(2, 6), vandermonde_s=range(2, 5),
        koszul_s=range(2, 11), koszul_i=range(0, 11), series_i=range(0, 31), koszul_chain=((2, 0), (2, 1), (3, 0)),
        gp_r=range(1, 7), gp_s=range(2, 6), gp_chain=((2, 2), (2, 3), (3, 2), (3, 3)), petri_r=range(1, 9),
        lin_r=range(1, 4), lin_s=range(1, 4), logan_r=range(2, 9), pointed2_r=range(1, 7),
        sum_r=range(1, 3), sum_s=range(1, 4), mrc_g=range(3, 8), mrc_r=range(1, 4),
        khosla_s=(2, 3, 4), nfold_g=range(3, 12),
    ),
    "large": Grid(
        schubert_dim=16, vandermonde_r=range(2, 6), vandermonde_s=range(2, 5),
        koszul_s=range(2, 11), koszul_i=range(0, 11), series_i=range(0, 31),
        koszul_chain=((2, 0), (2, 1), (3, 0)),
        gp_r=range(1, 7), gp_s=range(2, 6), gp_chain=((2, 2), (2, 3), (3, 2), (3, 3)), petri_r=range(1, 9),
        lin_r=range(1, 5), lin_s=range(1, 4), logan_r=range(2, 9), pointed2_r=range(1, 9),
        sum_r=range(1, 3), sum_s=range(1, 4), mrc_g=range(3, 8), mrc_r=range(1, 4),
        khosla_s=(2, 3, 4), nfold_g=range(3, 20),
    ),
}


class _Checks:
    """Collects CheckResults for one suite"""

    def __init__(self, suite: str):
        self.suite = suite
        self.results: List[CheckResult] = []

    def add(self, name: str, ok: bool, detail: Optional[str] = None, **parameters: Any) -> None:
        status = "pass" if ok else "fail"
        if not ok:
            logger.error(f"[{self.suite}] {name} {parameters} failed: {detail}")
        self.results.append(CheckResult(suite=self.suite, name=name, parameters=parameters, status=status, detail=detail))

    def add_status(self, name: str, status: str, detail: Optional[str] = None, **parameters: Any) -> None:
        if status == "fail":
            logger.error(f"[{self.suite}] {name} {parameters} failed: {detail}")
        self.results.append(CheckResult(suite=self.suite, name=name, parameters=parameters, status=status, detail=detail))

    def inform(self, name: str, holds: bool, detail: str, **parameters: Any) -> None:
        if not holds:
            logger.warning(f"[{self.suite}] {name} {parameters}: {detail}")
        self.results.append(CheckResult(
            suite=self.suite, name=name, parameters=parameters, status="informational",
            mandatory=False, detail=f"{'holds' if holds else 'differs'}: {detail}",
        ))

    def equal(self, name: str, computed: Any, expected: Any, **parameters: Any) -> None:
        self.add(name, computed == expected, f"computed {computed}, expected {expected}", **parameters)


def _rs_pairs(rs: range, ss: range) -> List[Tuple[int, int]]:
    # g = rs+s = 2 leaves the pointed classes undefined
    return [(r, s) for r in rs for s in ss if r * s + s != 2]


# Suites
def suite_schubert(grid: Grid) -> List[CheckResult]:
    checks = _Checks("schubert")
    per_ambient: Dict[str, List[int]] = defaultdict(lambda: [0, 0])
    mismatches: Dict[str, List[str]] = defaultdict(list)
    for point in schubert_oracle_sweep(grid.schubert_dim):
        key = str(point.ambient)
        per_ambient[key][0] += 1
        if point.agrees:
            per_ambient[key][1] += 1
        else:
            mismatches[key].append(f"{point.alpha} g={point.g}: closed {point.closed}, LR {point.lr}")
    for key, (total, agreeing) in per_ambient.items():
        checks.add("closed_vs_lr", total == agreeing, f"{agreeing}/{total} indices agree; {mismatches[key][:3]}", ambient=key)

    for (g, r, d), expected in (((4, 1, 3), 2), ((6, 1, 4), 5), ((10, 4, 12), 42)):
        checks.equal("castelnuovo", castelnuovo(g, r, d), expected, g=g, r=r, d=d)
    for g, r, d in ((4, 1, 3), (6, 1, 4)):
        checks.equal("castelnuovo_lr", schubert_number_lr((0,) * (r + 1), g, GrassmannianAmbient(r, d)),
                     castelnuovo(g, r, d), g=g, r=r, d=d)
    for (g, r, d), expected in (((4, 1, 3), 24), ((2, 1, 2), 6), ((10, 4, 12), 10080)):
        checks.equal("total_ramification", lin_one_total_ramification(g, r, d), expected, g=g, r=r, d=d)

    for r in range(2, 5):
        for s in range(1, 4):
            checks.equal("barC1_sum_vs_closed", barC1_lin_pairing(r, s), barC1_lin_pairing_closed(r, s), r=r, s=s)

    for r, s in _rs_pairs(grid.sum_r, grid.sum_s):
        g, n = r * s + s, castelnuovo_rs(r, s)
        variants = {("j", "zero"): 0, ("rj", "proof_text"): 0}
        points = 0
        for j in range(1, g):
            for t in range(1, r + 2):
                identity = schubert_sum_identity(r, s, j, t)
                checks.add("schubert_sum", identity.holds, f"{identity.rhs} vs N={identity.lhs} ({identity.constraint_used})",
                           r=r, s=s, j=j, t=t)
                points += 1
                for constraint, lower in variants:
                    variants[(constraint, lower)] += schubert_sum_identity(r, s, j, t, constraint, lower).holds
                if j >= 2:
                    weighted = barCjt_lin_pairing(r, s, j, t)
                    floor = Fraction(n * (t - 1) * j, t)
                    checks.add("barCjt_floor", weighted >= floor, f"{weighted} >= {floor}", r=r, s=s, j=j, t=t)
        for (constraint, lower), held in variants.items():
            checks.inform(f"schubert_sum_{constraint}_{lower}", held == points,
                          f"reproduces N at {held}/{points} points", r=r, s=s)

    for r, s in _rs_pairs(grid.sum_r, grid.sum_s):
        g = r * s + s
        for j in range(g // 2, g - 1):
            table = limitlinj_counts(r, s, j)
            counts = [c for _, c in table.n_counts + table.m_counts + table.q_counts]
            checks.add("limitlinj_nonnegative", all(c >= 0 for c in counts), f"{len(counts)} counts", r=r, s=s, j=j)
            m_total = sum(c for _, c in table.m_counts)
            checks.inform("limitlinj_m_counts", m_total == 0, f"sum of M counts {m_total}", r=r, s=s, j=j)
    return checks.results


def _reciprocal_matrix(a: Sequence[int]) -> List[List[Fraction]]:
    n = len(a)
    return [[inv_factorial_or_zero(x + l) for l in range(n)] for x in a]


def suite_vandermonde(grid: Grid) -> List[CheckResult]:
    checks = _Checks("vandermonde")
    for n in range(1, 7):
        for a in list(combinations(range(0, n + 3), n))[:6]:
            matrix = _reciprocal_matrix(a)
            expected = vandermonde_reciprocal(a)
            checks.equal("reciprocal_determinant", determinant(matrix), expected, a=list(a))
            checks.equal("bareiss_determinant", determinant_bareiss(matrix), expected, a=list(a))
    for r in grid.vandermonde_r:
        for s in grid.vandermonde_s:
            report = verify_vandermonde(BNSetup(r, s))
            for identity in report.checks:
                checks.add_status(identity.name, identity.status, f"{identity.lhs} vs {identity.rhs}", r=r, s=s)
    return checks.results


def suite_koszul(grid: Grid) -> List[CheckResult]:
    checks = _Checks("koszul")
    checks.equal("slope", koszul_slope(2, 0), Fraction(7), s=2, i=0)
    for i in grid.series_i:
        checks.equal("bn_corollary", koszul_slope(1, i), bn_corollary_slope(i), s=1, i=i)
        checks.equal("two_cover", koszul_slope(2, i), two_cover_slope(i), s=2, i=i)
    for s in range(1, 11):
        checks.equal("khosla_display", koszul_slope(s, 0), khosla_slope_display(s), s=s, i=0)
    for s in grid.koszul_s:
        for i in grid.koszul_i:
            g = KoszulSetup(s, i).g
            checks.add("bound", koszul_bound_check(s, i),
                       f"6 < {koszul_slope(s, i)} < {harris_morrison_bound(g)}", s=s, i=i)
            checks.add("rank_identity", rank_identity_check(s, i), None, s=s, i=i)
    for s, i in grid.koszul_chain:
        coefficients = koszul_ABB(s, i)
        checks.equal("harris_tu_slope", coefficients.slope, koszul_slope(s, i), s=s, i=i)
        checks.equal("harris_tu_pencil", coefficients.A - 12 * coefficients.B0 + coefficients.B1, 0, s=s, i=i)
    return checks.results


def suite_gp(grid: Grid) -> List[CheckResult]:
    checks = _Checks("gp")
    for r in grid.gp_r:
        for s in grid.gp_s:
            checks.equal("slope_identity", slope(gp_class(r, s)).s_b0, gp_slope(r, s), r=r, s=s)
            g = r * s + s
            checks.add("slope_ge_bound", gp_slope(r, s) >= harris_morrison_bound(g), None, r=r, s=s)
    for r in grid.petri_r:
        checks.equal("ehpetri", gp_slope(r, 2), ehpetri_ratio(r), r=r, s=2)
    checks.equal("petri_M4", gp_slope(1, 2), Fraction(17, 2), r=1, s=2)
    for r, s in grid.gp_chain:
        report = gp_chain_report(r, s)
        checks.equal("chain_b0", report.b0_chain, report.b0_closed, r=r, s=s)
        checks.equal("chain_b1", report.b1_chain, report.b1_closed, r=r, s=s)
    return checks.results


def suite_lin(grid: Grid) -> List[CheckResult]:
    checks = _Checks("lin")
    for r in grid.logan_r:
        comparison = logan_check(r)
        for entry in comparison.entries:
            if entry.mandatory:
                checks.equal(f"logan_{entry.name}", entry.computed, entry.printed, r=r)
            else:
                checks.inform(f"logan_printed_{entry.name}", entry.agrees,
                              f"recursion {entry.computed}, display {entry.printed}", r=r)
    for r in grid.pointed2_r:
        for entry in pointed2_check(r).entries:
            if entry.mandatory:
                checks.equal(f"pointed2_{entry.name}", entry.computed, entry.printed, r=r)
            else:
                checks.inform(f"pointed2_{entry.name}", entry.agrees, f"class {entry.computed}, display {entry.printed}", r=r)
    for r, s in _rs_pairs(grid.lin_r, grid.lin_s):
        g = r * s + s
        for j, t in [(0, t) for t in range(3, r + 2)] + [(1, t) for t in range(1, r + 2)]:
            checks.add("recursion", lin_recursion_check(r, s, j, t), None, r=r, s=s, j=j, t=t)
        if r <= 2 and s <= 2:
            for j in range(1, g):
                checks.add("symmetry", lin_symmetry_check(r, s, j), None, r=r, s=s, j=j)
        bridge = lin_one_class(r, s)
        checks.add("mu_nu_bridge", bridge.consistent,
                   f"N(mu, nu) = ({bridge.n_castelnuovo * bridge.mu}, {bridge.n_castelnuovo * bridge.nu}), "
                   f"pointed ({bridge.mu_pointed}, {bridge.nu_pointed})", r=r, s=s)
        via = pointed_lin_via_bn_w(r, s)
        checks.add("bn_w", via.agrees,
                   f"lambda {via.lam_from_bn_w}/{via.lam_from_class}, b_irr {via.irr_from_bn_w}/{via.irr_from_class}",
                   r=r, s=s)
        for entry in lin_b1t_report(r, s):
            checks.inform(f"printed_{entry.name}", entry.agrees,
                          f"recursion {entry.computed}, display {entry.printed}", r=r, s=s)
    return checks.results


def suite_mrc(grid: Grid) -> List[CheckResult]:
    checks = _Checks("mrc")
    for g in grid.mrc_g:
        for r in grid.mrc_r:
            remark = mrc_remark_class(g, r)
            cls = mrc_class(g, r, 0)
            for name in ("lam", "psi", "d_irr"):
                checks.equal(f"remark_{name}", cls.scaled(name), remark.scaled(name), g=g, r=r)
            checks.equal("remark_delta_0:2", cls.scale * cls.delta(0, 2).value, remark.delta(0, 2).value, g=g, r=r)
            for i in range(0, g + 1):
                if (2 * r + 1) * (g - 1) - 2 * i < 1:
                    continue
                check = mrc_c0n_check(g, r, i)
                checks.equal("c0n_chain", check.from_class, check.from_chain, g=g, r=r, i=i)
    return checks.results


def suite_identities(grid: Grid) -> List[CheckResult]:
    checks = _Checks("identities")
    for cls in emitted_mg_classes(grid.koszul_chain, grid.gp_r, grid.gp_s, grid.khosla_s):
        relation = pencil_relation(cls)
        checks.add("pencil_relation", relation == 0, f"a - 12 b_0 + b_1 = {relation}", label=cls.label)
    for g in grid.nfold_g:
        for n in range(1, g + 6):
            if (g + n) % 2 or (g + n) // 2 == g:
                continue
            comparison = nfold_bn_w_check(g, n)
            for entry in comparison.entries:
                if entry.mandatory:
                    checks.equal(f"nfold_{entry.name}", entry.computed, entry.printed, g=g, n=n)
                else:
                    checks.inform(f"nfold_{entry.name}", entry.agrees, f"mu/nu route {entry.computed}, display {entry.printed}",
                                  g=g, n=n)
    return checks.results


def suite_khosla(grid: Grid) -> List[CheckResult]:
    checks = _Checks("khosla")
    checks.equal("b0_per_castelnuovo", khosla_b0(2), Fraction(1), s=2)
    for s in grid.khosla_s:
        b0 = khosla_b0(s)
        for j in khosla_bj_range(s):
            bj = khosla_bj_via_pairing(s, j)
            checks.equal("bj_pairing_vs_closed", bj.via_pairing, bj.closed, s=s, j=j)
            checks.add("bj_ge_b0", bj.closed >= b0, f"{bj.closed} >= {b0}", s=s, j=j)
            checks.inform("bj_literal_normalization", bj.literal == bj.closed,
                          f"literal {bj.literal}, closed {bj.closed}", s=s, j=j)
    return checks.results


def suite_vectors(grid: Grid) -> List[CheckResult]:
    checks = _Checks("vectors")
    for vector in section5_vectors():
        checks.add(vector.name, vector.agrees, f"computed {vector.computed}, printed {vector.printed}", g=vector.g, n=vector.n)
    for (g, i), (n, lam, psi) in {(6, 0): (10, Fraction(-15, 4), Fraction(9, 4)), (5, 1): (10, -14, 7)}.items():
        points, cls = syz_class(g, i)
        checks.equal("syz_n", points, n, g=g, i=i)
        checks.equal("syz_lambda", cls.scaled("lam"), lam, g=g, i=i)
        checks.equal("syz_psi", cls.scaled("psi"), psi, g=g, i=i)
    for g, (n, lam) in {1: (5, -3), 2: (7, -4), 5: (12, -6)}.items():
        points, cls = wahl_class(g)
        checks.equal("wahl_n", points, n, g=g)
        checks.equal("wahl_lambda", cls.scaled("lam"), lam, g=g)
    return checks.results


SUITES: Dict[str, Callable[[Grid], List[CheckResult]]] = {
    "schubert": suite_schubert,
    "vandermonde": suite_vandermonde,
    "koszul": suite_koszul,
    "gp": suite_gp,
    "lin": suite_lin,
    "mrc": suite_mrc,
    "identities": suite_identities,
    "khosla": suite_khosla,
    "vectors": suite_vectors,
}


def run_suite(suite: str, grid_name: str) -> VerificationReport:
    if suite != "all" and suite not in SUITES:
        raise ParameterRange(f"unknown suite {suite!r}", {"suites": ["all"] + sorted(SUITES)})
    grid = GRIDS.get(grid_name)
    if grid is None:
        raise ParameterRange(f"unknown grid {grid_name!r}", {"grids": sorted(GRIDS)})
    names = list(SUITES) if suite == "all" else [suite]
    checks: List[CheckResult] = []
    for name in names:
        logger.info(f"Running suite {name} on the {grid_name} grid")
        results = SUITES[name](grid)
        logger.info(f"Suite {name}: {len(results)} checks")
        checks += results
    return VerificationReport.build(get_settings().output_version, suite, grid_name, checks)


def format_report(report: VerificationReport) -> str:
    lines = []
    for check in report.checks:
        point = " ".join(f"{k}={v}" for k, v in check.parameters.items())
        tail = f"  ({check.detail})" if check.detail and check.status != "pass" else ""
        lines.append(f"{check.status.upper():<13} {check.suite}/{check.name} {point}{tail}")
    summary = {"suite": report.suite, "grid": report.grid, "passed": report.passed,
               "failed": report.failed, "inconclusive": report.inconclusive,
               "informational": report.informational}
    lines.append(json.dumps(summary, sort_keys=True))
    return "\n".join(lines)


def run(args: argparse.Namespace) -> int:
    grid_name = args.grid or get_settings().default_grid
    report = run_suite(args.suite, grid_name)
    print(format_report(report))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as handle:
            handle.write(report.model_dump_json(indent=2) + "\n")
        logger.info(f"Wrote report to {args.json}")
    if not report.ok:
        logger.error(f"{report.failed} mandatory check(s) failed")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="run the cross-check suites")
    parser.add_argument("suite", choices=["all"] + sorted(SUITES))
    parser.add_argument("--grid", choices=sorted(GRIDS), default=None)
    parser.add_argument("--json", default=None, help="write the full report as JSON")
    parser.set_defaults(handler=run)
