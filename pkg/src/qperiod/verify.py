"""Named verification checks with machine-readable results.

Each check returns CheckResult records with the measured residual and
the tolerance it was held to; ``run_suite`` builds the expensive shared
inputs once and executes every check.  The full suite reproduces the
published tables and constants at their stated tolerances.

Two sub-checks of the Borel slice table are known to fail: the published
last slice (and therefore the published 12-slice total) carries its own
inner-truncation error of ~1.8e-7.  The converged value is computed here
by two independent routes; cutting the inner series at ~110 terms
reproduces the published digits exactly.  The checks assert the
published values faithfully and report the discrepancy rather than
papering over it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from mpmath import mp, mpc, mpf

from . import reference as ref
from .exact import Polynomial, rational_from_string
from .highprec import parse_complex
from .moments import (MomentVector, blt_eval, c0_constant, hausdorff_alpha,
                      moments_solve, p_moment)
from .period import (HTerm, QTerm, borel_m2, borel_slices, contour_check,
                     contraction_double_sum, feq_residual, g_closed_p2,
                     g_reduce_eval, g_stieltjes, g_via_h, h_series,
                     integral_eq_residual, lmap_det, lmap_det_formula, q_series)
from .ptree import (curve_sample, mu_ab, mu_chain_bound, mu_table, pcf_expand,
                    stieltjes_measure, x_map_feq_residual)
from .qmark import cw_generation, minkowski_f


@dataclass(frozen=True)
class CheckResult:
    check: str
    passed: bool
    residual: Optional[float]
    tolerance: Optional[float]
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        parts = [f"{status}  {self.check}"]
        if self.residual is not None:
            parts.append(f"residual={self.residual:.3e}")
        if self.tolerance is not None:
            parts.append(f"tol={self.tolerance:.0e}")
        if self.detail:
            parts.append(self.detail)
        return "  ".join(parts)

    def to_json_dict(self) -> dict:
        return {
            "check": self.check,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "detail": self.detail,
        }


def _within(name: str, value, target, tol, detail: str = "") -> CheckResult:
    resid = float(abs(mp.mpmathify(value) - mp.mpmathify(target)))
    return CheckResult(name, resid <= tol, resid, float(tol), detail)


def _exact(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, ok, None, None, detail)


# ---------------------------------------------------------------------------
# individual checks (shared inputs are passed in)
# ---------------------------------------------------------------------------


def check_h_table(terms: Sequence[HTerm]) -> List[CheckResult]:
    out = []
    for n, coeffs in ref.B_POLYS.items():
        want = Polynomial([rational_from_string(c) for c in coeffs])
        out.append(_exact(f"series numerator n={n} exact",
                          terms[n].numerator == want))
    return out


def check_hprime_values(terms: Sequence[HTerm]) -> List[CheckResult]:
    out = []
    for n, want in ref.HPRIME0.items():
        out.append(_exact(f"term slope at 0, n={n} exact",
                          terms[n].dz0() == want))
    return out


def check_hprime_partial_sums(terms: Sequence[HTerm]) -> List[CheckResult]:
    out = []
    with mp.workprec(128):
        for n_max, digits in ref.HPRIME0_PARTIAL_SUMS.items():
            total = sum((-1) ** n * terms[n].dz0() for n in range(n_max + 1))
            val = mpf(total.numerator) / total.denominator
            out.append(_within(f"alternating slope sum N={n_max}", val,
                               mpf(digits), 1e-9))
    return out


def check_det_law(n_max: int = 30) -> List[CheckResult]:
    ok = all(lmap_det(n) == lmap_det_formula(n) for n in range(1, n_max + 1))
    return [_exact(f"linear-map determinant law n<=value {n_max}", ok)]


def check_moments(mv: MomentVector) -> List[CheckResult]:
    out = []
    with mp.workprec(mv.prec + 16):
        out.append(_within("m1 equals 1/2", mv.m(1), mpf(1) / 2, mpf(10) ** -50))
        for L, digits in ((2, ref.M2_DIGITS), (3, ref.M3_DIGITS), (4, ref.M4_DIGITS)):
            out.append(_within(f"m{L} to 58 digits", mv.m(L), mpf(digits),
                               mpf(10) ** -58))
        out.append(_within("3 m2 - 2 m3 equals 1/2", 3 * mv.m(2) - 2 * mv.m(3),
                           mpf(1) / 2, mpf(10) ** -50))
    return out


def check_constants(mv: MomentVector) -> List[CheckResult]:
    out = []
    with mp.workprec(mv.prec + 16):
        alpha = hausdorff_alpha(mv)
        out.append(_within("dimension constant to 36 digits", alpha,
                           mpf(ref.ALPHA_DIGITS), mpf(10) ** -36))
        lo, hi = (mpf(x) for x in ref.ALPHA_BRACKET_COARSE)
        out.append(_exact("dimension constant inside coarse bracket",
                          lo < alpha < hi))
        lo, hi = (mpf(x) for x in ref.ALPHA_BRACKET_FINE)
        out.append(_exact("dimension constant inside fine bracket",
                          lo < alpha < hi))
        out.append(_within("scale constant to 25+ digits", c0_constant(mv),
                           mpf(ref.C0_DIGITS), mpf(10) ** -25))
    return out


def check_g_cross_validation(mv: MomentVector, terms: Sequence[HTerm],
                             cells: int = 3560) -> List[CheckResult]:
    out = []
    prec = 160
    with mp.workprec(prec):
        z0 = mpc(mpf(2) / 3, 4)
        reduce_val = g_reduce_eval(z0, mv, prec=mv.prec)
        re_s, im_s = (mpf(x) for x in ref.GZ0_REDUCE)
        out.append(_within("resolvent at z0: reduction (real)", reduce_val.real, re_s, 2e-6))
        out.append(_within("resolvent at z0: reduction (imag)", reduce_val.imag, im_s, 2e-6))
        series_val, _ = g_via_h(z0, terms, prec=prec)
        re_s, im_s = (mpf(x) for x in ref.GZ0_SERIES_60)
        out.append(_within("resolvent at z0: series N=60 (real)", series_val.real, re_s, 2e-6))
        out.append(_within("resolvent at z0: series N=60 (imag)", series_val.imag, im_s, 2e-6))
        st_val = g_stieltjes(z0, 1, cells=cells, prec=128)
        out.append(_within("resolvent at z0: integral vs reduction",
                           st_val, reduce_val, 1e-4,
                           detail="4-decimal agreement required"))
    return out


def check_q_tables(qterms: Sequence[QTerm]) -> List[CheckResult]:
    out = []
    for n, coeffs in ref.D_POLYS.items():
        want = Polynomial([rational_from_string(c) for c in coeffs])
        out.append(_exact(f"palindromic core n={n} exact", qterms[n].core == want))
    ok = all(qterms[n].dz_m1 == want for n, want in ref.QPRIME_M1.items())
    out.append(_exact("slope table at -1 exact for n<=31", ok))
    return out


def check_borel(qterms: Sequence[QTerm], prec: int = 320) -> List[CheckResult]:
    out = []
    res = borel_m2(qterms, n_max=min(130, len(qterms) - 1), r_max=11, prec=prec)
    with mp.workprec(prec):
        for r in range(11):
            out.append(_within(f"resummation slice r={r}", res.slice_sums[r],
                               mpf(ref.BOREL_THETAS[r]), 1e-8))
        out.append(_within(
            "resummation slice r=11 (published)", res.slice_sums[11],
            mpf(ref.BOREL_THETAS[11]), 1e-8,
            detail=(f"known discrepancy: converged value "
                    f"{ref.BOREL_SLICE11_CONVERGED}; the published digits "
                    f"reappear when the inner series is cut at ~110 terms")))
        out.append(_within(
            "resummation total over 12 slices (published)", res.total,
            mpf(ref.BOREL_TOTAL_12), 1e-9,
            detail=f"known discrepancy inherited from slice 11; converged "
                   f"total {ref.BOREL_TOTAL_12_CONVERGED}"))
        toy = borel_slices(lambda n: Fraction(-2) ** n, 80, 10, prec=prec)
        out.append(_within("geometric resummation toy equals 1/3", toy.total,
                           mpf(1) / 3, 1e-10))
    return out


def check_mu_table(grid_size: int = 2000, prec: int = 128) -> List[CheckResult]:
    out = []
    table = mu_table(max_a=6, max_b=15, grid_size=grid_size, prec=prec)
    with mp.workprec(prec):
        worst = mpf(0)
        worst_key = None
        for b, row in ref.MU_TABLE_ROWS.items():
            for a, digits in enumerate(row, start=1):
                d = abs(table[(a, b)] - mpf(digits))
                if d > worst:
                    worst, worst_key = d, (a, b)
        out.append(CheckResult("sup-constant table (96 entries)",
                               float(worst) <= 1e-6, float(worst), 1e-6,
                               detail=f"worst entry {worst_key}"))
        bound = mu_chain_bound(table)
        out.append(_exact("chained sup bound below 0.76",
                          bound < mpf(ref.MU_CHAIN_BOUND),
                          detail=f"bound {mp.nstr(bound, 9)}"))
    return out


def check_pcf_examples(prec: int = 512) -> List[CheckResult]:
    out = []
    with mp.workprec(prec):
        golden = (1 + mp.sqrt(1 + 4 * mpf("1.5"))) / (2 * mpf("1.5"))
        got = pcf_expand(golden, mpf("1.5"), max_iter=80, prec=prec)
        out.append(_exact("expansion of the golden analogue is all ones",
                          got.quotients[:20] == (1,) * 20))
        got = pcf_expand(mp.sqrt(3), Fraction(3, 2), max_iter=200, prec=prec)
        out.append(_exact("expansion of sqrt(3) at base 3/2 (21 quotients)",
                          got.quotients[:21] == ref.PCF_SQRT3_BASE_3_2))
        got = pcf_expand(2, mp.sqrt(2), max_iter=80, prec=prec)
        want = ref.PCF_TWO_BASE_SQRT2_PREFIX + ref.PCF_TWO_BASE_SQRT2_PERIOD * 6
        out.append(_exact("expansion of 2 at base sqrt(2) is periodic (2,1,1)",
                          got.quotients[:len(want)] == want))
    return out


def _grid_points(count: int = 20):
    # centered in the left half plane: every reduction argument stays well
    # inside the unit disc and off the cut
    return [mpc(-0.4, 0) + mpf("0.3") * mp.expjpi(mpf(2 * k) / count)
            for k in range(count)]


def check_feq_suite(mv: MomentVector, cells: int = 4000) -> List[CheckResult]:
    out = []
    grid = _grid_points(20)
    with mp.workprec(mv.prec):
        worst = mpf(0)
        for z in grid:
            worst = max(worst, feq_residual(1, z, lambda w: g_reduce_eval(w, mv),
                                            prec=mv.prec))
        out.append(CheckResult("three-term equation p=1 (moment grade, 20 points)",
                               float(worst) <= 1e-30, float(worst), 1e-30))
    with mp.workprec(256):
        worst = mpf(0)
        for z in grid:
            worst = max(worst, feq_residual(2, z, g_closed_p2, prec=256))
        out.append(CheckResult("three-term equation p=2 (closed form, 20 points)",
                               float(worst) <= 1e-30, float(worst), 1e-30))
    for p in (mpf("1.5"), mpf(3)):
        measure = stieltjes_measure(p, cells, 128)
        with mp.workprec(128):
            worst = mpf(0)
            for z in grid:
                worst = max(worst, feq_residual(p, z, measure.resolvent, prec=128))
        out.append(CheckResult(f"three-term equation p={p} (integration grade)",
                               float(worst) <= 1e-3, float(worst), 1e-3))
    rng = random.Random(20260811)
    with mp.workprec(192):
        worst = mpf(0)
        for _ in range(20):
            radius = math.sqrt(rng.random())
            angle = rng.random()
            p = 2 + radius * mp.expjpi(2 * angle)
            quots = tuple(rng.randint(1, 8) for _ in range(44))
            worst = max(worst, x_map_feq_residual(p, quots, depth=60, prec=192))
        out.append(CheckResult("conjugation-map equations (20 random points)",
                               float(worst) <= 1e-8, float(worst), 1e-8))
    for p in (1, mpf("1.5"), mpf(3)):
        with mp.workprec(128):
            m1 = p_moment(p, 1, cells=cells, prec=128)
            out.append(_within(f"first moment equals p/2 at p={p}", m1,
                               mp.mpmathify(p) / 2, 1e-3))
            measure = stieltjes_measure(p, cells, 128)
            big_m1 = measure.full_moment(1)
            pp = mp.mpmathify(p)
            out.append(_within(f"first full moment closed form at p={p}", big_m1,
                               (pp ** 2 + 2) / (4 * pp - 2), 1e-3))
    return out


def check_analysis(mv: MomentVector, cells: int = 4000) -> List[CheckResult]:
    out = []
    with mp.workprec(256):
        val = contour_check(2, 8, 512, g_closed_p2, prec=256)
        out.append(_within("contour residue p=2", val, -1, 1e-30))
    val = contour_check(1, 24, 2048, lambda z: g_reduce_eval(z, mv, prec=192),
                        prec=192)
    out.append(_within("contour residue p=1", val, -1, 1e-6,
                       detail="radius 24: enclosed mass differs from 1 by 2^-23"))
    measure = stieltjes_measure(mpf("1.5"), cells, 128)
    val = contour_check(mpf("1.5"), 8, 1024, measure.resolvent, prec=128)
    out.append(_within("contour residue p=1.5", val, -1, 1e-2))
    r = integral_eq_residual(2, 1, t_max=80, prec=256)
    out.append(CheckResult("integral equation p=2 (classical identity)",
                           float(r) <= 1e-10, float(r), 1e-10))
    for s in (mpf("0.5"), mpf(1), mpf(2)):
        r = integral_eq_residual(1, s, mv=mv, t_max=100, prec=mv.prec)
        out.append(CheckResult(f"integral equation p=1 at s={s}",
                               float(r) <= 1e-4, float(r), 1e-4))
    val = contraction_double_sum(128)
    out.append(_within("contraction double sum", val,
                       mpf(ref.CONTRACTION_CONSTANT), 5e-6))
    out.append(_exact("contraction double sum below 1", val < 1))
    return out


def check_tree_basics() -> List[CheckResult]:
    gen4 = [str(x) for x in cw_generation(4)]
    ok = gen4 == [str(rational_from_string(s)) for s in ref.CW_GENERATION_4]
    out = [_exact("fourth tree generation exact", ok)]
    ok = all(minkowski_f(q) + minkowski_f(1 / q) == 1
             for q in cw_generation(8))
    out.append(_exact("distribution symmetry on generation 8", ok))
    return out


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def run_suite(suite: str = "full", progress=None) -> List[CheckResult]:
    """Run a verification suite; returns every CheckResult.

    ``full`` reproduces the published numbers at publication scale
    (truncation order 325 at 512 bits, 60 series terms, 130 inner
    resummation terms; takes a couple of minutes).  ``quick`` is a
    reduced smoke suite.
    """

    def say(msg):
        if progress:
            progress(msg)

    results: List[CheckResult] = []
    if suite == "full":
        say("solving the order-325 moment system at 512 bits ...")
        mv = moments_solve(order=325, prec=512)
        say("generating 60 exact series terms ...")
        terms = h_series(60)
        say("generating 130 exact resummation terms ...")
        qterms = q_series(130)
        say("running checks ...")
        results += check_h_table(terms)
        results += check_hprime_values(terms)
        results += check_hprime_partial_sums(terms)
        results += check_det_law(30)
        results += check_moments(mv)
        results += check_constants(mv)
        results += check_g_cross_validation(mv, terms)
        results += check_q_tables(qterms)
        results += check_borel(qterms)
        results += check_mu_table()
        results += check_pcf_examples()
        results += check_feq_suite(mv)
        results += check_analysis(mv)
        results += check_tree_basics()
    elif suite == "quick":
        say("solving the order-120 moment system at 320 bits ...")
        mv = moments_solve(order=120, prec=320)
        say("generating series terms ...")
        terms = h_series(25)
        qterms = q_series(31)
        say("running checks ...")
        results += check_h_table(terms)
        results += [r for r in check_hprime_values(terms)]
        results += check_det_law(10)
        with mp.workprec(336):
            results.append(_within("m1 equals 1/2 (order 120)", mv.m(1),
                                   mpf(1) / 2, mpf(10) ** -30))
            results.append(_within("m2 to 30 digits (order 120)", mv.m(2),
                                   mpf(ref.M2_DIGITS), mpf(10) ** -30))
            results.append(_within("dimension constant to 15 digits (order 120)",
                                   hausdorff_alpha(mv), mpf(ref.ALPHA_DIGITS),
                                   mpf(10) ** -15))
        results += check_q_tables(qterms)
        results += check_pcf_examples(prec=256)
        results += check_tree_basics()
        for (a, b, digits) in ((1, 1, "0.25000000"), (2, 2, "0.03125000"),
                               (1, 2, "0.29846114"), (3, None, "0.05479177")):
            results.append(_within(f"sup constant spot check ({a},{b})",
                                   mu_ab(a, b), mpf(digits), 1e-6))
        val = g_stieltjes(parse_complex("0.6666666667+4i"), 1, cells=1000, prec=128)
        results.append(_within("resolvent at z0 (coarse integral, real part)",
                               val.real, mpf(ref.GZ0_REDUCE[0]), 1e-4))
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return results
