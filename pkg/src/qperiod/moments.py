"""Moments of the Minkowski distribution and derived constants.

The vector (m_1, m_2, ...) of moments of x/(x+1) against dF solves an
infinite linear system with kernel entries (-1)^L Li_{L+s}(1/2) C(L+s-1, s-1);
truncating at order U leaves an error on the order of 2^-U.  The rows of
the truncated system cancel from entries of size C(2U, U) ~ 2^(2U) down to
O(1), so the dense solve runs with 2U + 64 guard bits on top of the
requested output precision.

Also here: the exponential generating functions of the moments, the
Hausdorff-dimension constant of the growth points, the p-moment variants
computed by Stieltjes integration, and the closed-form coefficient family
B_{L,T}(p) with its series cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from mpmath import mp, mpc, mpf

from .errors import DomainError, PoleError, PrecisionError
from .exact import Polynomial
from .highprec import CONSTANTS_PREC, DEFAULT_PREC, polylog_half_table, require_prec
from .ptree import stieltjes_measure

DEFAULT_ORDER = 325


@dataclass(frozen=True)
class MomentVector:
    """Solved moments m_1..m_order plus solve metadata.

    ``residual`` is the componentwise relative backward error of the
    truncated system; ``digits`` estimates the number of correct decimal
    digits (truncation-limited at ~0.30*order).
    """

    order: int
    prec: int
    values: Tuple
    residual: object
    digits: int

    def m(self, order: int):
        """m_order, with m_0 = 1."""
        if order == 0:
            return mpf(1)
        if not 1 <= order <= self.order:
            raise DomainError(f"moment index {order} outside 0..{self.order}")
        return self.values[order - 1]

    def to_json_dict(self) -> dict:
        digits = max(self.digits, 10)
        return {
            "order": self.order,
            "precision_bits": self.prec,
            "residual": mp.nstr(self.residual, 5),
            "values": [mp.nstr(v, digits, strip_zeros=False) for v in self.values],
        }


def _lu_factor(a):
    """In-place LU with partial pivoting over a list-of-lists of mpf."""
    n = len(a)
    piv = list(range(n))
    for k in range(n):
        pk, pv = k, abs(a[k][k])
        for i in range(k + 1, n):
            v = abs(a[i][k])
            if v > pv:
                pk, pv = i, v
        if pv == 0:
            raise PrecisionError("singular truncated system",
                                 recommended_bits=None)
        if pk != k:
            a[k], a[pk] = a[pk], a[k]
            piv[k], piv[pk] = piv[pk], piv[k]
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            m_ik = a[i][k] / akk
            a[i][k] = m_ik
            if m_ik:
                rowi = a[i]
                for j in range(k + 1, n):
                    rowi[j] -= m_ik * rowk[j]
    return piv


def _lu_solve(a, piv, b):
    n = len(a)
    x = [b[piv[i]] for i in range(n)]
    for i in range(1, n):
        rowi = a[i]
        s = x[i]
        for j in range(i):
            s -= rowi[j] * x[j]
        x[i] = s
    for i in range(n - 1, -1, -1):
        rowi = a[i]
        s = x[i]
        for j in range(i + 1, n):
            s -= rowi[j] * x[j]
        x[i] = s / rowi[i]
    return x


def moments_solve(order: int = DEFAULT_ORDER, prec: int = CONSTANTS_PREC) -> MomentVector:
    """Solve the order-``order`` truncation of the moment system.

    ``prec`` is the precision of the returned values; the factorization
    itself runs at prec + 2*order + 64 bits (see the module docstring for
    why the headroom scales with the order).  One step of iterative
    refinement follows the direct solve and the componentwise backward
    error of the refined solution is reported.
    """
    if order < 2:
        raise DomainError("order must be >= 2")
    require_prec(prec)
    work = prec + 2 * order + 64
    c = polylog_half_table(2 * order + 1, work)
    with mp.workprec(work):
        a = []
        rhs = []
        for s in range(1, order + 1):
            row = []
            for ell in range(1, order + 1):
                coef = -c[ell + s] * mpf(math.comb(ell + s - 1, s - 1))
                if ell % 2:
                    coef = -coef
                row.append(coef)
            row[s - 1] += 1
            a.append(row)
            rhs.append(c[s])
        original = [list(row) for row in a]
        piv = _lu_factor(a)
        x = _lu_solve(a, piv, rhs)
        # one refinement step, then the componentwise backward error
        resid = []
        for i in range(order):
            s = rhs[i]
            rowi = original[i]
            for j in range(order):
                s -= rowi[j] * x[j]
            resid.append(s)
        dx = _lu_solve(a, piv, resid)
        x = [x[i] + dx[i] for i in range(order)]
        eta = mpf(0)
        for i in range(order):
            s = rhs[i]
            denom = abs(rhs[i])
            rowi = original[i]
            for j in range(order):
                s -= rowi[j] * x[j]
                denom += abs(rowi[j] * x[j])
            eta = max(eta, abs(s) / denom)
    with mp.workprec(prec):
        values = tuple(+v for v in x)
        eta = +eta
    digits = min(int(prec * math.log10(2)), int(order * math.log10(2))) - 2
    return MomentVector(order=order, prec=prec, values=values,
                        residual=eta, digits=digits)


def _check_transform_arg(t, order: int):
    # factorial decay must have set in by the truncation order; the moment
    # decay adds slack, so t close to order/e is still fine
    if abs(t) > order / math.e - 1:
        raise DomainError(
            f"|t| = {abs(t)} too large for truncation order {order}")


def mgen_eval(t, mv: MomentVector):
    """(m-transform, M-transform) at t from a solved moment vector.

    The second value has simple poles at t = log 2 + 2 pi i n and is
    refused within 1e-6 of them.
    """
    with mp.workprec(mv.prec):
        tt = mp.mpmathify(t)
        _check_transform_arg(tt, mv.order)
        small = _mgen_series(tt, mv)
        log2 = mp.log(2)
        k = mp.nint(mp.im(tt) / (2 * mp.pi)) if mp.im(tt) else 0
        pole = log2 + 2 * mp.pi * mp.mpc(0, 1) * k
        if abs(tt - pole) < mpf("1e-6"):
            raise PoleError(f"t = {tt} within 1e-6 of a pole", where=pole)
        return small, small / (2 - mp.e ** tt)


def _mgen_series(t, mv: MomentVector):
    total = mpf(1)
    term = mp.mpmathify(t) * 0 + 1
    for ell in range(1, mv.order + 1):
        term = term * t / ell
        total += mv.values[ell - 1] * term
    return total


def mgen_derivative(t, mv: MomentVector):
    """d/dt of the m-transform at t: sum m_L t^(L-1)/(L-1)!."""
    with mp.workprec(mv.prec):
        tt = mp.mpmathify(t)
        _check_transform_arg(tt, mv.order)
        total = mv.values[0] * (tt * 0 + 1)
        term = tt * 0 + 1
        for ell in range(2, mv.order + 1):
            term = term * tt / (ell - 1)
            total += mv.values[ell - 1] * term
        return total


def hausdorff_alpha(mv: MomentVector):
    """Dimension of the set of growth points: log2 / (2A) with
    A = log 2 - sum m_L / (L 2^L)."""
    if mv.order < 40:
        raise DomainError("need at least 40 moments for the dimension constant")
    with mp.workprec(mv.prec):
        log2 = mp.log(2)
        s = mpf(0)
        for ell in range(1, mv.order + 1):
            s += mv.values[ell - 1] / (ell * mpf(2) ** ell)
        return log2 / (2 * (log2 - s))


def c0_constant(mv: MomentVector):
    """The asymptotic-scale constant: m-transform at log 2 over 2 log 2."""
    with mp.workprec(mv.prec):
        log2 = mp.log(2)
        return _mgen_series(log2, mv) / (2 * log2)


def p_moment(p, order: int, cells: int = 4000, prec: int = DEFAULT_PREC):
    """m_order(p) by Riemann-Stieltjes integration (2 int_0^1 X^order dF)."""
    if order < 1:
        raise DomainError("moment order must be >= 1")
    return stieltjes_measure(p, cells, prec).moment(order)


# ---------------------------------------------------------------------------
# the closed-form coefficient family B_{L,T}
# ---------------------------------------------------------------------------

def _blt_closed_fraction(level: int, twist: int) -> Tuple[Polynomial, Polynomial]:
    """Numerator/denominator of B_{L,T} as polynomials in p.

    B_{L,T}(p) = p^T sum_s (-1)^s C(L,s) p^s / ((p-1)^L (2 p^(s+T) - 1));
    the numerator carries an order-L zero at p = 1 which is deflated so
    the pair evaluates everywhere on p >= 1, including p = 1 exactly.
    """
    lvl, tw = level, twist
    factors = [Polynomial([-1] + [0] * (s + tw - 1) + [2]) if s + tw else Polynomial([1])
               for s in range(lvl + 1)]
    num = Polynomial.zero()
    for s in range(lvl + 1):
        prod = Polynomial([0] * (tw + s) + [1])  # p^(T+s)
        for s2 in range(lvl + 1):
            if s2 != s:
                prod = prod * factors[s2]
        term = math.comb(lvl, s) * prod
        num = num + (-term if s % 2 else term)
    den = Polynomial.one()
    for s in range(lvl + 1):
        den = den * factors[s]
    for _ in range(lvl):
        num = num.deflate(1)
    return num, den


def blt_eval(level: int, twist: int, p, prec: int = DEFAULT_PREC):
    """(series value, closed-form value) of B_{level,twist} at p.

    The series is sum_n 2^-(n+1) p^(-twist n) W_n(p)^level with
    W_n = (p^n - 1)/(p^(n+1) - p^n); it converges for 2 p^twist > 1.  The
    two routes must agree; they are returned side by side so callers can
    assert that.
    """
    if level < 0 or twist < 0:
        raise DomainError("blt_eval requires level, twist >= 0")
    require_prec(prec)
    num, den = _blt_closed_fraction(level, twist)
    with mp.workprec(prec + 32):
        pp = mp.mpmathify(p)
        closed = num(pp) / den(pp)
        eps = mpf(2) ** (-(prec + 16))
        total = mpf(0) if mp.im(pp) == 0 else mpc(0)
        one = abs(pp - 1) < mpf(2) ** -40
        n = 0
        while True:
            if one:
                w = mpf(n)
            else:
                pn = pp ** n
                w = (pn - 1) / (pn * (pp - 1))
            term = (w ** level if level else 1) / (mpf(2) ** (n + 1) * pp ** (twist * n))
            total += term
            if n > 4 and abs(term) < eps:
                break
            if n > 20000:
                raise DomainError("series for B_{L,T} does not converge here")
            n += 1
        with mp.workprec(prec):
            return +total, +closed


# ---------------------------------------------------------------------------
# identity checks among the moments
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelationReport:
    residuals: dict
    max_residual: object


def moment_relations_check(p, mv: Optional[MomentVector] = None,
                           cells: int = 4000, max_order: int = 3,
                           prec: int = DEFAULT_PREC) -> RelationReport:
    """Residuals of the standard identities among m_L(p) and M_L(p).

    Checked: the binomial symmetry of the m-sequence, the closed relation
    expressing M_L through m_s and B coefficients, the explicit first
    full moment (p^2+2)/(4p-2), and the exponential-transform symmetry.
    For p = 1 a solved MomentVector supplies the m values; otherwise they
    come from Stieltjes integration.
    """
    require_prec(prec)
    res = {}
    with mp.workprec(prec):
        pp = mp.mpmathify(p)
        use_mv = mv is not None and pp == 1
        measure = None if use_mv else stieltjes_measure(p, cells, prec)

        def m_val(s):
            if s == 0:
                return mpf(1)
            return mv.m(s) if use_mv else measure.moment(s)

        m_cache = {s: m_val(s) for s in range(0, max_order + 1)}
        # binomial symmetry of the m-sequence
        for ell in range(1, max_order + 1):
            rhs = sum(math.comb(ell, s) * (-1) ** s * m_cache[s] * pp ** (ell - s)
                      for s in range(0, ell + 1))
            res[f"symmetry order {ell}"] = abs(m_cache[ell] - rhs)
        # M_L via the closed coefficient family
        for ell in range(1, max_order + 1):
            total = mpf(0)
            for s in range(0, ell + 1):
                series, closed = blt_eval(ell - s, s, pp, prec=prec)
                total += m_cache[s] * closed * math.comb(ell, s)
            if use_mv:
                if ell == 1:
                    res["first full moment vs 3/2"] = abs(total - mpf(3) / 2)
            else:
                direct = measure.full_moment(ell)
                res[f"full moment order {ell}"] = abs(total - direct)
            if ell == 1:
                res["first full moment closed form"] = abs(
                    total - (pp ** 2 + 2) / (4 * pp - 2))
        # exponential-transform symmetry at t = 1
        if use_mv:
            lhs = _mgen_series(mpf(1), mv)
            rhs = mp.e ** pp * _mgen_series(mpf(-1), mv)
        else:
            lhs = measure.exp_transform(mpf(1))
            rhs = mp.e ** pp * measure.exp_transform(mpf(-1))
        res["exp transform symmetry"] = abs(lhs - rhs)
        worst = max(res.values())
    return RelationReport(residuals=res, max_residual=worst)


@dataclass(frozen=True)
class AsymptReport:
    rows: tuple          # (L, m_L, log m_L / sqrt(L))
    fitted_base: object  # fitted C in m_L ~ const * L^(1/4) * C^sqrt(L)
    tail_note: str


def asympt_report(mv: MomentVector, lo: int = 20, hi: int = 125) -> AsymptReport:
    """Growth diagnostics for the moment sequence.

    Fits log(m_L / L^(1/4)) = a + sqrt(L) log C over [lo, hi] and reports
    the per-L normalized logs.  Estimates beyond L ~ 125 deviate from the
    fitted law quickly (the truncated solve loses relative accuracy
    there), which the note records; nothing is asserted about C beyond
    0 < C < 1.
    """
    hi = min(hi, mv.order)
    if hi - lo < 10:
        raise DomainError("need a reasonable fitting window")
    rows = []
    with mp.workprec(mv.prec):
        xs = []
        ys = []
        for ell in range(lo, hi + 1):
            m = mv.values[ell - 1]
            rows.append((ell, m, mp.log(m) / mp.sqrt(ell)))
            xs.append(mp.sqrt(ell))
            ys.append(mp.log(m) - mp.log(ell) / 4)
        n = len(xs)
        sx = sum(xs)
        sy = sum(ys)
        sxx = sum(x * x for x in xs)
        sxy = sum(x * y for x, y in zip(xs, ys))
        slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
        base = mp.e ** slope
    note = ("values beyond L ~ 125 deviate from the fitted law quickly; "
            "treat them as order-of-magnitude only")
    return AsymptReport(rows=tuple(rows), fitted_base=base, tail_note=note)
