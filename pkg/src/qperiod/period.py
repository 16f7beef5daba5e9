"""The series of rational functions behind the moment generating function.

Two exact families are generated here.  The first expands the resolvent
transform G around the degenerate parameter value 2:

    G(z) = sum_n (-1)^n H_n(z),      H_n(z) = B_n(z) / (z - 2)^(n+1),

where each numerator B_n (degree <= n-1, B_n(0) = 0) is produced by
differentiating the three-term functional equation n times, reducing the
known lower-order terms to a polynomial right-hand side, and inverting
the linear map

    P(z) -> P(z+1) - 2^-(n+1) P(2z) + (-1)^(n+1) 2^-(n+1) P(2/z) z^(n-1)

on polynomials of degree <= n-1 (an isomorphism; its determinant has the
closed product form checked by ``lmap_det``).  The second family expands
around parameter 0 and feeds the Borel resummation of the second moment:

    Q_0(z) = -1/(2z),
    Q_n(z) = 1/2 sum_{j<n} Q_{n-j-1}^(j)(-1)/j! (z^j - z^-(j+2)),

with Q_n = (z+1)(z-1) D_n(z) / z^(n+1) and palindromic D_n.

Everything rational is exact; floating point appears only in evaluation,
quadrature and resummation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

from mpmath import mp, mpc, mpf

from .errors import DomainError, PoleError, QPeriodError
from .exact import Polynomial, RationalFunction, RationalMatrix, mat_det_exact, mat_solve_exact
from .highprec import CONSTANTS_PREC, DEFAULT_PREC, bessel_j0, gamma_slice, require_prec
from .moments import MomentVector, _mgen_series, mgen_derivative
from .ptree import stieltjes_measure

# ---------------------------------------------------------------------------
# raw-list polynomial helpers (hot path of the exact recurrences)
# ---------------------------------------------------------------------------


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    while out and not out[-1]:
        out.pop()
    return out


def _pderiv(a):
    return [i * a[i] for i in range(1, len(a))]


def _pscale(a, c):
    return [x * c for x in a] if c else []


def _pmul_lin(a, r0, r1):
    """a(z) * (r0 + r1 z)"""
    if not a:
        return []
    out = [Fraction(0)] * (len(a) + 1)
    for i, c in enumerate(a):
        out[i] += c * r0
        out[i + 1] += c * r1
    while out and not out[-1]:
        out.pop()
    return out


def _pat2z(a):
    return [c * (1 << i) for i, c in enumerate(a)]


def _next_deriv(d, k):
    """numerator of d/dz [D/(z-2)^k]  =  (D'(z-2) - k D)/(z-2)^(k+1)."""
    return _padd(_pmul_lin(_pderiv(d), Fraction(-2), Fraction(1)), _pscale(d, -k))


# ---------------------------------------------------------------------------
# the resolvent-series terms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HTerm:
    """One term of the resolvent series: numerator over (z-2)^(n+1)."""

    n: int
    numerator: Polynomial

    @property
    def ratfunc(self) -> RationalFunction:
        return RationalFunction.make(self.numerator, 2, self.n + 1)

    def dz0(self) -> Fraction:
        """Exact first derivative of the term at z = 0."""
        b0 = self.numerator.coeff(0)
        b1 = self.numerator.coeff(1)
        return (-2 * b1 - (self.n + 1) * b0) / Fraction((-2) ** (self.n + 2))

    def __call__(self, z):
        return self.ratfunc(z)


def lmap_matrix(n: int) -> RationalMatrix:
    """Matrix of the degree-(n-1) linear map in the descending-power basis.

    Basis vectors are z^(n-1), ..., z, 1; the shift part is lower
    triangular binomial, the dilation a diagonal of powers of two, and
    the weighted reversal an antidiagonal (entry 2^(row-1) at column
    n+1-row; getting this orientation wrong is the classic bug, which is
    why ``lmap_det`` cross-checks the closed determinant formula).
    """
    if n < 1:
        raise DomainError("map order must be >= 1")
    half = Fraction(1, 1 << (n + 1))
    sign = 1 if (n + 1) % 2 == 0 else -1
    rows = []
    for ty in range(1, n + 1):
        row = []
        for tx in range(1, n + 1):
            v = Fraction(math.comb(n - tx, n - ty)) if ty >= tx else Fraction(0)
            if tx == ty:
                v -= (1 << (n - tx)) * half
            if tx == n + 1 - ty:
                v += sign * (1 << (ty - 1)) * half
            row.append(v)
        rows.append(row)
    return RationalMatrix(rows)


def lmap_apply(poly: Polynomial, n: int) -> Polynomial:
    """The same linear map applied directly through polynomial transforms."""
    if poly.degree > n - 1:
        raise DomainError("polynomial degree exceeds the map's space")
    scale = Fraction(1, 1 << (n + 1))
    sign = 1 if (n + 1) % 2 == 0 else -1
    out = poly.shifted(1) - scale * poly.dilated(2)
    if poly:
        out = out + sign * scale * poly.reverse_weighted(n - 1)
    return out


def lmap_det(n: int) -> Fraction:
    """Exact determinant of the map (fraction-free elimination)."""
    return mat_det_exact(lmap_matrix(n))


def lmap_det_formula(n: int) -> Fraction:
    """Closed form of the determinant: prod_{i<=m} (4^i - 1) / 2^(m^2+m), m = floor(n/2)."""
    m = n // 2
    num = 1
    for i in range(1, m + 1):
        num *= (1 << (2 * i)) - 1
    return Fraction(num, 1 << (m * m + m))


def _h_rhs_poly(derivs, b_prev, n):
    """Numerator of the reduced lower-order side over (z-1)^(n+1).

    Assembles the n-fold parameter derivative of the functional equation
    with all arguments rescaled to 2z, then symmetrizes z -> 1/z.  The
    result must be a polynomial of degree <= n-1 (asserted); anything
    else means the generated lower-order terms are inconsistent.
    """
    acc = [Fraction(0)] * (n + 2)
    for j in range(1, n + 1):
        d = derivs[n - j][j]
        c = Fraction(2, math.factorial(j) * (1 << (n + 1)))
        for i, v in enumerate(d):
            acc[i + j] += v * c * (1 << i)
    tmp = [Fraction(0)] * (n + 1)
    for j in range(1, n):
        d = derivs[n - j - 1][j]
        c = Fraction(1, math.factorial(j) * (1 << n))
        for i, v in enumerate(d):
            tmp[i + j] += v * c * (1 << i)
    c = Fraction(1, 1 << n)
    for i, v in enumerate(b_prev):
        tmp[i] += v * c * (1 << i)
    for i, v in enumerate(_pmul_lin(tmp, Fraction(-1), Fraction(1))):
        acc[i] += v
    p = [v / 2 for v in acc]
    while p and not p[-1]:
        p.pop()
    if len(p) > n:
        raise QPeriodError(
            f"reduced side at order {n} has degree {len(p) - 1} > {n - 1}")
    p = p + [Fraction(0)] * (n - len(p))
    rev = list(reversed(p))
    sgn = 1 if n % 2 == 0 else -1
    return [p[i] + sgn * rev[i] for i in range(n)]


def h_series(count: int) -> List[HTerm]:
    """Terms 0..count of the resolvent series, generated exactly.

    Each step reduces the lower-order terms to the polynomial right-hand
    side and solves the linear map for the new numerator.  A singular
    map or a non-polynomial right-hand side is a fatal internal error.
    """
    if count < 0:
        raise DomainError("count must be >= 0")
    b = [[Fraction(-1)]]
    derivs = [[[Fraction(-1)]]]
    for j in range(count):
        derivs[0].append(_next_deriv(derivs[0][-1], 1 + j))
    terms = [HTerm(0, Polynomial(b[0]))]
    for n in range(1, count + 1):
        k = _h_rhs_poly(derivs, b[n - 1], n)
        y = lmap_matrix(n)
        rhs = [k[n - tt] for tt in range(1, n + 1)]  # descending coefficients
        sol = mat_solve_exact(y, rhs)
        bn = list(reversed(sol))
        while bn and not bn[-1]:
            bn.pop()
        b.append(bn)
        derivs.append([bn])
        for j in range(count - n):
            derivs[n].append(_next_deriv(derivs[n][-1], n + 1 + j))
        terms.append(HTerm(n, Polynomial(bn)))
    return terms


def h_recurrence_residual(terms: Sequence[HTerm], n: int) -> Polynomial:
    """Exact difference between the reduced side and the map applied to
    term n; the zero polynomial certifies the generation step."""
    derivs = []
    for m in range(n):
        chain = [list(terms[m].numerator.coeffs)]
        for j in range(n - m):
            chain.append(_next_deriv(chain[-1], m + 1 + j))
        derivs.append(chain)
    k = _h_rhs_poly(derivs, list(terms[n - 1].numerator.coeffs), n)
    return Polynomial(k) - lmap_apply(terms[n].numerator, n)


def g_via_h(z, terms, prec: int = DEFAULT_PREC):
    """Partial sum of the alternating resolvent series at z.

    Returns (value, per-term values) so callers can inspect decay; no
    convergence claim is made outside the proven region.
    """
    require_prec(prec)
    if isinstance(terms, int):
        terms = h_series(terms)
    with mp.workprec(prec):
        zz = mp.mpmathify(z)
        if zz == 2:
            raise PoleError("the series terms all have a pole at z = 2", where=2)
        vals = []
        total = mpc(0) if isinstance(zz, mpc) else mpf(0)
        sign = 1
        for t in terms:
            v = sign * t(zz)
            vals.append(v)
            total += v
            sign = -sign
        return total, vals


# ---------------------------------------------------------------------------
# the parameter-0 terms and Borel resummation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QTerm:
    """One term of the parameter-0 family: numerator over z^(n+1).

    ``core`` is the palindromic polynomial left after extracting the
    (z+1)(z-1) factor (None for the n = 0 seed term), and ``dz_m1`` the
    exact first derivative at z = -1 that drives the resummation.
    """

    n: int
    numerator: Polynomial
    core: Optional[Polynomial]
    dz_m1: Fraction

    @property
    def ratfunc(self) -> RationalFunction:
        return RationalFunction.make(self.numerator, 0, self.n + 1)

    def __call__(self, z):
        return self.ratfunc(z)


def q_series(count: int) -> List[QTerm]:
    """Terms 0..count of the parameter-0 family, generated exactly.

    Derivative values at -1 are maintained as exact chains; a failed
    (z+1)(z-1) extraction would contradict the structural claim and
    raises.
    """
    if count < 0:
        raise DomainError("count must be >= 0")
    numerators = [[Fraction(-1, 2)]]  # over z^1
    # chains[m][j] = numerator of the j-th derivative of term m (over z^(m+1+j));
    # future terms need j <= count-m-1 and the -1 slope always needs j = 1
    chains = [[[Fraction(-1, 2)]]]
    for j in range(max(count - 1, 1)):
        d = chains[0][-1]
        chains[0].append(_padd(_pmul_lin(_pderiv(d), Fraction(0), Fraction(1)),
                               _pscale(d, -(1 + j))))
    def value_at_m1(m, j):
        d = chains[m][j]
        num = sum(c * (-1) ** i for i, c in enumerate(d))
        den = (-1) ** (m + 1 + j)
        return num * den

    terms = [QTerm(0, Polynomial(numerators[0]), None, value_at_m1(0, 1))]
    for n in range(1, count + 1):
        num = [Fraction(0)] * (2 * n + 1)
        for j in range(n):
            v = value_at_m1(n - j - 1, j) / math.factorial(j)
            half = v / 2
            num[n + 1 + j] += half
            num[n - 1 - j] -= half
        while num and not num[-1]:
            num.pop()
        poly = Polynomial(num)
        core = poly.deflate(1).deflate(-1) if poly else Polynomial.zero()
        numerators.append(num)
        chains.append([num])
        for j in range(max(count - n - 1, 1)):
            d = chains[n][-1]
            chains[n].append(_padd(_pmul_lin(_pderiv(d), Fraction(0), Fraction(1)),
                                   _pscale(d, -(n + 1 + j))))
        terms.append(QTerm(n, poly, core, value_at_m1(n, 1)))
    return terms


# The inner series at slice r converges while r+1 stays inside the growth
# radius of the coefficients (~15), which caps the slice index.  Within the
# radius, deeper inner truncation only helps: the last slice of the default
# table needs ~125 terms before its tail drops below 1e-9.
MAX_BOREL_INNER = 200
MAX_BOREL_SLICES = 13


@dataclass(frozen=True)
class BorelResult:
    slice_sums: Tuple
    total: object


def borel_slices(coeff_fn: Callable[[int], Fraction], n_max: int, r_max: int,
                 prec: int = DEFAULT_PREC) -> BorelResult:
    """Slice-by-slice Borel resummation of sum_n coeff(n).

    Slice r sums coeff(n)/n! * integral of t^n e^-t over [r, r+1]; the
    inner series only converges while (r+1) stays inside the growth radius
    of the coefficients, hence the hard cap on r_max.
    """
    if n_max > MAX_BOREL_INNER:
        raise DomainError(f"inner truncation {n_max} above safe cap {MAX_BOREL_INNER}")
    if r_max > MAX_BOREL_SLICES:
        raise DomainError(f"slice index {r_max} above convergence-safe cap {MAX_BOREL_SLICES}")
    require_prec(prec)
    with mp.workprec(prec + 32):
        sums = []
        for r in range(r_max + 1):
            s = mpf(0)
            fact = 1
            for n in range(n_max + 1):
                if n:
                    fact *= n
                c = Fraction(coeff_fn(n)) / fact
                s += mpf(c.numerator) / c.denominator * gamma_slice(n, r, prec + 32)
            sums.append(s)
        total = sum(sums)
        with mp.workprec(prec):
            return BorelResult(tuple(+s for s in sums), +total)


def borel_m2(terms: Optional[Sequence[QTerm]] = None, n_max: int = 130,
             r_max: int = 11, prec: int = DEFAULT_PREC) -> BorelResult:
    """Borel resummation of the divergent series for the second moment,
    with coefficients Q_n'(-1)."""
    if terms is None:
        terms = q_series(n_max)
    if len(terms) <= n_max:
        raise DomainError("need q-series terms up to n_max")
    return borel_slices(lambda n: terms[n].dz_m1, n_max, r_max, prec)


# ---------------------------------------------------------------------------
# evaluating G: moment Taylor + reduction, Stieltjes, closed form
# ---------------------------------------------------------------------------


def g_closed_p2(z):
    """The degenerate parameter-2 resolvent: 1/(2 - z)."""
    if z == 2:
        raise PoleError("pole at z = 2", where=2)
    return 1 / (2 - z)


def _taylor_g(z, mv: MomentVector):
    total = mpf(0)
    for m in reversed(mv.values):
        total = total * z + m
    return total


def g_reduce_eval(z, mv: MomentVector, prec: Optional[int] = None,
                  max_steps: int = 64):
    """G(z) off the cut (1, oo) by functional-equation reduction.

    While the argument sits outside the closed unit disc it is moved by
    the symmetry step (z -> z/(z-1), applicable for Re z <= 1/2) or by
    the three-term step (z -> z-1 and 1/(z-1)); inside the disc the
    moment Taylor series finishes the job.  The recursion certainly
    terminates: every step lowers Re z by 1 or lands in the disc.
    """
    if prec is None:
        prec = mv.prec
    require_prec(prec)
    with mp.workprec(prec):
        zz = mp.mpmathify(z)
        return _g_reduce(zz, mv, max_steps)


def _g_reduce(z, mv: MomentVector, budget: int):
    if budget <= 0:
        raise DomainError("reduction step budget exhausted")
    if mp.im(z) == 0 and mp.re(z) > 1:
        raise DomainError(f"z = {z} lies on the cut (1, oo)")
    if abs(z) <= 1:
        return _taylor_g(z, mv)
    if mp.re(z) <= mpf(1) / 2:
        w = z / (z - 1)  # |w| <= 1 exactly when Re z <= 1/2
        return -_g_reduce(w, mv, budget - 1) / (z - 1) ** 2 - 1 / (z - 1)
    u = z - 1
    return (_g_reduce(u, mv, budget - 1)
            - _g_reduce(1 / u, mv, budget - 1) / u ** 2 - 1 / u) / 2


def g_stieltjes(z, p, cells: int = 3560, prec: int = DEFAULT_PREC):
    """G_p(z) as a Riemann-Stieltjes sum over ``cells`` F-cells.

    Refuses z within 1e-3 of the shifted value curve.
    """
    require_prec(prec)
    measure = stieltjes_measure(p, cells, prec)
    with mp.workprec(prec):
        zz = mpc(z)
        dist = min(min(abs(zz - (x + 1)), abs(zz - (1 / x + 1)))
                   for x in measure.nodes)
        if dist < mpf("1e-3"):
            raise DomainError(f"z = {zz} within 1e-3 of the shifted curve")
        return measure.resolvent(zz)


def feq_residual(p, z, evaluator: Callable, prec: int = DEFAULT_PREC):
    """Residual of the three-term functional equation and its symmetry at z.

    three-term: 1/z + (p/z^2) G(p/z) + 2 G(z+1) - p G(pz);
    symmetry:   G(z+1) + G(1/z + 1)/z^2 + 1/z.
    ``evaluator`` supplies G values (reduction-, series-, integral- or
    closed-form-grade, the caller's choice).
    """
    require_prec(prec)
    with mp.workprec(prec):
        zz = mp.mpmathify(z)
        pp = mp.mpmathify(p)
        if zz == 0:
            raise DomainError("z = 0 is outside both identities")
        r1 = abs(1 / zz + pp / zz ** 2 * evaluator(pp / zz)
                 + 2 * evaluator(zz + 1) - pp * evaluator(pp * zz))
        r2 = abs(evaluator(zz + 1) + evaluator(1 / zz + 1) / zz ** 2 + 1 / zz)
        return max(r1, r2)


# ---------------------------------------------------------------------------
# analysis checks: contour integral, integral equation, contraction constant
# ---------------------------------------------------------------------------


def contour_check(p, radius, nodes: int, evaluator: Callable,
                  prec: int = DEFAULT_PREC):
    """(1/2 pi i) * contour integral of G over |z| = radius (trapezoid rule).

    Nodes are offset half a cell so none lands on the positive real axis.
    For real p > 1 the circle must strictly enclose the shifted curve.
    """
    require_prec(prec)
    with mp.workprec(prec):
        pp = mp.mpmathify(p)
        r = mpf(radius)
        if mp.im(pp) == 0 and pp > 1:
            outer = 1 / (pp - 1) + 2 if pp < 2 else pp
            if r <= outer:
                raise DomainError(
                    f"radius {r} does not enclose the shifted curve (need > {outer})")
        total = mpc(0)
        for k in range(nodes):
            zk = r * mp.expjpi(mpf(2 * k + 1) / nodes)
            total += evaluator(zk) * zk
        return total / nodes


def integral_eq_residual(p, s, mv: Optional[MomentVector] = None,
                         t_max: int = 100, prec: int = CONSTANTS_PREC,
                         quad_prec: int = 192):
    """Residual of the Bessel-kernel integral equation for the exponential
    moment transform at argument s > 0.

    Supported parameters: p = 2 (closed form e^t, where the equation is a
    classical Laplace-transform identity) and p = 1 (transform values from
    a solved MomentVector).  The integral is truncated at ``t_max``; the
    integrand decays like exp(-2 sqrt(t log 2)).
    """
    if p not in (1, 2):
        raise DomainError("integral equation check supports p in {1, 2}")
    if s <= 0:
        raise DomainError("s must be positive")
    require_prec(prec)
    with mp.workprec(prec):
        ss = mpf(s)
        if p == 2:
            lhs = mp.e ** (-ss)

            def mprime(t):
                return mp.e ** (-t)
        else:
            if mv is None:
                raise DomainError("p = 1 requires a solved MomentVector")
            lhs = _mgen_series(-ss, mv)

            def mprime(t):
                return mgen_derivative(-t, mv)

        pp = mpf(p)
        two_es = 2 * mp.e ** ss

        def integrand(t):
            return mprime(t) * (two_es * bessel_j0(2 * mp.sqrt(pp * ss * t), prec=quad_prec)
                                - bessel_j0(2 * mp.sqrt(ss * t), prec=quad_prec))

        rhs = _composite_gauss(integrand, mpf(0), mpf(t_max), panels=max(20, t_max // 2),
                               degree=24, prec=quad_prec)
        return abs(lhs - rhs)


@lru_cache(maxsize=4)
def _gl_nodes(degree: int, prec: int):
    """Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration."""
    with mp.workprec(prec + 32):
        nodes = []
        for i in range(1, degree + 1):
            x = mp.cos(mp.pi * (i - mpf(1) / 4) / (degree + mpf(1) / 2))
            for _ in range(60):
                p0, p1 = mpf(1), x
                for k in range(2, degree + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = degree * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mpf(2) ** (-(prec + 8)):
                    break
            w = 2 / ((1 - x * x) * dp * dp)
            nodes.append((+x, +w))
    return tuple(nodes)


def _composite_gauss(f, a, b, panels: int, degree: int, prec: int):
    nodes = _gl_nodes(degree, prec)
    with mp.workprec(prec):
        h = (b - a) / panels
        total = mpf(0)
        for k in range(panels):
            mid = a + (k + mpf(1) / 2) * h
            half = h / 2
            for x, w in nodes:
                total += w * f(mid + half * x)
        return total * h / 2


def contraction_double_sum(prec: int = 128):
    """The double sum sum_{n,m>=0} (2^(n+m+2) - 2^(n+1) + 1)^(-2).

    Its value just above 0.2045 is the contraction factor that forces
    uniqueness of decaying solutions of the homogeneous three-term
    equation; anything >= 1 here would break that argument.
    """
    require_prec(prec)
    with mp.workprec(prec + 16):
        cap = prec // 2 + 8
        total = mpf(0)
        for n in range(cap):
            for m in range(cap - n):
                den = (1 << (n + m + 2)) - (1 << (n + 1)) + 1
                total += mpf(1) / den ** 2
        with mp.workprec(prec):
            return +total


# ---------------------------------------------------------------------------
# decay diagnostics for the conjectural claims
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecayDiagnostics:
    slope_ratios: Tuple          # consecutive |H'_n(0)| ratios over the window
    radius_estimates: dict       # L -> tail estimate of |d^(L-1)/dz H_n(1)|^(1/n)
    note: str


def convergence_diagnostics(terms: Sequence[HTerm], max_order: int = 3,
                            lo: int = 20) -> DecayDiagnostics:
    """Empirical decay data for the series terms (diagnostics only).

    Reports consecutive ratios of |H_n'(0)| on [lo, N] and, for each
    derivative order L-1 <= max_order-1, the n-th root growth of the
    term derivatives at z = 1, whose reciprocal estimates a radius of
    convergence.  Nothing conjectural is asserted.
    """
    hi = len(terms) - 1
    if hi < lo + 5:
        raise DomainError("need more terms than the window start")
    ratios = []
    prev = None
    for n in range(lo, hi + 1):
        v = abs(terms[n].dz0())
        if prev not in (None, Fraction(0)) and v:
            ratios.append(float(v / prev))
        prev = v
    radii = {}
    for order in range(1, max_order + 1):
        roots = []
        for n in range(max(lo, hi - 10), hi + 1):
            rf = terms[n].ratfunc
            for _ in range(order - 1):
                rf = rf.derivative()
            val = abs(rf(Fraction(1)))
            if val:
                roots.append(float(val) ** (1.0 / n))
        radii[order] = sum(roots) / len(roots) if roots else float("nan")
    return DecayDiagnostics(tuple(ratios), radii,
                            "empirical decay data; conjectural radii are reported, not asserted")
