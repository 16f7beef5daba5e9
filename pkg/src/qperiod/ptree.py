"""The one-parameter family of rational trees and its conjugation map.

For a parameter p (real >= 1, or complex with |p - 2| <= 1) the binary
tree rooted at 1 with children x -> p*x/(x+1) and x -> (x+1)/p
generalizes the rational tree of ``qmark``.  The order bijection X(p, .)
between the classical tree and this one is evaluated through a
Wall-style continued fraction with coefficients built from

    W_a(p) = (p^a - 1) / (p^(a+1) - p^a),
    T_{a,b}(p) = (p-1)^2 p^b / ((p^a - 1)(p^b - 1)),   T_{a,inf} = (p-1)^2/(p^a - 1).

The module also hosts the p-continued-fraction algorithm, the tree
polynomial numerators, the sup constants mu(a, b) over the parameter
disc, curve sampling, and Riemann-Stieltjes integration against the
conjugated Minkowski measure.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Tuple

from mpmath import mp, mpc, mpf

from .errors import DomainError, QPeriodError
from .exact import Polynomial
from .highprec import DEFAULT_PREC, require_prec
from .qmark import ContinuedFraction, QuotientsLike, cf_expand, qmark_eval, quotients_of

MAX_CURVE_DEPTH = 22


# ---------------------------------------------------------------------------
# tree polynomials
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def stern_poly(n: int) -> Polynomial:
    """Numerator polynomial of the n-th tree node (breadth-first indexing).

    T_1 = 1, T_2 = p, and T_{2n} = p T_n, T_{2n-1} = T_{n-1} + p^(-eps) T_n
    with eps = 1 exactly when n is a power of two.  The p^(-1) factor
    always clears; a non-polynomial intermediate is an internal error.
    """
    if n < 1:
        raise DomainError("tree polynomial index must be >= 1")
    if n == 1:
        return Polynomial.one()
    if n == 2:
        return Polynomial.x()
    if n % 2 == 0:
        return Polynomial.x() * stern_poly(n // 2)
    m = (n + 1) // 2  # n = 2m - 1, m >= 2
    t = stern_poly(m)
    if (m & (m - 1)) == 0:  # eps = 1 exactly at powers of two
        if t.coeff(0):
            raise QPeriodError(f"tree polynomial at index {m} not divisible by p")
        t = Polynomial(t.coeffs[1:])
    return stern_poly(m - 1) + t


def tree_generation_symbolic(depth: int) -> list:
    """Generation ``depth`` as exact (numerator, denominator) polynomial pairs."""
    if not 1 <= depth <= 12:
        raise DomainError("symbolic generation depth must be in 1..12")
    level = [(Polynomial.one(), Polynomial.one())]
    p = Polynomial.x()
    for _ in range(depth - 1):
        nxt = []
        for num, den in level:
            s = num + den
            nxt.append((p * num, s))      # p*x/(x+1)
            nxt.append((s, p * den))      # (x+1)/p
        level = nxt
    return level


# ---------------------------------------------------------------------------
# Wall coefficients and the conjugation map
# ---------------------------------------------------------------------------

def _is_one(p) -> bool:
    return p == 1


def _numeric(p):
    """Coerce a parameter to Fraction (exact) or mpf/mpc (numeric)."""
    if isinstance(p, int):
        return Fraction(p)
    if isinstance(p, (Fraction, mpf, mpc)):
        return p
    return mp.mpmathify(p)


def wall_w(a: int, p):
    """W_a(p); at the removable point p=1 the limit value a.

    Exact (Fraction) output for exact p, floating otherwise.
    """
    if a < 1:
        raise DomainError("wall_w requires a >= 1")
    p = _numeric(p)
    if _is_one(p):
        return Fraction(a)
    pa = p ** a
    return (pa - 1) / (pa * (p - 1))


def wall_t(a: int, b: Optional[int], p):
    """T_{a,b}(p); b=None means the terminal b -> infinity form.

    At p=1 the limits are 1/(a*b) and 0 respectively.
    """
    if a < 1 or (b is not None and b < 1):
        raise DomainError("wall_t requires a, b >= 1")
    p = _numeric(p)
    if _is_one(p):
        return Fraction(0) if b is None else Fraction(1, a * b)
    w = (p - 1) ** 2
    if b is None:
        return w / (p ** a - 1)
    return w * p ** b / ((p ** a - 1) * (p ** b - 1))


def wall_coeffs(a: int, b: Optional[int], p):
    """(W_a(p), T_{a,b}(p)) in one call."""
    return wall_w(a, p), wall_t(a, b, p)


def chi_node(p, n: int, prec: int = DEFAULT_PREC):
    """The n-th integer-analogue point on the curve:
    (p + p^(n-1) - 2) / (p^(n-1) (p - 1)); chi_0 = p-1 and chi_1 = 1.

    The closed form equals iterating x -> (x+1)/p n-1 times from 1
    (x -> p*x/(x+1) fixes p-1, so it cannot generate these points).
    Exact for exact p, floating at ``prec`` otherwise.
    """
    p = _numeric(p)
    if _is_one(p):
        return Fraction(n)
    if isinstance(p, Fraction):
        q = p ** (n - 1)
        return (p + q - 2) / (q * (p - 1))
    with mp.workprec(prec):
        q = p ** (n - 1)
        return (p + q - 2) / (q * (p - 1))


@dataclass(frozen=True)
class XMapReport:
    value: object
    tail_bound: object
    exact: bool


def _cf_backward(p, tail: Sequence[int], exact: bool):
    """Backward evaluation of the Wall continued fraction over ``tail``.

    Terminating expansions finish with the T_{a,inf} element; truncated
    ones start the recurrence from tail value 1.
    """
    if exact:
        f = 1 / (1 + wall_t(tail[-1], None, p))
    else:
        f = mpf(1)
    for i in range(len(tail) - 2, -1, -1):
        f = 1 / (1 + wall_t(tail[i], tail[i + 1], p) * f)
    return f


def _x_map_quotients(cf: QuotientsLike, depth: int):
    q = list(quotients_of(cf))
    if len(q) == 1:
        if q[0] == 0:
            return None, None, True  # x = 0 -> left curve endpoint
        q = [q[0] - 1, 1]            # [n] -> [n-1, 1], same rational
    a0, tail = q[0], q[1:]
    exact = len(tail) <= depth
    return a0, tail[:depth], exact


def x_map(p, cf: QuotientsLike, depth: int = 64, prec: int = DEFAULT_PREC):
    """X(p, x) for x given by its quotient list.

    Evaluates W_{a0} + p^(-a0) W_{a1}^(-1) F(a1, a2, ...) with F computed
    by the numerically stable backward recurrence, truncated at ``depth``
    quotients.  p = 1 short-circuits to the identity.
    """
    require_prec(prec)
    with mp.workprec(prec):
        if _is_one(p):
            q = quotients_of(cf)
            val = ContinuedFraction(q).value() if len(q) <= depth else \
                ContinuedFraction(q[:depth + 1]).value()
            return mpf(val.numerator) / val.denominator
        p = mp.mpmathify(p)
        a0, tail, exact = _x_map_quotients(cf, depth)
        if a0 is None:
            return p - 1
        for attempt in range(3):
            try:
                f = _cf_backward(p, tail, exact)
                w0 = wall_w(a0, p) if a0 else 0
                return w0 + p ** (-a0) / wall_w(tail[0], p) * f
            except ZeroDivisionError:
                # finite-depth artifact: retry with a perturbed truncation
                if exact or attempt == 2:
                    raise
                tail = tail[: max(1, len(tail) - 1 - attempt)]
        raise QPeriodError("unreachable")


def x_map_report(p, cf: QuotientsLike, depth: int = 64,
                 prec: int = DEFAULT_PREC) -> XMapReport:
    """x_map plus a conservative tail bound for the truncation.

    Consecutive-convergent gaps d_nu of the Wall fraction obey
    d_nu < 1/(c nu^2) for some c > 0; c is calibrated on the first
    convergents (the theory guarantees existence, not a value) and the
    remaining tail is bounded by 1/(c (depth-1)).
    """
    require_prec(prec)
    value = x_map(p, cf, depth=depth, prec=prec)
    with mp.workprec(prec):
        a0, tail, exact = _x_map_quotients(cf, depth)
        if exact or a0 is None or _is_one(p):
            return XMapReport(value, mpf(0), True)
        p = mp.mpmathify(p)
        # forward convergents of F to calibrate c
        a_prev, a_cur = mpc(1), mpc(0)
        b_prev, b_cur = mpc(0), mpc(1)
        conv_prev = None
        c_est = None
        for nu in range(1, min(len(tail), 12)):
            e = mpc(1) if nu == 1 else wall_t(tail[nu - 2], tail[nu - 1], p)
            a_prev, a_cur = a_cur, a_cur + e * a_prev
            b_prev, b_cur = b_cur, b_cur + e * b_prev
            if b_cur == 0:
                continue
            conv = a_cur / b_cur
            if conv_prev is not None:
                d = abs(conv - conv_prev)
                if d > 0:
                    cand = 1 / (d * nu ** 2)
                    c_est = cand if c_est is None else min(c_est, cand)
            conv_prev = conv
        if c_est is None or c_est <= 0:
            return XMapReport(value, mpf("inf"), False)
        scale = abs(p ** (-a0) / wall_w(tail[0], p))
        return XMapReport(value, scale / (c_est * max(1, depth - 1)), False)


def _shifted_quotients(q: Tuple[int, ...]):
    """Quotient lists of x+1, 1/x and x/(x+1) derived from those of x."""
    plus_one = (q[0] + 1,) + q[1:]
    if q[0] >= 1:
        inverse = (0,) + q
        fold = (0, 1) + q
    else:
        if len(q) < 2:
            raise DomainError("transforms need x > 0")
        inverse = q[1:]
        fold = (0, q[1] + 1) + q[2:]
    return plus_one, inverse, fold


def x_map_feq_residual(p, cf: QuotientsLike, depth: int = 64,
                       prec: int = DEFAULT_PREC):
    """Max residual of the three defining functional equations at one point:
    X(x+1) = (X(x)+1)/p,  X(x/(x+1)) = p X(x)/(X(x)+1),  X(1/x) = 1/X(x).
    """
    require_prec(prec)
    q = quotients_of(cf)
    plus_one, inverse, fold = _shifted_quotients(q)
    with mp.workprec(prec):
        x = x_map(p, q, depth, prec)
        r1 = abs(x_map(p, plus_one, depth, prec) - (x + 1) / p)
        r2 = abs(x_map(p, fold, depth, prec) - p * x / (x + 1))
        r3 = abs(x_map(p, inverse, depth, prec) - 1 / x)
        return max(r1, r2, r3)


# ---------------------------------------------------------------------------
# p-continued fractions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PCFrac:
    """Quotients of a p-expansion; ``terminated`` marks an exact stop."""

    quotients: Tuple[int, ...]
    terminated: bool

    def __iter__(self):
        return iter(self.quotients)


def pcf_expand(x, p, max_iter: int = 64, tol=None,
               prec: int = DEFAULT_PREC) -> PCFrac:
    """p-expansion of x by iterating px-1 / inversion inside the invariant
    interval (endpoints p-1 and 1/(p-1); the bracket reverses for p > 2).

    Quotient k counts consecutive px-1 steps between inversions; the run
    stops when x reaches p-1 (within ``tol``) or after ``max_iter`` steps.
    """
    require_prec(prec)
    with mp.workprec(prec):
        x = mp.mpmathify(x)
        p = mp.mpmathify(p)
        if p < 1:
            raise DomainError("pcf_expand requires p >= 1")
        if tol is None:
            tol = mpf(2) ** (-(prec // 2))
        lo, hi = (p - 1, 1 / (p - 1)) if p < 2 else (1 / (p - 1), p - 1)
        if p == 2:
            lo = hi = mpf(1)
        if not (lo - tol <= x <= hi + tol):
            raise DomainError(f"x = {x} outside invariant interval [{lo}, {hi}]")
        quotients = []
        count = 0
        for _ in range(max_iter):
            if abs(x - (p - 1)) < tol:
                quotients.append(count)
                return PCFrac(tuple(quotients), True)
            use_scale = (x >= 1) if p < 2 else (x <= 1)
            if use_scale:
                x = p * x - 1
                count += 1
            else:
                quotients.append(count)
                count = 0
                x = 1 / x
        quotients.append(count)
        return PCFrac(tuple(quotients), False)


# ---------------------------------------------------------------------------
# curve sampling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurvePoint:
    """One tree value together with the quotient address locating it."""

    value: object
    address: Tuple[int, ...]


def curve_sample(p, depth: int, prec: int = DEFAULT_PREC) -> list:
    """All generation-``depth`` values of the p-tree, left to right.

    Each point carries the quotient list of its classical counterpart
    (the partial quotients sum to ``depth``).
    """
    if not 1 <= depth <= MAX_CURVE_DEPTH:
        raise DomainError(f"depth must be in 1..{MAX_CURVE_DEPTH}")
    require_prec(prec)
    with mp.workprec(prec):
        pz = mp.mpmathify(p)
        level = [(pz * 0 + 1, 1, 1)]  # (value, cw numerator, cw denominator)
        for _ in range(depth - 1):
            nxt = []
            for v, a, b in level:
                nxt.append((pz * v / (v + 1), a, a + b))
                nxt.append(((v + 1) / pz, a + b, b))
            level = nxt
        return [CurvePoint(v, cf_expand(Fraction(a, b)).quotients)
                for v, a, b in level]


# ---------------------------------------------------------------------------
# sup constants over the parameter disc
# ---------------------------------------------------------------------------

def mu_ab(a: int, b: Optional[int], grid_size: int = 2000,
          exclude_radius: float = 0.0, prec: int = 128):
    """sup over |p-2| <= 1 of |T_{a,b}(p)| - Re T_{a,b}(p).

    |f| - Re f is subharmonic, so the sup sits on the boundary circle
    p = 2 + e^(i theta); a uniform scan over theta in [0, pi] (conjugation
    symmetry) is refined by golden-section search around the best cell.
    ``exclude_radius`` > 0 removes discs around 2 + e^(+-2 pi i/3), giving
    the starred variant of the constant.
    """
    if a < 1 or (b is not None and b < 1):
        raise DomainError("mu_ab requires indices >= 1")
    require_prec(prec)
    with mp.workprec(prec):
        excl = mpf(exclude_radius)
        bad = mp.expjpi(mpf(2) / 3)  # e^(2 pi i/3); p near 2+bad is excluded

        def f(theta):
            u = mp.expjpi(theta)  # theta in [0,1] covers the upper half circle
            p = 2 + u
            if abs(p - 1) < mpf(2) ** -40:
                return mpf(0)  # removable point p = 1 contributes nothing
            if excl and (abs(u - bad) < excl or abs(u - bad.conjugate()) < excl):
                return mpf("-inf")
            t = wall_t(a, b, p)
            return abs(t) - t.real

        best_k, best_v = 0, mpf("-inf")
        vals = []
        for k in range(grid_size + 1):
            v = f(mpf(k) / grid_size)
            vals.append(v)
            if v > best_v:
                best_k, best_v = k, v
        lo = mpf(max(0, best_k - 1)) / grid_size
        hi = mpf(min(grid_size, best_k + 1)) / grid_size
        invphi = (mp.sqrt(5) - 1) / 2
        x1 = hi - invphi * (hi - lo)
        x2 = lo + invphi * (hi - lo)
        f1, f2 = f(x1), f(x2)
        for _ in range(80):
            if f1 < f2:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + invphi * (hi - lo)
                f2 = f(x2)
            else:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - invphi * (hi - lo)
                f1 = f(x1)
        return +max(best_v, f1, f2)


def mu_table(max_a: int = 6, max_b: int = 15, include_limit_row: bool = True,
             grid_size: int = 2000, prec: int = 128) -> dict:
    """{(a, b): mu(a, b)} for a <= max_a, b <= max_b, plus (a, None) limits."""
    table = {}
    for a in range(1, max_a + 1):
        for b in range(1, max_b + 1):
            table[(a, b)] = mu_ab(a, b, grid_size=grid_size, prec=prec)
        if include_limit_row:
            table[(a, None)] = mu_ab(a, None, grid_size=grid_size, prec=prec)
    return table


def mu_chain_bound(table: Optional[dict] = None, prec: int = 128):
    """max over the computed table of mu(a,b) + mu(b,c).

    The middle index must be available both as a column and as a row, so
    it ranges over the column set.  The result must come out below 0.76
    for the convergence machinery to apply.
    """
    if table is None:
        table = mu_table(prec=prec)
    cols = sorted({a for (a, _b) in table})
    best = None
    for a in cols:
        for b in cols:
            first = table.get((a, b))
            if first is None:
                continue
            for (b2, c), second in table.items():
                if b2 != b:
                    continue
                s = first + second
                if best is None or s > best:
                    best = s
    return best


# ---------------------------------------------------------------------------
# Stieltjes integration against the conjugated measure
# ---------------------------------------------------------------------------

class StieltjesMeasure:
    """Precomputed Riemann-Stieltjes data for integrals against dF_p.

    The unit interval is split into ``cells`` equal x-cells; weights are
    the exact dyadic increments of F at the endpoints and nodes are
    X(p, midpoint), evaluated exactly (midpoints are rational, so their
    quotient lists are finite).  Integrals over the whole curve fold the
    [1, oo) half back through x -> 1/x, which conjugates to 1/X.
    """

    def __init__(self, p, cells: int, prec: int = DEFAULT_PREC):
        if cells < 2:
            raise DomainError("need at least 2 cells")
        require_prec(prec)
        with mp.workprec(prec):
            self.p = mp.mpmathify(p) if not _is_one(p) else mpf(1)
        self.cells = cells
        self.prec = prec
        with mp.workprec(prec):
            f_prev = Fraction(0)
            weights = []
            nodes = []
            for k in range(1, cells + 1):
                f_k = qmark_eval(cf_expand(Fraction(k, cells)))
                w = f_k - f_prev
                weights.append(mpf(w.numerator) / w.denominator)
                f_prev = f_k
                mid = Fraction(2 * k - 1, 2 * cells)
                nodes.append(x_map(p, cf_expand(mid).quotients, prec=prec))
            self.weights = weights
            self.nodes = nodes

    def integrate(self, omega: Callable) -> object:
        """integral over the whole curve of omega(x) dF_p(x)."""
        with mp.workprec(self.prec):
            total = 0
            for w, x in zip(self.weights, self.nodes):
                total += w * (omega(x) + omega(1 / x))
            return total

    def integrate_half(self, omega: Callable) -> object:
        """2 * integral over the lower branch (classical x in [0,1])."""
        with mp.workprec(self.prec):
            total = 0
            for w, x in zip(self.weights, self.nodes):
                total += w * omega(x)
            return 2 * total

    def moment(self, order: int):
        """m_order(p) = 2 * integral of X^order over [0,1]."""
        return self.integrate_half(lambda x: x ** order)

    def full_moment(self, order: int):
        """M_order(p) = integral of x^order over the whole curve."""
        return self.integrate(lambda x: x ** order)

    def resolvent(self, z):
        """G_p(z) = integral of 1/(x + 1 - z) dF_p."""
        with mp.workprec(self.prec):
            zz = z
            return self.integrate(lambda x: 1 / (x + 1 - zz))

    def exp_transform(self, t):
        """Exponential moment transform: integral of exp(t p x/(x+1)) dF_p."""
        with mp.workprec(self.prec):
            p = self.p
            return self.integrate(lambda x: mp.exp(t * p * x / (x + 1)))


@functools.lru_cache(maxsize=8)
def _measure_cache(p_key, cells: int, prec: int) -> StieltjesMeasure:
    return StieltjesMeasure(p_key, cells, prec)


def stieltjes_measure(p, cells: int, prec: int = DEFAULT_PREC) -> StieltjesMeasure:
    """Cached measure constructor (construction is the expensive part)."""
    return _measure_cache(p, cells, prec)


def integrate_dFp(kernel, p, cells: int = 3560, prec: int = DEFAULT_PREC):
    """Stieltjes integral against dF_p for the three standard kernels.

    kernel: ("power", L) for the moment m_L(p); ("resolvent", z) for the
    generating function at z; ("exp", t) for the exponential transform.
    """
    name, arg = kernel
    measure = stieltjes_measure(p, cells, prec)
    if name == "power":
        return measure.moment(int(arg))
    if name == "resolvent":
        with mp.workprec(prec):
            z = mpc(arg)
            # the measure nodes sample the curve densely; check the shifted ones
            dist = min(min(abs(z - (x + 1)), abs(z - (1 / x + 1)))
                       for x in measure.nodes)
            if dist < mpf("1e-3"):
                raise DomainError(f"z = {z} within 1e-3 of the shifted curve")
        return measure.resolvent(z)
    if name == "exp":
        return measure.exp_transform(arg)
    raise ValueError(f"unknown kernel {name!r}")
