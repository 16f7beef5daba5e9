"""Arbitrary-precision scalars and the special functions the suite needs.

Scalars are ``mpmath`` mpf/mpc values. Precision is always an explicit
argument in bits; internally each function runs under ``mp.workprec`` with
enough guard bits for its own cancellation, so no caller-visible global
precision state is mutated.
"""

from __future__ import annotations

import math

from mpmath import mp, mpc, mpf

from .errors import DomainError, PrecisionError

DEFAULT_PREC = 256
CONSTANTS_PREC = 512
MIN_PREC = 64

APReal = type(mpf(0))
APComplex = type(mpc(0))


def require_prec(prec: int) -> int:
    if prec < MIN_PREC:
        raise PrecisionError(f"precision {prec} bits below minimum {MIN_PREC}",
                             recommended_bits=DEFAULT_PREC)
    return int(prec)


def polylog_half(order: int, prec: int = DEFAULT_PREC):
    """Li_order(1/2) = sum_{n>=1} 2^-n n^-order by direct summation.

    Terms decay like 2^-n, so the sum is truncated once a term drops
    below the target error 2^-(prec+4).
    """
    if order < 1:
        raise DomainError("polylog_half requires order >= 1")
    require_prec(prec)
    with mp.workprec(prec + 16):
        eps = mpf(2) ** (-(prec + 8))
        total = mpf(0)
        n = 1
        while True:
            term = mpf(2) ** (-n) / mpf(n) ** order
            total += term
            if term < eps:
                break
            n += 1
        return +total


def polylog_half_table(max_order: int, prec: int = DEFAULT_PREC) -> list:
    """[Li_L(1/2) for L = 0..max_order]; index 0 holds sum 2^-n = 1.

    Bulk variant used by the moment solver, which needs a contiguous run
    of orders at once.
    """
    require_prec(prec)
    with mp.workprec(prec + 16):
        eps = mpf(2) ** (-(prec + 8))
        out = [mpf(1)]
        for order in range(1, max_order + 1):
            total = mpf(0)
            n = 1
            while True:
                term = mpf(2) ** (-n) / mpf(n) ** order
                total += term
                if term < eps:
                    break
                n += 1
            out.append(+total)
    return out


def gamma_slice(n: int, r: int, prec: int = DEFAULT_PREC):
    """integral of t^n e^-t over [r, r+1], by the exact incomplete-gamma recurrence.

    Equals n! * (e^-r * S_n(r) - e^-(r+1) * S_n(r+1)) with
    S_n(x) = sum_{k<=n} x^k / k!.  The two sides cancel severely once
    n >> r, so guard bits scale with n*log2(n/(r+1)).
    """
    if n < 0 or r < 0:
        raise DomainError("gamma_slice requires n >= 0 and r >= 0")
    require_prec(prec)
    cancel = 0
    if n > 0:
        cancel = int(n * max(0.0, math.log2((n + 1) / (r + 1)))) + 16
    with mp.workprec(prec + 64 + cancel):
        def upper_tail(x):
            # e^-x * sum_{k<=n} x^k/k!, evaluated stably term by term
            term = mpf(1)
            s = mpf(1)
            for k in range(1, n + 1):
                term = term * x / k
                s += term
            return mp.e ** (-x) * s

        val = mp.factorial(n) * (upper_tail(mpf(r)) - upper_tail(mpf(r + 1)))
        with mp.workprec(prec):
            return +val


def bessel_j0(x, prec: int = DEFAULT_PREC):
    """J0(x) for x >= 0 by the ascending series sum (-1)^k (x/2)^{2k} / (k!)^2."""
    require_prec(prec)
    with mp.workprec(prec + 16):
        xx = mpf(x)
        if xx < 0:
            raise DomainError("bessel_j0 requires x >= 0")
        guard = int(1.5 * float(xx)) + 64
    with mp.workprec(prec + guard):
        xx = mpf(x)
        q = (xx / 2) ** 2
        term = mpf(1)
        total = mpf(1)
        eps = mpf(2) ** (-(prec + guard - 8))
        k = 1
        while True:
            term = -term * q / (k * k)
            total += term
            if abs(term) < eps:
                break
            k += 1
        with mp.workprec(prec):
            return +total


def parse_complex(s: str, prec: int = DEFAULT_PREC):
    """Parse 'a+bi' style complex literals with locale-independent decimals.

    Accepts plain reals ('0.25'), pure imaginaries ('4i', '-i'), and
    combined forms ('0.6666666667+4i', '2-0.5i').
    """
    require_prec(prec)
    text = s.strip().replace(" ", "")
    if not text:
        raise DomainError("empty complex literal")
    with mp.workprec(prec):
        try:
            if text[-1] not in "ij":
                return mpc(mpf(text), 0)
            body = text[:-1]
            split = -1
            for k in range(len(body) - 1, 0, -1):
                if body[k] in "+-" and body[k - 1] not in "eE":
                    split = k
                    break
            if split == -1:
                re_txt, im_txt = "0", body
            else:
                re_txt, im_txt = body[:split], body[split:]
            if im_txt in ("", "+"):
                im_txt = "1"
            elif im_txt == "-":
                im_txt = "-1"
            return mpc(mpf(re_txt), mpf(im_txt))
        except ValueError:
            raise DomainError(f"cannot parse complex literal {s!r}") from None


def format_real(x, digits: int) -> str:
    """Deterministic decimal rendering with a fixed significant-digit count."""
    return mp.nstr(mpf(x), digits, strip_zeros=False)


def format_complex(z, digits: int) -> str:
    zz = mpc(z)
    re_s = mp.nstr(zz.real, digits, strip_zeros=False)
    im = zz.imag
    sign = "+" if im >= 0 else "-"
    return f"{re_s}{sign}{mp.nstr(abs(im), digits, strip_zeros=False)}i"
