"""Continued fractions, the Minkowski distribution F, and the rational tree.

F maps [0, oo) onto [0, 1) through the alternating dyadic series over the
partial quotients; on rational input everything is exact dyadic
arithmetic, so table checks reduce to equality of fractions.  The
normalization used throughout is F(1) = 1/2, with ?(x) = 2 F(x) on [0,1].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Tuple, Union

from mpmath import mp, mpf

from .errors import DomainError

MAX_GENERATION = 24


@dataclass(frozen=True)
class ContinuedFraction:
    """Partial quotients (a0, a1, ..., as) with a0 >= 0 and a_i >= 1.

    ``exact`` is False when the expansion was truncated (real input hit
    the depth limit or the precision floor).  Canonical terminating form
    has last quotient >= 2 unless the length is 1.
    """

    quotients: Tuple[int, ...]
    exact: bool = True

    def __post_init__(self):
        q = tuple(int(a) for a in self.quotients)
        object.__setattr__(self, "quotients", q)
        if not q:
            raise DomainError("empty continued fraction")
        if q[0] < 0 or any(a < 1 for a in q[1:]):
            raise DomainError(f"invalid partial quotients {q}")

    @property
    def a0(self) -> int:
        return self.quotients[0]

    def __len__(self) -> int:
        return len(self.quotients)

    def __iter__(self) -> Iterator[int]:
        return iter(self.quotients)

    def value(self) -> Fraction:
        """The rational represented by the (finite) quotient list."""
        acc = Fraction(self.quotients[-1])
        for a in reversed(self.quotients[:-1]):
            acc = a + (1 / acc if acc else acc)
        return acc


QuotientsLike = Union[ContinuedFraction, Sequence[int]]


def quotients_of(cf: QuotientsLike) -> Tuple[int, ...]:
    if isinstance(cf, ContinuedFraction):
        return cf.quotients
    return tuple(int(a) for a in cf)


def cf_expand(x, max_depth: int = 64, prec: int = None) -> ContinuedFraction:
    """Continued-fraction expansion of x >= 0 by the Euclidean algorithm.

    Rational input terminates in canonical form.  Real (mpf/float) input
    stops at ``max_depth`` quotients or when the fractional part falls
    below 2^(-prec/2), the standard guard against precision exhaustion.
    """
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        if x < 0:
            raise DomainError("cf_expand requires x >= 0")
        out = []
        num, den = x.numerator, x.denominator
        while den:
            out.append(num // den)
            num, den = den, num % den
        return ContinuedFraction(tuple(out))
    if prec is None:
        prec = mp.prec
    with mp.workprec(prec):
        v = mpf(x)
        if v < 0:
            raise DomainError("cf_expand requires x >= 0")
        floor_eps = mpf(2) ** (-(prec // 2))
        out = []
        for _ in range(max_depth):
            a = int(mp.floor(v))
            out.append(a)
            frac = v - a
            if frac < floor_eps:
                return ContinuedFraction(tuple(out), exact=True)
            v = 1 / frac
        return ContinuedFraction(tuple(out), exact=False)


def qmark_eval(cf: QuotientsLike) -> Fraction:
    """F value of a quotient list: 1 - 2^-a0 + 2^-(a0+a1) - ... (exact dyadic).

    For a truncated expansion this is the natural partial sum, within
    2^-(sum of quotients) of the limit.
    """
    total = Fraction(1)
    e = 0
    sign = -1
    for a in quotients_of(cf):
        e += a
        total += Fraction(sign, 1 << e)
        sign = -sign
    return total


def minkowski_f(x) -> Fraction:
    """F(x) for rational (or integer) x >= 0, exactly."""
    return qmark_eval(cf_expand(Fraction(x)))


def question_mark(x) -> Fraction:
    """?(x) = 2 F(x) for rational x in [0, 1]."""
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise DomainError("question_mark is normalized on [0, 1]")
    return 2 * minkowski_f(x)


def cw_generation(n: int) -> list:
    """Generation n of the rational binary tree, left to right.

    Root 1/1; each a/b spawns a/(a+b) and (a+b)/b.  Generation n holds
    exactly the 2^(n-1) positive rationals whose partial quotients sum
    to n.
    """
    if n < 1:
        raise DomainError("generation index must be >= 1")
    if n > MAX_GENERATION:
        raise DomainError(
            f"generation {n} would hold 2^{n-1} nodes; limit is {MAX_GENERATION}")
    level = [(1, 1)]
    for _ in range(n - 1):
        nxt = []
        for a, b in level:
            s = a + b
            nxt.append((a, s))
            nxt.append((s, b))
        level = nxt
    return [Fraction(a, b) for a, b in level]


def empirical_cdf(n: int, x) -> Fraction:
    """2^(1-n) * #{members of generation n below x}."""
    if n < 1:
        raise DomainError("generation index must be >= 1")
    gen = cw_generation(n)
    xf = x if isinstance(x, (Fraction, int)) else mpf(x)
    count = sum(1 for v in gen if v < xf)
    return Fraction(count, 1 << (n - 1))


def generation_f_rows(n: int) -> Iterator[tuple]:
    """(rational, F(rational)) pairs for generation n — CSV export source."""
    for v in cw_generation(n):
        yield v, minkowski_f(v)
