"""Exact arithmetic over the rationals.

Dense univariate polynomials with ``fractions.Fraction`` coefficients,
rational functions whose denominator is a power of a single linear factor
(z - root)^k, rectangular rational matrices, and fraction-free (Bareiss)
linear solves and determinants.

All values are immutable after construction and all operations are pure,
so everything here is safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DomainError, PoleError, SingularMatrixError

Rational = Fraction

CoeffLike = Union[int, str, Fraction]


def rational_to_string(q: Fraction) -> str:
    """Serialize a rational as a canonical ``"num/den"`` string."""
    return f"{q.numerator}/{q.denominator}"


def rational_from_string(s: str) -> Fraction:
    """Parse ``"num/den"`` (or a plain integer / decimal string)."""
    return Fraction(s.strip())


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class Polynomial:
    """Dense univariate polynomial over the rationals.

    Coefficients are stored in ascending degree with no trailing zeros.
    The zero polynomial has an empty coefficient tuple and degree -1,
    which keeps the weighted-reverse transform total.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[CoeffLike] = ()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: CoeffLike) -> "Polynomial":
        return cls((c,))

    # -- basic queries ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"

    def coeff(self, k: int) -> Fraction:
        """Coefficient of z^k (zero beyond the degree)."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def coeff_strings(self) -> list:
        return [rational_to_string(c) for c in self.coeffs]

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Polynomial):
            a, b = self.coeffs, other.coeffs
            if len(a) < len(b):
                a, b = b, a
            out = list(a)
            for i, c in enumerate(b):
                out[i] += c
            return Polynomial(out)
        if isinstance(other, (int, Fraction)):
            return self + Polynomial((other,))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Polynomial) else Polynomial((-Fraction(other),)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if not self.coeffs or not other.coeffs:
                return Polynomial()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return Polynomial(out)
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Polynomial(tuple(x * c for x in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, z):
        """Evaluate by Horner's rule; works for Fraction, int, mpf, mpc."""
        if not self.coeffs:
            return z * 0
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * z + c
        return acc + z * 0  # coerce to the argument's arithmetic type

    # -- calculus and transforms -------------------------------------------------

    def derivative(self, k: int = 1) -> "Polynomial":
        """Exact k-th derivative."""
        if k < 0:
            raise ValueError("derivative order must be >= 0")
        cs = self.coeffs
        for _ in range(k):
            cs = tuple(i * cs[i] for i in range(1, len(cs)))
            if not cs:
                break
        return Polynomial(cs)

    def shifted(self, a: CoeffLike = 1) -> "Polynomial":
        """P(z + a), by repeated synthetic division."""
        a = Fraction(a)
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += a * cs[j + 1]
        return Polynomial(cs)

    def dilated(self, c: CoeffLike = 2) -> "Polynomial":
        """P(c * z)."""
        c = Fraction(c)
        out = []
        f = Fraction(1)
        for x in self.coeffs:
            out.append(x * f)
            f *= c
        return Polynomial(out)

    def reverse_weighted(self, d: int) -> "Polynomial":
        """z^d * P(2/z); requires d >= degree so the result is polynomial."""
        if d < self.degree:
            raise DomainError(
                f"reverse weight {d} below degree {self.degree}: result not polynomial"
            )
        out = [Fraction(0)] * (d + 1)
        for i, c in enumerate(self.coeffs):
            out[d - i] = c * (1 << i)
        return Polynomial(out)

    def deflate(self, root: CoeffLike) -> "Polynomial":
        """Exact division by (z - root); raises if the remainder is nonzero."""
        root = Fraction(root)
        if not self.coeffs:
            return Polynomial()
        out = [Fraction(0)] * self.degree
        acc = Fraction(0)
        for i in range(self.degree, 0, -1):
            acc = self.coeffs[i] + acc * root
            out[i - 1] = acc
        rem = self.coeffs[0] + acc * root
        if rem:
            raise DomainError(f"{root} is not a root (remainder {rem})")
        return Polynomial(out)


def poly_arith(kind: str, p: Polynomial, q) -> Polynomial:
    """Named dispatch over +, -, *, scalar *: convenience for serialization code."""
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    if kind == "scale":
        return p * Fraction(q)
    raise ValueError(f"unknown op kind {kind!r}")


def poly_transform(p: Polynomial, kind: str, weight: int = 0) -> Polynomial:
    """The three coefficient transforms used by the recurrence machinery.

    kind: "shift-by-1" -> P(z+1); "dilate-by-2" -> P(2z);
    "reverse-with-weight" -> z^weight * P(2/z).
    """
    if kind == "shift-by-1":
        return p.shifted(1)
    if kind == "dilate-by-2":
        return p.dilated(2)
    if kind == "reverse-with-weight":
        return p.reverse_weighted(weight)
    raise ValueError(f"unknown transform kind {kind!r}")


def poly_derivative_k(p: Polynomial, k: int) -> Polynomial:
    return p.derivative(k)


@dataclass(frozen=True)
class RationalFunction:
    """N(z) / (z - root)^power with exact rational data.

    Every rational function this package manipulates has a denominator
    that is a power of one linear factor, so that canonical form is
    stored directly instead of a general denominator polynomial.
    """

    numerator: Polynomial
    root: Fraction
    power: int

    @classmethod
    def make(cls, numerator: Polynomial, root: CoeffLike, power: int) -> "RationalFunction":
        if power < 0:
            raise ValueError("denominator power must be >= 0")
        return cls(numerator, Fraction(root), power)

    @property
    def denominator(self) -> Polynomial:
        return Polynomial((-self.root, 1)) ** self.power

    def __call__(self, z):
        den = (z - self.root) ** self.power if self.power else 1
        if den == 0:
            raise PoleError(f"evaluation at pole z = {self.root}", where=self.root)
        return self.numerator(z) / den

    def derivative(self) -> "RationalFunction":
        # d/dz [N/(z-r)^k] = (N'(z-r) - k N) / (z-r)^(k+1)
        lin = Polynomial((-self.root, 1))
        num = self.numerator.derivative() * lin - self.power * self.numerator
        return RationalFunction(num, self.root, self.power + 1)

    def derivative_at(self, z):
        return self.derivative()(z)


def ratfunc_eval(r: RationalFunction, z):
    """Evaluate a rational function; raises PoleError at the pole."""
    return r(z)


class RationalMatrix:
    """Rectangular matrix of rationals (thin immutable wrapper)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[CoeffLike]]):
        rows = [tuple(Fraction(x) for x in row) for row in entries]
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("matrix must be rectangular")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "entries", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def matvec(self, v: Sequence[Fraction]) -> list:
        return [sum((row[j] * v[j] for j in range(self.cols)), Fraction(0))
                for row in self.entries]


def _as_rows(a) -> list:
    if isinstance(a, RationalMatrix):
        return [list(r) for r in a.entries]
    return [[Fraction(x) for x in row] for row in a]


def _integerize(rows):
    """Scale each row by the lcm of its matrix-entry denominators.

    Returns integer rows plus the per-row scales. RHS values must be
    scaled by the same factors by the caller; keeping the (potentially
    enormous) RHS denominators out of the matrix is what keeps Bareiss
    intermediates small.
    """
    out = []
    scales = []
    for row in rows:
        den = 1
        for x in row:
            den = _lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
        scales.append(den)
    return out, scales


def _bareiss_forward(m):
    """In-place fraction-free elimination over the first n columns.

    ``m`` has n rows; columns beyond the n-th are carried along
    (augmented right-hand sides). Returns (permutation sign, singular).
    """
    n = len(m)
    sign = 1
    prev = 1
    width = len(m[0])
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return sign, True  # structurally singular at column k
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            rowi = m[i]
            rowk = m[k]
            for j in range(k + 1, width):
                rowi[j] = (rowi[j] * pk - mik * rowk[j]) // prev
            rowi[k] = 0
        prev = pk
    return sign, False


def mat_solve_exact(a, b) -> list:
    """Exact solution of A x = b over the rationals.

    Fraction-free Bareiss elimination on an integerized copy: row scales
    clear the matrix denominators, a single global factor clears the
    right-hand side and is divided back out of the solution.

    Raises SingularMatrixError when A is singular.
    """
    rows = _as_rows(a)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    bvec = [Fraction(x) for x in b]
    if len(bvec) != n:
        raise ValueError("rhs length mismatch")
    int_rows, scales = _integerize(rows)
    scaled_b = [bvec[i] * scales[i] for i in range(n)]
    ell = 1
    for x in scaled_b:
        ell = _lcm(ell, x.denominator)
    m = [int_rows[i] + [int(scaled_b[i] * ell)] for i in range(n)]
    _, singular = _bareiss_forward(m)
    if singular or m[n - 1][n - 1] == 0:
        raise SingularMatrixError("singular matrix in exact solve")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(m[i][n])
        row = m[i]
        for j in range(i + 1, n):
            s -= row[j] * x[j]
        x[i] = s / row[i]
    return [v / ell for v in x]


def mat_det_exact(a) -> Fraction:
    """Exact determinant via fraction-free elimination."""
    rows = _as_rows(a)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    int_rows, scales = _integerize(rows)
    m = [list(r) for r in int_rows]
    sign, singular = _bareiss_forward(m)
    if singular:
        return Fraction(0)
    det = Fraction(sign * m[n - 1][n - 1])
    for s in scales:
        det /= s
    return det
