"""Dense univariate polynomials over exact rationals.

Everything downstream (difference/differential operators, classical
families, moment functionals) is built on this class, so it stays small
and strict: coefficients are `fractions.Fraction`, stored ascending by
power with trailing zeros stripped, and every operation is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Union

RatLike = Union[Fraction, int, str]

NEG_INF = float("-inf")


def as_fraction(value: RatLike) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def fraction_to_str(value: Fraction) -> str:
    """Serialize a Fraction as a "num/den" string (denominator always shown)."""
    return f"{value.numerator}/{value.denominator}"


class Polynomial:
    """Immutable polynomial with Fraction coefficients, lowest-terms exact."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "_coeffs", tuple(cs))

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
    def monomial(cls, power: int, coeff: RatLike = 1) -> "Polynomial":
        c = as_fraction(coeff)
        if c == 0:
            return cls()
        return cls([0] * power + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[RatLike], lead: RatLike = 1) -> "Polynomial":
        out = cls((as_fraction(lead),))
        for r in roots:
            out = out * cls((-as_fraction(r), 1))
        return out

    # -- inspection ----------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self):
        """Degree as an int; float('-inf') for the zero polynomial."""
        return len(self._coeffs) - 1 if self._coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, power: int) -> Fraction:
        if 0 <= power < len(self._coeffs):
            return self._coeffs[power]
        return Fraction(0)

    @property
    def lead(self) -> Fraction:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self._coeffs])

    def __sub__(self, other) -> "Polynomial":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if self.is_zero() or other.is_zero():
                return Polynomial()
            out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
            for i, a in enumerate(self._coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other._coeffs):
                    if b:
                        out[i + j] += a * b
            return Polynomial(out)
        try:
            c = as_fraction(other)
        except TypeError:
            return NotImplemented
        return Polynomial([c * a for a in self._coeffs])

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Polynomial":
        c = as_fraction(scalar)
        return Polynomial([a / c for a in self._coeffs])

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative polynomial powers are not defined")
        out = Polynomial.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, scalar: RatLike) -> "Polynomial":
        return self * as_fraction(scalar)

    # -- evaluation and composition -------------------------------------------

    def __call__(self, point):
        """Evaluate at a rational point, or compose when given a Polynomial."""
        if isinstance(point, Polynomial):
            acc: Polynomial = Polynomial()
            for c in reversed(self._coeffs):
                acc = acc * point + Polynomial((c,))
            return acc
        x0 = as_fraction(point)
        acc_f = Fraction(0)
        for c in reversed(self._coeffs):
            acc_f = acc_f * x0 + c
        return acc_f

    def shift_arg(self, offset: RatLike) -> "Polynomial":
        """Return p(x + offset)."""
        return self(Polynomial((as_fraction(offset), 1)))

    def derivative(self, times: int = 1) -> "Polynomial":
        p = self
        for _ in range(times):
            p = Polynomial([i * c for i, c in enumerate(p._coeffs)][1:])
        return p

    # -- comparison / display --------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({list(self._coeffs)!r})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for power in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[power]
            if c == 0:
                continue
            if power == 0:
                body = str(c)
            else:
                xs = "x" if power == 1 else f"x^{power}"
                if c == 1:
                    body = xs
                elif c == -1:
                    body = f"-{xs}"
                else:
                    body = f"{c}*{xs}"
            parts.append(body)
        out = parts[0]
        for body in parts[1:]:
            out += f" - {body[1:]}" if body.startswith("-") else f" + {body}"
        return out

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> list[str]:
        return [fraction_to_str(c) for c in self._coeffs]

    @classmethod
    def from_json(cls, data: Iterable[str]) -> "Polynomial":
        return cls(data)


def _coerce_poly(value):
    if isinstance(value, Polynomial):
        return value
    try:
        return Polynomial((as_fraction(value),))
    except TypeError:
        return NotImplemented


# -- combinatorial bases and scalars ------------------------------------------


def pochhammer(start: RatLike, count: int) -> Fraction:
    """Rising factorial (start)_count = start*(start+1)*...*(start+count-1)."""
    if count < 0:
        raise ValueError("pochhammer needs a nonnegative count")
    a = as_fraction(start)
    out = Fraction(1)
    for i in range(count):
        out *= a + i
    return out


def pochhammer_poly(offset: RatLike, count: int) -> Polynomial:
    """Rising factorial in the variable: (x + offset)_count, expanded."""
    off = as_fraction(offset)
    return Polynomial.from_roots([-(off + i) for i in range(count)])


def falling_factorial_poly(count: int) -> Polynomial:
    """x(x-1)...(x-count+1); the empty product is 1."""
    return Polynomial.from_roots(range(count))


def binom_poly(count: int) -> Polynomial:
    """Binomial-coefficient polynomial binom(x, count)."""
    if count < 0:
        raise ValueError("binom_poly needs a nonnegative count")
    out = falling_factorial_poly(count)
    return out / factorial(count)


def binom_scalar(top: RatLike, count: int) -> Fraction:
    """binom(top, count) for rational top and nonnegative integer count."""
    t = as_fraction(top)
    return pochhammer(t - count + 1, count) / factorial(count)


def antidifference(target: Polynomial, step: RatLike) -> Polynomial:
    """Solve P(x + step) - P(x) = target for the P with zero constant term.

    The solution is unique once the constant term is pinned: matching
    leading coefficients determines the top coefficient of P, and the
    remainder recurses downward.  Raises ValueError for step = 0.
    """
    d = as_fraction(step)
    if d == 0:
        raise ValueError("antidifference requires a nonzero step")
    residual = target
    out = Polynomial.zero()
    while not residual.is_zero():
        m = residual.degree
        k = m + 1
        c = residual.lead / (k * d)
        term = Polynomial.monomial(k, c)
        out = out + term
        residual = residual - (term.shift_arg(d) - term)
    return out
