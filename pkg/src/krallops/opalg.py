"""Difference and differential operators with polynomial coefficients.

A difference operator is a finite sum  sum_l f_l(x) * Sh_l  where Sh_l
sends p(x) to p(x+l); its genre is (min l, max l) over nonzero terms and
its order is the width of that window.  A differential operator is a
finite sum  sum_j f_j(x) * (d/dx)^j.  Both kinds support apply, compose,
and linear combinations, and both serialize to JSON with bit-exact
rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import OperatorError
from .polyops import Polynomial, RatLike, as_fraction, binom_scalar, fraction_to_str


def _as_coeff_poly(value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    return Polynomial((as_fraction(value),))


class DifferenceOperator:
    """Finite linear combination of shift operators with polynomial coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Union[Polynomial, RatLike]] = ()):
        canon: dict[int, Polynomial] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for shift, coeff in items:
            p = _as_coeff_poly(coeff)
            if p.is_zero():
                continue
            if shift in canon:
                p = canon[shift] + p
                if p.is_zero():
                    del canon[shift]
                    continue
            canon[int(shift)] = p
        self._terms = dict(sorted(canon.items()))

    @classmethod
    def shift(cls, offset: int, coeff: Union[Polynomial, RatLike] = 1) -> "DifferenceOperator":
        return cls({offset: _as_coeff_poly(coeff)})

    @classmethod
    def identity(cls) -> "DifferenceOperator":
        return cls.shift(0)

    @classmethod
    def forward_difference(cls) -> "DifferenceOperator":
        """Sh_1 - Sh_0."""
        return cls({1: Polynomial.one(), 0: Polynomial((-1,))})

    @classmethod
    def backward_difference(cls) -> "DifferenceOperator":
        """Sh_0 - Sh_{-1}."""
        return cls({0: Polynomial.one(), -1: Polynomial((-1,))})

    @property
    def terms(self) -> dict[int, Polynomial]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, shift: int) -> Polynomial:
        return self._terms.get(shift, Polynomial.zero())

    def genre(self) -> tuple[int, int]:
        if not self._terms:
            raise OperatorError("genre is undefined for the zero operator")
        shifts = self._terms.keys()
        return (min(shifts), max(shifts))

    def order(self) -> int:
        s, r = self.genre()
        return r - s

    def apply(self, p: Polynomial) -> Polynomial:
        out = Polynomial.zero()
        for shift, f in self._terms.items():
            out = out + f * p.shift_arg(shift)
        return out

    def compose(self, other: "DifferenceOperator") -> "DifferenceOperator":
        # f(x)Sh_a then g(x)Sh_b on the right: f(x)*g(x+a)*Sh_{a+b}.
        acc: dict[int, Polynomial] = {}
        for a, f in self._terms.items():
            for b, g in other._terms.items():
                key = a + b
                contrib = f * g.shift_arg(a)
                acc[key] = acc[key] + contrib if key in acc else contrib
        return DifferenceOperator(acc)

    def __add__(self, other: "DifferenceOperator") -> "DifferenceOperator":
        if not isinstance(other, DifferenceOperator):
            return NotImplemented
        acc = dict(self._terms)
        for shift, g in other._terms.items():
            acc[shift] = acc[shift] + g if shift in acc else g
        return DifferenceOperator(acc)

    def __sub__(self, other: "DifferenceOperator") -> "DifferenceOperator":
        return self + (-other)

    def __neg__(self) -> "DifferenceOperator":
        return DifferenceOperator({s: -f for s, f in self._terms.items()})

    def __mul__(self, scalar) -> "DifferenceOperator":
        c = as_fraction(scalar)
        return DifferenceOperator({s: f * c for s, f in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, DifferenceOperator):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        return f"DifferenceOperator({self._terms!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({f})*S[{s}]" for s, f in self._terms.items())


class DifferentialOperator:
    """Finite linear combination of d/dx powers with polynomial coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, coeffs: Iterable[Union[Polynomial, RatLike]] = ()):
        cs = [_as_coeff_poly(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self._terms = tuple(cs)

    @classmethod
    def identity(cls) -> "DifferentialOperator":
        return cls((Polynomial.one(),))

    @classmethod
    def ddx(cls, order: int = 1, coeff: Union[Polynomial, RatLike] = 1) -> "DifferentialOperator":
        return cls([Polynomial.zero()] * order + [_as_coeff_poly(coeff)])

    @property
    def terms(self) -> tuple[Polynomial, ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, order: int) -> Polynomial:
        if 0 <= order < len(self._terms):
            return self._terms[order]
        return Polynomial.zero()

    def order(self) -> int:
        if not self._terms:
            raise OperatorError("order is undefined for the zero operator")
        return len(self._terms) - 1

    def in_algebra(self) -> bool:
        """True when deg f_j <= j for every term (zero coeffs pass)."""
        return all(f.is_zero() or f.degree <= j for j, f in enumerate(self._terms))

    def apply(self, p: Polynomial) -> Polynomial:
        out = Polynomial.zero()
        d = p
        for f in self._terms:
            if not f.is_zero():
                out = out + f * d
            d = d.derivative()
        return out

    def compose(self, other: "DifferentialOperator") -> "DifferentialOperator":
        # Leibniz: (d/dx)^i (g h) = sum_m C(i,m) g^(m) h^(i-m).
        size = (len(self._terms) - 1) + (len(other._terms) - 1) + 1 if self._terms and other._terms else 0
        acc = [Polynomial.zero() for _ in range(max(size, 0))]
        for i, f in enumerate(self._terms):
            if f.is_zero():
                continue
            for j, g in enumerate(other._terms):
                if g.is_zero():
                    continue
                gm = g
                for m in range(i + 1):
                    if not gm.is_zero():
                        acc[i + j - m] = acc[i + j - m] + binom_scalar(i, m) * f * gm
                    gm = gm.derivative()
        return DifferentialOperator(acc)

    def __add__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        if not isinstance(other, DifferentialOperator):
            return NotImplemented
        n = max(len(self._terms), len(other._terms))
        return DifferentialOperator([self.coeff(j) + other.coeff(j) for j in range(n)])

    def __sub__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        return self + (-other)

    def __neg__(self) -> "DifferentialOperator":
        return DifferentialOperator([-f for f in self._terms])

    def __mul__(self, scalar) -> "DifferentialOperator":
        c = as_fraction(scalar)
        return DifferentialOperator([f * c for f in self._terms])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, DifferentialOperator):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self) -> str:
        return f"DifferentialOperator({list(self._terms)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for j, f in enumerate(self._terms):
            if f.is_zero():
                continue
            parts.append(f"({f})" if j == 0 else f"({f})*D^{j}")
        return " + ".join(parts)


Operator = Union[DifferenceOperator, DifferentialOperator]


def identity_like(op: Operator) -> Operator:
    if isinstance(op, DifferenceOperator):
        return DifferenceOperator.identity()
    return DifferentialOperator.identity()


def zero_like(op: Operator) -> Operator:
    if isinstance(op, DifferenceOperator):
        return DifferenceOperator()
    return DifferentialOperator()


def poly_of_op(p: Polynomial, op: Operator) -> Operator:
    """Substitute an operator into a polynomial: sum_j a_j * op^j, op^0 = identity."""
    out = zero_like(op)
    power = identity_like(op)
    deg = -1 if p.is_zero() else p.degree
    for j in range(deg + 1):
        c = p.coeff(j)
        if c:
            out = out + power * c
        if j < deg:
            power = power.compose(op)
    return out


def op_linear(pairs: Iterable[tuple[RatLike, Operator]]) -> Operator:
    """Exact linear combination sum_i c_i * op_i (all of one kind)."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("op_linear needs at least one term")
    out = zero_like(pairs[0][1])
    for c, op in pairs:
        out = out + op * as_fraction(c)
    return out


# -- JSON round-trip -----------------------------------------------------------


def operator_to_json(op: Operator) -> dict:
    if isinstance(op, DifferenceOperator):
        return {
            "kind": "difference",
            "terms": [
                {"shift": s, "coeffs": f.to_json()} for s, f in sorted(op.terms.items())
            ],
        }
    return {
        "kind": "differential",
        "terms": [
            {"order": j, "coeffs": f.to_json()}
            for j, f in enumerate(op.terms)
            if not f.is_zero()
        ],
    }


def operator_from_json(data: dict) -> Operator:
    kind = data.get("kind")
    if kind == "difference":
        return DifferenceOperator(
            {int(t["shift"]): Polynomial.from_json(t["coeffs"]) for t in data["terms"]}
        )
    if kind == "differential":
        if not data["terms"]:
            return DifferentialOperator()
        top = max(int(t["order"]) for t in data["terms"])
        coeffs = [Polynomial.zero()] * (top + 1)
        for t in data["terms"]:
            coeffs[int(t["order"])] = Polynomial.from_json(t["coeffs"])
        return DifferentialOperator(coeffs)
    raise ValueError(f"unknown operator kind: {kind!r}")
