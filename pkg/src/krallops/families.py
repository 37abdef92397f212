"""Classical discrete and continuous orthogonal polynomial families.

Each family knows how to build its polynomials from an explicit
hypergeometric-style sum, its second-order eigenoperator, its eigenvalue
sequence theta_n, and its three-term recurrence
x*p_n = a_n*p_{n+1} + b_n*p_n + c_n*p_{n-1}.  The discrete families on a
quadratic lattice (Hahn) and the Jacobi family also expose the r_j basis
and the u_j sequences used by the second-kind lowering operators.

All parameters are exact rationals; degenerate parameter values raise
DegeneracyError naming the factor that collapsed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DegeneracyError
from .opalg import DifferenceOperator, DifferentialOperator, Operator
from math import factorial

from .polyops import (
    Polynomial,
    RatLike,
    as_fraction,
    binom_poly,
    fraction_to_str,
    binom_scalar,
    falling_factorial_poly,
    pochhammer,
    pochhammer_poly,
)


def _neg_x_poch(count: int) -> Polynomial:
    """(-x)_count as a polynomial in x; equals (-1)^count * x(x-1)...(x-count+1)."""
    return falling_factorial_poly(count) * ((-1) ** count)


class Family:
    """Shared behavior; concrete families are frozen dataclasses below."""

    kind: str  # "difference" or "differential"

    def polynomial(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("polynomial degree must be nonnegative")
        return _classical_poly(self, n)

    def _build_poly(self, n: int) -> Polynomial:
        raise NotImplementedError

    def eigenvalue(self, n: int) -> Fraction:
        raise NotImplementedError

    def second_order_op(self) -> Operator:
        raise NotImplementedError

    def ttr(self, n: int) -> tuple[Fraction, Fraction, Fraction]:
        """Coefficients (a_n, b_n, c_n) of x*p_n = a_n p_{n+1} + b_n p_n + c_n p_{n-1}."""
        return _ttr_by_expansion(self, n)

    def name(self) -> str:
        return type(self).__name__.lower()


# lru_cache is safe for concurrent readers, which covers the memo-table
# requirement without hand-rolled locking.
@lru_cache(maxsize=None)
def _classical_poly(fam: Family, n: int) -> Polynomial:
    return fam._build_poly(n)


@lru_cache(maxsize=None)
def _ttr_by_expansion(fam: Family, n: int) -> tuple[Fraction, Fraction, Fraction]:
    """Derive TTR coefficients by expanding x*p_n in the family basis."""
    coeffs = expand_in_family_basis(fam, Polynomial.x() * fam.polynomial(n))
    for m, c in enumerate(coeffs[: max(n - 1, 0)]):
        if c != 0:
            raise DegeneracyError(
                f"x*p_{n} has a component on p_{m}; family data is inconsistent"
            )
    c_n = coeffs[n - 1] if n >= 1 else Fraction(0)
    return (coeffs[n + 1], coeffs[n], c_n)


def expand_in_family_basis(fam: Family, poly: Polynomial) -> list[Fraction]:
    """Exact coordinates of poly in the basis p_0, p_1, ... of the family."""
    if poly.is_zero():
        return []
    out = [Fraction(0)] * (poly.degree + 1)
    residual = poly
    for m in range(poly.degree, -1, -1):
        c = residual.coeff(m)
        if c == 0:
            continue
        pm = fam.polynomial(m)
        d = c / pm.lead
        out[m] = d
        residual = residual - pm * d
    if not residual.is_zero():
        raise DegeneracyError("family basis expansion failed to terminate")
    return out


def eigen_solve_poly(fam: Family, n: int) -> Polynomial:
    """Second, independent generator: solve (D - theta_n) p = 0 degree by degree.

    The second-order operator is triangular on monomials with diagonal
    theta_m, so back-substitution from the leading coefficient (matched to
    the explicit-sum generator) pins the polynomial uniquely.
    """
    op = fam.second_order_op()
    cols = [op.apply(Polynomial.monomial(m)) for m in range(n + 1)]
    theta = [fam.eigenvalue(m) for m in range(n + 1)]
    target = fam.polynomial(n).lead
    v: list[Fraction] = [Fraction(0)] * (n + 1)
    v[n] = target
    for i in range(n - 1, -1, -1):
        s = Fraction(0)
        for m in range(i + 1, n + 1):
            s += cols[m].coeff(i) * v[m]
        if theta[i] == theta[n]:
            raise DegeneracyError(
                f"eigenvalue collision theta_{i} = theta_{n}; eigen-solve is singular"
            )
        v[i] = -s / (theta[i] - theta[n])
    return Polynomial(v)


# -- discrete families ----------------------------------------------------------


@dataclass(frozen=True)
class Charlier(Family):
    a: Fraction

    kind = "difference"

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        if self.a == 0:
            raise DegeneracyError("Charlier requires a != 0")

    def _build_poly(self, n: int) -> Polynomial:
        out = Polynomial.zero()
        for j in range(n + 1):
            out = out + falling_factorial_poly(j) * (
                (-self.a) ** (n - j) * binom_scalar(n, j)
            )
        return out / factorial(n)

    def eigenvalue(self, n: int) -> Fraction:
        return Fraction(-n)

    def second_order_op(self) -> DifferenceOperator:
        a = self.a
        return DifferenceOperator(
            {-1: Polynomial.x(), 0: Polynomial((-a, -1)), 1: Polynomial((a,))}
        )

    def ttr(self, n: int) -> tuple[Fraction, Fraction, Fraction]:
        return (Fraction(n + 1), n + self.a, self.a)


@dataclass(frozen=True)
class Meixner(Family):
    a: Fraction
    c: Fraction

    kind = "difference"

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "c", as_fraction(self.c))
        if self.a in (0, 1):
            raise DegeneracyError("Meixner requires a not in {0, 1}")

    def _build_poly(self, n: int) -> Polynomial:
        neg_x_minus_c = Polynomial((-self.c, -1))
        out = Polynomial.zero()
        for j in range(n + 1):
            out = out + binom_poly(j) * binom_poly(n - j)(neg_x_minus_c) * self.a ** -j
        return out * ((-1) ** n)

    def eigenvalue(self, n: int) -> Fraction:
        return n * (self.a - 1)

    def second_order_op(self) -> DifferenceOperator:
        a, c = self.a, self.c
        return DifferenceOperator(
            {
                -1: Polynomial.x(),
                0: Polynomial((-a * c, -(1 + a))),
                1: Polynomial((a * c, a)),
            }
        )

    def ttr(self, n: int) -> tuple[Fraction, Fraction, Fraction]:
        a, c = self.a, self.c
        return (
            a * (n + 1) / (a - 1),
            -((1 + a) * n + a * c) / (a - 1),
            (n + c - 1) / (a - 1),
        )


@dataclass(frozen=True)
class Krawtchouk(Family):
    a: Fraction
    N: Fraction

    kind = "difference"

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "N", as_fraction(self.N))
        if self.a == 0 or self.a == -1:
            raise DegeneracyError("Krawtchouk requires a not in {0, -1}")

    def _build_poly(self, n: int) -> Polynomial:
        a, N = self.a, self.N
        ratio = a / (1 + a)
        out = Polynomial.zero()
        for j in range(n + 1):
            scalar = (
                (-1) ** (n + j)
                * ratio ** (n - j)
                * pochhammer(-n, j)
                * pochhammer(N - n, n - j)
                / factorial(j)
            )
            out = out + _neg_x_poch(j) * scalar
        return out / factorial(n)

    def eigenvalue(self, n: int) -> Fraction:
        return -n * (1 + self.a)

    def second_order_op(self) -> DifferenceOperator:
        a, N = self.a, self.N
        # coefficient of Sh_0 is -(x - a(x - N + 1)); of Sh_1 is -a(x - N + 1)
        return DifferenceOperator(
            {
                -1: Polynomial.x(),
                0: Polynomial((a * (-N + 1), -(1 - a))),
                1: Polynomial((-a * (-N + 1), -a)),
            }
        )


@dataclass(frozen=True)
class Hahn(Family):
    alpha: Fraction
    c: Fraction
    N: Fraction

    kind = "difference"

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        object.__setattr__(self, "c", as_fraction(self.c))
        object.__setattr__(self, "N", as_fraction(self.N))
        s = self.alpha + self.c - self.N
        if s.denominator == 1 and s <= -1:
            raise DegeneracyError(
                "Hahn requires alpha + c - N not in {-1, -2, ...};"
                f" got {s}"
            )

    def _build_poly(self, n: int) -> Polynomial:
        al, c, N = self.alpha, self.c, self.N
        out = Polynomial.zero()
        for j in range(n + 1):
            denom = pochhammer(n + al + c - N + j, n - j)
            if denom == 0:
                raise DegeneracyError(
                    f"Hahn degree-{n} polynomial undefined:"
                    f" (n+alpha+c-N+{j})_{n - j} = 0"
                )
            scalar = (
                pochhammer(-n, j)
                * pochhammer(1 - N + j, n - j)
                * pochhammer(c + j, n - j)
                / (denom * factorial(j))
            )
            out = out + _neg_x_poch(j) * scalar
        return out

    def eigenvalue(self, n: int) -> Fraction:
        return (n + 1) * (n + self.alpha + self.c - self.N - 1)

    def sigma(self, n: int) -> Fraction:
        return 2 * n + self.alpha + self.c - self.N - 2

    def second_order_op(self) -> DifferenceOperator:
        al, c, N = self.alpha, self.c, self.N
        f_m1 = Polynomial.x() * Polynomial((-al, 1))
        f_p1 = Polynomial((c, 1)) * Polynomial((-N + 1, 1))
        f_0 = Polynomial((al + N * (c - 1) - 1, al - c + N - 1, -2))
        return DifferenceOperator({-1: f_m1, 0: f_0, 1: f_p1})

    def ttr(self, n: int) -> tuple[Fraction, Fraction, Fraction]:
        al, c, N = self.alpha, self.c, self.N
        s = al + c - N
        needed = [(2 * n + s - 1, "2n+alpha+c-N-1"), (2 * n + s + 1, "2n+alpha+c-N+1")]
        if n >= 1:
            needed += [(2 * n + s - 2, "2n+alpha+c-N-2"), (2 * n + s, "2n+alpha+c-N")]
        for factor, label in needed:
            if factor == 0:
                raise DegeneracyError(f"Hahn recurrence degenerate at n={n}: {label} = 0")
        b_n = (
            c * (N - 1) * (s - 1) + n * (al - c + N - 1) * (n + s)
        ) / ((2 * n + s - 1) * (2 * n + s + 1))
        if n == 0:
            return (Fraction(1), b_n, Fraction(0))
        c_n = (
            n * (N - n) * (n + s - 1) * (n + al - N) * (n + c - 1) * (n + al + c - 1)
        ) / ((2 * n + s - 2) * (2 * n + s - 1) ** 2 * (2 * n + s))
        return (Fraction(1), b_n, c_n)

    def r_basis(self, j: int) -> Polynomial:
        return lattice_product(j, self.alpha + self.c - self.N - 2)

    def u_seq(self, j: int, n: RatLike) -> Fraction:
        n = as_fraction(n)
        return pochhammer(n, j) * pochhammer(-n - self.alpha - self.c + self.N + 2, j)


# -- continuous families ---------------------------------------------------------


@dataclass(frozen=True)
class Laguerre(Family):
    alpha: Fraction

    kind = "differential"

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_fraction(self.alpha))

    def _build_poly(self, n: int) -> Polynomial:
        out = Polynomial.zero()
        for j in range(n + 1):
            scalar = Fraction((-1) ** j, factorial(j)) * binom_scalar(
                n + self.alpha, n - j
            )
            out = out + Polynomial.monomial(j, scalar)
        return out

    def eigenvalue(self, n: int) -> Fraction:
        return Fraction(-n)

    def second_order_op(self) -> DifferentialOperator:
        return DifferentialOperator(
            (Polynomial.zero(), Polynomial((self.alpha + 1, -1)), Polynomial.x())
        )


@dataclass(frozen=True)
class Jacobi(Family):
    alpha: Fraction
    beta: Fraction

    kind = "differential"

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        object.__setattr__(self, "beta", as_fraction(self.beta))
        for value, label in (
            (self.alpha, "alpha"),
            (self.beta, "beta"),
            (self.alpha + self.beta, "alpha+beta"),
        ):
            if value.denominator == 1 and value <= -1:
                raise DegeneracyError(
                    f"Jacobi requires {label} not in {{-1, -2, ...}}; got {value}"
                )

    def _build_poly(self, n: int) -> Polynomial:
        al, be = self.alpha, self.beta
        xm1 = Polynomial((-1, 1))
        xp1 = Polynomial((1, 1))
        out = Polynomial.zero()
        for j in range(n + 1):
            scalar = binom_scalar(n + al, j) * binom_scalar(n + be, n - j)
            out = out + xm1 ** (n - j) * xp1**j * scalar
        return out * Fraction(1, 2**n)

    def eigenvalue(self, n: int) -> Fraction:
        return -n * (n + self.alpha + self.beta + 1)

    def sigma(self, n: int) -> Fraction:
        return 2 * n + self.alpha + self.beta - 1

    def second_order_op(self) -> DifferentialOperator:
        al, be = self.alpha, self.beta
        return DifferentialOperator(
            (
                Polynomial.zero(),
                Polynomial((be - al, -(al + be + 2))),
                Polynomial((1, 0, -1)),
            )
        )

    def r_basis(self, j: int) -> Polynomial:
        al, be = self.alpha, self.beta
        out = Polynomial.one()
        for i in range(j):
            out = out * Polynomial(((al + i + 1) * (be - i), -1))
        return out

    def u_seq(self, j: int, n: RatLike) -> Fraction:
        n = as_fraction(n)
        return pochhammer(n + self.alpha, j) * pochhammer(n + self.beta - j, j)


# -- quadratic-lattice helpers and dual Hahn polynomials ---------------------------


def lattice_product(j: int, u: RatLike) -> Polynomial:
    """(-1)^j * prod_{i=0}^{j-1} (x + i(u - i)); the j = 0 product is 1."""
    u = as_fraction(u)
    out = Polynomial.one()
    for i in range(j):
        out = out * Polynomial((i * (u - i), 1))
    return out * ((-1) ** j)


def dual_hahn_poly(alpha: RatLike, c: RatLike, N: RatLike, k: int) -> Polynomial:
    """Degree-k dual Hahn polynomial in the lattice variable.

    Expanded in the lattice products s_{j, N-alpha-c}; evaluating at
    n(n+alpha+c-N) recovers Hahn values by the duality identity.
    """
    alpha, c, N = as_fraction(alpha), as_fraction(c), as_fraction(N)
    out = Polynomial.zero()
    for j in range(k + 1):
        scalar = (
            pochhammer(-k, j)
            * pochhammer(1 - N + j, k - j)
            * pochhammer(c + j, k - j)
            / factorial(j)
        )
        out = out + lattice_product(j, N - alpha - c) * scalar
    return out


def dual_hahn_variant(variant: int, alpha: RatLike, c: RatLike, N: RatLike, k: int) -> Polynomial:
    """The two reparameterized dual Hahn families attached to Hahn(alpha, c, N).

    Both live on the lattice of r_j = s_{j, alpha+c-N-2} and evaluate the
    second-kind construction data: variant 1 uses parameters
    (N+c-1, 2-c, alpha+c-1), variant 2 uses (-alpha, 2-c, -N).
    """
    alpha, c, N = as_fraction(alpha), as_fraction(c), as_fraction(N)
    if variant == 1:
        return dual_hahn_poly(N + c - 1, 2 - c, alpha + c - 1, k)
    if variant == 2:
        return dual_hahn_poly(-alpha, 2 - c, -N, k)
    raise ValueError("dual Hahn variant must be 1 or 2")


FAMILY_PARAM_FIELDS = {
    "charlier": ("a",),
    "meixner": ("a", "c"),
    "krawtchouk": ("a", "N"),
    "hahn": ("alpha", "c", "N"),
    "laguerre": ("alpha",),
    "jacobi": ("alpha", "beta"),
}

_FAMILY_CLASSES = {
    "charlier": Charlier,
    "meixner": Meixner,
    "krawtchouk": Krawtchouk,
    "hahn": Hahn,
    "laguerre": Laguerre,
    "jacobi": Jacobi,
}


def family_from_name(name: str, params: dict) -> Family:
    """Build a family from its lowercase name and a parameter dict."""
    cls = _FAMILY_CLASSES.get(name)
    if cls is None:
        raise ValueError(f"unknown family {name!r}")
    fields = FAMILY_PARAM_FIELDS[name]
    missing = [f for f in fields if f not in params]
    if missing:
        raise ValueError(f"family {name!r} needs parameters {missing}")
    return cls(*(as_fraction(params[f]) for f in fields))


def family_to_json(fam: Family) -> dict:
    name = fam.name()
    return {
        "family": name,
        "params": {
            f: fraction_to_str(getattr(fam, f)) for f in FAMILY_PARAM_FIELDS[name]
        },
    }


def family_from_json(data: dict) -> Family:
    return family_from_name(data["family"], data["params"])
