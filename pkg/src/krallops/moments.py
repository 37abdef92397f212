"""Moment functionals, pairings, and orthogonality checks.

A MomentFunctional is a classical base functional (normalized so the
pairing with 1 equals 1 in the base's natural mass unit) plus a chain of
transforms applied outermost-last:

* ChristoffelBy(r): multiply the functional by a polynomial r,
* ShiftBy(lam): replace the argument measure mu(x) by mu(x + lam),
* AddDeltaScaled(loc, mass_ratio): add a point mass, measured as a ratio
  against the base's unit mass.

Pairings are computed exactly: the test polynomial is rewritten through
the transform chain, then paired with the base by expanding in the base
family's polynomials via the three-term recurrence (only the p_0
coordinate survives).  Because every check downstream is a ratio
identity, the transcendental unit masses never appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence, Union

from .errors import DegeneracyError, NoOrthogonalPolynomialsError
from .families import (
    Charlier,
    Family,
    Hahn,
    Jacobi,
    Krawtchouk,
    Laguerre,
    Meixner,
    dual_hahn_variant,
    family_from_json,
    family_to_json,
)
from .polyops import (
    Polynomial,
    RatLike,
    as_fraction,
    binom_poly,
    fraction_to_str,
    pochhammer,
)


@dataclass(frozen=True)
class ChristoffelBy:
    poly: Polynomial


@dataclass(frozen=True)
class ShiftBy:
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "offset", as_fraction(self.offset))


@dataclass(frozen=True)
class AddDeltaScaled:
    location: Fraction
    mass_ratio: Fraction

    def __post_init__(self):
        object.__setattr__(self, "location", as_fraction(self.location))
        object.__setattr__(self, "mass_ratio", as_fraction(self.mass_ratio))


Transform = Union[ChristoffelBy, ShiftBy, AddDeltaScaled]


@dataclass(frozen=True)
class MomentFunctional:
    base: Family
    transforms: tuple[Transform, ...] = ()

    def transformed(self, transform: Transform) -> "MomentFunctional":
        """Apply one more transform on the outside."""
        return MomentFunctional(self.base, self.transforms + (transform,))


@lru_cache(maxsize=None)
def _monomial_in_basis(family: Family, power: int) -> tuple[Fraction, ...]:
    """Coordinates of x^power in the family basis, via the recurrence only."""
    if power == 0:
        return (Fraction(1),)
    prev = _monomial_in_basis(family, power - 1)
    out = [Fraction(0)] * (power + 1)
    for m, d in enumerate(prev):
        if d == 0:
            continue
        a_m, b_m, c_m = family.ttr(m)
        out[m + 1] += d * a_m
        out[m] += d * b_m
        if m >= 1:
            out[m - 1] += d * c_m
    return tuple(out)


def base_pairing(family: Family, poly: Polynomial) -> Fraction:
    """Pair the base functional with poly, in units of the base's total mass."""
    total = Fraction(0)
    for j, c in enumerate(poly.coeffs):
        if c:
            total += c * _monomial_in_basis(family, j)[0]
    return total


def pairing(functional: MomentFunctional, poly: Polynomial) -> Fraction:
    """Exact pairing <functional, poly> in base-unit mass."""
    extra = Fraction(0)
    p = poly
    # Walk outermost transform first, rewriting the test polynomial.
    for t in reversed(functional.transforms):
        if isinstance(t, ChristoffelBy):
            p = t.poly * p
        elif isinstance(t, ShiftBy):
            p = p.shift_arg(-t.offset)
        elif isinstance(t, AddDeltaScaled):
            extra += t.mass_ratio * p(t.location)
        else:
            raise TypeError(f"unknown transform {t!r}")
    return base_pairing(functional.base, p) + extra


def moment(functional: MomentFunctional, power: int) -> Fraction:
    return pairing(functional, Polynomial.monomial(power))


# -- exact linear algebra over Fraction ------------------------------------------


def det_fraction(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    m = [list(map(Fraction, row)) for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] * inv
                for k in range(col, n):
                    m[r][k] -= factor * m[col][k]
    return det


def solve_fraction(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve a square exact system; raises ValueError if singular."""
    n = len(matrix)
    m = [list(map(Fraction, row)) + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular system")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col] * inv
                for k in range(col, n + 1):
                    m[r][k] -= factor * m[col][k]
    return [m[i][n] / m[i][i] for i in range(n)]


# -- orthogonal sequences from moments ---------------------------------------------


def hankel_det(functional: MomentFunctional, level: int) -> Fraction:
    """det(mu_{i+j})_{i,j=0..level}."""
    mus = [moment(functional, j) for j in range(2 * level + 1)]
    return det_fraction([[mus[i + j] for j in range(level + 1)] for i in range(level + 1)])


def orthoseq(functional: MomentFunctional, nmax: int) -> list[Polynomial]:
    """Monic orthogonal polynomials p_0..p_nmax for the functional.

    Existence at each level requires the corresponding Hankel determinant
    to be nonzero; the first vanishing level raises
    NoOrthogonalPolynomialsError with that level recorded.
    """
    mus = [moment(functional, j) for j in range(2 * nmax + 2)]
    for level in range(nmax + 1):
        d = det_fraction([[mus[i + j] for j in range(level + 1)] for i in range(level + 1)])
        if d == 0:
            raise NoOrthogonalPolynomialsError(
                f"no orthogonal polynomial of degree {level}:"
                f" Hankel determinant vanishes",
                level=level,
            )
    out = [Polynomial.one()]
    for n in range(1, nmax + 1):
        # Solve for monic p_n = x^n + sum_{i<n} v_i x^i with <F, p_n x^m> = 0.
        a = [[mus[i + m] for i in range(n)] for m in range(n)]
        b = [-mus[n + m] for m in range(n)]
        v = solve_fraction(a, b)
        out.append(Polynomial(v + [Fraction(1)]))
    return out


@dataclass
class GramReport:
    values: list[list[Fraction]]
    ok: bool
    failures: list[tuple[int, int]]
    diagonal: list[Fraction]

    @property
    def diagonal_signs(self) -> list[int]:
        return [0 if v == 0 else (1 if v > 0 else -1) for v in self.diagonal]


def gram_check(functional: MomentFunctional, polys: Sequence[Polynomial]) -> GramReport:
    """Pair every product p_i p_j; off-diagonal must vanish, diagonal must not."""
    n = len(polys)
    values = [[Fraction(0)] * n for _ in range(n)]
    failures = []
    for i in range(n):
        for j in range(i, n):
            v = pairing(functional, polys[i] * polys[j])
            values[i][j] = values[j][i] = v
            if i != j and v != 0:
                failures.append((i, j))
    diagonal = [values[i][i] for i in range(n)]
    ok = not failures and all(d != 0 for d in diagonal)
    return GramReport(values=values, ok=ok, failures=failures, diagonal=diagonal)


# -- named transformed functionals -------------------------------------------------


def _rising_window(k: int) -> Polynomial:
    """(x+1)(x+2)...(x+k)."""
    return Polynomial.from_roots([-i for i in range(1, k + 1)])


def _c_window(c: Fraction, k: int) -> Polynomial:
    """(x+c-1)(x+c-2)...(x+c-k)."""
    return Polynomial.from_roots([i - c for i in range(1, k + 1)])


def charlier_transformed(a: RatLike, k: int) -> MomentFunctional:
    """Shift by k+1 then multiply by (x+1)...(x+k); the point mass at
    -k-1 present in the closed-form description emerges from the algebra."""
    base = MomentFunctional(Charlier(as_fraction(a)))
    return base.transformed(ShiftBy(Fraction(k + 1))).transformed(
        ChristoffelBy(_rising_window(k))
    )


def meixner1_transformed(a: RatLike, c: RatLike, k: int) -> MomentFunctional:
    c = as_fraction(c)
    base = MomentFunctional(Meixner(as_fraction(a), c - k - 1))
    return base.transformed(ChristoffelBy(_c_window(c, k)))


def meixner2_transformed(a: RatLike, c: RatLike, k: int) -> MomentFunctional:
    c = as_fraction(c)
    base = MomentFunctional(Meixner(as_fraction(a), c - k - 1))
    return base.transformed(ShiftBy(Fraction(k + 1))).transformed(
        ChristoffelBy(_rising_window(k))
    )


def krawtchouk_transformed(a: RatLike, N: RatLike, k: int) -> MomentFunctional:
    base = MomentFunctional(Krawtchouk(as_fraction(a), as_fraction(N) + k + 1))
    return base.transformed(ShiftBy(Fraction(k + 1))).transformed(
        ChristoffelBy(_rising_window(k))
    )


def hahn1_transformed(alpha: RatLike, c: RatLike, N: RatLike, k: int) -> MomentFunctional:
    c = as_fraction(c)
    base = MomentFunctional(Hahn(as_fraction(alpha), c - k - 1, as_fraction(N)))
    return base.transformed(ChristoffelBy(_c_window(c, k)))


def hahn2_transformed(alpha: RatLike, c: RatLike, N: RatLike, k: int) -> MomentFunctional:
    alpha, c, N = as_fraction(alpha), as_fraction(c), as_fraction(N)
    base = MomentFunctional(Hahn(alpha + k + 1, c - k - 1, N + k + 1))
    return base.transformed(ShiftBy(Fraction(k + 1))).transformed(
        ChristoffelBy(_rising_window(k))
    )


def laguerre_transformed(alpha: RatLike, mass_ratio: RatLike) -> MomentFunctional:
    """Laguerre weight with parameter alpha-1 plus a point mass at 0.

    mass_ratio is the point mass measured in the base's unit mass."""
    base = MomentFunctional(Laguerre(as_fraction(alpha) - 1))
    return base.transformed(AddDeltaScaled(Fraction(0), as_fraction(mass_ratio)))


def jacobi_transformed(alpha: RatLike, beta: RatLike, mass_ratio: RatLike) -> MomentFunctional:
    """Jacobi weight with second parameter beta-1 plus a point mass at -1."""
    base = MomentFunctional(Jacobi(as_fraction(alpha), as_fraction(beta) - 1))
    return base.transformed(AddDeltaScaled(Fraction(-1), as_fraction(mass_ratio)))


# -- pairing-value lemmas as ratio identities -----------------------------------------


@dataclass
class RatioCheck:
    n: int
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class RatioReport:
    kind: str
    checks: list[RatioCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


IP_LEMMA_KINDS = ("chxx", "lme1x", "meixner2", "krawtchouk", "hahn1", "hahn2")


def ip_lemma_check(kind: str, params: dict, k: int, nmax: int) -> RatioReport:
    """Check a closed-form pairing lemma as the ratio <F, p_n> / <F, p_0>.

    Ratios are taken so every transcendental unit mass cancels and both
    sides are exact rationals.  ``params`` carries the family parameters
    (a, c, N, alpha as appropriate).
    """
    if kind == "chxx":
        a = as_fraction(params["a"])
        fam = Charlier(a)
        functional = charlier_transformed(a, k)
        dual = Charlier(-a)

        def expected(n: int) -> Fraction:
            num = dual.polynomial(k)(Fraction(-n - 1))
            den = dual.polynomial(k)(Fraction(-1))
            return (-1) ** n * num / den

    elif kind == "lme1x":
        a, c = as_fraction(params["a"]), as_fraction(params["c"])
        fam = Meixner(a, c)
        functional = meixner1_transformed(a, c, k)
        dual = Meixner(1 / a, -c + 2)

        def expected(n: int) -> Fraction:
            return dual.polynomial(k)(Fraction(-n - 1)) / dual.polynomial(k)(Fraction(-1))

    elif kind == "meixner2":
        a, c = as_fraction(params["a"]), as_fraction(params["c"])
        fam = Meixner(a, c)
        functional = meixner2_transformed(a, c, k)
        dual = Meixner(a, -c + 2)

        def expected(n: int) -> Fraction:
            num = dual.polynomial(k)(Fraction(-n - 1))
            den = dual.polynomial(k)(Fraction(-1))
            return num / (a**n * den)

    elif kind == "krawtchouk":
        a, N = as_fraction(params["a"]), as_fraction(params["N"])
        fam = Krawtchouk(a, N)
        functional = krawtchouk_transformed(a, N, k)
        dual = Krawtchouk(a, -N)

        def expected(n: int) -> Fraction:
            num = dual.polynomial(k)(Fraction(-n - 1))
            den = dual.polynomial(k)(Fraction(-1))
            return (-1) ** n * num / ((1 + a) ** n * den)

    elif kind in ("hahn1", "hahn2"):
        al, c, N = (
            as_fraction(params["alpha"]),
            as_fraction(params["c"]),
            as_fraction(params["N"]),
        )
        fam = Hahn(al, c, N)
        variant = 1 if kind == "hahn1" else 2
        functional = (
            hahn1_transformed(al, c, N, k)
            if variant == 1
            else hahn2_transformed(al, c, N, k)
        )
        hstar = dual_hahn_variant(variant, al, c, N, k)

        def expected(n: int) -> Fraction:
            ratio = hstar(fam.eigenvalue(n)) / hstar(fam.eigenvalue(0))
            shared = (
                (-1) ** n
                * Fraction(factorial(n))
                * pochhammer(al + 1 - N, n)
                / pochhammer(al + c - N, 2 * n)
            )
            extra = pochhammer(N - n, n) if variant == 1 else pochhammer(al + c, n)
            return shared * extra * ratio

    else:
        raise ValueError(f"unknown pairing lemma kind {kind!r}")

    base_value = pairing(functional, fam.polynomial(0))
    checks = []
    for n in range(nmax + 1):
        lhs = pairing(functional, fam.polynomial(n)) / base_value
        checks.append(RatioCheck(n=n, lhs=lhs, rhs=expected(n)))
    return RatioReport(kind=kind, checks=checks)


# -- Laguerre-type bilinear form with a derivative-free point part ---------------------


def occ_weights(p2: Polynomial) -> tuple[int, list[Fraction]]:
    """Expand P2(-x) in the shifted binomial basis C(x+j, j).

    When P2(1) != 0 the normalized form is
        P2(-x)/P2(1) = 1 + sum_{j=1}^k w_j C(x+j, j)
    and the returned start index is 1.  When P2(1) = 0 the expansion is
        P2(-x) = sum_{j=1}^k w_j C(x+j, j),   w_0 = -1 kept for bookkeeping,
    and the start index is 0.  Weights are indexed w[j] for j = 0..k.
    """
    k = 0 if p2.is_zero() else p2.degree
    at_one = p2(Fraction(1))
    if at_one != 0:
        g = p2(Polynomial((0, -1))) / at_one - Polynomial.one()
        start = 1
    else:
        g = p2(Polynomial((0, -1)))
        start = 0
    weights = [Fraction(0)] * (k + 1)
    if start == 0:
        weights[0] = Fraction(-1)
    # Triangular: C(x+j, j) = (x+1)...(x+j)/j! has degree j, lead 1/j!.
    residual = g
    for j in range(k, 0, -1):
        c = residual.coeff(j) * factorial(j)
        weights[j] = c
        if c:
            basis = binom_poly(j).shift_arg(j)
            residual = residual - basis * c
    if not residual.is_zero():
        raise DegeneracyError("binomial-basis expansion left a nonzero remainder")
    return start, weights


def occ_q_poly(alpha: RatLike, p2: Polynomial) -> Polynomial:
    """The degree-k companion polynomial Q built from the expansion weights."""
    alpha = as_fraction(alpha)
    k = p2.degree
    start, weights = occ_weights(p2)
    out = Polynomial.zero()
    for j in range(start, k + 1):
        out = out + Polynomial.monomial(k - j, pochhammer(alpha - j, j) * weights[j])
    return out


def occ_form(alpha: RatLike, p2: Polynomial, f: Polynomial, g: Polynomial) -> Fraction:
    """Bilinear form pairing two polynomials against the Laguerre-type data.

    Value in units of the Laguerre(alpha-k-1) base mass:
        (alpha-k)_k * <mu_{alpha-1}, f*g> + g(0) * <mu_{alpha-k-1}, f*Q>.
    Requires alpha not in {k, k-1, ...} so both base functionals exist.
    """
    alpha = as_fraction(alpha)
    k = p2.degree
    ladder = alpha - k
    if ladder.denominator == 1 and ladder <= 0:
        raise DegeneracyError(
            f"bilinear form needs alpha not in {{k, k-1, ...}}; alpha-k = {ladder}"
        )
    q = occ_q_poly(alpha, p2)
    first = pochhammer(alpha - k, k) * base_pairing(Laguerre(alpha - 1), f * g)
    second = g(Fraction(0)) * base_pairing(Laguerre(alpha - k - 1), f * q)
    return first + second


# -- Casorati determinant check ------------------------------------------------------


def casorati_check(a: RatLike, k: int, n: int) -> tuple[Fraction, Fraction]:
    """Return (determinant, closed form) for the k x k Casorati matrix
    of Charlier values (p_{n+j-1}(i))_{i,j=1..k}."""
    a = as_fraction(a)
    fam = Charlier(a)
    matrix = [
        [fam.polynomial(n + j - 1)(Fraction(i)) for j in range(1, k + 1)]
        for i in range(1, k + 1)
    ]
    det = det_fraction(matrix)
    dual = Charlier(-a)
    prod = Fraction(1)
    for j in range(1, k + 1):
        prod *= Fraction(factorial(j), factorial(n + j - 1))
    closed = (-1) ** (k * n) * a ** ((n - 1) * k) * prod * dual.polynomial(k)(Fraction(-n))
    return det, closed


def measure_to_json(functional: MomentFunctional) -> dict:
    """Descriptor of a moment functional: base family plus transform list."""
    transforms = []
    for t in functional.transforms:
        if isinstance(t, ChristoffelBy):
            transforms.append({"kind": "christoffel", "poly": t.poly.to_json()})
        elif isinstance(t, ShiftBy):
            transforms.append({"kind": "shift", "offset": fraction_to_str(t.offset)})
        elif isinstance(t, AddDeltaScaled):
            transforms.append(
                {
                    "kind": "add-delta",
                    "location": fraction_to_str(t.location),
                    "mass_ratio": fraction_to_str(t.mass_ratio),
                }
            )
        else:
            raise TypeError(f"unknown transform {t!r}")
    return {"base": family_to_json(functional.base), "transforms": transforms}


def measure_from_json(data: dict) -> MomentFunctional:
    base = family_from_json(data["base"])
    transforms: list[Transform] = []
    for t in data["transforms"]:
        kind = t["kind"]
        if kind == "christoffel":
            transforms.append(ChristoffelBy(Polynomial.from_json(t["poly"])))
        elif kind == "shift":
            transforms.append(ShiftBy(as_fraction(t["offset"])))
        elif kind == "add-delta":
            transforms.append(
                AddDeltaScaled(as_fraction(t["location"]), as_fraction(t["mass_ratio"]))
            )
        else:
            raise ValueError(f"unknown transform kind {kind!r}")
    return MomentFunctional(base, tuple(transforms))
