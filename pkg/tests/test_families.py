"""Classical families: eigen-equations, recurrences, ladders, lattice identities."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest

from krallops.errors import DegeneracyError
from krallops.families import (
    Charlier,
    Hahn,
    Jacobi,
    Krawtchouk,
    Laguerre,
    Meixner,
    dual_hahn_poly,
    dual_hahn_variant,
    eigen_solve_poly,
    expand_in_family_basis,
    family_from_json,
    family_from_name,
    family_to_json,
    lattice_product,
)
from krallops.polyops import Polynomial, pochhammer

F = Fraction

PARAM_SETS = [
    Charlier(F(1)),
    Charlier(F(1, 2)),
    Charlier(F(3)),
    Meixner(F(2), F(5, 2)),
    Meixner(F(1, 3), F(7, 2)),
    Meixner(F(3, 2), F(1, 2)),
    Krawtchouk(F(1, 2), F(15, 2)),
    Krawtchouk(F(2), F(9, 2)),
    Krawtchouk(F(3), F(1, 3)),
    Hahn(F(7, 3), F(5, 2), F(1, 3)),
    Hahn(F(1, 2), F(3), F(1, 5)),
    Hahn(F(4), F(7, 2), F(2, 3)),
    Laguerre(F(2)),
    Laguerre(F(1, 2)),
    Laguerre(F(5, 3)),
    Jacobi(F(1, 2), F(2)),
    Jacobi(F(1), F(1)),
    Jacobi(F(7, 3), F(3, 2)),
]


@pytest.mark.parametrize("fam", PARAM_SETS, ids=str)
def test_second_order_eigen_identity(fam):
    op = fam.second_order_op()
    for n in range(11):
        p = fam.polynomial(n)
        assert op.apply(p) == p * fam.eigenvalue(n), n


@pytest.mark.parametrize("fam", PARAM_SETS, ids=str)
def test_three_term_recurrence(fam):
    x = Polynomial.x()
    for n in range(9):
        a_n, b_n, c_n = fam.ttr(n)
        rhs = fam.polynomial(n + 1) * a_n + fam.polynomial(n) * b_n
        if n >= 1:
            rhs = rhs + fam.polynomial(n - 1) * c_n
        assert x * fam.polynomial(n) == rhs, n
        assert a_n != 0
        if n >= 1:
            assert c_n != 0


def test_charlier_frozen_facts():
    a = F(3, 2)
    fam = Charlier(a)
    for n in range(8):
        p = fam.polynomial(n)
        assert p.lead == F(1, factorial(n))
        assert p(0) == (-a) ** n / factorial(n)
        assert fam.eigenvalue(n) == -n
    assert fam.ttr(4) == (F(5), F(4) + a, a)


def test_hahn_printed_recurrence_matches_expansion():
    from krallops.families import _ttr_by_expansion

    fam = Hahn(F(7, 3), F(5, 2), F(1, 3))
    for n in range(8):
        assert fam.ttr(n) == _ttr_by_expansion(fam, n)


@pytest.mark.parametrize(
    "fam",
    [Charlier(F(1, 2)), Meixner(F(2), F(5, 2)), Hahn(F(7, 3), F(5, 2), F(1, 3)), Jacobi(F(1, 2), F(2))],
    ids=str,
)
def test_eigen_solve_agrees_with_defining_sum(fam):
    for n in range(7):
        assert eigen_solve_poly(fam, n) == fam.polynomial(n)


def test_expand_in_family_basis():
    fam = Meixner(F(2), F(5, 2))
    poly = fam.polynomial(3) * F(2) - fam.polynomial(1) * F(1, 3)
    coords = expand_in_family_basis(fam, poly)
    assert coords == [F(0), F(-1, 3), F(0), F(2)]


# -- lowering/raising ladders -----------------------------------------------------


def test_charlier_difference_ladder():
    fam = Charlier(F(3, 2))
    for n in range(1, 9):
        p = fam.polynomial(n)
        assert p.shift_arg(1) - p == fam.polynomial(n - 1)


def test_meixner_difference_ladder_raises_c():
    a, c = F(2), F(5, 2)
    fam, up = Meixner(a, c), Meixner(a, c + 1)
    for n in range(1, 9):
        p = fam.polynomial(n)
        assert p.shift_arg(1) - p == up.polynomial(n - 1) * ((a - 1) / a)


def test_meixner_lower_degree_vs_lower_c():
    a, c = F(2), F(5, 2)
    fam, down = Meixner(a, c), Meixner(a, c - 1)
    for n in range(1, 9):
        lhs = fam.polynomial(n - 1) * (1 / a)
        assert lhs == fam.polynomial(n) - down.polynomial(n).shift_arg(1)


def test_laguerre_derivative_ladder_and_sum():
    al = F(5, 3)
    fam, up = Laguerre(al), Laguerre(al + 1)
    for n in range(1, 9):
        assert fam.polynomial(n).derivative() == -up.polynomial(n - 1)
    total = Polynomial.zero()
    for j in range(7):
        total = total + fam.polynomial(j)
        assert total == up.polynomial(j)


def test_krawtchouk_reflection():
    a, N = F(3), F(15, 2)
    fam, dual = Krawtchouk(a, N), Krawtchouk(1 / a, N)
    refl = Polynomial((N - 1, -1))
    for n in range(9):
        assert fam.polynomial(n) == dual.polynomial(n)(refl) * F(-1) ** n


# -- quadratic-lattice machinery ----------------------------------------------------


@pytest.mark.parametrize("u", [F(1), F(-3, 2), F(7, 3)], ids=str)
def test_lattice_product_on_quadratic_lattice(u):
    # composing with x(x-u) factors into two shifted pochhammers
    lattice = Polynomial((0, -u, 1))
    for j in range(9):
        rhs = Polynomial.one()
        for i in range(j):
            rhs = rhs * Polynomial((i, -1)) * Polynomial((-u + i, 1))
        assert lattice_product(j, u)(lattice) == rhs


@pytest.mark.parametrize(
    "fam", [Hahn(F(7, 3), F(5, 2), F(1, 3)), Jacobi(F(1, 2), F(2))], ids=str
)
def test_u_seq_is_r_basis_at_previous_eigenvalue(fam):
    for j in range(9):
        rj = fam.r_basis(j)
        for n in range(1, 9):
            assert fam.u_seq(j, n) == rj(fam.eigenvalue(n - 1))


def test_jacobi_r_basis_top_factor():
    # at j = beta the next factor degenerates to -x, which the point-mass
    # weight vector construction relies on
    fam = Jacobi(F(1, 2), F(2))
    be = 2
    assert fam.r_basis(be + 1) == fam.r_basis(be) * Polynomial((0, -1))


def test_hahn_dual_duality():
    al, c, N = F(7, 3), F(5, 2), F(1, 3)
    fam = Hahn(al, c, N)
    for k in range(7):
        hstar = dual_hahn_poly(al, c, N, k)
        for n in range(7):
            lhs = pochhammer(c, n) * pochhammer(1 - N, n) * hstar(n * (n + al + c - N))
            rhs = (
                pochhammer(c, k)
                * pochhammer(1 - N, k)
                * pochhammer(n + al + c - N, n)
                * fam.polynomial(n)(F(k))
            )
            assert lhs == rhs, (k, n)


def _lattice_poly(l, al, c, N):
    # (x+l)(x+l+2+N-alpha-c) as a polynomial in x
    return Polynomial((l, 1)) * Polynomial((l + 2 + N - al - c, 1))


def test_dual_hahn_second_order_lattice_equation():
    al, c, N = F(7, 3), F(5, 2), F(1, 3)
    r = (
        Polynomial((0, -1))
        * Polynomial((N, 1))
        * Polynomial((N - al, 1))
        * Polynomial((N - al - c + 3, 2))
    )
    s = (
        Polynomial((N - al - c + 2, 1))
        * Polynomial((2 - al - c, 1))
        * Polynomial((2 - c, 1))
        * Polynomial((N - al - c + 1, 2))
    )
    u = (
        Polynomial((N - al - c + 1, 2))
        * Polynomial((N - al - c + 2, 2))
        * Polynomial((N - al - c + 3, 2))
    )
    for k in range(6):
        h = dual_hahn_variant(1, al, c, N, k)
        lhs = (
            r * h(_lattice_poly(-1, al, c, N))
            - (r + s) * h(_lattice_poly(0, al, c, N))
            + s * h(_lattice_poly(1, al, c, N))
        )
        assert lhs == u * h(_lattice_poly(0, al, c, N)) * k, k


def test_dual_hahn_first_order_lattice_equation():
    al, c, N = F(7, 3), F(5, 2), F(1, 3)
    for k in range(1, 6):
        h = dual_hahn_variant(1, al, c, N, k)
        lhs = h(_lattice_poly(1, al, c, N)) - h(_lattice_poly(0, al, c, N))
        lowered = dual_hahn_variant(1, al, c - 1, N, k - 1)
        lowered_lattice = Polynomial((0, 1)) * Polynomial((3 + N - al - c, 1))
        assert lhs == Polynomial((N - al - c + 3, 2)) * lowered(lowered_lattice) * k, k


def test_dual_hahn_variants_expand_in_r_basis():
    # both variants are degree-k combinations of the lattice products with
    # nonzero top weight
    al, c, N = F(7, 3), F(5, 2), F(1, 3)
    fam = Hahn(al, c, N)
    for variant in (1, 2):
        for k in range(5):
            h = dual_hahn_variant(variant, al, c, N, k)
            assert h.degree == k
            # subtracting the top lattice product times its weight drops degree
            top = h.lead / fam.r_basis(k).lead
            assert (h - fam.r_basis(k) * top).degree < k


# -- parameter validation --------------------------------------------------------


def test_family_rejects_degenerate_parameters():
    with pytest.raises(DegeneracyError):
        Charlier(0)
    with pytest.raises(DegeneracyError):
        Meixner(1, F(1, 2))
    with pytest.raises(DegeneracyError):
        Krawtchouk(-1, 5)
    with pytest.raises(DegeneracyError):
        Hahn(F(1), F(1), F(4))  # alpha + c - N = -2
    with pytest.raises(DegeneracyError):
        Jacobi(-2, F(1, 2))
    with pytest.raises(DegeneracyError):
        Jacobi(F(1, 2), F(-3, 2))  # alpha + beta = -1


def test_hahn_lazy_recurrence_degeneracy():
    fam = Hahn(F(1), F(3), F(4))  # alpha + c - N = 0 passes construction
    fam.polynomial(3)  # defining sums are fine
    with pytest.raises(DegeneracyError):
        fam.ttr(1)  # 2n + alpha + c - N - 2 = 0 at n = 1
    a2, b2, c2 = fam.ttr(2)
    assert a2 == 1 and c2 != 0


def test_family_name_round_trip():
    fam = Hahn(F(7, 3), F(5, 2), F(1, 3))
    doc = family_to_json(fam)
    assert doc == {
        "family": "hahn",
        "params": {"alpha": "7/3", "c": "5/2", "N": "1/3"},
    }
    assert family_from_json(doc) == fam
    with pytest.raises(ValueError):
        family_from_name("legendre", {})
    with pytest.raises(ValueError):
        family_from_name("meixner", {"a": "2"})
