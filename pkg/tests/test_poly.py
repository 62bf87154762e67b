"""Exact arithmetic: Gaussian rationals, sparse polynomials, matrices."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cxkit.poly import GaussianRational, Poly, PolyMatrix, grlex_key

VARS = ("x", "y")

fractions = st.builds(
    Fraction, st.integers(-6, 6), st.integers(1, 4)
)
gaussians = st.builds(GaussianRational.of, fractions, fractions)


@st.composite
def polys(draw, vars=VARS, max_terms=4, max_exp=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exp = tuple(draw(st.integers(0, max_exp)) for _ in vars)
        terms[exp] = draw(gaussians)
    return Poly(vars, terms)


# ---------------------------------------------------------------------------
# GaussianRational field axioms


@given(gaussians, gaussians, gaussians)
def test_gaussian_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + GaussianRational.zero() == a
    assert a * GaussianRational.one() == a
    assert a - a == GaussianRational.zero()


@given(gaussians)
def test_gaussian_division(a):
    if not a.is_zero:
        assert a / a == GaussianRational.one()
        assert (GaussianRational.one() / a) * a == GaussianRational.one()


@given(gaussians, gaussians)
def test_gaussian_conjugation(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a.conjugate().conjugate() == a
    norm = a * a.conjugate()
    assert norm.is_real


def test_gaussian_i():
    i = GaussianRational.i()
    assert i * i == -GaussianRational.one()
    assert complex(i) == 1j


# ---------------------------------------------------------------------------
# Poly ring axioms (hypothesis)


@settings(max_examples=60)
@given(polys(), polys(), polys())
def test_poly_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p + Poly.zero(VARS) == p
    assert p * Poly.one(VARS) == p
    assert (p - q) + q == p


@settings(max_examples=40)
@given(polys(), polys())
def test_poly_conjugate_hom(p, q):
    assert (p * q).conjugate() == p.conjugate() * q.conjugate()
    assert (p + q).conjugate() == p.conjugate() + q.conjugate()


@settings(max_examples=40)
@given(polys(), polys())
def test_exact_division_roundtrip(p, q):
    if q.is_zero:
        return
    product = p * q
    assert product.exact_div(q) == p


def test_exact_division_failure():
    x = Poly.variable(VARS, "x")
    y = Poly.variable(VARS, "y")
    with pytest.raises(ValueError):
        (x * x + y).exact_div(x)


def test_grlex_order():
    # grlex: total degree first, then lexicographic on the exponent tuple
    assert grlex_key((2, 0)) > grlex_key((1, 0))
    assert grlex_key((2, 0)) > grlex_key((0, 2))
    assert grlex_key((1, 1)) > grlex_key((0, 2))
    x = Poly.variable(VARS, "x")
    y = Poly.variable(VARS, "y")
    exp, coeff = (x * x + x * y + y * y).leading_term()
    assert exp == (2, 0)
    assert coeff == GaussianRational.one()


@settings(max_examples=30)
@given(polys())
def test_homogeneous_parts_sum(p):
    total = Poly.zero(VARS)
    for d in range(p.total_degree() + 1 if not p.is_zero else 0):
        total = total + p.homogeneous_part(d)
    assert total == p


def test_substitute_and_evaluate():
    x = Poly.variable(VARS, "x")
    y = Poly.variable(VARS, "y")
    p = x * x + y
    q = p.substitute({"x": y})
    assert q == y * y + y
    assert p.evaluate({"x": 2.0, "y": 3.0}) == pytest.approx(7.0)


def test_str_parseable_roundtrip():
    x = Poly.variable(VARS, "x")
    y = Poly.variable(VARS, "y")
    i = Poly.constant(VARS, GaussianRational.i())
    half = Poly.constant(VARS, GaussianRational.of(Fraction(1, 2)))
    p = half * x ** 2 - i * x * y + y - Poly.one(VARS)
    s = str(p)
    assert "x" in s and "y" in s
    # canonical form round-trips through the constructorless parser in dsl
    from cxkit import dsl

    doc = dsl.parse(f"vars: x y\noperator P = [[{s}]]\n")
    assert doc.operators["P"][0, 0] == p


# ---------------------------------------------------------------------------
# Determinants: Bareiss vs naive cofactor oracle


def _cofactor_det(m: PolyMatrix) -> Poly:
    n = m.rows
    if n == 0:
        return Poly.one(m.vars)
    if n == 1:
        return m[0, 0]
    total = Poly.zero(m.vars)
    sign = GaussianRational.one()
    for j in range(n):
        minor = PolyMatrix(
            m.vars,
            [[m[r, c] for c in range(n) if c != j] for r in range(1, n)],
        )
        total = total + (m[0, j] * _cofactor_det(minor)).scale(sign)
        sign = -sign
    return total


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(polys(max_terms=2, max_exp=2),
                                min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_bareiss_matches_cofactor(entries):
    m = PolyMatrix(VARS, entries)
    assert m.determinant() == _cofactor_det(m)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(polys(max_terms=2, max_exp=1),
                                min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_adjugate_identity(entries):
    m = PolyMatrix(VARS, entries)
    n = m.rows
    det = m.determinant()
    target = PolyMatrix.identity(VARS, n).map(lambda p: p * det)
    assert m @ m.adjugate() == target
    assert m.adjugate() @ m == target


def test_matrix_algebra():
    x = Poly.variable(VARS, "x")
    y = Poly.variable(VARS, "y")
    a = PolyMatrix(VARS, [[x, y], [Poly.zero(VARS), x]])
    b = PolyMatrix(VARS, [[y, Poly.zero(VARS)], [x, y]])
    assert (a @ b).transpose() == b.transpose() @ a.transpose()
    assert (a + b) - b == a
    assert a.conjugate().conjugate() == a
