"""Symbol calculus: rational symbols, parametrices, fundamental symbols."""

import pytest

from cxkit import symbols
from cxkit.complexes import MuSet, de_rham_complex, dolbeault_complex
from cxkit.diffop import SPATIAL, SymbolMatrix
from cxkit.poly import GaussianRational, Poly
from cxkit.symbols import (
    HypothesisFailure,
    RationalSymbolMatrix,
    delta,
    invert_symbol,
    maxwell_parametrix_symbol,
    maxwell_symbol,
    sigma,
    stokes_fundamental_symbol,
    verify_evolution_identity,
    verify_symbolic_factorization,
)


CPLX3 = de_rham_complex(3)


def _norm2(sig):
    total = Poly.zero(sig.vars)
    for v in sig.spatial:
        z = Poly.variable(sig.vars, v)
        total = total + z * z
    return total


# ---------------------------------------------------------------------------
# Rational symbol matrices


def test_rational_symbol_algebra():
    s = sigma(CPLX3, 0)  # symbol of grad: 3x1
    den = _norm2(s.signature)
    r = RationalSymbolMatrix(s, den)
    # r + r == 2 r (cross-multiplied equality)
    two = RationalSymbolMatrix(s.scale(2), den)
    assert r + r == two
    assert (r - r) == RationalSymbolMatrix(s.scale(0), den)


def test_rational_symbol_cross_multiplied_equality():
    s = sigma(CPLX3, 0)
    den = _norm2(s.signature)
    a = RationalSymbolMatrix(s, den)
    b = RationalSymbolMatrix(s.scale(3), den.scale(3))
    assert a == b


def test_rational_symbol_mixed_matmul():
    s = sigma(CPLX3, 0)
    den = _norm2(s.signature)
    r = RationalSymbolMatrix(s, den)
    adj = sigma(CPLX3, 0).hermitian_transpose()
    prod = adj @ r  # SymbolMatrix @ RationalSymbolMatrix via reflected op
    assert isinstance(prod, RationalSymbolMatrix)
    # sigma* sigma = |z|^2, so the product over |z|^2 is the identity
    assert prod.is_identity


def test_invert_symbol_roundtrip():
    lap = delta(CPLX3, 1)
    inv = invert_symbol(lap)
    assert (inv @ lap).is_identity
    assert (lap @ inv).is_identity


def test_invert_symbol_singular():
    s = SymbolMatrix.zero(sigma(CPLX3, 0).signature, 2, 2)
    with pytest.raises(ValueError):
        invert_symbol(s)


# ---------------------------------------------------------------------------
# delta and the Maxwell symbol


def test_delta_is_norm_squared_identity():
    for q in range(4):
        sym = delta(CPLX3, q)
        n2 = _norm2(sym.signature)
        assert sym == SymbolMatrix.identity(sym.signature,
                                            CPLX3.rank(q)).scale(n2)


def test_maxwell_symbol_matches_operator_symbol():
    from cxkit.blockops import maxwell

    op = maxwell(CPLX3, 3)
    assert maxwell_symbol(CPLX3, 3, None, 0) == op.principal_symbol(SPATIAL)


# ---------------------------------------------------------------------------
# Factorization and parametrices (exact)


@pytest.mark.parametrize("q", [1, 2, 3])
def test_symbolic_factorization_identity_weights(q):
    rep = verify_symbolic_factorization(CPLX3, q)
    assert rep["ok"]


def test_symbolic_factorization_with_mu():
    cplx = de_rham_complex(3, params=("mu",))
    mu = MuSet.scalar(cplx, Poly.variable(cplx.signature.vars, "mu"))
    for q in (1, 2, 3):
        assert verify_symbolic_factorization(cplx, q, mu)["ok"]


@pytest.mark.parametrize("side", ["right", "left"])
def test_maxwell_parametrix_de_rham(side):
    f = maxwell_parametrix_symbol(CPLX3, None, side)
    assert isinstance(f, RationalSymbolMatrix)


@pytest.mark.parametrize("side", ["right", "left"])
def test_maxwell_parametrix_dolbeault(side):
    maxwell_parametrix_symbol(dolbeault_complex(2), None, side)


def test_maxwell_parametrix_scalar_mu():
    cplx = de_rham_complex(2, params=("mu",))
    mu = MuSet.scalar(cplx, Poly.variable(cplx.signature.vars, "mu"))
    maxwell_parametrix_symbol(cplx, mu, "right")


# ---------------------------------------------------------------------------
# Stokes fundamental symbol and evolution identity


def _oseen_setup(n):
    cplx = de_rham_complex(n, params=("mu",))
    mu = MuSet.scalar(cplx, Poly.variable(cplx.signature.vars, "mu"),
                      degrees=[1])
    return cplx, mu


@pytest.mark.parametrize("n", [2, 3])
def test_stokes_fundamental_symbol(n):
    cplx, mu = _oseen_setup(n)
    f, rep = stokes_fundamental_symbol(cplx, 1, mu)
    assert rep["intermediate_ok"] and rep["product_ok"] and rep["ok"]


def test_stokes_fundamental_symbol_q2():
    cplx = de_rham_complex(3, params=("mu",))
    mu = MuSet.scalar(cplx, Poly.variable(cplx.signature.vars, "mu"),
                      degrees=[2])
    f, rep = stokes_fundamental_symbol(cplx, 2, mu)
    assert rep["ok"]


@pytest.mark.parametrize("n", [2, 3])
def test_evolution_identity(n):
    cplx, mu = _oseen_setup(n)
    rep = verify_evolution_identity(cplx, 1, mu)
    assert rep["ok"]
    # denominator is i tau + mu |zeta|^2
    assert "tau" in rep["denominator"] and "mu" in rep["denominator"]


def test_stokes_hypothesis_degree_range():
    cplx, mu = _oseen_setup(3)
    with pytest.raises(HypothesisFailure):
        stokes_fundamental_symbol(cplx, 0, mu)
    with pytest.raises(HypothesisFailure):
        stokes_fundamental_symbol(cplx, 3, mu)


def test_stokes_hypothesis_nontrivial_lower_weights():
    cplx = de_rham_complex(3, params=("mu",))
    muval = Poly.variable(cplx.signature.vars, "mu")
    # weights below q must be trivial: weighting every degree violates this
    mu_all = MuSet.scalar(cplx, muval)
    with pytest.raises(HypothesisFailure):
        stokes_fundamental_symbol(cplx, 2, mu_all)
