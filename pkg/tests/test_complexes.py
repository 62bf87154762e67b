"""Complex families, weight sets, and (generalized) Laplacians."""

import pytest
from hypothesis import given, settings, strategies as st

from cxkit.complexes import (
    Complex,
    MuSet,
    check_coherence,
    de_rham_complex,
    dolbeault_complex,
    generalized_laplacian,
    imaginary_de_rham_complex,
    koszul_complex,
    laplacian,
    perturbed_laplacian,
    powered_de_rham_complex,
)
from cxkit.diffop import OperatorMatrix, spatial_signature
from cxkit.poly import GaussianRational, Poly

from math import comb


# ---------------------------------------------------------------------------
# Complex property (exact)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_de_rham_is_complex(n):
    cplx = de_rham_complex(n)
    assert cplx.is_complex()
    assert cplx.ranks == tuple(comb(n, q) for q in range(n + 1))


@pytest.mark.parametrize("n", [2, 3])
def test_de_rham_small_ops(n):
    cplx = de_rham_complex(n)
    sig = cplx.signature
    # degree-0 operator is the gradient
    for k in range(n):
        assert cplx.op(0)[k, 0] == Poly.variable(sig.vars, f"d{k + 1}")


def test_de_rham_3_curl_div():
    cplx = de_rham_complex(3)
    sig = cplx.signature
    d = [Poly.variable(sig.vars, f"d{k}") for k in (1, 2, 3)]
    curl = cplx.op(1)
    # rows of curl are (up to ordering/sign) the standard curl
    div = cplx.op(2)
    assert (curl @ cplx.op(0)).is_zero
    assert (div @ curl).is_zero
    assert sorted(str(div[0, j]) for j in range(3)) == sorted(str(p) for p in d)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_koszul_is_complex(n):
    sig = spatial_signature(n)
    gens = [Poly.variable(sig.vars, f"d{k + 1}") for k in range(n)]
    cplx = koszul_complex(gens, sig)
    assert cplx.is_complex()


def test_koszul_general_generators():
    sig = spatial_signature(3)
    d1, d2, d3 = (Poly.variable(sig.vars, f"d{k}") for k in (1, 2, 3))
    cplx = koszul_complex([d1 * d1, d2 + d3, d1 * d3], sig)
    assert cplx.is_complex()


@pytest.mark.parametrize("p", [2, 3])
def test_powered_de_rham_is_complex(p):
    cplx = powered_de_rham_complex(3, p)
    assert cplx.is_complex()


def test_dolbeault_is_complex():
    cplx = dolbeault_complex(2)
    assert cplx.is_complex()
    # entries are (d_{2j-1} + i d_{2j}) / 2
    sig = cplx.signature
    i = GaussianRational.i()
    half = GaussianRational.of(1, 0) / GaussianRational.of(2, 0)
    d1 = Poly.variable(sig.vars, "d1")
    d2 = Poly.variable(sig.vars, "d2")
    dbar = (d1 + d2.scale(i)).scale(half)
    assert any(cplx.op(0)[k, 0] == dbar for k in range(cplx.op(0).rows))


def test_imaginary_de_rham():
    cplx = imaginary_de_rham_complex(3)
    real = de_rham_complex(3)
    i = GaussianRational.i()
    assert cplx.is_complex()
    for q in range(3):
        assert cplx.op(q) == real.op(q).lift(cplx.signature).scale(i)
    # adjoints: (i d_k)* = i d_k entrywise, so the Laplacian is unchanged
    for q in range(4):
        assert laplacian(cplx, q) == laplacian(real, q).lift(cplx.signature)


# ---------------------------------------------------------------------------
# Laplacians (exact oracles)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_de_rham_laplacian_is_minus_delta(n):
    cplx = de_rham_complex(n)
    sig = cplx.signature
    minus_delta = -sum(
        (Poly.variable(sig.vars, f"d{k + 1}") ** 2 for k in range(n)),
        Poly.zero(sig.vars),
    )
    for q in range(n + 1):
        lap = laplacian(cplx, q)
        expected = OperatorMatrix.identity(sig, cplx.rank(q)).scale(minus_delta)
        assert lap == expected


@pytest.mark.parametrize("p", [2, 3])
def test_powered_laplacian(p):
    n = 3
    cplx = powered_de_rham_complex(n, p)
    sig = cplx.signature
    sign = GaussianRational.of((-1) ** p, 0)
    val = sum(
        (Poly.variable(sig.vars, f"d{k + 1}") ** (2 * p) for k in range(n)),
        Poly.zero(sig.vars),
    ).scale(sign)
    for q in range(n + 1):
        assert laplacian(cplx, q) == OperatorMatrix.identity(
            sig, cplx.rank(q)).scale(val)


def test_dolbeault_laplacian_quarter_delta():
    cplx = dolbeault_complex(2)
    sig = cplx.signature
    quarter = GaussianRational.of(-1, 0) / GaussianRational.of(4, 0)
    val = sum(
        (Poly.variable(sig.vars, f"d{k + 1}") ** 2 for k in range(4)),
        Poly.zero(sig.vars),
    ).scale(quarter)
    for q in range(cplx.length + 1):
        assert laplacian(cplx, q) == OperatorMatrix.identity(
            sig, cplx.rank(q)).scale(val)


# ---------------------------------------------------------------------------
# Weight sets


def _scalar_mu(cplx, value):
    return MuSet.scalar(cplx, value)


def test_mu_identity_reproduces_laplacian():
    cplx = de_rham_complex(3)
    mu = MuSet.identity(cplx)
    for q in range(4):
        assert generalized_laplacian(cplx, q, mu) == laplacian(cplx, q)


def test_mu_scalar_scales_both_halves():
    cplx = de_rham_complex(3, params=("mu",))
    muval = Poly.variable(cplx.signature.vars, "mu")
    mu = MuSet.scalar(cplx, muval)
    for q in range(4):
        assert generalized_laplacian(cplx, q, mu) == laplacian(cplx, q).scale(muval)


def test_mu_coherence():
    cplx = de_rham_complex(3, params=("mu",))
    mu = MuSet.scalar(cplx, Poly.variable(cplx.signature.vars, "mu"))
    for q in range(cplx.length - 1):
        assert check_coherence(cplx, mu, q)


def test_mu_degree_restriction():
    cplx = de_rham_complex(3, params=("mu",))
    muval = Poly.variable(cplx.signature.vars, "mu")
    mu = MuSet.scalar(cplx, muval, degrees=[1])
    # only degree 1 carries weights
    assert generalized_laplacian(cplx, 1, mu) == laplacian(cplx, 1).scale(muval)


def test_laplace_powers_weights():
    cplx = de_rham_complex(3)
    mu = MuSet.laplace_powers(cplx, {0: 1})
    sig = cplx.signature
    delta = sum((Poly.variable(sig.vars, f"d{k}") ** 2 for k in (1, 2, 3)),
                Poly.zero(sig.vars))
    g = generalized_laplacian(cplx, 0, mu)
    # grad* (-Delta) grad = Delta^2 as a scalar operator
    assert g[0, 0] == delta * delta


def test_perturbed_laplacian_lower_order():
    cplx = de_rham_complex(3, params=("c",))
    mu = MuSet.identity(cplx)
    c = Poly.variable(cplx.signature.vars, "c")
    pot = OperatorMatrix.scalar(cplx.signature, c)
    pert = perturbed_laplacian(cplx, 0, mu, pot)
    assert pert == laplacian(cplx, 0) + pot


def test_perturbed_laplacian_order_limit():
    cplx = de_rham_complex(3)
    mu = MuSet.identity(cplx)
    sig = cplx.signature
    too_big = OperatorMatrix.scalar(sig, Poly.variable(sig.vars, "d1") ** 2)
    with pytest.raises(ValueError):
        perturbed_laplacian(cplx, 0, mu, too_big)


# ---------------------------------------------------------------------------
# Structural


def test_complex_rejects_mismatched_shapes():
    sig = spatial_signature(2)
    a = OperatorMatrix.from_entries(
        sig, [[Poly.variable(sig.vars, "d1")], [Poly.variable(sig.vars, "d2")]])
    with pytest.raises(ValueError):
        Complex([a, a])  # 2x1 cannot follow 2x1


def test_op_outside_range_is_zero():
    cplx = de_rham_complex(2)
    assert cplx.op(-1).is_zero
    assert cplx.op(5).is_zero
