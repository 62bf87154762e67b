"""Operator matrices: signatures, adjoints, symbols, gradings."""

import pytest
from hypothesis import given, settings, strategies as st

from cxkit.diffop import (
    ISOTROPIC,
    SPATIAL,
    OperatorMatrix,
    Signature,
    SymbolMatrix,
    spatial_signature,
    tensor_identity,
)
from cxkit.poly import GaussianRational, Poly

SIG = spatial_signature(3)
SIG_T = spatial_signature(3, time=True, params=("mu",))


def _d(sig, name):
    return Poly.variable(sig.vars, name)


def _grad(sig=SIG):
    return OperatorMatrix.from_entries(
        sig, [[_d(sig, "d1")], [_d(sig, "d2")], [_d(sig, "d3")]])


# ---------------------------------------------------------------------------
# Signatures


def test_signature_gradings():
    assert SIG_T.vars == ("d1", "d2", "d3", "dt", "mu")
    assert SIG_T.derivative_vars == ("d1", "d2", "d3", "dt")
    assert SIG_T.grading_vars(SPATIAL) == ("d1", "d2", "d3")


def test_signature_merge():
    merged = SIG.merge(SIG_T)
    assert merged.vars == SIG_T.vars
    other = Signature(("d1", "d2", "d3"), None, ("nu",))
    assert SIG_T.merge(other).params == ("mu", "nu")


def test_params_do_not_count_toward_order():
    mu = _d(SIG_T, "mu")
    op = OperatorMatrix.scalar(SIG_T, mu * _d(SIG_T, "d1"))
    assert op.order() == 1
    op2 = OperatorMatrix.scalar(SIG_T, mu * _d(SIG_T, "dt"))
    assert op2.order() == 1
    assert op2.order(SPATIAL) == 0


# ---------------------------------------------------------------------------
# Formal adjoint


def test_adjoint_of_gradient_is_minus_divergence():
    grad = _grad()
    adj = grad.formal_adjoint()
    assert adj.rows == 1 and adj.cols == 3
    for j, name in enumerate(("d1", "d2", "d3")):
        assert adj[0, j] == -_d(SIG, name)


def test_adjoint_involution_and_antihomomorphism():
    grad = _grad()
    lap = grad.formal_adjoint() @ grad
    assert grad.formal_adjoint().formal_adjoint() == grad
    assert (grad.formal_adjoint() @ grad).formal_adjoint() == lap


def test_adjoint_conjugates_coefficients():
    i = GaussianRational.i()
    op = OperatorMatrix.scalar(SIG, _d(SIG, "d1").scale(i))
    # (i d1)* = conj(i) * (-d1) = i d1: first-order imaginary ops are self-adjoint
    assert op.formal_adjoint() == op


def test_adjoint_second_order_sign():
    op = OperatorMatrix.scalar(SIG, _d(SIG, "d1") * _d(SIG, "d2"))
    assert op.formal_adjoint() == op  # (-1)^2
    op3 = OperatorMatrix.scalar(SIG, _d(SIG, "d1") ** 3)
    assert op3.formal_adjoint() == -op3  # (-1)^3


@settings(max_examples=30)
@given(st.lists(st.integers(0, 2), min_size=3, max_size=3),
       st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_adjoint_antihomomorphism_property(e1, e2):
    p1 = Poly.monomial(SIG.vars, tuple(e1), GaussianRational.one())
    p2 = Poly.monomial(SIG.vars, tuple(e2), GaussianRational.of(0, 1))
    a = OperatorMatrix.scalar(SIG, p1)
    b = OperatorMatrix.scalar(SIG, p2)
    assert (a @ b).formal_adjoint() == b.formal_adjoint() @ a.formal_adjoint()


# ---------------------------------------------------------------------------
# Symbols


def test_principal_symbol_spatial_drops_lower_order():
    sig = SIG_T
    p = _d(sig, "d1") ** 2 + _d(sig, "mu") * _d(sig, "d2") + _d(sig, "dt")
    op = OperatorMatrix.scalar(sig, p)
    sym = op.principal_symbol(SPATIAL)
    # spatial principal part keeps only the top spatial-degree terms; the
    # symbol substitutes d_k -> i z_k, so d1^2 -> -z1^2
    z1 = Poly.variable(sym.signature.vars, "z1")
    assert sym[0, 0] == -(z1 * z1)


def test_total_symbol_keeps_everything():
    sig = SIG_T
    p = _d(sig, "d1") ** 2 + _d(sig, "dt")
    op = OperatorMatrix.scalar(sig, p)
    sym = op.total_symbol()
    vars = sym.signature.vars
    z1 = Poly.variable(vars, "z1")
    tau = Poly.variable(vars, "tau")
    i = Poly.constant(vars, GaussianRational.i())
    assert sym[0, 0] == -(z1 * z1) + i * tau


def test_symbol_of_composition_multiplies():
    grad = _grad()
    lap = grad.formal_adjoint() @ grad
    s1 = grad.principal_symbol(SPATIAL)
    s2 = grad.formal_adjoint().principal_symbol(SPATIAL)
    assert (s2 @ s1)[0, 0] == lap.principal_symbol(SPATIAL)[0, 0]


def test_symbol_adjoint_is_hermitian_transpose():
    grad = _grad()
    s = grad.principal_symbol(SPATIAL)
    sa = grad.formal_adjoint().principal_symbol(SPATIAL)
    assert sa == s.hermitian_transpose()


def test_symbol_matrix_algebra():
    grad = _grad()
    s = grad.principal_symbol(SPATIAL)
    ident = SymbolMatrix.identity(s.signature, 3)
    assert (ident @ s) == s
    assert (s - s).is_zero
    assert s + (-s) == s.scale(0)


# ---------------------------------------------------------------------------
# Structure helpers


def test_tensor_identity():
    op = OperatorMatrix.scalar(SIG, _d(SIG, "d1"))
    t = tensor_identity(op, 3)
    assert t.rows == 3 and t.cols == 3
    for k in range(3):
        assert t[k, k] == _d(SIG, "d1")
    assert t[0, 1].is_zero


def test_lift_preserves_entries():
    grad = _grad()
    lifted = grad.lift(SIG_T)
    assert lifted.signature == SIG_T
    assert lifted[0, 0] == _d(SIG_T, "d1")


def test_shape_errors():
    grad = _grad()
    with pytest.raises(ValueError):
        grad @ grad  # 3x1 times 3x1
