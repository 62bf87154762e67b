"""Constant-coefficient matrix differential operators and their symbols.

An operator is a matrix whose entries are polynomials in formal derivative
symbols (spatial derivatives, optionally a time derivative) and, possibly,
scalar parameter symbols such as a viscosity or a wave speed.  Parameters
behave like commuting constants: they never contribute to the order of an
operator and they are untouched by the formal adjoint.

The (total) symbol replaces each spatial derivative d_j by i*z_j and the time
derivative by i*tau; the principal symbol keeps only the top-order part.  Two
gradings are supported: ``"isotropic"`` counts the time derivative like a
spatial one, ``"spatial"`` gives it weight zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from cxkit.poly import GaussianRational, Poly, PolyMatrix

ISOTROPIC = "isotropic"
SPATIAL = "spatial"


@dataclass(frozen=True)
class Signature:
    """Names and roles of the variables an operator is written in."""

    spatial: tuple[str, ...]
    time: str | None = None
    params: tuple[str, ...] = ()

    @property
    def vars(self) -> tuple[str, ...]:
        v = self.spatial
        if self.time is not None:
            v = v + (self.time,)
        return v + self.params

    @property
    def derivative_vars(self) -> tuple[str, ...]:
        if self.time is not None:
            return self.spatial + (self.time,)
        return self.spatial

    def grading_vars(self, grading: str) -> tuple[str, ...]:
        if grading == ISOTROPIC:
            return self.derivative_vars
        if grading == SPATIAL:
            return self.spatial
        raise ValueError(f"unknown grading {grading!r}")

    def symbol_signature(self) -> "Signature":
        """Variable names used by symbols: z1..zn for space, tau for time."""
        return Signature(
            spatial=tuple(f"z{j + 1}" for j in range(len(self.spatial))),
            time="tau" if self.time is not None else None,
            params=self.params,
        )

    def merge(self, other: "Signature") -> "Signature":
        """Common refinement: same spatial block, union of time/params."""
        if self.spatial != other.spatial:
            raise ValueError(f"spatial variables differ: {self.spatial} vs {other.spatial}")
        if self.time is not None and other.time is not None and self.time != other.time:
            raise ValueError("conflicting time variable names")
        time = self.time if self.time is not None else other.time
        params = tuple(sorted(set(self.params) | set(other.params)))
        return Signature(self.spatial, time, params)


def spatial_signature(n: int, *, time: bool = False, params: Sequence[str] = ()) -> Signature:
    """The standard signature d1..dn (plus ``dt`` and sorted parameters)."""
    return Signature(
        spatial=tuple(f"d{j + 1}" for j in range(n)),
        time="dt" if time else None,
        params=tuple(sorted(params)),
    )


class OperatorMatrix:
    """A matrix differential operator with constant Gaussian-rational coefficients."""

    __slots__ = ("signature", "body")

    def __init__(self, signature: Signature, body: PolyMatrix):
        if body.vars != signature.vars:
            raise ValueError(
                f"matrix variables {body.vars} do not match signature {signature.vars}"
            )
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "body", body)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(signature: Signature, rows: int, cols: int) -> "OperatorMatrix":
        return OperatorMatrix(signature, PolyMatrix.zeros(signature.vars, rows, cols))

    @staticmethod
    def identity(signature: Signature, n: int) -> "OperatorMatrix":
        return OperatorMatrix(signature, PolyMatrix.identity(signature.vars, n))

    @staticmethod
    def from_entries(signature: Signature, entries: Sequence[Sequence[Poly]]) -> "OperatorMatrix":
        return OperatorMatrix(signature, PolyMatrix(signature.vars, entries))

    @staticmethod
    def scalar(signature: Signature, p: Poly) -> "OperatorMatrix":
        """A 1x1 operator."""
        return OperatorMatrix(signature, PolyMatrix(signature.vars, [[p.lift(signature.vars)]]))

    def poly(self, name: str) -> Poly:
        """The polynomial for a single variable of this operator's ring."""
        return Poly.variable(self.signature.vars, name)

    # -- views -------------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.body.rows

    @property
    def cols(self) -> int:
        return self.body.cols

    def __getitem__(self, key: tuple[int, int]) -> Poly:
        return self.body[key]

    @property
    def is_zero(self) -> bool:
        return self.body.is_zero

    def order(self, grading: str = ISOTROPIC) -> int:
        """Max total degree in the derivative symbols (-1 for the zero operator)."""
        return self.body.total_degree(self.signature.grading_vars(grading))

    def lift(self, signature: Signature) -> "OperatorMatrix":
        """Re-express over a richer signature (more params and/or a time axis)."""
        merged = self.signature.merge(signature)
        if merged != signature:
            # The target must contain everything this operator mentions.
            raise ValueError(f"cannot lift {self.signature} into {signature}")
        return OperatorMatrix(
            signature,
            self.body.map(lambda p: p.lift(signature.vars), vars=signature.vars),
        )

    # -- algebra -----------------------------------------------------------

    def _aligned(self, other: "OperatorMatrix") -> tuple["OperatorMatrix", "OperatorMatrix"]:
        if self.signature == other.signature:
            return self, other
        sig = self.signature.merge(other.signature)
        return self.lift(sig), other.lift(sig)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        a, b = self._aligned(other)
        return OperatorMatrix(a.signature, a.body + b.body)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        a, b = self._aligned(other)
        return OperatorMatrix(a.signature, a.body - b.body)

    def __neg__(self) -> "OperatorMatrix":
        return OperatorMatrix(self.signature, -self.body)

    def compose(self, other: "OperatorMatrix") -> "OperatorMatrix":
        """Operator composition self(other(u)); for constant coefficients this
        is the polynomial matrix product."""
        a, b = self._aligned(other)
        return OperatorMatrix(a.signature, a.body @ b.body)

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self.compose(other)

    def scale(self, value) -> "OperatorMatrix":
        if isinstance(value, Poly):
            value = value.lift(self.signature.vars)
        return OperatorMatrix(self.signature, self.body.scale(value))

    def transpose(self) -> "OperatorMatrix":
        return OperatorMatrix(self.signature, self.body.transpose())

    def formal_adjoint(self) -> "OperatorMatrix":
        """Formal L2 adjoint: conjugate-transpose with a (-1)^|alpha| twist on
        each derivative monomial.  Parameters are left untouched."""
        sig = self.signature
        deriv_idx = [sig.vars.index(v) for v in sig.derivative_vars]

        def entry_adjoint(p: Poly) -> Poly:
            out = {}
            for exp, coeff in p.terms.items():
                deg = sum(exp[i] for i in deriv_idx)
                c = coeff.conjugate()
                out[exp] = -c if deg % 2 else c
            return Poly(sig.vars, out)

        return OperatorMatrix(sig, self.body.transpose().map(entry_adjoint))

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.signature == other.signature and self.body == other.body

    def __hash__(self) -> int:
        return hash((self.signature, self.body))

    # -- symbols -----------------------------------------------------------

    def total_symbol(self) -> "SymbolMatrix":
        """Replace d_j -> i*z_j and dt -> i*tau."""
        sig = self.signature
        sym_sig = sig.symbol_signature()
        deriv_idx = [sig.vars.index(v) for v in sig.derivative_vars]
        i_pow = [GaussianRational.one(), GaussianRational.i(),
                 GaussianRational.of(-1), GaussianRational.of(0, -1)]

        def entry_symbol(p: Poly) -> Poly:
            out = {}
            for exp, coeff in p.terms.items():
                deg = sum(exp[i] for i in deriv_idx)
                out[exp] = coeff * i_pow[deg % 4]
            return Poly(sym_sig.vars, out)

        entries = [[entry_symbol(p) for p in row] for row in self.body.entries]
        return SymbolMatrix(
            sym_sig,
            PolyMatrix(sym_sig.vars, entries, shape=(self.rows, self.cols)),
        )

    def principal_symbol(self, grading: str = ISOTROPIC) -> "SymbolMatrix":
        """Top-order part of the total symbol under the chosen grading."""
        sym = self.total_symbol()
        m = self.order(grading)
        if m < 0:
            return sym
        grade = self.signature.grading_vars(grading)
        sym_grade = tuple(
            self.signature.symbol_signature().vars[self.signature.vars.index(v)]
            for v in grade
        )
        return SymbolMatrix(
            sym.signature,
            sym.body.map(lambda p: p.homogeneous_part(m, sym_grade) if p.total_degree(sym_grade) == m else Poly.zero(p.vars)),
        )


class SymbolMatrix:
    """A polynomial matrix in the symbol variables z1..zn (and tau, params)."""

    __slots__ = ("signature", "body")

    def __init__(self, signature: Signature, body: PolyMatrix):
        if body.vars != signature.vars:
            raise ValueError("matrix variables do not match signature")
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "body", body)

    @staticmethod
    def zero(signature: Signature, rows: int, cols: int) -> "SymbolMatrix":
        return SymbolMatrix(signature, PolyMatrix.zeros(signature.vars, rows, cols))

    @staticmethod
    def identity(signature: Signature, n: int) -> "SymbolMatrix":
        return SymbolMatrix(signature, PolyMatrix.identity(signature.vars, n))

    @property
    def rows(self) -> int:
        return self.body.rows

    @property
    def cols(self) -> int:
        return self.body.cols

    def __getitem__(self, key: tuple[int, int]) -> Poly:
        return self.body[key]

    @property
    def is_zero(self) -> bool:
        return self.body.is_zero

    def lift(self, signature: Signature) -> "SymbolMatrix":
        return SymbolMatrix(
            signature,
            self.body.map(lambda p: p.lift(signature.vars), vars=signature.vars),
        )

    def _aligned(self, other: "SymbolMatrix") -> tuple["SymbolMatrix", "SymbolMatrix"]:
        if self.signature == other.signature:
            return self, other
        sig = self.signature.merge(other.signature)
        return self.lift(sig), other.lift(sig)

    def __add__(self, other: "SymbolMatrix") -> "SymbolMatrix":
        if not isinstance(other, SymbolMatrix):
            return NotImplemented
        a, b = self._aligned(other)
        return SymbolMatrix(a.signature, a.body + b.body)

    def __sub__(self, other: "SymbolMatrix") -> "SymbolMatrix":
        if not isinstance(other, SymbolMatrix):
            return NotImplemented
        a, b = self._aligned(other)
        return SymbolMatrix(a.signature, a.body - b.body)

    def __neg__(self) -> "SymbolMatrix":
        return SymbolMatrix(self.signature, -self.body)

    def __matmul__(self, other: "SymbolMatrix") -> "SymbolMatrix":
        if not isinstance(other, SymbolMatrix):
            return NotImplemented
        a, b = self._aligned(other)
        return SymbolMatrix(a.signature, a.body @ b.body)

    def scale(self, value) -> "SymbolMatrix":
        if isinstance(value, Poly):
            value = value.lift(self.signature.vars)
        return SymbolMatrix(self.signature, self.body.scale(value))

    def hermitian_transpose(self) -> "SymbolMatrix":
        """Conjugate transpose; equals the symbol of the formal adjoint for
        real symbol variables."""
        return SymbolMatrix(self.signature, self.body.hermitian_transpose())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolMatrix):
            return NotImplemented
        return self.signature == other.signature and self.body == other.body

    def __hash__(self) -> int:
        return hash((self.signature, self.body))

    def evaluate(self, point: Mapping[str, complex]):
        """Evaluate entrywise to a nested list of complex numbers."""
        return [
            [p.evaluate(point) for p in row]
            for row in self.body.entries
        ]


def tensor_identity(op: OperatorMatrix, n: int, *, outer: bool = True) -> OperatorMatrix:
    """Kronecker product ``I_n (x) op`` (outer) or ``op (x) I_n``.

    With ``outer=True`` the result repeats ``op`` down a block diagonal.
    """
    sig = op.signature
    zero = Poly.zero(sig.vars)
    if outer:
        rows = n * op.rows
        cols = n * op.cols
        ents = [[zero] * cols for _ in range(rows)]
        for b in range(n):
            for i in range(op.rows):
                for j in range(op.cols):
                    ents[b * op.rows + i][b * op.cols + j] = op.body[i, j]
    else:
        rows = op.rows * n
        cols = op.cols * n
        ents = [[zero] * cols for _ in range(rows)]
        for i in range(op.rows):
            for j in range(op.cols):
                p = op.body[i, j]
                for b in range(n):
                    ents[i * n + b][j * n + b] = p
    return OperatorMatrix(sig, PolyMatrix(sig.vars, ents, shape=(rows, cols)))
