"""Ellipticity checks and Douglis-Nirenberg weight computation.

Three check flavours (Petrovskii, injectivity, strong ellipticity) share the
same two-stage strategy: first attempt an exact symbolic certificate of the
narrow form ``gamma * (|zeta|^2)^k`` (optionally times the identity), and only
fall back to a deterministic numeric minimization over the unit sphere when the
certificate does not apply.  Numeric verdicts use a three-way threshold:
minimum > 1e-9 passes, a point below 1e-12 fails, anything between is
inconclusive.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import optimize
from scipy.special import ndtri
from scipy.stats import qmc

from cxkit.blockops import BlockPartition
from cxkit.complexes import Complex, MuSet
from cxkit.diffop import SPATIAL, OperatorMatrix, SymbolMatrix
from cxkit.poly import GaussianRational, Poly

PASS_THRESHOLD = 1e-9
FAIL_THRESHOLD = 1e-12
DEFAULT_BUDGET = 20_000
DEFAULT_SEED = 20240

_POLISH_COUNT = 16


# ---------------------------------------------------------------------------
# Reports and weight plans


@dataclass(frozen=True)
class EllipticityReport:
    verdict: str  # certified-symbolic | numeric-pass | fail | inconclusive
    check: str
    determinant: str | None = None
    certified_form: str | None = None
    minimum: float | None = None
    argmin: tuple[float, ...] | None = None
    witness: tuple[float, ...] | None = None
    seed: int | None = None
    budget: int | None = None
    thresholds: tuple[float, float] = (PASS_THRESHOLD, FAIL_THRESHOLD)

    @property
    def ok(self) -> bool:
        return self.verdict in ("certified-symbolic", "numeric-pass")

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "check": self.check,
            "thresholds": {"pass": self.thresholds[0], "fail": self.thresholds[1]},
        }
        if self.determinant is not None:
            out["determinant"] = self.determinant
        if self.certified_form is not None:
            out["certified_form"] = self.certified_form
        if self.minimum is not None:
            out["minimum"] = self.minimum
        if self.argmin is not None:
            out["argmin"] = list(self.argmin)
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.seed is not None:
            out["seed"] = self.seed
            out["budget"] = self.budget
        return out


@dataclass(frozen=True)
class WeightPlan:
    s: tuple[int, ...]
    t: tuple[int, ...]
    shift: int
    scheme: str  # "maxwell" | "stokes"

    def __post_init__(self):
        if len(self.s) != len(self.t):
            raise ValueError("weight vectors must have equal length")
        if any(v < 0 for v in self.s + self.t):
            raise ValueError("weights must be non-negative after the shift")

    @property
    def size(self) -> int:
        return len(self.s)

    def shifted(self, c: int) -> "WeightPlan":
        return WeightPlan(tuple(v + c for v in self.s),
                          tuple(v + c for v in self.t), self.shift + c, self.scheme)

    def to_json(self) -> dict:
        return {"s": list(self.s), "t": list(self.t),
                "shift": self.shift, "scheme": self.scheme}


# ---------------------------------------------------------------------------
# Vectorized polynomial evaluation


def _compile_poly(p: Poly, var_order: Sequence[str]) -> Callable[[np.ndarray], np.ndarray]:
    """Return a function mapping an (M, d) point array to (M,) complex values."""
    index = {v: i for i, v in enumerate(p.vars)}
    cols = [index[v] for v in var_order]
    exps = []
    coeffs = []
    for exp, coeff in p.terms.items():
        exps.append([exp[c] for c in cols])
        coeffs.append(complex(coeff))
    if not exps:
        return lambda pts: np.zeros(len(pts), dtype=complex)
    e = np.array(exps, dtype=np.int64)  # (T, d)
    c = np.array(coeffs, dtype=complex)  # (T,)

    def evaluate(pts: np.ndarray) -> np.ndarray:
        # pts: (M, d) real; result (M,)
        monomials = np.prod(pts[:, None, :] ** e[None, :, :], axis=2)
        return monomials @ c

    return evaluate


def _compile_matrix(sym: SymbolMatrix, var_order: Sequence[str]
                    ) -> Callable[[np.ndarray], np.ndarray]:
    entry_fns = [[_compile_poly(sym.body[i, j], var_order) for j in range(sym.cols)]
                 for i in range(sym.rows)]

    def evaluate(pts: np.ndarray) -> np.ndarray:
        out = np.empty((len(pts), sym.rows, sym.cols), dtype=complex)
        for i in range(sym.rows):
            for j in range(sym.cols):
                out[:, i, j] = entry_fns[i][j](pts)
        return out

    return evaluate


def _sphere_points(dim: int, budget: int, seed: int) -> np.ndarray:
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        sampler = qmc.Sobol(d=dim, scramble=True, seed=seed)
        u = sampler.random(budget)
    u = np.clip(u, 1e-12, 1 - 1e-12)
    g = ndtri(u)
    norms = np.linalg.norm(g, axis=1)
    norms[norms == 0] = 1.0
    return g / norms[:, None]


def _canonical_point(x: np.ndarray) -> tuple[float, ...]:
    x = x / np.linalg.norm(x)
    for v in x:
        if abs(v) > 1e-12:
            if v < 0:
                x = -x
            break
    return tuple(round(float(v), 12) + 0.0 for v in x)


def _sphere_minimize(fn: Callable[[np.ndarray], np.ndarray], dim: int,
                     seed: int, budget: int) -> tuple[float, tuple[float, ...]]:
    """Deterministic global-ish minimization of ``fn`` over the unit sphere:
    quasi-random scan, then local polish from the best candidates."""
    pts = _sphere_points(dim, budget, seed)
    values = fn(pts)
    order = np.argsort(values, kind="stable")
    candidates: list[tuple[float, tuple[float, ...]]] = []
    for idx in order[:_POLISH_COUNT]:
        candidates.append((float(values[idx]), _canonical_point(pts[idx])))
        if dim > 1:
            def objective(x):
                n = np.linalg.norm(x)
                if n < 1e-9:
                    return float("inf")
                return float(fn((x / n)[None, :])[0])

            res = optimize.minimize(objective, pts[idx], method="Nelder-Mead",
                                    options={"xatol": 1e-12, "fatol": 1e-14,
                                             "maxiter": 600})
            if np.isfinite(res.fun):
                candidates.append((float(res.fun), _canonical_point(res.x)))
    # exact argmin with lexicographic tie-break for determinism
    best = min(candidates, key=lambda vp: (vp[0], vp[1]))
    return best


# ---------------------------------------------------------------------------
# Symbolic certification helpers


def _zeta_norm_square(p: Poly, spatial: Sequence[str]) -> Poly:
    total = Poly.zero(p.vars)
    for v in spatial:
        z = Poly.variable(p.vars, v)
        total = total + z * z
    return total


def _certify_power(det: Poly, spatial: Sequence[str]) -> tuple[GaussianRational, int] | None:
    """If det == gamma * (|zeta|^2)^k for a nonzero constant gamma, return
    (gamma, k); else None."""
    if det.is_zero:
        return None
    r2 = _zeta_norm_square(det, spatial)
    current = det
    k = 0
    while True:
        if current.total_degree(spatial) == 0:
            if current.is_constant:
                return current.constant_value(), k
            return None  # depends on parameters only: not certified
        try:
            current = current.exact_div(r2)
        except ValueError:
            return None
        k += 1


def _spatial_symbol_vars(sym: SymbolMatrix) -> tuple[list[str], list[str]]:
    """(sphere variables, parameter variables) for a symbol matrix."""
    sig = sym.signature
    sphere = list(sig.spatial)
    if sig.time is not None:
        sphere.append(sig.time)
    return sphere, list(sig.params)


def _with_params(fn, n_sphere: int, n_params: int):
    """Append parameter columns fixed at 1.0 to sphere points."""
    if n_params == 0:
        return fn

    def wrapped(pts: np.ndarray) -> np.ndarray:
        cols = np.ones((len(pts), n_params))
        return fn(np.hstack([pts, cols]))

    return wrapped


def _numeric_verdict(minimum: float, argmin: tuple[float, ...], *, check: str,
                     determinant: str | None, seed: int, budget: int
                     ) -> EllipticityReport:
    if minimum > PASS_THRESHOLD:
        return EllipticityReport("numeric-pass", check, determinant=determinant,
                                 minimum=minimum, argmin=argmin,
                                 seed=seed, budget=budget)
    if minimum < FAIL_THRESHOLD:
        return EllipticityReport("fail", check, determinant=determinant,
                                 minimum=minimum, argmin=argmin, witness=argmin,
                                 seed=seed, budget=budget)
    return EllipticityReport("inconclusive", check, determinant=determinant,
                             minimum=minimum, argmin=argmin,
                             seed=seed, budget=budget)


# ---------------------------------------------------------------------------
# The three checks


def _petrovskii_on_symbol(sym: SymbolMatrix, *, check: str,
                          seed: int = DEFAULT_SEED,
                          budget: int = DEFAULT_BUDGET) -> EllipticityReport:
    if sym.rows != sym.cols:
        raise ValueError("Petrovskii check needs a square symbol")
    det = sym.body.determinant()
    det_str = str(det)
    sphere_vars, param_vars = _spatial_symbol_vars(sym)
    if det.is_zero:
        witness = tuple(1.0 if i == 0 else 0.0 for i in range(len(sphere_vars)))
        return EllipticityReport("fail", check, determinant=det_str,
                                 minimum=0.0, witness=witness)
    cert = _certify_power(det, sphere_vars)
    if cert is not None:
        gamma, k = cert
        return EllipticityReport(
            "certified-symbolic", check, determinant=det_str,
            certified_form=f"({gamma})*(|zeta|^2)^{k}",
        )
    det_fn = _compile_poly(det, sphere_vars + param_vars)
    fn = _with_params(lambda pts: np.abs(det_fn(pts)), len(sphere_vars),
                      len(param_vars))
    minimum, argmin = _sphere_minimize(fn, len(sphere_vars), seed, budget)
    return _numeric_verdict(minimum, argmin, check=check, determinant=det_str,
                            seed=seed, budget=budget)


def petrovskii_check(op: OperatorMatrix, *, seed: int = DEFAULT_SEED,
                     budget: int = DEFAULT_BUDGET) -> EllipticityReport:
    """Invertibility of the principal symbol away from zero."""
    if op.rows != op.cols:
        raise ValueError("Petrovskii check needs a square operator")
    return _petrovskii_on_symbol(op.principal_symbol(), check="petrovskii",
                                 seed=seed, budget=budget)


def injectivity_check(op: OperatorMatrix, *, seed: int = DEFAULT_SEED,
                      budget: int = DEFAULT_BUDGET) -> EllipticityReport:
    """Injectivity of the principal symbol: Petrovskii check of sigma^H sigma."""
    if op.rows < op.cols:
        raise ValueError("injectivity check needs rows >= cols")
    s = op.principal_symbol()
    gram = s.hermitian_transpose() @ s
    return _petrovskii_on_symbol(gram, check="injectivity", seed=seed,
                                 budget=budget)


def strong_ellipticity_check(op: OperatorMatrix, *, seed: int = DEFAULT_SEED,
                             budget: int = DEFAULT_BUDGET) -> EllipticityReport:
    """Positivity of the Hermitian part of the principal symbol on the sphere."""
    if op.rows != op.cols:
        raise ValueError("strong ellipticity check needs a square operator")
    if op.order() % 2 != 0:
        raise ValueError("strong ellipticity check needs an even-order operator")
    s = op.principal_symbol()
    herm = (s + s.hermitian_transpose()).scale(GaussianRational.of(1, 0) / GaussianRational.of(2, 0))
    sphere_vars, param_vars = _spatial_symbol_vars(herm)
    scalar = _scalar_multiple_of_identity(herm)
    if scalar is not None:
        cert = _certify_power(scalar, sphere_vars)
        if cert is not None:
            gamma, k = cert
            if gamma.is_real and gamma.re > 0:
                return EllipticityReport(
                    "certified-symbolic", "strong-ellipticity",
                    certified_form=f"({gamma})*(|zeta|^2)^{k}*I",
                )
            if gamma.is_real and gamma.re < 0:
                witness = tuple(1.0 if i == 0 else 0.0
                                for i in range(len(sphere_vars)))
                return EllipticityReport("fail", "strong-ellipticity",
                                         certified_form=f"({gamma})*(|zeta|^2)^{k}*I",
                                         minimum=float(gamma.re),
                                         witness=witness)
    mat_fn = _compile_matrix(herm, sphere_vars + param_vars)

    def min_eig(pts: np.ndarray) -> np.ndarray:
        mats = mat_fn(pts)
        mats = (mats + np.conj(np.swapaxes(mats, 1, 2))) / 2
        return np.linalg.eigvalsh(mats)[:, 0].real

    fn = _with_params(min_eig, len(sphere_vars), len(param_vars))
    minimum, argmin = _sphere_minimize(fn, len(sphere_vars), seed, budget)
    return _numeric_verdict(minimum, argmin, check="strong-ellipticity",
                            determinant=None, seed=seed, budget=budget)


def _scalar_multiple_of_identity(sym: SymbolMatrix) -> Poly | None:
    if sym.rows != sym.cols or sym.rows == 0:
        return None
    s = sym.body[0, 0]
    for i in range(sym.rows):
        for j in range(sym.cols):
            entry = sym.body[i, j]
            if i == j:
                if entry != s:
                    return None
            elif not entry.is_zero:
                return None
    return s


# ---------------------------------------------------------------------------
# Douglis-Nirenberg weights


def _complex_orders(cplx: Complex, mu: MuSet | None):
    mu = mu or MuSet.identity(cplx)
    m = [cplx.op(j).order() for j in range(cplx.length)]
    mtilde = [mu.orders(j)[0] // 2 for j in range(cplx.length + 1)]
    mhat = [mu.orders(j)[1] // 2 for j in range(cplx.length + 1)]
    return m, mtilde, mhat


def _shift_nonneg(s: list[int], t: list[int]) -> int:
    lowest = min(s + t)
    return -lowest if lowest < 0 else 0


def dn_weights_maxwell(cplx: Complex, mu: MuSet | None = None
                       ) -> tuple[WeightPlan, WeightPlan]:
    """Weight plans for both Maxwell variants, solved from the defining
    triangular system with the seeding t_1 = t_2 = 0."""
    n = cplx.length
    if n < 1:
        raise ValueError("need a complex of length at least 1")
    m, mtilde, mhat = _complex_orders(cplx, mu)

    plans = []
    for variant in (0, 1):
        s = [0] * (n + 1)
        t = [0] * (n + 1)
        # 1-indexed in the derivation; python lists are 0-indexed.
        if variant == 0:
            s[0] = m[n - 1] + mtilde[n - 1]   # s_1 = t_2 + m_{N-1} + mtilde_{N-1}
            s[1] = m[n - 1]                   # s_2 = t_1 + m_{N-1}
        else:
            s[0] = m[n - 1]                   # s_1 = t_2 + m_{N-1}
            s[1] = m[n - 1] + mhat[n - 1]     # s_2 = t_1 + m_{N-1} + mhat_{N-1}
        for j in range(2, n + 1):
            deg = n - j
            if variant == 0:
                t[j] = s[j - 1] - m[deg] - mtilde[deg]
                s[j] = m[deg] + t[j - 1]
            else:
                t[j] = s[j - 1] - m[deg]
                s[j] = m[deg] + mhat[deg] + t[j - 1]
        c = _shift_nonneg(s, t)
        plan = WeightPlan(tuple(v + c for v in s), tuple(v + c for v in t), c,
                          "maxwell")
        _assert_dn_p(plan, variant, m, mtilde, mhat)
        plans.append(plan)
    return plans[0], plans[1]


def _assert_dn_p(plan: WeightPlan, variant: int, m, mtilde, mhat) -> None:
    n = plan.size - 1
    s, t = plan.s, plan.t
    for j in range(1, n + 1):
        deg = n - j
        if variant == 0:
            assert s[j - 1] - t[j] == m[deg] + mtilde[deg], (j, "s_j - t_{j+1}")
            assert s[j] - t[j - 1] == m[deg], (j, "s_{j+1} - t_j")
        else:
            assert s[j] - t[j - 1] == m[deg] + mhat[deg], (j, "s_{j+1} - t_j")
            assert s[j - 1] - t[j] == m[deg], (j, "s_j - t_{j+1}")


def dn_weights_stokes(cplx: Complex, q: int, mu: MuSet | None = None) -> WeightPlan:
    """Weight plan for the Stokes operator at degree q, seeded with t_1 = 0 and
    s_1 = 2(m_q + mtilde_q)."""
    m, mtilde, mhat = _complex_orders(cplx, mu)
    if 0 < q < cplx.length and m[q] + mtilde[q] != m[q - 1] + mhat[q]:
        raise ValueError(
            f"order balance m_q + mtilde_q = m_(q-1) + mhat_q violated at q={q}"
        )
    s = [0] * (q + 1)
    t = [0] * (q + 1)
    s[0] = 2 * (m[q] + mtilde[q]) if q < cplx.length else 2 * (m[q - 1] + mhat[q])
    for j in range(1, q + 1):
        deg = q - j
        t[j] = s[j - 1] - m[deg]
        s[j] = m[deg] + t[j - 1]
    c = _shift_nonneg(s, t)
    plan = WeightPlan(tuple(v + c for v in s), tuple(v + c for v in t), c,
                      "stokes")
    for j in range(1, q + 1):
        deg = q - j
        assert plan.s[j - 1] - plan.t[j] == m[deg]
        assert plan.s[j] - plan.t[j - 1] == m[deg]
    return plan


# ---------------------------------------------------------------------------
# DN principal symbols


def dn_symbol(op: OperatorMatrix, part: BlockPartition, plan: WeightPlan
              ) -> SymbolMatrix:
    """The (s, t)-principal symbol: block (p, r) keeps the terms of spatial
    degree exactly s_p - t_r of the total symbol; zero when s_p < t_r."""
    blocks = len(part.ranks)
    if plan.size != blocks:
        raise ValueError(
            f"plan has {plan.size} blocks but the partition has {blocks}"
        )
    total = op.total_symbol()
    sig = total.signature
    spatial = list(sig.spatial)
    if sig.time is not None:
        spatial.append(sig.time)
    # block index p (from the top) corresponds to descending degree.
    degrees = sorted(range(blocks), reverse=True)
    body = [[Poly.zero(sig.vars)] * part.size for _ in range(part.size)]
    for p, row_deg in enumerate(degrees):
        for r, col_deg in enumerate(degrees):
            target = plan.s[p] - plan.t[r]
            if target < 0:
                continue
            r0 = part.offset(row_deg)
            c0 = part.offset(col_deg)
            for i in range(part.ranks[row_deg]):
                for j in range(part.ranks[col_deg]):
                    entry = total.body[r0 + i, c0 + j]
                    body[r0 + i][c0 + j] = entry.homogeneous_part(target, spatial)
    from cxkit.poly import PolyMatrix
    return SymbolMatrix(sig, PolyMatrix(sig.vars, body,
                                        shape=(part.size, part.size)))


def dn_check(op: OperatorMatrix, part: BlockPartition, plan: WeightPlan, *,
             seed: int = DEFAULT_SEED, budget: int = DEFAULT_BUDGET
             ) -> EllipticityReport:
    """Douglis-Nirenberg ellipticity: Petrovskii check of the DN symbol."""
    sym = dn_symbol(op, part, plan)
    return _petrovskii_on_symbol(sym, check="douglis-nirenberg", seed=seed,
                                 budget=budget)


__all__ = [
    "EllipticityReport",
    "WeightPlan",
    "PASS_THRESHOLD",
    "FAIL_THRESHOLD",
    "DEFAULT_BUDGET",
    "DEFAULT_SEED",
    "petrovskii_check",
    "injectivity_check",
    "strong_ellipticity_check",
    "dn_weights_maxwell",
    "dn_weights_stokes",
    "dn_symbol",
    "dn_check",
]
