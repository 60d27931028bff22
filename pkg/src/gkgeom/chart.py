"""Finite-difference tensor calculus on coordinate charts.

A form of degree k is stored as its full antisymmetric coefficient array,
alpha[i0..ik-1] = alpha(e_i0, ..., e_ik-1).  Endomorphisms (complex
structures) are arrays I[j, i] = (I e_i)_j.  Fields are vectorised: ``fn``
maps points of shape (..., dim) to values of shape (..., *shape).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterable, Sequence, Tuple

import numpy as np

from .linalg import pairing_matrix


@dataclass(frozen=True)
class FDConfig:
    """Finite-difference settings."""

    h: float = 1e-3
    scheme: str = "central-4"
    richardson: bool = False

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("step h must be positive")
        if self.scheme not in ("central-2", "central-4"):
            raise ValueError(f"unknown scheme {self.scheme!r}")

    def stencil(self) -> Tuple[np.ndarray, np.ndarray]:
        if self.scheme == "central-2":
            return np.array([-1.0, 1.0]), np.array([-0.5, 0.5])
        return np.array([-2.0, -1.0, 1.0, 2.0]), np.array([1.0, -8.0, 8.0, -1.0]) / 12.0

    @property
    def order(self) -> int:
        return 2 if self.scheme == "central-2" else 4


@dataclass(frozen=True)
class ChartField:
    """A vectorised tensor field on an open set of R^dim."""

    dim: int
    degree: int
    fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    shape: Tuple[int, ...] = ()
    kind: str = "form"
    smoothness: str = "analytic"

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        val = np.asarray(self.fn(x))
        if not np.all(np.isfinite(val)):
            raise FloatingPointError("non-finite field samples")
        return val


def alternation_residual(arr: np.ndarray, k: int) -> float:
    """max |arr + arr with two of the last k axes swapped|."""
    if k < 2:
        return 0.0
    nd = arr.ndim
    worst = 0.0
    for a in range(nd - k, nd - 1):
        axes = list(range(nd))
        axes[a], axes[a + 1] = axes[a + 1], axes[a]
        worst = max(worst, float(np.abs(arr + np.transpose(arr, axes)).max()))
    return worst


def form_field(dim: int, degree: int, fn, probe=None, tol: float = 1e-12,
               smoothness: str = "analytic") -> ChartField:
    """Form field with the antisymmetry of its coefficients checked at a probe point."""
    f = ChartField(dim, degree, fn, (dim,) * degree, "form", smoothness)
    x0 = np.zeros(dim) if probe is None else np.asarray(probe, float)
    v = f(x0)
    if v.shape != (dim,) * degree:
        raise ValueError(f"form coefficients have shape {v.shape}, expected {(dim,) * degree}")
    scale = max(1.0, float(np.abs(v).max())) if v.size else 1.0
    if alternation_residual(v, degree) > tol * scale:
        raise ValueError("form coefficients are not antisymmetric")
    return f


def tensor_field(dim: int, shape: Tuple[int, ...], fn, kind: str = "tensor") -> ChartField:
    return ChartField(dim, len(shape), fn, tuple(shape), kind)


def constant_field(dim: int, value, kind: str = "tensor") -> ChartField:
    value = np.asarray(value)

    def fn(x):
        return np.broadcast_to(value, x.shape[:-1] + value.shape).copy()

    return ChartField(dim, value.ndim, fn, value.shape, kind)


def scalar_field(dim: int, fn) -> ChartField:
    return ChartField(dim, 0, fn, (), "form")


# -- derivatives ---------------------------------------------------------------

def _raw_partials(f: ChartField, x: np.ndarray, h: float, cfg: FDConfig) -> np.ndarray:
    offs, w = cfg.stencil()
    E = np.eye(f.dim)
    pts = x[..., None, None, :] + h * offs[None, :, None] * E[:, None, :]
    vals = f(pts)
    b = x.ndim - 1
    vals = np.moveaxis(vals, b + 1, -1)
    return (vals @ w) / h


def partial_field(f: ChartField, cfg: FDConfig) -> ChartField:
    """Field of first partials, derivative index first: D[..., j, *shape]."""

    def fn(x):
        d = _raw_partials(f, x, cfg.h, cfg)
        if cfg.richardson:
            d2 = _raw_partials(f, x, cfg.h / 2, cfg)
            p = 2 ** cfg.order
            d = (p * d2 - d) / (p - 1)
        return d

    return ChartField(f.dim, f.degree + 1, fn, (f.dim,) + f.shape, "tensor")


def antisymmetrize(arr: np.ndarray, k: int) -> np.ndarray:
    """Alternation over the last k axes, normalised to be a projection."""
    if k < 2:
        return arr
    nd = arr.ndim
    lead = list(range(nd - k))
    out = np.zeros_like(arr)
    for perm in itertools.permutations(range(k)):
        sign = _perm_sign(perm)
        out = out + sign * np.transpose(arr, lead + [nd - k + p for p in perm])
    return out / math.factorial(k)


def _perm_sign(perm) -> int:
    sign, p = 1, list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def d_field(alpha: ChartField, cfg: FDConfig) -> ChartField:
    """Exterior derivative as a field: (d a)_{i0..ik} = sum_j (-1)^j d_{ij} a_{..^ij..}."""
    k = alpha.degree
    D = partial_field(alpha, cfg)

    def fn(x):
        return (k + 1) * antisymmetrize(D(x), k + 1)

    return ChartField(alpha.dim, k + 1, fn, (alpha.dim,) * (k + 1), "form")


def fd_d(alpha: ChartField, x, cfg: FDConfig = FDConfig()) -> np.ndarray:
    return d_field(alpha, cfg)(x)


def pull_by_endomorphism(arr: np.ndarray, I: np.ndarray, k: int) -> np.ndarray:
    """arr(I., ..., I.) on the last k slots; I has shape (..., d, d)."""
    out = arr
    nd = arr.ndim
    for slot in range(k):
        ax = nd - k + slot
        out = np.moveaxis(out, ax, -1)
        out = np.einsum("...j,...ji->...i", out, _bcast(I, out.ndim - 1))
        out = np.moveaxis(out, -1, ax)
    return out


def _bcast(I: np.ndarray, batch_plus_rest: int) -> np.ndarray:
    # I carries batch dims (...) then (d, d); insert singleton axes for the
    # remaining tensor slots so einsum broadcasts.
    extra = batch_plus_rest - (I.ndim - 2)
    if extra <= 0:
        return I
    return I.reshape(I.shape[:-2] + (1,) * extra + I.shape[-2:])


def dc_field(alpha: ChartField, I: ChartField, cfg: FDConfig, check_tol: float = 1e-8) -> ChartField:
    """d^c a := -(d a)(I., ..., I.)."""
    k = alpha.degree
    da = d_field(alpha, cfg)

    def fn(x):
        Ix = I(x)
        e = np.eye(alpha.dim)
        if np.abs(Ix @ Ix + e).max() > check_tol:
            raise ValueError("I is not almost complex at a sample point")
        return -_pull(da(x), Ix, k + 1)

    return ChartField(alpha.dim, k + 1, fn, (alpha.dim,) * (k + 1), "form")


def _pull(arr: np.ndarray, I: np.ndarray, k: int) -> np.ndarray:
    letters = "abcdefgh"[:k]
    upper = "ABCDEFGH"[:k]
    spec = "..." + "".join(letters) + "," + ",".join(f"...{letters[i]}{upper[i]}" for i in range(k))
    spec += "->..." + upper
    return np.einsum(spec, arr, *([I] * k))


def dc_op(alpha: ChartField, I: ChartField, x, cfg: FDConfig = FDConfig()) -> np.ndarray:
    return dc_field(alpha, I, cfg)(x)


def ddc_field(f: ChartField, I: ChartField, cfg: FDConfig) -> ChartField:
    return d_field(dc_field(f, I, cfg), cfg)


DC_CALIBRATION_C0 = 2.0
"""dd^c|z|^2 = 2 c0 dx^dy on C with d^c f = -df o I; pinned value of c0."""


def calibrate_c0(cfg: FDConfig = FDConfig(), point=(0.3, -0.2)) -> float:
    J = np.array([[0.0, -1.0], [1.0, 0.0]])
    f = scalar_field(2, lambda x: x[..., 0] ** 2 + x[..., 1] ** 2)
    v = ddc_field(f, constant_field(2, J), cfg)(np.asarray(point, float))
    return float(v[0, 1] / 2.0)


# -- Lie bracket of vector fields, Courant bracket -----------------------------

def lie_bracket(Xf: ChartField, Yf: ChartField, x, cfg: FDConfig) -> np.ndarray:
    X, Y = Xf(x), Yf(x)
    dX, dY = partial_field(Xf, cfg)(x), partial_field(Yf, cfg)(x)
    return np.einsum("...j,...ji->...i", X, dY) - np.einsum("...j,...ji->...i", Y, dX)


def courant_bracket_H(s1: ChartField, s2: ChartField, H: ChartField | None, x,
                      cfg: FDConfig = FDConfig()) -> np.ndarray:
    """[X+a, Y+b]_H = [X,Y] + L_X b - i_Y da + i_X i_Y H."""
    x = np.asarray(x, float)
    d = s1.dim
    v1, v2 = s1(x), s2(x)
    D1, D2 = partial_field(s1, cfg)(x), partial_field(s2, cfg)(x)
    X, a = v1[..., :d], v1[..., d:]
    Y, b = v2[..., :d], v2[..., d:]
    dX, da = D1[..., :d], D1[..., d:]
    dY, db = D2[..., :d], D2[..., d:]
    vec = np.einsum("...j,...ji->...i", X, dY) - np.einsum("...j,...ji->...i", Y, dX)
    lie = np.einsum("...j,...ji->...i", X, db) + np.einsum("...j,...ij->...i", b, dX)
    curl = np.einsum("...j,...ji->...i", Y, da) - np.einsum("...j,...ij->...i", Y, da)
    form = lie - curl
    if H is not None:
        form = form + np.einsum("...j,...k,...jki->...i", Y, X, H(x))
    return np.concatenate([vec, form], axis=-1)


def section_field(dim: int, fn) -> ChartField:
    return ChartField(dim, 1, fn, (2 * dim,), "section")


def involutivity_residual(frames: Sequence[ChartField], H: ChartField | None, points,
                          cfg: FDConfig = FDConfig(), rank_tol: float = 1e-8) -> float:
    """max |<[s_a, s_b]_H, s_c>| over frame triples and sample points."""
    points = np.atleast_2d(np.asarray(points, float))
    d = frames[0].dim
    P = pairing_matrix(d)
    worst = 0.0
    for x in points:
        F = np.stack([s(x) for s in frames], axis=1)
        if np.linalg.matrix_rank(F, tol=rank_tol) < len(frames):
            raise ValueError(f"frame rank drops at sample point {x.tolist()}")
        for a, b in itertools.product(range(len(frames)), repeat=2):
            v = courant_bracket_H(frames[a], frames[b], H, x, cfg)
            worst = max(worst, float(np.abs(F.T @ P @ v).max()))
    return worst


# -- GK verification -------------------------------------------------------------

def hermitian_form_field(g: ChartField, I: ChartField) -> ChartField:
    """omega(X, Y) = g(I X, Y) as a coefficient array."""

    def fn(x):
        gx, Ix = g(x), I(x)
        m = gx @ Ix
        return np.swapaxes(m, -1, -2)

    return ChartField(g.dim, 2, fn, (g.dim, g.dim), "form")


def nijenhuis_field(I: ChartField, cfg: FDConfig) -> ChartField:
    """N[k, a, b] = N_I(e_a, e_b)^k."""
    D = partial_field(I, cfg)

    def fn(x):
        Ix, dI = I(x), D(x)  # dI[..., j, k, b] = d_j I[k, b]
        t1 = np.einsum("...ja,...jkb->...kab", Ix, dI)
        t3 = np.einsum("...kl,...bla->...kab", Ix, dI)
        n = t1 - np.swapaxes(t1, -1, -2) + t3 - np.swapaxes(t3, -1, -2)
        return n

    return ChartField(I.dim, 3, fn, (I.dim,) * 3, "tensor")


@dataclass
class GKChartReport:
    dc_sum: float
    pluriclosed_plus: float
    pluriclosed_minus: float
    nijenhuis_plus: float
    nijenhuis_minus: float
    pointwise: float

    def as_dict(self) -> Dict[str, float]:
        return dict(self.__dict__)

    @property
    def worst(self) -> float:
        return max(self.as_dict().values())


def verify_gk_chart(g: ChartField, Iplus: ChartField, Iminus: ChartField, points,
                    cfg: FDConfig = FDConfig(), outer_cfg: FDConfig | None = None) -> GKChartReport:
    """Residuals of d^c+ w+ + d^c- w- = 0, dd^c+- w+- = 0 and N(I+-) = 0.

    ``outer_cfg`` sets the step of the second derivative in the pluriclosed
    check (defaults to ``cfg``).
    """
    pts = np.atleast_2d(np.asarray(points, float))
    outer = outer_cfg or cfg
    wp, wm = hermitian_form_field(g, Iplus), hermitian_form_field(g, Iminus)
    Hp, Hm = dc_field(wp, Iplus, cfg), dc_field(wm, Iminus, cfg)
    dHp, dHm = d_field(Hp, outer), d_field(Hm, outer)
    e = np.eye(g.dim)
    pw = 0.0
    for I in (Iplus, Iminus):
        Ix, gx = I(pts), g(pts)
        pw = max(pw, float(np.abs(Ix @ Ix + e).max()),
                 float(np.abs(np.swapaxes(Ix, -1, -2) @ gx @ Ix - gx).max()))
    return GKChartReport(
        dc_sum=float(np.abs(Hp(pts) + Hm(pts)).max()),
        pluriclosed_plus=float(np.abs(dHp(pts)).max()),
        pluriclosed_minus=float(np.abs(dHm(pts)).max()),
        nijenhuis_plus=float(np.abs(nijenhuis_field(Iplus, cfg)(pts)).max()),
        nijenhuis_minus=float(np.abs(nijenhuis_field(Iminus, cfg)(pts)).max()),
        pointwise=pw,
    )


# -- splittings ---------------------------------------------------------------------

@dataclass
class SplittingResult:
    omega: ChartField
    residual: float
    closure_residual: float


def pluriclosed_from_splitting(Hc: ChartField, B: ChartField, I: ChartField, points,
                               cfg: FDConfig = FDConfig(), tol: float = 1e-6) -> SplittingResult:
    """omega = -B^{(1,1)} and the residual of Re Hc = d(-2 Im B^{(2,0)}) + d^c omega."""
    pts = np.atleast_2d(np.asarray(points, float))
    closure = float(np.abs(d_field(B, cfg)(pts) - Hc(pts).imag).max())
    if closure > tol:
        raise ValueError(f"dB differs from Im Hc by {closure:.3e}")

    def b11(x):
        Bx, Ix = B(x), I(x)
        return 0.5 * (Bx + _pull(Bx, Ix, 2))

    def twisted(x):
        # -2 Im B^{(2,0)} = R(I., .) with R the (2,0)+(0,2) part of B
        Bx, Ix = B(x), I(x)
        R = 0.5 * (Bx - _pull(Bx, Ix, 2))
        return np.einsum("...ki,...kj->...ij", Ix, R)

    omega = ChartField(B.dim, 2, lambda x: -b11(x), B.shape, "form")
    tw = ChartField(B.dim, 2, twisted, B.shape, "form")
    rhs = d_field(tw, cfg)(pts) + dc_field(omega, I, cfg)(pts)
    return SplittingResult(omega, float(np.abs(Hc(pts).real - rhs).max()), closure)


# -- commuting-type deformation ---------------------------------------------------

@dataclass(frozen=True)
class CommutingBase:
    """Product data on M1 x M2 with I+- = diag(I1, +-I2)."""

    dim1: int
    dim2: int
    g: ChartField
    I1: np.ndarray
    I2: np.ndarray

    @property
    def dim(self) -> int:
        return self.dim1 + self.dim2

    def Iplus(self) -> np.ndarray:
        return _blockdiag(self.I1, self.I2)

    def Iminus(self) -> np.ndarray:
        return _blockdiag(self.I1, -self.I2)


def _blockdiag(a, b):
    out = np.zeros((a.shape[0] + b.shape[0],) * 2)
    out[: a.shape[0], : a.shape[0]] = a
    out[a.shape[0]:, a.shape[0]:] = b
    return out


def flat_commuting_base() -> CommutingBase:
    J = np.array([[0.0, -1.0], [1.0, 0.0]])
    return CommutingBase(2, 2, constant_field(4, np.eye(4)), J, J)


def factor_ddc(f: ChartField, base: CommutingBase, which: int, cfg: FDConfig) -> ChartField:
    """d_i d_i^c f: legs and derivatives restricted to the factor M_i."""
    d1 = base.dim1
    mask = np.zeros(base.dim)
    if which == 1:
        Ihat = _blockdiag(base.I1, np.zeros((base.dim2, base.dim2)))
        mask[:d1] = 1
    else:
        Ihat = _blockdiag(np.zeros((d1, d1)), base.I2)
        mask[d1:] = 1
    dcf = ChartField(f.dim, 1, lambda x: -np.einsum("...j,ji->...i", partial_field(f, cfg)(x), Ihat),
                     (f.dim,), "form")
    full = d_field(dcf, cfg)
    M = np.outer(mask, mask)
    return ChartField(f.dim, 2, lambda x: full(x) * M, (f.dim, f.dim), "form")


@dataclass
class DeformResult:
    omega_plus: ChartField
    omega_minus: ChartField
    g: ChartField
    report: GKChartReport
    min_eig: float
    verdict: str
    same_sign_pluriclosed: float
    t_star: float | None = None


def deformed_forms(f: ChartField, t: float, base: CommutingBase, cfg: FDConfig,
                   sign2: float = -1.0):
    """(w+^t, w-^t, g^t) with w+-^t = w+- + t(phi1 +- sign2 phi2), phi_i = d_i d_i^c f.

    sign2 = -1 is the choice that keeps H = d^c+ w+ closed; sign2 = +1 is the
    other ordering, kept for comparison.  The metric is g^t = -w+^t I+.
    """
    Ip, Im = base.Iplus(), base.Iminus()
    phi1, phi2 = factor_ddc(f, base, 1, cfg), factor_ddc(f, base, 2, cfg)
    w0p = hermitian_form_field(base.g, constant_field(base.dim, Ip))
    w0m = hermitian_form_field(base.g, constant_field(base.dim, Im))
    sh = (base.dim,) * 2
    wp = ChartField(base.dim, 2, lambda x: w0p(x) + t * (phi1(x) + sign2 * phi2(x)), sh)
    wm = ChartField(base.dim, 2, lambda x: w0m(x) + t * (phi1(x) - sign2 * phi2(x)), sh)
    gt = ChartField(base.dim, 2, lambda x: -np.swapaxes(wp(x), -1, -2) @ Ip, sh, "tensor")
    return wp, wm, gt


def _min_eig(gfield: ChartField, pts: np.ndarray) -> float:
    gv = gfield(pts)
    return float(np.linalg.eigvalsh(0.5 * (gv + np.swapaxes(gv, -1, -2))).min())


def commuting_deform(f: ChartField, t: float, base: CommutingBase, points,
                     cfg: FDConfig = FDConfig(h=1e-2), scan=None) -> DeformResult:
    """Hamiltonian deformation of a commuting-type structure by f.

    The M1 block of the Hermitian forms moves by t d1 d1^c f and the M2 block
    by -t d2 d2^c f, so that w+ and w- still come from one metric and
    d(d^c+ w+) = 0 is kept.  The pluriclosed residual of the same-sign variant
    is returned as ``same_sign_pluriclosed``.
    """
    pts = np.atleast_2d(np.asarray(points, float))
    Ipf, Imf = constant_field(base.dim, base.Iplus()), constant_field(base.dim, base.Iminus())
    wp, wm, gt = deformed_forms(f, t, base, cfg)
    rep = verify_gk_chart(gt, Ipf, Imf, pts, cfg)
    alt = deformed_forms(f, t, base, cfg, sign2=+1.0)[2]
    alt_rep = verify_gk_chart(alt, Ipf, Imf, pts, cfg)
    min_eig = _min_eig(gt, pts)
    t_star = None
    if scan is not None:
        t_star = 0.0
        for tt in scan:
            if _min_eig(deformed_forms(f, tt, base, cfg)[2], pts) > 0:
                t_star = float(tt)
            else:
                break
    verdict = "GK" if min_eig > 0 else f"positivity lost at t={t}"
    return DeformResult(wp, wm, gt, rep, min_eig, verdict,
                        max(alt_rep.pluriclosed_plus, alt_rep.pluriclosed_minus), t_star)


def gaussian_potential(eps: float, dim: int = 4) -> ChartField:
    return scalar_field(dim, lambda x: eps * np.exp(-np.sum(x ** 2, axis=-1)))
