"""SU(2) x R inside SL2(C) x C: pairing, factorisations, dressing, GK data.

G elements are (A, z) with det A = 1 and z in C (cover coordinate of C*).
K = SU(2) x R embeds as (U, i t), so its Lie algebra has abelian part iR.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg as sla

from .point import BihermitianPoint

U1 = np.array([[0, 1j], [1j, 0]])
U2 = np.array([[0, -1], [1, 0]], dtype=complex)
U3 = np.array([[1j, 0], [0, -1j]])
ID2 = np.eye(2, dtype=complex)
Z2 = np.zeros((2, 2), dtype=complex)


@dataclass(frozen=True, eq=False)
class AlgVec:
    """(X, u) in sl2(C) + C."""

    X: np.ndarray
    u: complex

    def __post_init__(self):
        if abs(np.trace(self.X)) > 1e-12 * max(1.0, np.abs(self.X).max()):
            raise ValueError("X must be traceless")

    def __add__(self, o: "AlgVec") -> "AlgVec":
        return AlgVec(self.X + o.X, self.u + o.u)

    def __sub__(self, o: "AlgVec") -> "AlgVec":
        return AlgVec(self.X - o.X, self.u - o.u)

    def __neg__(self) -> "AlgVec":
        return AlgVec(-self.X, -self.u)

    def __mul__(self, c) -> "AlgVec":
        return AlgVec(c * self.X, c * self.u)

    __rmul__ = __mul__

    def coords(self) -> np.ndarray:
        """Complex coordinates in the basis (u1, u2, u3, v)."""
        return np.array([pairing(e, self) for e in BASIS])

    def norm(self) -> float:
        return float(np.abs(self.coords()).max())


ZERO = AlgVec(Z2, 0j)
BASIS = (AlgVec(U1, 0j), AlgVec(U2, 0j), AlgVec(U3, 0j), AlgVec(Z2, 1j))


def from_coords(c) -> AlgVec:
    c = np.asarray(c, dtype=complex)
    return AlgVec(c[0] * U1 + c[1] * U2 + c[2] * U3, 1j * c[3])


def pairing(a: AlgVec, b: AlgVec) -> complex:
    """s_C((X,u),(Y,v)) = -tr(XY)/2 - uv."""
    return complex(-0.5 * np.trace(a.X @ b.X) - a.u * b.u)


def s_R(a: AlgVec, b: AlgVec) -> float:
    return pairing(a, b).real


def s_I(a: AlgVec, b: AlgVec) -> float:
    return pairing(a, b).imag


def bracket(a: AlgVec, b: AlgVec) -> AlgVec:
    return AlgVec(a.X @ b.X - b.X @ a.X, 0j)


def in_k(a: AlgVec, tol: float = 1e-10) -> bool:
    return (np.abs(a.X + a.X.conj().T).max() <= tol) and abs(a.u.real) <= tol


def k_coords(a: AlgVec, tol: float = 1e-10) -> np.ndarray:
    """Real coordinates of an element of k in the basis (u1, u2, u3, v)."""
    if not in_k(a, tol):
        raise ValueError("vector is not in the compact form k")
    return a.coords().real


# The complex structure on k.  It is fixed by requiring its +i eigenspace to be
# the Lie algebra of the lower triangular subgroup G+ and its -i eigenspace that
# of the upper triangular G-: I(u2) = u1, I(v) = u3.
I_K = np.zeros((4, 4))
I_K[:, 0] = [0, -1, 0, 0]
I_K[:, 1] = [1, 0, 0, 0]
I_K[:, 2] = [0, 0, 0, -1]
I_K[:, 3] = [0, 0, 1, 0]

# The rule I(u1) = u2, I(v) = u3, kept for comparison in the tests.
I_K_ALT = np.zeros((4, 4))
I_K_ALT[:, 0] = [0, 1, 0, 0]
I_K_ALT[:, 1] = [-1, 0, 0, 0]
I_K_ALT[:, 2] = [0, 0, 0, -1]
I_K_ALT[:, 3] = [0, 0, 1, 0]


def algebra_I(a: AlgVec, matrix: np.ndarray = I_K) -> AlgVec:
    return from_coords(matrix @ k_coords(a))


def algebra_I_complex(a: AlgVec, matrix: np.ndarray = I_K) -> AlgVec:
    """Complex-linear extension of I to g."""
    return from_coords(matrix @ a.coords())


def structure_constants() -> np.ndarray:
    """C[c, a, b] = s([E_a, E_b], E_c) on the basis of k (real)."""
    C = np.zeros((4, 4, 4))
    for a in range(4):
        for b in range(4):
            C[:, a, b] = bracket(BASIS[a], BASIS[b]).coords().real
    return C


STRUCT = structure_constants()


def cartan_tensor() -> np.ndarray:
    """T[a, b, c] = s_R([E_a, E_b], E_c)."""
    return np.einsum("cab->abc", STRUCT)


# -- group elements -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GElem:
    A: np.ndarray
    z: complex

    def __post_init__(self):
        if abs(np.linalg.det(self.A) - 1) > 1e-9:
            raise ValueError("det A must be 1")

    def __mul__(self, o: "GElem") -> "GElem":
        return GElem(self.A @ o.A, self.z + o.z)

    def inv(self) -> "GElem":
        a, b, c, d = self.A.ravel()
        return GElem(np.array([[d, -b], [-c, a]]), -self.z)

    def dist(self, o: "GElem") -> float:
        return float(max(np.abs(self.A - o.A).max(), abs(self.z - o.z)))

    def ad(self, v: AlgVec) -> AlgVec:
        Y = self.A @ v.X @ self.inv().A
        return AlgVec(Y - 0.5 * np.trace(Y) * ID2, v.u)  # conjugation keeps trace 0; drop round-off


IDENTITY = GElem(ID2, 0j)


@dataclass(frozen=True, eq=False)
class KElem:
    U: np.ndarray
    t: float

    def __post_init__(self):
        if np.abs(self.U @ self.U.conj().T - ID2).max() > 1e-9 or abs(np.linalg.det(self.U) - 1) > 1e-9:
            raise ValueError("U must be in SU(2)")

    def g(self) -> GElem:
        return GElem(self.U, 1j * self.t)

    def inv(self) -> "KElem":
        return KElem(self.U.conj().T, -self.t)

    def __mul__(self, o: "KElem") -> "KElem":
        return KElem(self.U @ o.U, self.t + o.t)


K_IDENTITY = KElem(ID2, 0.0)


def k_from_g(g: GElem, tol: float = 1e-9) -> KElem:
    if abs(g.z.real) > tol:
        raise ValueError("cover coordinate is not imaginary")
    U = g.A
    # re-unitarise against round-off
    u, _, vh = np.linalg.svd(U)
    U = u @ vh
    U = U / np.sqrt(np.linalg.det(U))
    if np.abs(U - g.A).max() > 1e-8:
        raise ValueError("matrix part is not unitary")
    return KElem(U, float(g.z.imag))


def _as_g(x) -> GElem:
    return x.g() if isinstance(x, KElem) else x


def expm2(X: np.ndarray) -> np.ndarray:
    """exp of a traceless 2x2 matrix via cosh/sinh of sqrt(-det X)."""
    delta = -np.linalg.det(X)
    if abs(delta) < 1e-3:
        c = 1 + delta / 2 + delta ** 2 / 24 + delta ** 3 / 720 + delta ** 4 / 40320 + delta ** 5 / 3628800
        s = 1 + delta / 6 + delta ** 2 / 120 + delta ** 3 / 5040 + delta ** 4 / 362880 + delta ** 5 / 39916800
    else:
        r = np.sqrt(complex(delta))
        c, s = np.cosh(r), np.sinh(r) / r
    return c * ID2 + s * X


def exp_alg(a: AlgVec) -> GElem:
    return GElem(expm2(a.X), complex(a.u))


def k_exp(x) -> KElem:
    """exp of sum x_a E_a for real coordinates x in R^4."""
    x = np.asarray(x, float)
    return KElem(expm2(x[0] * U1 + x[1] * U2 + x[2] * U3), float(x[3]))


# -- subgroups --------------------------------------------------------------------

def g_minus(z: complex, w: complex) -> GElem:
    return GElem(np.array([[np.exp(1j * z), w], [0, np.exp(-1j * z)]]), complex(z))


def g_plus(z: complex, w: complex) -> GElem:
    return GElem(np.array([[np.exp(-1j * z), 0], [w, np.exp(1j * z)]]), complex(z))


def subgroup_element(sign: str, z: complex, w: complex) -> GElem:
    return g_minus(z, w) if sign == "-" else g_plus(z, w)


def subgroup_residual(g: GElem, sign: str) -> float:
    """Distance of g from the defining constraints of G_sign."""
    A, z = g.A, g.z
    if sign == "-":
        return float(max(abs(A[1, 0]), abs(A[0, 0] - np.exp(1j * z)), abs(A[1, 1] - np.exp(-1j * z))))
    return float(max(abs(A[0, 1]), abs(A[0, 0] - np.exp(-1j * z)), abs(A[1, 1] - np.exp(1j * z))))


def subalgebra_basis(sign: str) -> Tuple[AlgVec, AlgVec]:
    """Complex basis of Lie(G_sign), read off the subgroup shapes."""
    if sign == "-":
        return AlgVec(np.diag([1j, -1j]), 1 + 0j), AlgVec(np.array([[0, 1], [0, 0]], dtype=complex), 0j)
    return AlgVec(np.diag([-1j, 1j]), 1 + 0j), AlgVec(np.array([[0, 0], [1, 0]], dtype=complex), 0j)


def random_subgroup(rng: np.random.Generator, sign: str, scale: float = 0.7) -> GElem:
    z = complex(*(scale * rng.standard_normal(2)))
    w = complex(*(scale * rng.standard_normal(2)))
    return subgroup_element(sign, z, w)


def random_k(rng: np.random.Generator, scale: float = 1.0) -> KElem:
    return k_exp(scale * rng.standard_normal(4))


def random_g(rng: np.random.Generator, scale: float = 0.7) -> GElem:
    X = sum(complex(*(scale * rng.standard_normal(2))) * B for B in (U1, U2, U3))
    return GElem(expm2(X), complex(*(scale * rng.standard_normal(2))))


# -- factorisation and dressing -------------------------------------------------------

def factorize(g: GElem, sign: str) -> Tuple[GElem, KElem]:
    """g = b k with b in G_sign and k in K.

    The matrix part is an RQ (sign '-') or LQ (sign '+') factorisation with
    positive diagonal, followed by the diagonal phase that puts b in the
    subgroup shape.  The cover coordinate splits as z = z_b + i t.
    """
    A = g.A
    x, y = g.z.real, g.z.imag
    a1, a2 = A[0], A[1]
    if sign == "-":
        r22 = np.linalg.norm(a2)
        q2 = a2 / r22
        r12 = a1 @ q2.conj()
        rem = a1 - r12 * q2
        r11 = np.linalg.norm(rem)
        q1 = rem / r11
        Q = np.vstack([q1, q2])
        zb = complex(x, -np.log(r11))
        t = y + np.log(r11)
        phi = x
    elif sign == "+":
        r11 = np.linalg.norm(a1)
        q1 = a1 / r11
        l21 = a2 @ q1.conj()
        rem = a2 - l21 * q1
        q2 = rem / np.linalg.norm(rem)
        Q = np.vstack([q1, q2])
        zb = complex(x, np.log(r11))
        t = y - np.log(r11)
        phi = -x
    else:
        raise ValueError("sign must be '+' or '-'")
    D = np.diag([np.exp(1j * phi), np.exp(-1j * phi)])
    U = D.conj() @ Q
    k = KElem(U, float(t))
    b = GElem(A @ U.conj().T, zb)
    return b, k


def factorize_left(g: GElem, sign: str) -> Tuple[KElem, GElem]:
    """g = k x with k in K and x in G_sign."""
    b, k = factorize(g.inv(), sign)
    return k.inv(), b.inv()


def dressing(x: GElem, k: KElem, sign: str) -> Tuple[KElem, GElem]:
    """x k = k' x' with k' in K and x' in G_sign; returns (k', x')."""
    return factorize_left(x * k.g(), sign)


def theta(g: GElem) -> GElem:
    """(A, z) -> ((A^dagger)^{-1}, -conj z)."""
    Ainv = g.inv().A
    return GElem(Ainv.conj().T, -np.conj(g.z))


def dtheta(a: AlgVec) -> AlgVec:
    return AlgVec(-a.X.conj().T, -np.conj(a.u))


# -- real splitting g = k + g_sign ------------------------------------------------------

def _real_vec(a: AlgVec) -> np.ndarray:
    c = a.coords()
    return np.concatenate([c.real, c.imag])


def _split_matrix(sign: str) -> np.ndarray:
    cols = [_real_vec(e) for e in BASIS]
    for e in subalgebra_basis(sign):
        cols += [_real_vec(e), _real_vec(1j * e)]
    return np.column_stack(cols)


_SPLIT = {s: np.linalg.inv(_split_matrix(s)) for s in ("+", "-")}


def split_k(w: AlgVec, sign: str) -> Tuple[AlgVec, AlgVec]:
    """w = kappa + xi with kappa in k and xi in Lie(G_sign)."""
    c = _SPLIT[sign] @ _real_vec(w)
    kappa = from_coords(c[:4].astype(complex))
    e1, e2 = subalgebra_basis(sign)
    xi = e1 * complex(c[4], c[5]) + e2 * complex(c[6], c[7])
    return kappa, xi


def dressing_differential(x: GElem, k: KElem, dx: AlgVec, dk: AlgVec, sign: str):
    """Right-trivialised differential of (x, k) -> (k', x').

    From x k = k' x': dx + Ad_x dk = dk' + Ad_{k'} dx'.
    """
    kp, xp = dressing(x, k, sign)
    w = dx + x.ad(dk)
    kap, xi = split_k(kp.g().inv().ad(w), sign)
    return kp.g().ad(kap), xi


# -- invariant GK structure ----------------------------------------------------------

def ad_matrix(k: KElem) -> np.ndarray:
    """Real matrix of Ad_k on k in the basis (u1, u2, u3, v)."""
    g = k.g()
    return np.column_stack([g.ad(e).coords().real for e in BASIS])


def invariant_gk_at(k: KElem) -> BihermitianPoint:
    """(g, I^r, I^l) at k in the right-invariant frame."""
    Ad = ad_matrix(k)
    Im = Ad @ I_K @ Ad.T
    return BihermitianPoint(2, np.eye(4), I_K.copy(), Im)


def pi_Z_matrix(k: KElem) -> np.ndarray:
    """(I^l - I^r) g^{-1} / 2 in the right-invariant frame."""
    b = invariant_gk_at(k)
    return 0.5 * (b.Iminus - b.Iplus)


# -- exponential charts ---------------------------------------------------------------

def _ad_coords(x: np.ndarray) -> np.ndarray:
    return np.einsum("cab,...a->...cb", STRUCT, x)


def _phi(A: np.ndarray) -> np.ndarray:
    """(e^A - 1)/A via the exponential of an augmented block matrix."""
    m = A.shape[-1]
    big = np.zeros(A.shape[:-2] + (2 * m, 2 * m))
    big[..., :m, :m] = A
    big[..., :m, m:] = np.eye(m)
    return sla.expm(big)[..., :m, m:]


def _ad_batch(x: np.ndarray, k0: KElem) -> np.ndarray:
    """Ad matrices of exp(x) k0 for a batch of coordinates."""
    flat = x.reshape(-1, 4)
    out = np.empty((flat.shape[0], 4, 4))
    A0 = ad_matrix(k0)
    for i, xi in enumerate(flat):
        out[i] = sla.expm(_ad_coords(xi)) @ A0
    return out.reshape(x.shape[:-1] + (4, 4))


def chart_fields(k0: KElem = K_IDENTITY):
    """ChartFields (g, I+, I-) of (g, I^r, I^l) in the chart x -> exp(x) k0."""
    from .chart import ChartField

    def M(x):
        return _phi(_ad_coords(x))

    def g_fn(x):
        m = M(x)
        return np.swapaxes(m, -1, -2) @ m

    def ip_fn(x):
        m = M(x)
        return np.linalg.solve(m, I_K @ m)

    def im_fn(x):
        m = M(x)
        Ad = _ad_batch(x, k0)
        return np.linalg.solve(m, Ad @ I_K @ np.swapaxes(Ad, -1, -2) @ m)

    return (ChartField(4, 2, g_fn, (4, 4), "tensor"),
            ChartField(4, 2, ip_fn, (4, 4), "tensor"),
            ChartField(4, 2, im_fn, (4, 4), "tensor"),
            M)


def generalized_frames(k0: KElem, which: str = "A", at=None):
    """Smooth frames of the +i eigenbundle of J_A or J_B in the chart at k0.

    Sections are fixed columns of Id - iJ(x); the columns are chosen by pivoted
    QR at ``at`` (the chart origin by default) so the frame has full rank nearby.
    """
    from .chart import section_field
    from .point import BihermitianPoint as BP, gualtieri_map

    g, Ip, Im, _ = chart_fields(k0)

    def J(x):
        x = np.asarray(x, float)
        flat = x.reshape(-1, 4)
        gs, ps, ms = g(flat), Ip(flat), Im(flat)
        out = np.empty((flat.shape[0], 8, 8))
        for i in range(flat.shape[0]):
            pair = gualtieri_map(BP(2, gs[i], ps[i], ms[i]))
            out[i] = pair.JA if which == "A" else pair.JB
        return out.reshape(x.shape[:-1] + (8, 8))

    x0 = np.zeros(4) if at is None else np.asarray(at, float)
    _, _, piv = sla.qr(np.eye(8) - 1j * J(x0), pivoting=True)
    return [section_field(4, lambda x, c=c: (np.eye(8) - 1j * J(x))[..., :, c]) for c in sorted(piv[:4])]


def cartan_H_field(k0: KElem, cfg=None):
    """H = d^c+ w+ of the invariant structure in the chart at k0."""
    from .chart import FDConfig, dc_field, hermitian_form_field

    cfg = cfg or FDConfig()
    g, Ip, _, _ = chart_fields(k0)
    return dc_field(hermitian_form_field(g, Ip), Ip, cfg)


def involutivity_on_group(k0: KElem, points, cfg=None, sign: float = 1.0):
    """Courant involutivity residuals of L_A and L_B twisted by sign * H."""
    from .chart import ChartField, FDConfig, involutivity_residual

    cfg = cfg or FDConfig()
    H = cartan_H_field(k0, cfg)
    Hs = ChartField(4, 3, lambda x: sign * H(x), (4, 4, 4), "form")
    pts = np.atleast_2d(points)
    return tuple(involutivity_residual(generalized_frames(k0, w, pts[0]), Hs, pts, cfg) for w in "AB")


PI_A_TO_PI_Z_SIGN = -1.0
"""pi_A (from the point module) equals this sign times pi_Z."""


@dataclass
class CartanFit:
    c: float
    spread: float
    fit_residual: float
    alternation: float
    dc_sum: float
    order_ratio: float
    per_point: np.ndarray

    def as_dict(self):
        return {k: (v.tolist() if isinstance(v, np.ndarray) else float(v)) for k, v in self.__dict__.items()}


def _chart_samples(rng: np.random.Generator, samples: int, scale: float):
    return [(random_k(rng), scale * rng.uniform(-1, 1, 4)) for _ in range(samples)]


def cartan_form_check(samples: int = 20, cfg=None, seed: int = 0, scale: float = 0.4) -> CartanFit:
    """Fit H = c s_R([X, Y], Z) to d^c+ w+ of the invariant structure.

    Each sample is a point x of the chart x -> exp(x) k0 for a random k0; H is
    computed in coordinates and pulled back to the right-invariant frame.
    The order ratio compares the d^c sum residual of the second-order scheme
    at h and h/2.
    """
    from .chart import FDConfig, alternation_residual, dc_field, hermitian_form_field

    cfg = cfg or FDConfig()
    rng = np.random.default_rng(seed)
    T = cartan_tensor()
    cs, fit, alt, dcs = [], 0.0, 0.0, 0.0
    pts = _chart_samples(rng, samples, scale)
    coarse = FDConfig(h=cfg.h, scheme="central-2")
    fine = FDConfig(h=cfg.h / 2, scheme="central-2")
    e_c, e_f = 0.0, 0.0
    for k0, x in pts:
        g, Ip, Im, M = chart_fields(k0)
        wp, wm = hermitian_form_field(g, Ip), hermitian_form_field(g, Im)
        Hp = dc_field(wp, Ip, cfg)(x)
        Hm = dc_field(wm, Im, cfg)(x)
        dcs = max(dcs, float(np.abs(Hp + Hm).max()))
        Mi = np.linalg.inv(M(x))
        Hf = np.einsum("ijk,ia,jb,kc->abc", Hp, Mi, Mi, Mi)
        c = float(np.sum(Hf * T) / np.sum(T * T))
        cs.append(c)
        fit = max(fit, float(np.abs(Hf - c * T).max()))
        alt = max(alt, alternation_residual(Hf, 3))
        for sch, acc in ((coarse, "c"), (fine, "f")):
            r = float(np.abs(dc_field(wp, Ip, sch)(x) + dc_field(wm, Im, sch)(x)).max())
            if acc == "c":
                e_c = max(e_c, r)
            else:
                e_f = max(e_f, r)
    cs = np.array(cs)
    cm = float(cs.mean())
    return CartanFit(c=cm, spread=float(np.abs(cs - cm).max() / abs(cm)), fit_residual=fit,
                     alternation=alt, dc_sum=dcs, order_ratio=e_c / max(e_f, 1e-300), per_point=cs)


# -- the dressing bisection form -------------------------------------------------------

def _mc_left(curve, eps: float, h: float) -> AlgVec:
    """theta^l of d/de curve(e) at eps, central 4th-order in the parameter."""
    vals = [curve(eps + s * h) for s in (-2, -1, 1, 2)]
    w = np.array([1, -8, 8, -1]) / (12 * h)
    g0 = curve(eps)
    dA = sum(c * v.A for c, v in zip(w, vals))
    dz = sum(c * v.z for c, v in zip(w, vals))
    X = g0.inv().A @ dA
    return AlgVec(X - 0.5 * np.trace(X) * ID2, complex(dz))


def _mc_right(curve, eps: float, h: float) -> AlgVec:
    vals = [curve(eps + s * h) for s in (-2, -1, 1, 2)]
    w = np.array([1, -8, 8, -1]) / (12 * h)
    g0 = curve(eps)
    dA = sum(c * v.A for c, v in zip(w, vals))
    dz = sum(c * v.z for c, v in zip(w, vals))
    X = dA @ g0.inv().A
    return AlgVec(X - 0.5 * np.trace(X) * ID2, complex(dz))


def _move(x: GElem, k: KElem, xi, e: float):
    beta, kappa = xi
    return exp_alg(e * beta) * x, k_exp(e * k_coords(kappa)) * k


def dressing_pullbacks(x: GElem, k: KElem, xi, sign: str, method: str = "fd", h: float = 1e-3):
    """(theta^l(d xk-left), theta^r(d xk-right)) along the tangent xi = (beta, kappa).

    Returns (theta^l of the K output, theta^r of the G_sign output).
    """
    beta, kappa = xi
    if method == "exact":
        kp, xp = dressing(x, k, sign)
        dk, dx = dressing_differential(x, k, beta, kappa, sign)
        return kp.g().inv().ad(dk), dx
    if method != "fd":
        raise ValueError(method)

    def out(e):
        xe, ke = _move(x, k, xi, e)
        return dressing(xe, ke, sign)

    return (_mc_left(lambda e: out(e)[0].g(), 0.0, h),
            _mc_right(lambda e: out(e)[1], 0.0, h))


def _wedge_sI(a1, b1, a2, b2) -> float:
    return s_I(a1, b2) - s_I(a2, b1)


def omega_dressing_eval(x: GElem, k: KElem, xi1, xi2, sign: str, method: str = "fd",
                        h: float = 1e-3) -> float:
    """s_I(k'^* theta^l, x'^* theta^r) - s_I(x^* theta^l, k^* theta^r) on (xi1, xi2)."""
    l1, r1 = dressing_pullbacks(x, k, xi1, sign, method, h)
    l2, r2 = dressing_pullbacks(x, k, xi2, sign, method, h)
    xi_inv = x.inv()
    bl1, bl2 = xi_inv.ad(xi1[0]), xi_inv.ad(xi2[0])
    return _wedge_sI(l1, r1, l2, r2) - _wedge_sI(bl1, xi1[1], bl2, xi2[1])


def omega_Z_eval(b: GElem, k: KElem, xi1, xi2, method: str = "fd", h: float = 1e-3) -> float:
    """Omega_Z at (b, k), b in G-, tangents (beta, kappa) right-translated."""
    return omega_dressing_eval(b, k, xi1, xi2, "-", method, h)


def omega_W_eval(a: GElem, k: KElem, xi1, xi2, method: str = "fd", h: float = 1e-3) -> float:
    """Omega_W-bar at (a, k), a in G+, with the dressing factor a^k in G-."""
    return -omega_dressing_eval(a, k, xi1, xi2, "-", method, h)


def random_tangent(rng: np.random.Generator, sign: str):
    e1, e2 = subalgebra_basis(sign)
    beta = e1 * complex(*rng.standard_normal(2)) + e2 * complex(*rng.standard_normal(2))
    kappa = from_coords(rng.standard_normal(4).astype(complex))
    return beta, kappa


def anchor(beta: AlgVec, k: KElem, sign: str = "-") -> np.ndarray:
    """Right-trivialised infinitesimal dressing of beta at k (coordinates in k)."""
    kap, _ = split_k(k.g().inv().ad(beta), sign)
    return k_coords(k.g().ad(kap))


@dataclass
class IMCheck:
    c_Z: float
    residual: float
    relative_residual: float


def im_form_check(k: KElem, method: str = "fd", h: float = 1e-3) -> IMCheck:
    """Fit rho(beta) = c_Z pi_Z(mu(beta)) along the unit bisection at k.

    mu(beta) is the covector v -> Omega_Z((beta, 0), (0, v)) at (1, k).
    """
    rho, pimu = [], []
    P = pi_Z_matrix(k)
    for e in subalgebra_basis("-"):
        for beta in (e, 1j * e):
            mu = np.array([omega_Z_eval(IDENTITY, k, (beta, ZERO), (ZERO, E), method, h) for E in BASIS])
            rho.append(anchor(beta, k))
            pimu.append(P @ mu)
    rho, pimu = np.concatenate(rho), np.concatenate(pimu)
    c = float(rho @ pimu / (pimu @ pimu))
    res = float(np.abs(rho - c * pimu).max())
    return IMCheck(c, res, res / max(float(np.abs(rho).max()), 1e-300))


CARTAN_C = -1.0
"""Measured: d^c+ w+ = CARTAN_C * s_R([X, Y], Z) in the right-invariant frame."""

C_Z = -1.0
"""Measured: anchor = C_Z * pi_Z(iota Omega_Z) along the unit bisection."""
