"""Hopf surface example: projections, affine actions, psi and the potential.

X- = G/G- and X+ = G+\\G are both C^2 minus the origin.  On the overlap
O_A and O_B (z1 z2 != 0) logarithmic coordinates v_i = log z_i, u_i = log w_i
are used, with the shear x1 = u2 - u1 - i pi, x2 = u2 - i pi.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

import numpy as np
from scipy import integrate, special

from .lie import GElem

LOG_MINUS_ONE = 1j * math.pi
PI2_6 = math.pi ** 2 / 6


@dataclass(frozen=True)
class SurfPoint:
    z1: complex
    z2: complex

    def __post_init__(self):
        if self.z1 == 0 and self.z2 == 0:
            raise ValueError("the origin is not in X")

    @property
    def in_OA(self) -> bool:
        return self.z1 != 0

    @property
    def in_OB(self) -> bool:
        return self.z2 != 0

    def vec(self) -> np.ndarray:
        return np.array([self.z1, self.z2], dtype=complex)

    def dist(self, o: "SurfPoint") -> float:
        return float(np.abs(self.vec() - o.vec()).max())


@dataclass(frozen=True)
class LogCoords:
    """(v1, v2) on X- and the shear pair (x1, x2) built from (u1, u2) on X+."""

    v1: complex
    v2: complex
    x1: complex
    x2: complex

    @classmethod
    def from_vu(cls, v1, v2, u1, u2) -> "LogCoords":
        return cls(v1, v2, u2 - u1 - LOG_MINUS_ONE, u2 - LOG_MINUS_ONE)

    def as_tuple(self):
        return (self.v1, self.v2, self.x1, self.x2)


# -- projections ---------------------------------------------------------------------

def project_minus(g: GElem) -> SurfPoint:
    v = g.A @ np.array([np.exp(-1j * g.z), 0])
    return SurfPoint(complex(v[0]), complex(v[1]))


def project_plus(g: GElem) -> SurfPoint:
    v = np.array([np.exp(1j * g.z), 0]) @ g.A
    return SurfPoint(complex(v[0]), complex(v[1]))


# -- the affine group and its actions -------------------------------------------------

def semidirect_mult(p: Tuple[complex, complex], q: Tuple[complex, complex]) -> Tuple[complex, complex]:
    """(a, b)(c, d) = (a + c, e^c b + d)."""
    a, b = p
    c, d = q
    return (a + c, np.exp(c) * b + d)


def semidirect_mult_op(p, q):
    return semidirect_mult(q, p)


def to_affine(g: GElem) -> Tuple[complex, complex]:
    """G- or G+ element -> (-2 i z, e^{-iz} w)."""
    z = g.z
    w = g.A[0, 1] if abs(g.A[1, 0]) <= abs(g.A[0, 1]) else g.A[1, 0]
    return (-2j * z, np.exp(-1j * z) * w)


ACTIONS = ("A-", "B-", "A+", "B+")


def groupoid_actions(ab: Tuple[complex, complex], p: SurfPoint, which: str) -> SurfPoint:
    """A-type: (e^a z1, b z1 + z2); B-type: (z1 + b z2, e^a z2).

    The plus-side actions use the same formulas read as right actions of the
    opposite group.
    """
    a, b = ab
    if which in ("A-", "A+"):
        return SurfPoint(np.exp(a) * p.z1, b * p.z1 + p.z2)
    if which in ("B-", "B+"):
        return SurfPoint(p.z1 + b * p.z2, np.exp(a) * p.z2)
    raise ValueError(f"unknown action {which!r}")


def infinitesimal_generators(p: SurfPoint, which: str) -> np.ndarray:
    """Columns: generator of a, generator of b, as vectors in C^2."""
    if which in ("A-", "A+"):
        return np.array([[p.z1, 0], [0, p.z1]], dtype=complex)
    return np.array([[0, p.z2], [p.z2, 0]], dtype=complex)


def orbit_rank(p: SurfPoint, which: str, tol: float = 1e-12) -> int:
    return int(np.linalg.matrix_rank(infinitesimal_generators(p, which), tol=tol))


AFFINE_PAIRING = np.array([[0.5, 0.0], [0.0, -0.5]])
"""s between Lie(G-) and Lie(G+) in affine coordinates: (aa' - bb')/2."""


def hitchin_sigma(p: SurfPoint, side: str = "-") -> complex:
    """Coefficient of d/dz1 ^ d/dz2."""
    c = 2 * p.z1 * p.z2
    return c if side == "-" else -c


def sigma_from_pairing(p: SurfPoint) -> complex:
    """rho_A o s^{-1} o rho_B^*, read as sigma(., xi) with sigma = c d1 ^ d2."""
    rA = infinitesimal_generators(p, "A-")
    rB = infinitesimal_generators(p, "B-")
    S = rA @ np.linalg.inv(AFFINE_PAIRING) @ rB.T
    return complex(S[0, 1])


def sigma_matrix(c: complex) -> np.ndarray:
    """sigma(., xi) for sigma = c d1 ^ d2."""
    return np.array([[0, c], [-c, 0]], dtype=complex)


# -- psi and its graph ---------------------------------------------------------------------

def psi_map(v1: complex, v2: complex) -> Tuple[complex, complex]:
    R2 = abs(np.exp(v1)) ** 2 + abs(np.exp(v2)) ** 2
    u1 = np.log(complex(np.exp(v1) / R2))
    u2 = np.log(complex(-np.exp(np.conj(v2)) / R2))
    return complex(u1), complex(u2)


def psi_z(z1: complex, z2: complex) -> Tuple[complex, complex]:
    R2 = abs(z1) ** 2 + abs(z2) ** 2
    return z1 / R2, -np.conj(z2) / R2


def graph_psi(v1: complex, x1: complex) -> Tuple[complex, complex, complex, complex]:
    s = 2 * x1.real if isinstance(x1, complex) else 2 * np.real(x1)
    return (v1, np.conj(x1) + np.conj(v1), x1, x1 - np.conj(v1) - np.logaddexp(0.0, s))


def mod_2pi_i(d: complex) -> float:
    k = round(d.imag / (2 * math.pi))
    return abs(d - 2j * math.pi * k)


def graph_consistency(v1: complex, v2: complex) -> float:
    """Residual between psi_map and graph_psi through the coordinate dictionary."""
    u1, u2 = psi_map(v1, v2)
    c = LogCoords.from_vu(v1, v2, u1, u2)
    g = graph_psi(v1, c.x1)
    return max(mod_2pi_i(g[1] - v2), mod_2pi_i(g[3] - c.x2))


# -- dilogarithm ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def _bern_coeffs(n: int = 30) -> np.ndarray:
    B = special.bernoulli(2 * n)
    return np.array([B[2 * k] / math.factorial(2 * k + 1) for k in range(1, n)])


def li2(w) -> complex:
    """Dilogarithm on the principal branch (on the cut w > 1, the limit from below).

    Inversion and reflection move w into |w| <= 1, Re w <= 1/2, where the
    series in u = -log(1 - w) with Bernoulli coefficients converges fast.
    """
    w = complex(w)
    if w == 0:
        return 0j
    if w == 1:
        return complex(PI2_6)
    if w.imag == 0 and w.real > 1:
        # on the cut: limit from below
        return li2(complex(w.real, 1e-300)).conjugate()
    if abs(w) > 1:
        lw = np.log(-w)
        return -PI2_6 - 0.5 * lw * lw - li2(1 / w)
    if w.real > 0.5:
        return PI2_6 - np.log(w) * np.log(1 - w) - li2(1 - w)
    u = -np.log(1 - w)
    u2 = u * u
    total = u - 0.25 * u2
    p = u
    for c in _bern_coeffs():
        p *= u2
        total += c * p
        if abs(c * p) < 1e-18 * max(1.0, abs(total)):
            break
    return complex(total)


def softplus_integral(s: float) -> float:
    """int_{-inf}^s log(1 + e^t) dt = -Li2(-e^s)."""
    return float(-li2(-math.exp(s)).real)


def softplus_integral_quad(s: float) -> float:
    val, _ = integrate.quad(lambda t: np.logaddexp(0.0, t), -np.inf, s, epsabs=1e-14, epsrel=1e-13, limit=200)
    return float(val)


# -- the potential ------------------------------------------------------------------------

def potential_f_complex(v1: complex, x1: complex) -> complex:
    """The complex combination before taking the real part."""
    vb, xb = np.conj(v1), np.conj(x1)
    s = (x1 + xb).real
    return 0.5 * (v1 * vb + vb * x1 + xb * v1 - 0.5 * (x1 * x1 + xb * xb) + softplus_integral(s))


def potential_f(v1: complex, x1: complex) -> float:
    return float(potential_f_complex(v1, x1).real)


def _complex_pair(p):
    return complex(p[0], p[1]), complex(p[2], p[3])


def f_real(p: Sequence[float]) -> float:
    v1, x1 = _complex_pair(p)
    return potential_f(v1, x1)


def alpha_real_coeffs(p: Sequence[float]) -> np.ndarray:
    """Re(v2 dv1 - x2 dx1) on the graph in the real coordinates (Re v1, Im v1, Re x1, Im x1)."""
    v1, x1 = _complex_pair(p)
    _, v2, _, x2 = graph_psi(v1, x1)
    return np.array([v2.real, -v2.imag, -x2.real, x2.imag])


def fd_gradient(fn, p, h: float) -> np.ndarray:
    p = np.asarray(p, float)
    g = np.zeros(4)
    for i in range(4):
        e = np.zeros(4)
        e[i] = h
        g[i] = (-fn(p + 2 * e) + 8 * fn(p + e) - 8 * fn(p - e) + fn(p - 2 * e)) / (12 * h)
    return g


def default_grid(n: int = 10, half: float = 1.0):
    """n x n grid in (v1, x1) with v1 = a + a i/2 and x1 = b - b i/3."""
    ts = np.linspace(-half, half, n)
    return [(complex(a, 0.5 * a), complex(b, -b / 3)) for a in ts for b in ts]


@dataclass
class GeneratingReport:
    max_residual: float
    per_point: np.ndarray
    realness: float


def generating_check(grid=None, h: float = 1e-5) -> GeneratingReport:
    """FD gradient of f against the coefficients of Re(alpha) on Gr(psi)."""
    grid = default_grid() if grid is None else grid
    res, real = [], 0.0
    for v1, x1 in grid:
        p = np.array([v1.real, v1.imag, x1.real, x1.imag])
        res.append(float(np.abs(fd_gradient(f_real, p, h) - alpha_real_coeffs(p)).max()))
        real = max(real, abs(potential_f_complex(v1, x1).imag))
    res = np.array(res)
    return GeneratingReport(float(res.max()), res, real)


def path_integral_check(P, Q, nodes: int = 40) -> float:
    """|f(P) - f(Q) - int_Q^P Re(alpha)| along the straight segment in (v1, x1)."""
    P = np.array([P[0].real, P[0].imag, P[1].real, P[1].imag])
    Q = np.array([Q[0].real, Q[0].imag, Q[1].real, Q[1].imag])
    xs, ws = np.polynomial.legendre.leggauss(nodes)
    d = P - Q
    integral = 0.0
    for x, w in zip(xs, ws):
        t = 0.5 * (x + 1)
        integral += 0.5 * w * float(alpha_real_coeffs(Q + t * d) @ d)
    return abs(f_real(P) - f_real(Q) - integral)


def graph_tangents(v1: complex, x1: complex) -> np.ndarray:
    """Exact partials of (v1, v2, x1, x2) along the four real directions."""
    s = 2 * x1.real
    sig = 1.0 / (1.0 + math.exp(-s))
    T = np.zeros((4, 4), dtype=complex)
    T[0] = [1, 1, 0, -1]
    T[1] = [1j, -1j, 0, 1j]
    T[2] = [0, 1, 1, 1 - 2 * sig]
    T[3] = [0, -1j, 1j, 1j]
    return T


def omega_graph(T1: np.ndarray, T2: np.ndarray) -> complex:
    """(dv2 ^ dv1 - dx2 ^ dx1)(T1, T2)."""
    return (T1[1] * T2[0] - T2[1] * T1[0]) - (T1[3] * T2[2] - T2[3] * T1[2])


@dataclass
class LagrangianCheck:
    re_max: float
    im_max: float


def graph_lagrangian_check(seeds: int = 50, seed: int = 0, fd: bool = False, h: float = 1e-6) -> LagrangianCheck:
    rng = np.random.default_rng(seed)
    re_m, im_m = 0.0, 0.0
    for _ in range(seeds):
        v1 = complex(*rng.uniform(-1.5, 1.5, 2))
        x1 = complex(*rng.uniform(-1.5, 1.5, 2))
        T = graph_tangents(v1, x1) if not fd else _fd_tangents(v1, x1, h)
        a, b = rng.standard_normal(4), rng.standard_normal(4)
        w = omega_graph(a @ T, b @ T)
        re_m, im_m = max(re_m, abs(w.real)), max(im_m, abs(w.imag))
    return LagrangianCheck(re_m, im_m)


def _fd_tangents(v1, x1, h):
    base = np.array([v1.real, v1.imag, x1.real, x1.imag])
    T = np.zeros((4, 4), dtype=complex)
    for i in range(4):
        e = np.zeros(4)
        e[i] = h
        gp = np.array(graph_psi(*_complex_pair(base + e)))
        gm = np.array(graph_psi(*_complex_pair(base - e)))
        T[i] = (gp - gm) / (2 * h)
    return T


def write_grid_csv(path, grid=None, h: float = 1e-5) -> int:
    """Columns: v1 and x1 as real pairs, f, gradient residual."""
    grid = default_grid() if grid is None else grid
    rep = generating_check(grid, h)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["v1_re", "v1_im", "x1_re", "x1_im", "f", "residual"])
        for (v1, x1), r in zip(grid, rep.per_point):
            w.writerow([repr(v1.real), repr(v1.imag), repr(x1.real), repr(x1.imag),
                        repr(potential_f(v1, x1)), repr(float(r))])
    return len(grid)
