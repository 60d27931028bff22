"""Pointwise generalized Kähler linear algebra.

All objects live on one tangent space R^{2n} with real coordinates; complex
objects use the same coordinates with complex entries.  A 2-form is stored as
the matrix of X -> i_X(form), so omega = g I means omega(X, Y) = (g I X) . Y.
A bivector pi is the matrix of the map T* -> T.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    SplitSpace,
    Subspace,
    add,
    intersect,
    isotropy_check,
    largest_angle,
    null_space,
    pairing_matrix,
    real_span,
    span_reduce,
    subspace_eq,
)

LABELS = ("L_A", "L_B", "l+", "l-", "A+", "A-", "B+", "B-", "matched pair", "generic")


def standard_complex_structure(n: int) -> np.ndarray:
    """Block diagonal J0 with J0 e_{2k} = e_{2k+1}."""
    j = np.array([[0.0, -1.0], [1.0, 0.0]])
    return np.kron(np.eye(n), j)


@dataclass(frozen=True, eq=False)
class BihermitianPoint:
    n: int
    g: np.ndarray
    Iplus: np.ndarray
    Iminus: np.ndarray
    kind: str = "GK"

    @property
    def omega_plus(self) -> np.ndarray:
        return self.g @ self.Iplus

    @property
    def omega_minus(self) -> np.ndarray:
        return self.g @ self.Iminus

    def residuals(self) -> Dict[str, float]:
        e = np.eye(2 * self.n)
        out = {}
        for name, I in (("plus", self.Iplus), ("minus", self.Iminus)):
            out[f"square_{name}"] = float(np.abs(I @ I + e).max())
            out[f"orthogonal_{name}"] = float(np.abs(I.T @ self.g @ I - self.g).max())
        out["symmetric_g"] = float(np.abs(self.g - self.g.T).max())
        return out

    def validate(self, tol: float = DEFAULT_TOL) -> "BihermitianPoint":
        r = self.residuals()
        if max(r.values()) > tol * max(1.0, np.abs(self.g).max()):
            raise ValueError(f"incompatible bihermitian data: {r}")
        eig = np.linalg.eigvalsh(self.g)
        if self.kind == "GK" and eig.min() <= 0:
            raise ValueError("incompatible bihermitian data: g is not positive")
        if np.abs(eig).min() < 1e-14:
            raise ValueError("incompatible bihermitian data: g is degenerate")
        return self


def _random_orthogonal(rng: np.random.Generator, m: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((m, m)))
    return q * np.sign(np.diag(r))


def random_bihermitian(
    rng: np.random.Generator, n: int, signature: Tuple[int, int] | None = None,
    commuting: bool = False,
) -> BihermitianPoint:
    """Seeded bihermitian point.

    g = L eta L^T with eta = diag(+1..,-1..) in complex-line pairs and
    I = L^{-T} Q J0 Q^T L^T, Q block orthogonal inside each sign block.
    ``signature=(p, q)`` counts complex lines of each sign.
    """
    p, q = signature if signature is not None else (n, 0)
    if p + q != n:
        raise ValueError("signature must add up to n")
    m = 2 * n
    a = rng.standard_normal((m, m))
    gpos = a @ a.T + 0.5 * np.eye(m)
    L = np.linalg.cholesky(gpos)
    eta = np.diag([1.0] * (2 * p) + [-1.0] * (2 * q))
    g = L @ eta @ L.T
    J0 = standard_complex_structure(n)

    def block_orth():
        out = np.zeros((m, m))
        out[: 2 * p, : 2 * p] = _random_orthogonal(rng, 2 * p) if p else 0
        if q:
            out[2 * p :, 2 * p :] = _random_orthogonal(rng, 2 * q)
        return out

    Linv_T = np.linalg.inv(L).T
    Q1 = block_orth()
    Ip = Linv_T @ Q1 @ J0 @ Q1.T @ L.T
    if commuting:
        sign = np.diag(np.repeat(rng.choice([-1.0, 1.0], size=n), 2))
        Im = Linv_T @ Q1 @ (J0 @ sign) @ Q1.T @ L.T
    else:
        Q2 = block_orth()
        Im = Linv_T @ Q2 @ J0 @ Q2.T @ L.T
    kind = "GK" if q == 0 else "pseudo-GK"
    return BihermitianPoint(n, g, Ip, Im, kind)


def kahler_point(n: int, g: np.ndarray | None = None) -> BihermitianPoint:
    J = standard_complex_structure(n)
    g = np.eye(2 * n) if g is None else g
    return BihermitianPoint(n, g, J, J)


@dataclass(frozen=True, eq=False)
class GCPair:
    JA: np.ndarray
    JB: np.ndarray

    @property
    def n(self) -> int:
        return self.JA.shape[0] // 4


@dataclass(frozen=True, eq=False)
class DiracData:
    label: str
    sub: Subspace

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"unknown label {self.label!r}")

    @property
    def rank(self) -> int:
        return self.sub.rank


def _as_sub(L) -> Subspace:
    return L.sub if isinstance(L, DiracData) else L


def gualtieri_map(b: BihermitianPoint) -> GCPair:
    b.validate(tol=1e-8)
    Ip, Im, g = b.Iplus, b.Iminus, b.g
    gi = np.linalg.inv(g)
    JA = 0.5 * np.block([[Ip + Im, (Ip - Im) @ gi], [g @ (Ip - Im), -(Ip.T + Im.T)]])
    JB = 0.5 * np.block([[Ip - Im, (Ip + Im) @ gi], [g @ (Ip + Im), -(Ip.T - Im.T)]])
    return GCPair(JA, JB)


@dataclass
class GKAxiomReport:
    square_A: float
    square_B: float
    commutator: float
    orthogonality: float
    min_metric_eig: float
    tol: float = DEFAULT_TOL

    @property
    def is_gk(self) -> bool:
        return (max(self.square_A, self.square_B, self.commutator, self.orthogonality) < self.tol
                and self.min_metric_eig > 0)

    def as_dict(self) -> Dict[str, float]:
        return {"square_A": self.square_A, "square_B": self.square_B,
                "commutator": self.commutator, "orthogonality": self.orthogonality,
                "min_metric_eig": self.min_metric_eig}


def generalized_metric(p: GCPair) -> np.ndarray:
    """Matrix of (u, v) -> <JA u, JB v>."""
    P = pairing_matrix(p.JA.shape[0] // 2)
    G = p.JA.T @ P @ p.JB
    return 0.5 * (G + G.T)


def gk_axioms_check(p: GCPair, tol: float = DEFAULT_TOL) -> GKAxiomReport:
    e = np.eye(p.JA.shape[0])
    P = pairing_matrix(p.JA.shape[0] // 2)
    orth = max(np.abs(p.JA.T @ P @ p.JA - P).max(), np.abs(p.JB.T @ P @ p.JB - P).max())
    return GKAxiomReport(
        square_A=float(np.abs(p.JA @ p.JA + e).max()),
        square_B=float(np.abs(p.JB @ p.JB + e).max()),
        commutator=float(np.abs(p.JA @ p.JB - p.JB @ p.JA).max()),
        orthogonality=float(orth),
        min_metric_eig=float(np.linalg.eigvalsh(generalized_metric(p)).min()),
        tol=tol,
    )


def plus_i_eigenspace(J: np.ndarray, label: str = "generic", tol: float = 1e-8) -> DiracData:
    """+i eigenspace of a (generalized) complex structure: span(Id - iJ)."""
    e = np.eye(J.shape[0])
    if np.abs(J @ J + e).max() > tol * max(1.0, np.abs(J).max() ** 2):
        raise ValueError("J does not square to -Id")
    sub = span_reduce(e - 1j * J, 1e-8)
    if 2 * sub.rank != J.shape[0]:
        raise ValueError("defective J: eigenspace has the wrong dimension")
    return DiracData(label, sub)


# -- tangent / cotangent pieces -------------------------------------------------

def holomorphic_tangent(I: np.ndarray) -> np.ndarray:
    """Frame of T_{1,0} = ker(I - i) in C^{2n} (columns)."""
    return span_reduce(np.eye(I.shape[0]) - 1j * I, 1e-8).frame


def antiholomorphic_tangent(I: np.ndarray) -> np.ndarray:
    return span_reduce(np.eye(I.shape[0]) + 1j * I, 1e-8).frame


def holomorphic_cotangent(I: np.ndarray) -> np.ndarray:
    """Frame of T*_{1,0}: covectors killing T_{0,1}, i.e. ker(I^T - i)."""
    return span_reduce(np.eye(I.shape[0]) - 1j * I.T, 1e-8).frame


def tangent_part(frame: np.ndarray) -> Subspace:
    m = frame.shape[0]
    return span_reduce(np.vstack([frame, np.zeros_like(frame)]), 1e-10, ambient_dim=2 * m)


def cotangent_part(frame: np.ndarray) -> Subspace:
    m = frame.shape[0]
    return span_reduce(np.vstack([np.zeros_like(frame), frame]), 1e-10, ambient_dim=2 * m)


def holomorphic_double(I: np.ndarray) -> Subspace:
    """T_{1,0} + T*_{1,0} inside the complexified split space."""
    return add(tangent_part(holomorphic_tangent(I)), cotangent_part(holomorphic_cotangent(I)))


def graph_of_form(B: np.ndarray) -> Subspace:
    m = B.shape[0]
    return span_reduce(np.vstack([np.eye(m), B]).astype(complex), 1e-12)


def graph_of_bivector(pi: np.ndarray) -> Subspace:
    m = pi.shape[0]
    return span_reduce(np.vstack([pi, np.eye(m)]).astype(complex), 1e-12)


def gauge_transform(B: np.ndarray, L, tol: float = 1e-10):
    """e^B : X + a -> X + a + B X applied to a frame."""
    B = np.asarray(B)
    if np.abs(B + B.T).max() > tol * max(1.0, np.abs(B).max()):
        raise ValueError("B must be antisymmetric")
    sub = _as_sub(L)
    m = B.shape[0]
    E = np.block([[np.eye(m), np.zeros((m, m))], [B, np.eye(m)]])
    new = span_reduce(E @ sub.frame, 1e-12, ambient_dim=sub.ambient_dim)
    if isinstance(L, DiracData):
        return DiracData(L.label, new)
    return new


@dataclass
class EllDecomposition:
    ell_plus: DiracData
    ell_minus: DiracData
    residuals: Dict[str, float]


def ell_decomposition(b: BihermitianPoint) -> EllDecomposition:
    """l+- = {Y -+ i omega+- Y : Y in T^{+-}_{1,0}} checked against L_A, L_B."""
    p = gualtieri_map(b)
    LA = plus_i_eigenspace(p.JA, "L_A").sub
    LB = plus_i_eigenspace(p.JB, "L_B").sub
    out = {}
    frames = {}
    for sign, I, om in ((+1, b.Iplus, b.omega_plus), (-1, b.Iminus, b.omega_minus)):
        Y = holomorphic_tangent(I)
        frames[sign] = span_reduce(np.vstack([Y, -sign * 1j * om @ Y]), 1e-12)
    lp, lm = frames[+1], frames[-1]
    out["l+ vs L_A^L_B"] = largest_angle(lp, intersect(LA, LB, 1e-9))
    out["l- vs L_A^conj(L_B)"] = largest_angle(lm, intersect(LA, LB.conj(), 1e-9))
    out["isotropy l+"] = isotropy_check(lp)
    out["isotropy l-"] = isotropy_check(lm)
    out["pair l+ l-"] = _cross_pairing(lp, lm)
    out["pair l+ conj l-"] = _cross_pairing(lp, lm.conj())
    return EllDecomposition(DiracData("l+", lp), DiracData("l-", lm), out)


def _cross_pairing(U: Subspace, W: Subspace) -> float:
    n = U.ambient_dim // 2
    m = U.frame[n:].T @ W.frame[:n] + U.frame[:n].T @ W.frame[n:]
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


# -- real and imaginary parts -----------------------------------------------------

def real_imag_parts(L, tol: float = 1e-9) -> Tuple[Subspace, Subspace]:
    """Real and imaginary parts of a complex Dirac structure.

    Solves for pairs X + a in L, X + b in conj L over a common X and returns
    the real spans of {X + (a+b)/2} and {X + (a-b)/(2i)}.
    """
    sub = _as_sub(L)
    m = sub.ambient_dim // 2
    F = sub.frame
    T, C = F[:m], F[m:]
    ns = null_space(np.hstack([T, -T.conj()]), 1e-10)
    k = F.shape[1]
    x, y = ns[:k], ns[k:]
    X = T @ x
    a = C @ x
    bb = C.conj() @ y
    re = span_reduce(np.vstack([X, 0.5 * (a + bb)]), 1e-10, ambient_dim=2 * m)
    im = span_reduce(np.vstack([X, (a - bb) / 2j]), 1e-10, ambient_dim=2 * m)
    re, im = real_span(re, 1e-9), real_span(im, 1e-9)
    if re.rank != m or im.rank != m:
        raise ValueError("non-transverse conjugate projections")
    return re, im


@dataclass(frozen=True, eq=False)
class Bivector:
    pi: np.ndarray

    def __post_init__(self):
        if np.abs(self.pi + self.pi.T).max() > 1e-12 * max(1.0, np.abs(self.pi).max()):
            raise ValueError("bivector must be antisymmetric")

    @property
    def real(self) -> np.ndarray:
        return self.pi.real


def dirac_difference(A, B, tol: float = 1e-9) -> Bivector:
    """sigma with Gr(sigma) = A - B = {X + a - b : X + a in A, X + b in B}.

    A full-rank difference is a graph over all of T*.  A half-rank difference
    (holomorphic case) is a graph over a subspace K with K + conj K = T*; sigma is
    extended by zero on conj K.
    """
    A, B = _as_sub(A), _as_sub(B)
    m = A.ambient_dim // 2
    TA, CA, TB, CB = A.frame[:m], A.frame[m:], B.frame[:m], B.frame[m:]
    ns = null_space(np.hstack([TA, -TB]), 1e-10)
    x, y = ns[: A.rank], ns[A.rank :]
    diff = span_reduce(np.vstack([TA @ x, CA @ x - CB @ y]), 1e-10, ambient_dim=2 * m)
    X, xi = diff.frame[:m], diff.frame[m:]
    if diff.rank == m:
        if np.linalg.matrix_rank(xi, tol=1e-8) < m:
            raise ValueError("difference is not a graph")
        sigma = X @ np.linalg.inv(xi)
    elif 2 * diff.rank == m:
        basis = np.hstack([xi, xi.conj()])
        if np.linalg.matrix_rank(basis, tol=1e-8) < m:
            raise ValueError("difference is not a graph")
        sigma = np.hstack([X, np.zeros_like(X)]) @ np.linalg.inv(basis)
    else:
        raise ValueError("difference is not a graph")
    sigma = 0.5 * (sigma - sigma.T)
    return Bivector(sigma)


# -- Manin triples ------------------------------------------------------------------

@dataclass
class ManinTriples:
    A_plus: DiracData
    B_plus: DiracData
    A_minus: DiracData
    B_minus: DiracData
    matched: Dict[str, Subspace]
    report: Dict[str, float]


def _plus_formula(b: BihermitianPoint, X: np.ndarray) -> Subspace:
    m = 2 * b.n
    e = np.eye(m)
    P10 = 0.5 * (e - 1j * b.Iplus)
    P01 = 0.5 * (e + 1j * b.Iplus)
    return span_reduce(np.vstack([P10 @ X, -2 * b.g @ P01 @ X]), 1e-12)


def matched_pair(I: np.ndarray, sub: Subspace) -> Subspace:
    """T_{0,1} + sub."""
    return add(tangent_part(antiholomorphic_tangent(I)), sub)


def manin_triples(b: BihermitianPoint) -> ManinTriples:
    if np.abs(np.linalg.eigvalsh(b.g)).min() < 1e-12:
        raise ValueError("degenerate metric")
    p = gualtieri_map(b)
    LA = plus_i_eigenspace(p.JA).sub
    LB = plus_i_eigenspace(p.JB).sub
    Ap = _plus_formula(b, antiholomorphic_tangent(b.Iminus))
    Bp = _plus_formula(b, holomorphic_tangent(b.Iminus))
    Em = holomorphic_double(b.Iminus)
    Am = intersect(Em, gauge_transform(1j * b.omega_minus, LA.conj()), 1e-9)
    Bm = intersect(Em, gauge_transform(1j * b.omega_minus, LB), 1e-9)
    n = b.n
    rep = {}
    for name, S in (("A+", Ap), ("B+", Bp), ("A-", Am), ("B-", Bm)):
        rep[f"dim {name}"] = S.rank
        rep[f"isotropy {name}"] = isotropy_check(S)
    rep["rank A+ + B+"] = add(Ap, Bp).rank
    rep["rank A- + B-"] = add(Am, Bm).rank
    Ep = holomorphic_double(b.Iplus)
    rep["A+ + B+ = T10 double"] = largest_angle(add(Ap, Bp), Ep)
    rep["A- + B- = T10 double"] = largest_angle(add(Am, Bm), Em)
    matched = {
        "A+": matched_pair(b.Iplus, Ap),
        "B+": matched_pair(b.Iplus, Bp),
        "A-": matched_pair(b.Iminus, Am),
        "B-": matched_pair(b.Iminus, Bm),
    }
    rep["matched A+"] = largest_angle(matched["A+"], gauge_transform(-1j * b.omega_plus, LA.conj()))
    rep["matched B+"] = largest_angle(matched["B+"], gauge_transform(-1j * b.omega_plus, LB.conj()))
    rep["matched A-"] = largest_angle(matched["A-"], gauge_transform(1j * b.omega_minus, LA.conj()))
    rep["matched B-"] = largest_angle(matched["B-"], gauge_transform(1j * b.omega_minus, LB))
    for k in ("A+", "B+", "A-", "B-"):
        rep[f"isotropy matched {k}"] = isotropy_check(matched[k])
    if any(rep[f"dim {k}"] != n for k in ("A+", "B+", "A-", "B-")):
        rep["ok"] = 0.0
    return ManinTriples(DiracData("A+", Ap), DiracData("B+", Bp), DiracData("A-", Am),
                        DiracData("B-", Bm), matched, rep)


def gauge_cycle_check(b: BihermitianPoint, triples: ManinTriples | None = None) -> Tuple[float, float]:
    t = triples or manin_triples(b)
    m = t.matched
    r1 = largest_angle(m["A+"], gauge_transform(-1j * (b.omega_plus + b.omega_minus), m["A-"]))
    r2 = largest_angle(m["B-"].conj(), gauge_transform(1j * (b.omega_plus - b.omega_minus), m["B+"]))
    return r1, r2


# -- Poisson tensors -------------------------------------------------------------------

def poisson_tensors(b: BihermitianPoint) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    gi = np.linalg.inv(b.g)
    piA = 0.5 * (b.Iplus - b.Iminus) @ gi
    piB = 0.5 * (b.Iplus + b.Iminus) @ gi
    Q = -piA @ b.g @ piB
    return piA, piB, Q


def hitchin_real(b: BihermitianPoint) -> np.ndarray:
    """-1/4 [I+, I-] g^{-1}."""
    c = b.Iplus @ b.Iminus - b.Iminus @ b.Iplus
    return -0.25 * c @ np.linalg.inv(b.g)


def hitchin_sigma(b: BihermitianPoint, triples: ManinTriples | None = None) -> Bivector:
    t = triples or manin_triples(b)
    return dirac_difference(t.A_plus, t.B_plus)


def real_part_bivector(L, tol: float = 1e-9) -> np.ndarray:
    """Real bivector whose graph is the real part of the Dirac structure L."""
    re, _ = real_imag_parts(L, tol)
    m = re.ambient_dim // 2
    X, xi = re.frame[:m].real, re.frame[m:].real
    if np.linalg.matrix_rank(xi, tol=1e-8) < m:
        raise ValueError("real part is not a bivector graph")
    pi = X @ np.linalg.inv(xi)
    return 0.5 * (pi - pi.T)


def hitchin_real_from_triples(b: BihermitianPoint, triples: ManinTriples | None = None) -> np.ndarray:
    """Real Poisson tensor underlying A+ - B+.

    The Baer difference Gr(sigma) is completed to the matched pair
    T_{0,1} + Gr(sigma) and its real part is read off as a graph.  In real
    coordinates this equals 4 Re(sigma) for the matrix returned by
    ``dirac_difference``.
    """
    t = triples or manin_triples(b)
    sigma = dirac_difference(t.A_plus, t.B_plus).pi
    m = 2 * b.n
    gr = span_reduce(np.vstack([sigma, np.eye(m)]) @ holomorphic_cotangent(b.Iplus), 1e-12)
    return real_part_bivector(matched_pair(b.Iplus, gr))


def imag_part_identities(b: BihermitianPoint, sign_B: float = 1.0) -> Dict[str, float]:
    """Principal-angle residuals for the real and imaginary parts of the triples.

    ``sign_B = -1`` replaces pi_B by -pi_B (a negative control).
    """
    t = manin_triples(b)
    piA, piB, _ = poisson_tensors(b)
    piB = sign_B * piB
    p = gualtieri_map(b)
    m = 2 * b.n
    cot = np.vstack([np.zeros((m, m)), np.eye(m)])
    JAT = span_reduce((p.JA @ cot).astype(complex), 1e-12)
    JBT = span_reduce((p.JB @ cot).astype(complex), 1e-12)
    targets_I = {
        "A+": gauge_transform(-b.omega_plus, graph_of_bivector(-piA)),
        "B+": gauge_transform(-b.omega_plus, graph_of_bivector(-piB)),
        "A-": gauge_transform(b.omega_minus, graph_of_bivector(-piA)),
        "B-": gauge_transform(b.omega_minus, graph_of_bivector(piB)),
    }
    out = {}
    for k in ("A+", "B+", "A-", "B-"):
        re, im = real_imag_parts(t.matched[k])
        out[f"Im {k}"] = largest_angle(im, targets_I[k])
        out[f"Re {k}"] = largest_angle(re, JAT if k[0] == "A" else JBT)
    return out


# -- reconstruction -----------------------------------------------------------------------

@dataclass
class Reconstruction:
    omega_plus: np.ndarray
    omega_minus: np.ndarray
    g: np.ndarray
    verdict: str
    residuals: Dict[str, float] = field(default_factory=dict)


def reconstruct_metric(piA: np.ndarray, piB: np.ndarray, Iplus: np.ndarray,
                       Iminus: np.ndarray) -> Reconstruction:
    """omega+- = -(pi_B +- pi_A)^{-1}, g = -omega+- I+-."""
    out = {}
    forms = []
    for s in (1, -1):
        M = piB + s * piA
        if np.linalg.cond(M) > 1e12:
            raise ValueError("non-complementary graphs")
        forms.append(-np.linalg.inv(M))
    wp, wm = forms
    gp, gm = -wp @ Iplus, -wm @ Iminus
    out["g+ vs g-"] = float(np.abs(gp - gm).max())
    out["g symmetric"] = float(np.abs(gp - gp.T).max())
    out["w+ I+ = -I-^T w-"] = float(np.abs(wp @ Iplus + Iminus.T @ wm).max())
    out["w+ I- = -I+^T w-"] = float(np.abs(wp @ Iminus + Iplus.T @ wm).max())
    out["I+^T w+ = I-^T w-"] = float(np.abs(Iplus.T @ wp - Iminus.T @ wm).max())
    out["I+ piA = piA I-^T"] = float(np.abs(Iplus @ piA - piA @ Iminus.T).max())
    out["I- piA = piA I+^T"] = float(np.abs(Iminus @ piA - piA @ Iplus.T).max())
    out["-I+ piB = piB I-^T"] = float(np.abs(-Iplus @ piB - piB @ Iminus.T).max())
    out["-I- piB = piB I+^T"] = float(np.abs(-Iminus @ piB - piB @ Iplus.T).max())
    g = 0.5 * (gp + gp.T)
    verdict = "GK" if np.linalg.eigvalsh(g).min() > 0 else "pseudo-GK"
    return Reconstruction(wp, wm, g, verdict, out)


@dataclass
class GaugeDataResult:
    omega_plus: np.ndarray
    omega_minus: np.ndarray
    beta_plus: np.ndarray
    beta_minus: np.ndarray
    g: np.ndarray
    b: np.ndarray
    verdict: str
    residuals: Dict[str, float]


def gk_from_gauge_data(Iplus, Iminus, F1, F2, tol: float = 1e-9) -> GaugeDataResult:
    """Split F+- = (-F1 +- F2)/2 into I-invariant and anti-invariant parts."""
    res = {}
    parts = {}
    for s, I in ((1, Iplus), (-1, Iminus)):
        F = 0.5 * (-F1 + s * F2)
        w = 0.5 * (F + I.T @ F @ I)
        beta = 0.5 * (F - I.T @ F @ I)
        M = -F @ I
        parts[s] = (w, beta, 0.5 * (M + M.T), 0.5 * (M - M.T))
    (wp, bp, gp, Bp), (wm, bm, gm, Bm) = parts[1], parts[-1]
    res["|g+ - g-|"] = float(np.abs(gp - gm).max())
    res["|b+ + b-|"] = float(np.abs(Bp + Bm).max())
    consistent = max(res.values()) < tol
    if not consistent:
        verdict = "inconsistent"
    else:
        verdict = "GK" if np.linalg.eigvalsh(gp).min() > 0 else "pseudo-GK"
    return GaugeDataResult(wp, wm, bp, bm, gp, Bp, verdict, res)
