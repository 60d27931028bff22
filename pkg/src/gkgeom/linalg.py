"""Dense subspace arithmetic in the split space V + V*.

Vectors are columns ordered as (tangent block; cotangent block).  The split
pairing is <X+a, Y+b> = a(Y) + b(X), with matrix [[0, I], [I, 0]].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg as sla

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class SplitSpace:
    """The split space V + V* with dim V = n."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def pairing(self) -> np.ndarray:
        return pairing_matrix(self.n)

    def pair(self, u: np.ndarray, v: np.ndarray) -> complex:
        """Bilinear (not sesquilinear) split pairing of two vectors."""
        n = self.n
        return u[n:] @ v[:n] + v[n:] @ u[:n]


def pairing_matrix(n: int) -> np.ndarray:
    z = np.zeros((n, n))
    e = np.eye(n)
    return np.block([[z, e], [e, z]])


@dataclass(frozen=True, eq=False)
class Subspace:
    """Column span of an orthonormal frame in C^ambient_dim."""

    ambient_dim: int
    frame: np.ndarray = field(repr=False)

    @property
    def rank(self) -> int:
        return self.frame.shape[1]

    def conj(self) -> "Subspace":
        return Subspace(self.ambient_dim, self.frame.conj())

    def contains(self, v: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
        return _residual_out(self, np.atleast_2d(v.T).T) <= tol

    def __repr__(self) -> str:
        return f"Subspace(ambient_dim={self.ambient_dim}, rank={self.rank})"


def _as_matrix(vectors) -> np.ndarray:
    if isinstance(vectors, np.ndarray):
        m = vectors
        if m.ndim == 1:
            m = m[:, None]
        return m
    vecs = [np.asarray(v).reshape(-1) for v in vectors]
    if not vecs:
        raise ValueError("empty vector list needs an ambient dimension")
    dims = {v.shape[0] for v in vecs}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch among vectors: {sorted(dims)}")
    return np.column_stack(vecs)


def span_reduce(vectors, tol: float = DEFAULT_TOL, ambient_dim: int | None = None) -> Subspace:
    """Reduce a spanning set to an orthonormal frame.

    Uses column-pivoted QR; a column counts toward the rank when its diagonal
    entry of R exceeds ``tol`` times the largest input column norm.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not isinstance(vectors, np.ndarray) and len(vectors) == 0:
        if ambient_dim is None:
            raise ValueError("empty input requires ambient_dim")
        return Subspace(ambient_dim, np.zeros((ambient_dim, 0), dtype=complex))
    m = np.asarray(_as_matrix(vectors), dtype=complex)
    if ambient_dim is not None and m.shape[0] != ambient_dim:
        raise ValueError("dimension mismatch")
    d = m.shape[0]
    if m.shape[1] == 0:
        return Subspace(d, np.zeros((d, 0), dtype=complex))
    scale = np.max(np.linalg.norm(m, axis=0))
    if scale == 0.0:
        return Subspace(d, np.zeros((d, 0), dtype=complex))
    q, r, _ = sla.qr(m, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    rank = int(np.sum(diag > tol * scale))
    return Subspace(d, q[:, :rank])


def zero_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, np.zeros((ambient_dim, 0), dtype=complex))


def full_space(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, np.eye(ambient_dim, dtype=complex))


def _check_ambient(U: Subspace, W: Subspace) -> None:
    if U.ambient_dim != W.ambient_dim:
        raise ValueError(f"ambient mismatch: {U.ambient_dim} vs {W.ambient_dim}")


def null_space(m: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of ker m, rank cut relative to the largest singular value."""
    if m.shape[1] == 0:
        return np.zeros((0, 0), dtype=m.dtype)
    u, s, vh = np.linalg.svd(m, full_matrices=True)
    top = s[0] if s.size else 0.0
    rank = int(np.sum(s > tol * max(top, 1e-300))) if top > 0 else 0
    return vh[rank:].conj().T


def add(U: Subspace, W: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    _check_ambient(U, W)
    return span_reduce(np.hstack([U.frame, W.frame]), tol, ambient_dim=U.ambient_dim)


def intersect(U: Subspace, W: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    """U ∩ W from the null space of [U, -W]."""
    _check_ambient(U, W)
    if U.rank == 0 or W.rank == 0:
        return zero_subspace(U.ambient_dim)
    ns = null_space(np.hstack([U.frame, -W.frame]), tol)
    if ns.shape[1] == 0:
        return zero_subspace(U.ambient_dim)
    return span_reduce(U.frame @ ns[: U.rank], tol, ambient_dim=U.ambient_dim)


def _residual_out(U: Subspace, vecs: np.ndarray) -> float:
    """Largest norm of the component of unit-normalised vecs orthogonal to U."""
    if vecs.shape[1] == 0:
        return 0.0
    norms = np.linalg.norm(vecs, axis=0)
    norms[norms == 0] = 1.0
    v = vecs / norms
    out = v - U.frame @ (U.frame.conj().T @ v)
    return float(np.max(np.linalg.norm(out, axis=0)))


def largest_angle(U: Subspace, W: Subspace) -> float:
    """Largest principal angle (radians) between equal-rank subspaces."""
    _check_ambient(U, W)
    if U.rank != W.rank:
        return float(np.pi / 2)
    if U.rank == 0:
        return 0.0
    s = np.linalg.svd(W.frame - U.frame @ (U.frame.conj().T @ W.frame), compute_uv=False)
    return float(np.arcsin(min(1.0, s.max())))


def subspace_eq(U: Subspace, W: Subspace, tol: float = DEFAULT_TOL) -> bool:
    _check_ambient(U, W)
    return U.rank == W.rank and largest_angle(U, W) < tol


def isotropy_check(L, space: SplitSpace | None = None) -> float:
    """Spectral norm of the pairing restricted to a frame.

    For a Subspace the orthonormal frame is used, which makes the value
    independent of the spanning set.  A raw matrix is used as given.
    """
    frame = L.frame if isinstance(L, Subspace) else np.asarray(L)
    if frame.ndim == 1:
        frame = frame[:, None]
    if frame.shape[1] == 0:
        return 0.0
    n = frame.shape[0] // 2
    if space is not None and space.dim != frame.shape[0]:
        raise ValueError("frame does not live in this split space")
    gram = frame[n:].T @ frame[:n]
    gram = gram + gram.T
    return float(np.linalg.norm(gram, 2))


def pairing_rank(U: Subspace, W: Subspace, tol: float = 1e-8) -> int:
    """Rank of the pairing block between two subspaces."""
    n = U.ambient_dim // 2
    m = U.frame[n:].T @ W.frame[:n] + U.frame[:n].T @ W.frame[n:]
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > tol))


def real_span(U: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    """Real form of a conjugation-invariant subspace, with a real frame."""
    m = np.hstack([U.frame.real, U.frame.imag])
    if m.shape[1] == 0 or not np.any(m):
        return zero_subspace(U.ambient_dim)
    q, r, _ = sla.qr(m, mode="economic", pivoting=True)
    rank = int(np.sum(np.abs(np.diag(r)) > tol * np.max(np.linalg.norm(m, axis=0))))
    return Subspace(U.ambient_dim, q[:, :rank].astype(complex))
