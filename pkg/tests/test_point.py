import numpy as np
import pytest
from hypothesis import given, strategies as st

from gkgeom import linalg as la
from gkgeom import point as P

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 4)


def J0(n):
    return P.standard_complex_structure(n)


def commuting_flat():
    J = np.array([[0.0, -1.0], [1.0, 0.0]])
    z = np.zeros((2, 2))
    Ip = np.block([[J, z], [z, J]])
    Im = np.block([[J, z], [z, -J]])
    return P.BihermitianPoint(2, np.eye(4), Ip, Im)


# -- gualtieri map --------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_kahler_block_formula(n):
    b = P.kahler_point(n)
    p = P.gualtieri_map(b)
    I, w = b.Iplus, b.omega_plus
    z = np.zeros_like(I)
    assert np.allclose(p.JA, np.block([[I, z], [z, -I.T]]))
    assert np.allclose(p.JB, np.block([[z, -np.linalg.inv(w)], [w, z]]))


def test_commuting_flat_blocks_split_over_factors():
    p = P.gualtieri_map(commuting_flat())
    # indices of factor 1 (x1, y1 and their duals) never mix with factor 2
    f1, f2 = [0, 1, 4, 5], [2, 3, 6, 7]
    for J in (p.JA, p.JB):
        assert np.abs(J[np.ix_(f1, f2)]).max() == 0 and np.abs(J[np.ix_(f2, f1)]).max() == 0
    # on factor 2 the structures are opposite, so JA is symplectic type there
    assert np.abs(p.JA[np.ix_([2, 3], [2, 3])]).max() == 0


@given(seeds, dims)
def test_random_point_is_gk(seed, n):
    b = P.random_bihermitian(np.random.default_rng(seed), n)
    rep = P.gk_axioms_check(P.gualtieri_map(b))
    assert rep.is_gk
    assert max(rep.square_A, rep.square_B, rep.commutator, rep.orthogonality) < 1e-10
    assert rep.min_metric_eig > 0


def test_flipping_JB_makes_metric_negative(rng):
    p = P.gualtieri_map(P.random_bihermitian(rng, 2))
    rep = P.gk_axioms_check(P.GCPair(p.JA, -p.JB))
    assert np.linalg.eigvalsh(P.generalized_metric(P.GCPair(p.JA, -p.JB))).max() < 0
    assert not rep.is_gk


def test_validate_rejects_bad_data():
    b = P.kahler_point(1)
    with pytest.raises(ValueError):
        P.BihermitianPoint(1, b.g, 2 * b.Iplus, b.Iminus).validate()


# -- eigenspaces and l+- --------------------------------------------------------------

def test_kahler_LA_meets_tangent_in_T10():
    b = P.kahler_point(2)
    LA = P.plus_i_eigenspace(P.gualtieri_map(b).JA).sub
    T = la.span_reduce(np.vstack([np.eye(4), np.zeros((4, 4))]))
    cap = la.intersect(LA, T)
    assert cap.rank == 2
    assert la.subspace_eq(cap, P.tangent_part(P.holomorphic_tangent(b.Iplus)))


@given(seeds, dims)
def test_LA_transverse_to_conjugate(seed, n):
    p = P.gualtieri_map(P.random_bihermitian(np.random.default_rng(seed), n))
    LA = P.plus_i_eigenspace(p.JA).sub
    assert la.intersect(LA, LA.conj(), 1e-9).rank == 0
    assert LA.rank == 2 * n


def test_eigenspace_rejects_non_complex_structure():
    with pytest.raises(ValueError):
        P.plus_i_eigenspace(np.eye(4))


@pytest.mark.parametrize("seed", range(5))
def test_ell_decomposition(seed):
    b = P.random_bihermitian(np.random.default_rng(seed), 2)
    r = P.ell_decomposition(b).residuals
    assert r["l+ vs L_A^L_B"] < 1e-9 and r["l- vs L_A^conj(L_B)"] < 1e-9
    assert r["isotropy l+"] < 1e-10 and r["isotropy l-"] < 1e-10
    assert r["pair l+ l-"] < 1e-10 and r["pair l+ conj l-"] < 1e-10


def test_ell_kahler_graphs():
    b = P.kahler_point(1)
    e = P.ell_decomposition(b)
    Y = P.holomorphic_tangent(b.Iplus)
    w = b.omega_plus
    assert la.subspace_eq(e.ell_plus.sub, la.span_reduce(np.vstack([Y, -1j * w @ Y])))
    assert la.subspace_eq(e.ell_minus.sub, la.span_reduce(np.vstack([Y, 1j * w @ Y])))


def test_ell_pairs_nondegenerately_with_conjugate(rng):
    e = P.ell_decomposition(P.random_bihermitian(rng, 2))
    for ell in (e.ell_plus.sub, e.ell_minus.sub):
        assert la.pairing_rank(ell, ell.conj()) == ell.rank


# -- gauge transforms ------------------------------------------------------------------

def antisym(rng, m):
    a = rng.standard_normal((m, m))
    return a - a.T


def test_zero_gauge_is_identity(rng):
    L = la.span_reduce(rng.standard_normal((6, 3)))
    assert la.subspace_eq(P.gauge_transform(np.zeros((3, 3)), L), L)


@given(seeds)
def test_gauge_group_law(seed):
    rng = np.random.default_rng(seed)
    B1, B2 = antisym(rng, 3), antisym(rng, 3)
    L = la.span_reduce(rng.standard_normal((6, 3)) + 1j * rng.standard_normal((6, 3)))
    assert la.subspace_eq(P.gauge_transform(-B1, P.gauge_transform(B1, L)), L, 1e-9)
    # direct frame oracle: e^B acts by the block matrix [[1, 0], [B, 1]]
    E = lambda B: np.block([[np.eye(3), np.zeros((3, 3))], [B, np.eye(3)]])
    direct = la.span_reduce(E(B1) @ E(B2) @ L.frame)
    assert la.subspace_eq(P.gauge_transform(B1, P.gauge_transform(B2, L)), direct, 1e-9)
    assert la.subspace_eq(P.gauge_transform(B1 + B2, L), direct, 1e-9)


def test_gauge_rejects_symmetric(rng):
    with pytest.raises(ValueError):
        P.gauge_transform(np.eye(3), la.full_space(6))


# -- real and imaginary parts ------------------------------------------------------------

@pytest.mark.parametrize("seed", range(3))
def test_real_imag_parts_of_LA(seed):
    b = P.random_bihermitian(np.random.default_rng(seed), 2)
    p = P.gualtieri_map(b)
    re, im = P.real_imag_parts(P.plus_i_eigenspace(p.JA).sub)
    m = 4
    cot = np.vstack([np.zeros((m, m)), np.eye(m)])
    assert la.subspace_eq(re, la.span_reduce(p.JA @ cot), 1e-8)
    piJ = (p.JA @ cot)[:m]  # pi_J alpha = pr_T(J alpha)
    assert la.subspace_eq(im, P.graph_of_bivector(piJ), 1e-8)
    piA, _, _ = P.poisson_tensors(b)
    assert la.subspace_eq(im, P.graph_of_bivector(piA), 1e-8)


def test_tangent_bundle_is_its_own_parts():
    T = la.span_reduce(np.vstack([np.eye(4), np.zeros((4, 4))]))
    re, im = P.real_imag_parts(T)
    assert la.subspace_eq(re, T) and la.subspace_eq(im, T)


def test_real_graph_parts(rng):
    # for a real graph the common-X difference has no cotangent part
    B = antisym(rng, 4)
    L = P.graph_of_form(B)
    re, im = P.real_imag_parts(L)
    assert la.subspace_eq(re, L)
    assert la.subspace_eq(im, la.span_reduce(np.vstack([np.eye(4), np.zeros((4, 4))])))


# -- Baer differences ---------------------------------------------------------------------

def test_difference_of_equal_graphs_is_tangent_bundle(rng):
    pi = antisym(rng, 4)
    G = P.graph_of_bivector(pi)
    with pytest.raises(ValueError, match="not a graph"):
        P.dirac_difference(G, G)


def test_difference_of_two_graphs(rng):
    p1, p2 = antisym(rng, 4), antisym(rng, 4)
    s = P.dirac_difference(P.graph_of_bivector(p1), P.graph_of_bivector(p2)).pi
    # brute-force linear system: X + a in A, X + b in B with a - b = xi
    # gives X = p1 a = p2 b, so xi = (p1^-1 - p2^-1) X and sigma = (p1^-1 - p2^-1)^-1
    ref = np.linalg.inv(np.linalg.inv(p1) - np.linalg.inv(p2))
    assert np.allclose(s, ref, atol=1e-9)


@given(seeds, dims)
def test_hitchin_difference_real_part(seed, n):
    b = P.random_bihermitian(np.random.default_rng(seed), n)
    assert np.abs(P.hitchin_real_from_triples(b) - P.hitchin_real(b)).max() < 1e-9


def test_hitchin_sigma_complex_four_times_real_part(rng):
    b = P.random_bihermitian(rng, 2)
    sig = P.hitchin_sigma(b).pi
    assert np.allclose(4 * sig.real, P.hitchin_real(b), atol=1e-9)


# -- Manin triples ------------------------------------------------------------------------

@given(seeds, dims)
def test_manin_triples(seed, n):
    b = P.random_bihermitian(np.random.default_rng(seed), n)
    rep = P.manin_triples(b).report
    for k in ("A+", "B+", "A-", "B-"):
        assert rep[f"dim {k}"] == n
        assert rep[f"isotropy {k}"] < 1e-10
        assert rep[f"matched {k}"] < 1e-9
        assert rep[f"isotropy matched {k}"] < 1e-10
    assert rep["rank A+ + B+"] == 2 * n and rep["rank A- + B-"] == 2 * n
    assert rep["A+ + B+ = T10 double"] < 1e-9


def test_commuting_flat_triples():
    rep = P.manin_triples(commuting_flat()).report
    assert all(rep[f"dim {k}"] == 2 for k in ("A+", "B+", "A-", "B-"))
    assert max(rep[f"isotropy {k}"] for k in ("A+", "B+", "A-", "B-")) < 1e-12


def test_kahler_triples():
    b = P.kahler_point(2)
    t = P.manin_triples(b)
    X = P.antiholomorphic_tangent(b.Iplus)
    e = np.eye(4)
    P10, P01 = 0.5 * (e - 1j * b.Iplus), 0.5 * (e + 1j * b.Iplus)
    ref = la.span_reduce(np.vstack([P10 @ X, -2 * b.g @ P01 @ X]))
    assert la.subspace_eq(t.A_plus.sub, ref)
    assert t.report["A+ + B+ = T10 double"] < 1e-10


def test_degenerate_metric_rejected():
    b = P.kahler_point(1)
    with pytest.raises(ValueError):
        P.manin_triples(P.BihermitianPoint(1, 0 * b.g, b.Iplus, b.Iminus))


# -- gauge cycle ----------------------------------------------------------------------------

def test_gauge_cycle_kahler():
    assert max(P.gauge_cycle_check(P.kahler_point(2))) < 1e-10


@pytest.mark.parametrize("seed", range(20))
def test_gauge_cycle_random(seed):
    assert max(P.gauge_cycle_check(P.random_bihermitian(np.random.default_rng(seed), 2))) < 1e-9


@pytest.mark.parametrize("seed", range(3))
def test_gauge_cycle_swapped_sign(seed):
    b = P.random_bihermitian(np.random.default_rng(seed), 2)
    swapped = P.BihermitianPoint(b.n, b.g, b.Iplus, -b.Iminus)
    assert max(P.gauge_cycle_check(swapped)) < 1e-9


# -- Poisson tensors -----------------------------------------------------------------------

def test_kahler_poisson_tensors():
    b = P.kahler_point(2)
    piA, piB, Q = P.poisson_tensors(b)
    assert np.abs(piA).max() == 0 and np.abs(Q).max() == 0
    assert np.allclose(piB, b.Iplus @ np.linalg.inv(b.g))


def test_commuting_Q_vanishes():
    b = commuting_flat()
    piA, piB, Q = P.poisson_tensors(b)
    assert np.abs(Q).max() < 1e-15
    # each is supported on one factor and inverts the Hermitian form there
    assert np.allclose(piA[:2, :2], 0) and np.allclose(piB[2:, 2:], 0)


@given(seeds, dims)
def test_poisson_antisymmetry_and_hitchin(seed, n):
    b = P.random_bihermitian(np.random.default_rng(seed), n)
    piA, piB, Q = P.poisson_tensors(b)
    assert np.abs(piA + piA.T).max() < 1e-12 and np.abs(piB + piB.T).max() < 1e-12
    assert np.abs(Q - P.hitchin_real(b)).max() < 1e-12


def test_imag_identities_kahler():
    assert max(P.imag_part_identities(P.kahler_point(2)).values()) < 1e-10


@pytest.mark.parametrize("seed", range(20))
def test_imag_identities_random(seed):
    assert max(P.imag_part_identities(P.random_bihermitian(np.random.default_rng(seed), 2)).values()) < 1e-9


def test_flipping_piB_breaks_only_B_rows(rng):
    r = P.imag_part_identities(P.random_bihermitian(rng, 2), sign_B=-1.0)
    assert r["Im A+"] < 1e-9 and r["Im A-"] < 1e-9
    assert r["Im B+"] > 1e-3 and r["Im B-"] > 1e-3


# -- reconstruction --------------------------------------------------------------------------

@given(seeds, dims)
def test_reconstruction_roundtrip(seed, n):
    b = P.random_bihermitian(np.random.default_rng(seed), n)
    piA, piB, _ = P.poisson_tensors(b)
    gi = np.linalg.inv(b.g)
    assert np.allclose(piB + piA, b.Iplus @ gi) and np.allclose(piB - piA, b.Iminus @ gi)
    rec = P.reconstruct_metric(piA, piB, b.Iplus, b.Iminus)
    assert np.abs(rec.g - b.g).max() < 1e-12 * max(1, np.abs(b.g).max())
    assert np.abs(rec.omega_plus - b.omega_plus).max() < 1e-10
    assert max(rec.residuals.values()) < 1e-10
    assert rec.verdict == "GK"


def test_reconstruction_kahler():
    b = P.kahler_point(2)
    rec = P.reconstruct_metric(np.zeros((4, 4)), b.Iplus @ np.linalg.inv(b.g), b.Iplus, b.Iminus)
    assert np.allclose(rec.g, b.g) and np.allclose(rec.omega_plus, rec.omega_minus)


def test_reconstruction_indefinite(rng):
    b = P.random_bihermitian(rng, 2, signature=(1, 1))
    assert b.kind == "pseudo-GK"
    piA, piB, _ = P.poisson_tensors(b)
    rec = P.reconstruct_metric(piA, piB, b.Iplus, b.Iminus)
    assert rec.verdict == "pseudo-GK"
    assert np.linalg.eigvalsh(rec.g).min() < 0


# -- gauge data ----------------------------------------------------------------------------

def test_gauge_data_kahler():
    b = P.kahler_point(2)
    w = b.omega_plus
    r = P.gk_from_gauge_data(b.Iplus, b.Iminus, -2 * w, np.zeros_like(w))
    assert np.allclose(r.omega_plus, w) and np.allclose(r.omega_minus, w)
    assert np.abs(r.beta_plus).max() < 1e-15 and np.abs(r.beta_minus).max() < 1e-15
    assert np.allclose(r.g, b.g) and r.verdict == "GK"


@given(seeds)
def test_gauge_data_inverse(seed):
    rng = np.random.default_rng(seed)
    b = P.random_bihermitian(rng, 2)
    B = antisym(rng, 4)
    # forward synthesis: F+- = (g +- b) I+-, so that g +- b = -F+- I+-
    Fp, Fm = (b.g + B) @ b.Iplus, (b.g - B) @ b.Iminus
    r = P.gk_from_gauge_data(b.Iplus, b.Iminus, -(Fp + Fm), Fp - Fm)
    assert np.abs(r.g - b.g).max() < 1e-12 * max(1, np.abs(b.g).max())
    assert np.abs(r.b - B).max() < 1e-12 * max(1, np.abs(B).max())
    assert r.verdict == "GK"


def test_gauge_data_inconsistent(rng):
    b = P.random_bihermitian(rng, 2)
    r = P.gk_from_gauge_data(b.Iplus, b.Iminus, antisym(rng, 4), antisym(rng, 4))
    assert r.verdict == "inconsistent" and max(r.residuals.values()) > 1e-3
