import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, strategies as st

from gkgeom import chart as C
from gkgeom import lie as L
from gkgeom import point as P
from gkgeom.linalg import span_reduce, subspace_eq

seeds = st.integers(0, 2**32 - 1)
u1, u2, u3, v = L.BASIS


def rng_of(seed):
    return np.random.default_rng(seed)


# -- algebra -----------------------------------------------------------------------------

def test_pairing_normalisation():
    assert np.allclose(u1.X @ u1.X, -np.eye(2))
    assert abs(L.pairing(u1, u1) - 1) < 1e-15
    assert abs(L.pairing(v, v) - 1) < 1e-15


def test_traceless_enforced():
    with pytest.raises(ValueError):
        L.AlgVec(np.eye(2, dtype=complex), 0j)


@pytest.mark.parametrize("sign", "+-")
def test_subalgebras_isotropic(sign):
    rng = rng_of(0)
    e1, e2 = L.subalgebra_basis(sign)
    for _ in range(10):
        a = e1 * complex(*rng.standard_normal(2)) + e2 * complex(*rng.standard_normal(2))
        b = e1 * complex(*rng.standard_normal(2)) + e2 * complex(*rng.standard_normal(2))
        assert abs(L.pairing(a, b)) < 1e-12


def test_pairing_invariant_under_conjugation():
    rng = rng_of(1)
    g = L.random_g(rng)
    a, b = L.from_coords(rng.standard_normal(4) + 0j), L.from_coords(rng.standard_normal(4) + 1j)
    assert abs(L.pairing(g.ad(a), g.ad(b)) - L.pairing(a, b)) < 1e-12


def test_alt_rule_and_flip():
    # I_K_ALT sends u1 to u2; the structure in use is its flip on span(u1, u2)
    assert np.allclose(L.algebra_I(u1, L.I_K_ALT).coords(), u2.coords())
    assert np.allclose(L.algebra_I(u2).coords(), u1.coords())
    assert np.allclose(L.algebra_I(v).coords(), u3.coords())


@pytest.mark.parametrize("M", [L.I_K, L.I_K_ALT])
def test_I_squares_to_minus_one(M):
    assert np.allclose(M @ M, -np.eye(4))


def eigenspace(M, lam):
    w, V = np.linalg.eig(M)
    return span_reduce(V[:, np.isclose(w, lam)])


def sub_coords(sign):
    return span_reduce(np.column_stack([e.coords() for e in L.subalgebra_basis(sign)]))


def test_eigenspaces_are_the_subalgebras():
    assert subspace_eq(eigenspace(L.I_K, 1j), sub_coords("+"), 1e-12)
    assert subspace_eq(eigenspace(L.I_K, -1j), sub_coords("-"), 1e-12)


def test_alt_rule_gives_opposite_eigenspace():
    assert not subspace_eq(eigenspace(L.I_K_ALT, 1j), sub_coords("+"), 1e-6)


def test_complex_structure_integrable_on_algebra():
    # Lie(G+) is a subalgebra, so N_I vanishes on the algebra
    for a in L.BASIS:
        for b in L.BASIS:
            I = lambda x: L.algebra_I(x)
            n = (L.bracket(I(a), I(b)) - I(L.bracket(I(a), b)) - I(L.bracket(a, I(b))) - L.bracket(a, b))
            assert n.norm() < 1e-13


# -- exponential ------------------------------------------------------------------------

@given(seeds, st.sampled_from([1e-6, 1e-2, 1.0, 3.0]))
def test_expm2_matches_scipy(seed, scale):
    rng = rng_of(seed)
    X = scale * (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
    X -= 0.5 * np.trace(X) * np.eye(2)
    assert np.abs(L.expm2(X) - sla.expm(X)).max() < 1e-12 * max(1, np.abs(sla.expm(X)).max())


def test_k_exp_unitary():
    k = L.k_exp([0.3, -1.2, 2.0, 0.7])
    assert np.allclose(k.U @ k.U.conj().T, np.eye(2)) and abs(np.linalg.det(k.U) - 1) < 1e-14


# -- factorisation --------------------------------------------------------------------------

@pytest.mark.parametrize("sign", "+-")
def test_factorize_identity(sign):
    b, k = L.factorize(L.IDENTITY, sign)
    assert b.dist(L.IDENTITY) < 1e-15 and k.g().dist(L.IDENTITY) < 1e-15


@given(seeds, st.sampled_from("+-"))
def test_factorize_recovers_factors(seed, sign):
    rng = rng_of(seed)
    b0, k0 = L.random_subgroup(rng, sign, 0.5), L.random_k(rng)
    b, k = L.factorize(b0 * k0.g(), sign)
    assert b.dist(b0) < 1e-12 and k.g().dist(k0.g()) < 1e-12


@given(seeds, st.sampled_from("+-"))
def test_factorize_roundtrip(seed, sign):
    g = L.random_g(rng_of(seed))
    b, k = L.factorize(g, sign)
    assert (b * k.g()).dist(g) < 1e-12 and L.subgroup_residual(b, sign) < 1e-12


def test_factorize_bad_sign():
    with pytest.raises(ValueError):
        L.factorize(L.IDENTITY, "x")


# -- dressing ----------------------------------------------------------------------------------

@pytest.mark.parametrize("sign", "+-")
def test_dressing_by_identity(sign):
    k = L.random_k(rng_of(2))
    kp, xp = L.dressing(L.IDENTITY, k, sign)
    assert kp.g().dist(k.g()) < 1e-14 and xp.dist(L.IDENTITY) < 1e-14


@given(seeds, st.sampled_from("+-"))
def test_dressing_laws(seed, sign):
    rng = rng_of(seed)
    k = L.random_k(rng)
    a, b = L.random_subgroup(rng, sign), L.random_subgroup(rng, sign)
    k1, x1 = L.dressing(b, k, sign)
    k2, x2 = L.dressing(a, k1, sign)
    k3, x3 = L.dressing(a * b, k, sign)
    assert k2.g().dist(k3.g()) < 1e-10
    assert x3.dist(x2 * x1) < 1e-10


@given(seeds)
def test_dressing_differential_matches_fd(seed):
    rng = rng_of(seed)
    sign = "-"
    x, k = L.random_subgroup(rng, sign, 0.5), L.random_k(rng)
    dx = L.subalgebra_basis(sign)[0] * complex(*rng.standard_normal(2))
    dk = L.from_coords(rng.standard_normal(4) + 0j)
    dkp, dxp = L.dressing_differential(x, k, dx, dk, sign)
    h = 1e-6

    def at(t):
        xt = L.exp_alg(dx * t) * x
        return L.dressing(xt, L.k_exp(t * dk.coords().real) * k, sign)

    (kp_p, xp_p), (kp_m, xp_m) = at(h), at(-h)
    kp0, xp0 = L.dressing(x, k, sign)
    fk = ((kp_p.g() * kp0.g().inv()).A - (kp_m.g() * kp0.g().inv()).A) / (2 * h)
    fx = ((xp_p * xp0.inv()).A - (xp_m * xp0.inv()).A) / (2 * h)
    assert np.abs(fk - dkp.X).max() < 1e-7 and np.abs(fx - dxp.X).max() < 1e-7


# -- Theta ---------------------------------------------------------------------------------------

@given(seeds)
def test_theta_involution(seed):
    g = L.random_g(rng_of(seed))
    assert L.theta(L.theta(g)).dist(g) < 1e-13


def test_theta_swaps_subgroup_shapes():
    rng = rng_of(3)
    for _ in range(10):
        assert L.subgroup_residual(L.theta(L.random_subgroup(rng, "+")), "-") < 1e-13
        assert L.subgroup_residual(L.theta(L.random_subgroup(rng, "-")), "+") < 1e-13


def test_theta_fixes_K():
    k = L.random_k(rng_of(4))
    assert L.theta(k.g()).dist(k.g()) < 1e-14


def test_dtheta_conjugates_pairing():
    rng = rng_of(5)
    a = L.from_coords(rng.standard_normal(4) + 1j * rng.standard_normal(4))
    b = L.from_coords(rng.standard_normal(4) + 1j * rng.standard_normal(4))
    assert abs(L.pairing(L.dtheta(a), L.dtheta(b)) - np.conj(L.pairing(a, b))) < 1e-13


# -- invariant GK structure -------------------------------------------------------------------------

def test_identity_point_is_kahler_like():
    b = L.invariant_gk_at(L.K_IDENTITY)
    assert np.allclose(b.Iplus, b.Iminus)


@given(seeds)
def test_invariant_point_valid(seed):
    b = L.invariant_gk_at(L.random_k(rng_of(seed)))
    r = b.residuals()
    assert max(r.values()) < 1e-12
    assert P.gk_axioms_check(P.gualtieri_map(b)).is_gk


def test_pi_A_is_minus_pi_Z():
    k = L.random_k(rng_of(6))
    piA, _, _ = P.poisson_tensors(L.invariant_gk_at(k))
    assert np.abs(piA - L.PI_A_TO_PI_Z_SIGN * L.pi_Z_matrix(k)).max() < 1e-14


def test_exponential_chart_passes_gk_verification():
    k0 = L.random_k(rng_of(7))
    g, Ip, Im, _ = L.chart_fields(k0)
    pts = rng_of(8).uniform(-0.4, 0.4, (4, 4))
    assert C.verify_gk_chart(g, Ip, Im, pts, C.FDConfig(h=1e-3)).worst < 1e-5


def test_chart_structures_at_origin_match_point():
    k0 = L.random_k(rng_of(9))
    g, Ip, Im, _ = L.chart_fields(k0)
    b = L.invariant_gk_at(k0)
    x = np.zeros(4)
    assert np.allclose(g(x), b.g) and np.allclose(Ip(x), b.Iplus) and np.allclose(Im(x), b.Iminus)


def test_generalized_structures_involutive_for_cartan_H():
    k0 = L.random_k(rng_of(10))
    pts = rng_of(11).uniform(-0.3, 0.3, (2, 4))
    assert max(L.involutivity_on_group(k0, pts)) < 1e-5
    assert min(L.involutivity_on_group(k0, pts, sign=-1.0)) > 1e-2


# -- Cartan form --------------------------------------------------------------------------------------

@pytest.fixture(scope="module")
def cartan():
    return L.cartan_form_check(20, C.FDConfig(h=1e-3), seed=0)


def test_cartan_constant(cartan):
    assert abs(cartan.c - L.CARTAN_C) < 1e-4
    assert cartan.spread < 1e-4 and cartan.fit_residual < 1e-6


def test_cartan_form_alternating(cartan):
    assert cartan.alternation < 1e-8


def test_dc_sum_vanishes(cartan):
    assert cartan.dc_sum < 1e-5


def test_second_order_decrease(cartan):
    assert np.log2(cartan.order_ratio) > 1.9


def test_cartan_tensor_alternating():
    T = L.cartan_tensor()
    assert C.alternation_residual(T, 3) < 1e-14 and np.abs(T).max() > 0.1


# -- dressing form Omega_Z and the IM check ---------------------------------------------------------

def test_omega_Z_zero_tangent():
    rng = rng_of(12)
    b, k = L.random_subgroup(rng, "-", 0.5), L.random_k(rng)
    xi = L.random_tangent(rng, "-")
    assert L.omega_Z_eval(b, k, xi, (L.ZERO, L.ZERO), method="exact") == 0


@given(seeds)
def test_omega_Z_antisymmetric(seed):
    rng = rng_of(seed)
    b, k = L.random_subgroup(rng, "-", 0.5), L.random_k(rng)
    x1, x2 = L.random_tangent(rng, "-"), L.random_tangent(rng, "-")
    assert abs(L.omega_Z_eval(b, k, x1, x2) + L.omega_Z_eval(b, k, x2, x1)) < 1e-9


def test_omega_Z_exact_matches_fd():
    rng = rng_of(13)
    b, k = L.random_subgroup(rng, "-", 0.5), L.random_k(rng)
    x1, x2 = L.random_tangent(rng, "-"), L.random_tangent(rng, "-")
    assert abs(L.omega_Z_eval(b, k, x1, x2, "exact") - L.omega_Z_eval(b, k, x1, x2, "fd")) < 1e-8


@pytest.mark.parametrize("seed", range(3))
def test_im_form_constant(seed):
    im = L.im_form_check(L.random_k(rng_of(seed)), method="exact")
    assert min(abs(im.c_Z - c) for c in (1, -1, 2, -2)) < 1e-9
    assert abs(im.c_Z - L.C_Z) < 1e-9 and im.relative_residual < 1e-9
