import csv
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from gkgeom import hopf as H
from gkgeom import lie as L

seeds = st.integers(0, 2**32 - 1)
cplx = st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False)


def R(seed):
    return np.random.default_rng(seed)


def rc(rng, s=1.0):
    return complex(*(s * rng.standard_normal(2)))


# -- points and projections -----------------------------------------------------------------

def test_origin_excluded():
    with pytest.raises(ValueError):
        H.SurfPoint(0j, 0j)


def test_chart_flags():
    p = H.SurfPoint(1 + 0j, 0j)
    assert p.in_OA and not p.in_OB


@pytest.mark.parametrize("proj", [H.project_minus, H.project_plus])
def test_projection_of_identity(proj):
    assert proj(L.IDENTITY).dist(H.SurfPoint(1 + 0j, 0j)) == 0


@given(seeds)
def test_projection_invariance(seed):
    rng = R(seed)
    g = L.random_g(rng)
    for _ in range(3):
        assert H.project_minus(g * L.random_subgroup(rng, "-")).dist(H.project_minus(g)) < 1e-12
        assert H.project_plus(L.random_subgroup(rng, "+") * g).dist(H.project_plus(g)) < 1e-12


def test_projection_formula():
    g = L.random_g(R(1))
    v = g.A @ np.array([np.exp(-1j * g.z), 0])
    assert np.allclose(H.project_minus(g).vec(), v)


# -- affine group and actions ---------------------------------------------------------------

@pytest.mark.parametrize("which", H.ACTIONS)
def test_identity_acts_trivially(which):
    p = H.SurfPoint(0.3 + 1j, -2 + 0.1j)
    assert H.groupoid_actions((0j, 0j), p, which).dist(p) == 0


@pytest.mark.parametrize("which", H.ACTIONS)
def test_action_laws(which):
    rng = R(2)
    for _ in range(50):
        p = H.SurfPoint(rc(rng), rc(rng))
        g1, g2 = (rc(rng), rc(rng)), (rc(rng), rc(rng))
        if which.endswith("-"):
            two = H.groupoid_actions(g1, H.groupoid_actions(g2, p, which), which)
            one = H.groupoid_actions(H.semidirect_mult(g1, g2), p, which)
        else:
            two = H.groupoid_actions(g2, H.groupoid_actions(g1, p, which), which)
            one = H.groupoid_actions(H.semidirect_mult_op(g1, g2), p, which)
        assert two.dist(one) < 1e-12


def test_unknown_action():
    with pytest.raises(ValueError):
        H.groupoid_actions((0j, 0j), H.SurfPoint(1 + 0j, 0j), "C")


def test_semidirect_associative():
    rng = R(3)
    a, b, c = [(rc(rng), rc(rng)) for _ in range(3)]
    lhs = H.semidirect_mult(H.semidirect_mult(a, b), c)
    rhs = H.semidirect_mult(a, H.semidirect_mult(b, c))
    assert np.allclose(lhs, rhs)


def test_orbit_ranks():
    # the A-type generators span C^2 off z1 = 0 and vanish on that line
    assert H.orbit_rank(H.SurfPoint(1 + 1j, 2 + 0j), "A-") == 2
    assert H.orbit_rank(H.SurfPoint(0j, 2 + 0j), "A-") == 0
    assert H.orbit_rank(H.SurfPoint(1 + 0j, 0j), "B-") == 0
    assert H.orbit_rank(H.SurfPoint(1 + 0j, 1j), "B-") == 2


def test_generators_match_fd():
    p = H.SurfPoint(0.4 - 0.2j, 1.1 + 0.5j)
    h = 1e-6
    for which in ("A-", "B-"):
        G = H.infinitesimal_generators(p, which)
        for col, e in enumerate([(h, 0j), (0j, h)]):
            fd = (H.groupoid_actions(e, p, which).vec() - H.groupoid_actions((-e[0], -e[1]), p, which).vec()) / (2 * h)
            assert np.allclose(fd, G[:, col], atol=1e-8)


def test_to_affine_of_subgroup():
    z, w = 0.3 + 0.1j, -0.5 + 0.2j
    a, b = H.to_affine(L.g_minus(z, w))
    assert abs(a + 2j * z) < 1e-15 and abs(b - np.exp(-1j * z) * w) < 1e-15


# -- Hitchin sigma ----------------------------------------------------------------------------

def test_sigma_values():
    assert H.hitchin_sigma(H.SurfPoint(1 + 0j, 1 + 0j)) == 2
    assert H.hitchin_sigma(H.SurfPoint(1 + 0j, 0j)) == 0


def test_sigma_from_pairing():
    rng = R(4)
    for _ in range(20):
        p = H.SurfPoint(rc(rng), rc(rng))
        assert abs(H.sigma_from_pairing(p) - H.hitchin_sigma(p)) < 1e-12


def test_sigma_matrix_antisymmetric():
    S = H.sigma_matrix(2 + 1j)
    assert np.allclose(S, -S.T)


# -- psi and its graph ---------------------------------------------------------------------------

def test_psi_at_origin():
    u1, u2 = H.psi_map(0j, 0j)
    assert abs(u1 + math.log(2)) < 1e-15 and abs(u2 - (1j * math.pi - math.log(2))) < 1e-15


def test_psi_in_z_coordinates():
    rng = R(5)
    for _ in range(50):
        z1, z2 = rc(rng), rc(rng)
        w1, w2 = H.psi_z(z1, z2)
        R2 = abs(z1) ** 2 + abs(z2) ** 2
        assert abs(abs(w1) ** 2 + abs(w2) ** 2 - 1 / R2) < 1e-12 * max(1, 1 / R2)


def test_psi_map_matches_z_form():
    rng = R(6)
    v1, v2 = rc(rng), rc(rng)
    u1, u2 = H.psi_map(v1, v2)
    w1, w2 = H.psi_z(np.exp(v1), np.exp(v2))
    assert abs(np.exp(u1) - w1) < 1e-12 and abs(np.exp(u2) - w2) < 1e-12


def test_graph_at_origin():
    g = H.graph_psi(0j, 0j)
    assert np.allclose(g, (0, 0, 0, -math.log(2)), atol=1e-15)


@given(cplx, cplx)
def test_graph_consistency(v1, v2):
    assert H.graph_consistency(v1, v2) < 1e-9


def test_graph_large_shear_no_overflow():
    g = H.graph_psi(0j, 400 + 0j)
    assert all(np.isfinite(complex(c)) for c in g)


def test_log_coords():
    c = H.LogCoords.from_vu(0j, 0j, 1 + 0j, 2 + 0j)
    assert c.x1 == 1 - 1j * math.pi and c.x2 == 2 - 1j * math.pi


# -- dilogarithm ----------------------------------------------------------------------------------

@given(cplx)
def test_li2_matches_mpmath(w):
    ref = complex(mpmath.polylog(2, w))
    assert abs(H.li2(w) - ref) < 1e-13 * max(1, abs(ref))


@pytest.mark.parametrize("w", [0, 1, -1, 0.5, 2, 5, -10, 1j, 0.5 + 0.5j, 1 + 1e-9j])
def test_li2_special_points(w):
    ref = complex(mpmath.polylog(2, w))
    if isinstance(w, (int, float)) and w > 1:
        ref = ref.conjugate() if ref.imag > 0 else ref  # limit from below
    assert abs(H.li2(w) - ref) < 1e-13 * max(1, abs(ref))


def test_li2_closed_forms():
    assert abs(H.li2(-1) + math.pi ** 2 / 12) < 1e-15
    assert abs(H.li2(0.5) - (math.pi ** 2 / 12 - math.log(2) ** 2 / 2)) < 1e-15


def test_softplus_integral_at_zero():
    assert abs(H.softplus_integral(0.0) - math.pi ** 2 / 12) < 1e-10
    assert abs(H.softplus_integral_quad(0.0) - math.pi ** 2 / 12) < 1e-10


@pytest.mark.parametrize("s", np.linspace(-20, 20, 9))
def test_softplus_against_quadrature(s):
    assert abs(H.softplus_integral(s) - H.softplus_integral_quad(s)) < 1e-10 * max(1, abs(s) ** 2)


# -- potential -------------------------------------------------------------------------------------

def test_potential_at_origin():
    assert abs(H.potential_f(0j, 0j) - math.pi ** 2 / 24) < 1e-12


@given(cplx, cplx)
def test_potential_real(v1, x1):
    assert abs(H.potential_f_complex(v1, x1).imag) < 1e-12 * max(1, abs(H.potential_f_complex(v1, x1)))


@given(cplx, cplx)
def test_potential_v1_dependence(v1, x1):
    diff = H.potential_f(v1, x1) - H.potential_f(0j, x1)
    ref = 0.5 * (v1 * np.conj(v1) + np.conj(v1) * x1 + np.conj(x1) * v1).real
    assert abs(diff - ref) < 1e-12 * max(1, abs(ref))


def test_generating_property_grid():
    rep = H.generating_check(H.default_grid(10), h=1e-5)
    assert rep.max_residual < 1e-6 and rep.per_point.shape == (100,)
    assert rep.realness < 1e-12


def test_imaginary_directions_consistent():
    # f depends on v1 and x1 through real combinations only; moving along i R v1 changes f
    # in agreement with Im-part of the graph coefficient
    grid = [(1j * t, 0.2 + 0j) for t in np.linspace(-1, 1, 5)]
    assert H.generating_check(grid).max_residual < 1e-6


def test_path_integral_cross_check():
    rng = R(7)
    for _ in range(5):
        P, Q = (rc(rng), rc(rng)), (rc(rng), rc(rng))
        assert H.path_integral_check(P, Q) < 1e-6


def test_path_integral_quad_oracle():
    # independent adaptive quadrature of Re(alpha) along the segment
    P, Q = (0.3 + 0.2j, -0.4 + 0.1j), (-0.5 + 0.1j, 0.6 - 0.3j)
    p = np.array([P[0].real, P[0].imag, P[1].real, P[1].imag])
    q = np.array([Q[0].real, Q[0].imag, Q[1].real, Q[1].imag])
    val, _ = integrate.quad(lambda t: H.alpha_real_coeffs(q + t * (p - q)) @ (p - q), 0, 1, epsabs=1e-13)
    assert abs(H.f_real(p) - H.f_real(q) - val) < 1e-10


# -- Lagrangian check -------------------------------------------------------------------------------

def test_graph_re_lagrangian():
    rep = H.graph_lagrangian_check(50, seed=0)
    assert rep.re_max < 1e-7
    assert rep.im_max > 1e-3  # negative control: not Im-Lagrangian


def test_graph_re_lagrangian_fd_tangents():
    assert H.graph_lagrangian_check(20, seed=1, fd=True).re_max < 1e-7


def test_equal_tangents_give_zero():
    T = H.graph_tangents(0.3 + 0.1j, -0.2 + 0.4j)
    assert H.omega_graph(T[0], T[0]) == 0


# -- grid export -----------------------------------------------------------------------------------

def test_grid_csv(tmp_path):
    path = tmp_path / "grid.csv"
    n = H.write_grid_csv(path, H.default_grid(10))
    rows = list(csv.DictReader(path.open()))
    assert n == 100 and len(rows) == 100
    assert set(rows[0]) == {"v1_re", "v1_im", "x1_re", "x1_im", "f", "residual"}
    assert max(float(r["residual"]) for r in rows) < 1e-6
