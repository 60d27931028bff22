"""Verification suites shared by the command line and the acceptance runner.

Every suite returns a SuiteReport of cases.  A case is either a residual
(passes when value <= tol) or a margin (passes when value > tol).  Random
numbers come from counted substreams of one seed, so identical arguments
give identical report bodies.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
import time
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

import numpy as np

from . import annulus as An
from . import chart as C
from . import hopf as Hp
from . import lie as L
from . import point as P

ENV_TOL = "GK_DEFAULT_TOL"


@dataclass
class Case:
    id: str
    residual: float
    tolerance: float
    passed: bool
    kind: str = "residual"
    wall: float = 0.0


@dataclass
class SuiteReport:
    suite: str
    seed: int
    config: Dict
    cases: List[Case] = field(default_factory=list)
    constants: Dict[str, float] = field(default_factory=lambda: dict(PINNED))
    info: Dict[str, float] = field(default_factory=dict)
    timing: Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def config_digest(self) -> str:
        blob = json.dumps({"suite": self.suite, "seed": self.seed, **self.config}, sort_keys=True, default=str)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def failures(self) -> List[Case]:
        return [c for c in self.cases if not c.passed]

    def as_dict(self, times: bool = True) -> Dict:
        cases = []
        for c in self.cases:
            d = asdict(c)
            if not times:
                d.pop("wall")
            cases.append(d)
        out = {"suite": self.suite, "seed": self.seed, "config": self.config,
               "config_digest": self.config_digest, "passed": self.passed,
               "constants": self.constants, "info": self.info, "cases": cases}
        if times:
            out["timing"] = self.timing
        return out


class Recorder:
    """Collects cases; a global tolerance override applies to residual cases."""

    def __init__(self, report: SuiteReport, override: Optional[float] = None):
        self.report = report
        self.override = override
        self._t0 = time.perf_counter()

    def residual(self, cid: str, value: float, tol: float) -> Case:
        tol = self.override if self.override is not None else tol
        value = float(value)
        ok = math.isfinite(value) and value <= tol
        return self._add(Case(cid, value, tol, ok, "residual"))

    def margin(self, cid: str, value: float, floor: float) -> Case:
        value = float(value)
        return self._add(Case(cid, value, floor, math.isfinite(value) and value > floor, "margin"))

    def _add(self, case: Case) -> Case:
        now = time.perf_counter()
        case.wall = now - self._t0
        self._t0 = now
        self.report.cases.append(case)
        return case


def substream(seed: int, *counter: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, *counter]))


def env_tol() -> Optional[float]:
    v = os.environ.get(ENV_TOL)
    return float(v) if v else None


def _drift(measured: float, pinned: float) -> float:
    return abs(measured - pinned) / abs(pinned)


PIN_DRIFT = 1e-4
PINNED = {"c0": C.DC_CALIBRATION_C0, "c": L.CARTAN_C, "c_Z": L.C_Z, "c_Z_annulus": An.ANNULUS_C_Z}


# -- gk-point ------------------------------------------------------------------------------

def point_suite(seeds: int = 100, n_values=(1, 2, 3, 4), tol: Optional[float] = None,
                seed: int = 0) -> SuiteReport:
    rep = SuiteReport("point", seed, {"seeds": seeds, "n": list(n_values), "tol": tol})
    r = Recorder(rep, tol)
    worst: Dict[str, float] = {}
    dims_ok = True
    t0 = time.perf_counter()

    def bump(key, v):
        worst[key] = max(worst.get(key, 0.0), float(v))

    for n in n_values:
        for s in range(seeds):
            b = P.random_bihermitian(substream(seed, 1, n, s), n)
            ax = P.gk_axioms_check(P.gualtieri_map(b))
            bump("axioms", max(ax.square_A, ax.square_B, ax.commutator, ax.orthogonality))
            bump("metric not positive", max(0.0, -ax.min_metric_eig))
            bump("bihermitian", max(b.residuals().values()))
    rep.timing["wall axioms"] = time.perf_counter() - t0
    r.residual("axioms: square, commutation, orthogonality", worst["axioms"], 1e-10)
    r.residual("bihermitian point invariants", worst["bihermitian"], 1e-10)
    r.residual("generalized metric positive (negative part)", worst["metric not positive"], 0.0)

    t0 = time.perf_counter()
    for n in n_values:
        for s in range(seeds):
            b = P.random_bihermitian(substream(seed, 2, n, s), n)
            t = P.manin_triples(b)
            rp = t.report
            dims_ok &= all(rp[f"dim {k}"] == n for k in ("A+", "B+", "A-", "B-"))
            dims_ok &= rp["rank A+ + B+"] == 2 * n and rp["rank A- + B-"] == 2 * n
            bump("isotropy", max(rp[f"isotropy {k}"] for k in ("A+", "B+", "A-", "B-")))
            bump("matched", max(rp[f"matched {k}"] for k in ("A+", "B+", "A-", "B-")))
            bump("gauge cycle", max(P.gauge_cycle_check(b, t)))
            piA, piB, Q = P.poisson_tensors(b)
            bump("hitchin", np.abs(Q - P.hitchin_real(b)).max())
            bump("Re sigma", np.abs(P.hitchin_real_from_triples(b, t) - Q).max())
            rec = P.reconstruct_metric(piA, piB, b.Iplus, b.Iminus)
            bump("roundtrip", max(np.abs(rec.g - b.g).max(), np.abs(rec.omega_plus - b.omega_plus).max(),
                                  np.abs(rec.omega_minus - b.omega_minus).max()))
            bump("compat", max(rec.residuals.values()))
    rep.timing["wall triples"] = time.perf_counter() - t0
    r.margin("triple dimensions n/n and direct-sum rank 2n", 1.0 if dims_ok else 0.0, 0.5)
    r.residual("triple isotropy", worst["isotropy"], 1e-10)
    r.residual("matched pairs as gauge transforms", worst["matched"], 1e-9)
    r.residual("gauge cycle identities", worst["gauge cycle"], 1e-9)
    r.residual("Hitchin: -piA g piB = -[I+,I-]g^-1/4", worst["hitchin"], 1e-12)
    r.residual("real part of A+ - B+ equals Q", worst["Re sigma"], 1e-9)
    r.residual("reconstruction roundtrip", worst["roundtrip"], 1e-12)
    r.residual("compatibility equations", worst["compat"], 1e-10)
    return rep


# -- hopf-lie ------------------------------------------------------------------------------

def group_suite(samples: int = 20, h: float = 1e-3, seed: int = 0, tol: Optional[float] = None,
                factor_seeds: int = 200, law_seeds: int = 50) -> SuiteReport:
    rep = SuiteReport("group", seed, {"samples": samples, "h": h, "tol": tol})
    r = Recorder(rep, tol)
    cfg = C.FDConfig(h=h)

    # calibrations first
    c0 = C.calibrate_c0(cfg)
    rep.constants["c0"] = c0
    r.residual("c0 calibration drift", _drift(c0, C.DC_CALIBRATION_C0), PIN_DRIFT)
    t0 = time.perf_counter()
    fit = L.cartan_form_check(samples, cfg, seed=seed)
    rep.timing["wall cartan"] = time.perf_counter() - t0
    rep.constants["c"] = fit.c
    r.residual("Cartan constant drift", _drift(fit.c, L.CARTAN_C), PIN_DRIFT)
    r.residual("Cartan constant spread over samples", fit.spread, 1e-4)
    r.residual("Cartan fit residual", fit.fit_residual, 1e-6)
    r.residual("Cartan form alternation", fit.alternation, 1e-8)
    r.residual("d^c+ w+ + d^c- w- on exponential charts", fit.dc_sum, 1e-5)
    r.margin("observed order under h/2 (second-order scheme)", math.log2(fit.order_ratio), 1.9)

    k0 = L.random_k(substream(seed, 3))
    gF, IpF, ImF, _ = L.chart_fields(k0)
    pts = substream(seed, 4).uniform(-0.4, 0.4, (6, 4))
    gk = C.verify_gk_chart(gF, IpF, ImF, pts, cfg)
    r.residual("verify_gk_chart on an exponential chart", gk.worst, 1e-5)
    inv = L.involutivity_on_group(k0, pts[:3], cfg)
    r.residual("L_A and L_B involutive for the Cartan H", max(inv), 1e-5)

    worst = 0.0
    for s in range(100):
        k = L.random_k(substream(seed, 5, s))
        ax = P.gk_axioms_check(P.gualtieri_map(L.invariant_gk_at(k)))
        worst = max(worst, ax.square_A, ax.square_B, ax.commutator, ax.orthogonality, -ax.min_metric_eig)
    r.residual("invariant structure passes the pointwise axioms", worst, 1e-10)

    for sign in "+-":
        worst = 0.0
        for s in range(factor_seeds):
            g = L.random_g(substream(seed, 6, ord(sign), s))
            b, k = L.factorize(g, sign)
            worst = max(worst, (b * k.g()).dist(g), L.subgroup_residual(b, sign))
        r.residual(f"factorization roundtrip ({sign})", worst, 1e-12)

    act, coc = 0.0, 0.0
    for s in range(law_seeds):
        rng = substream(seed, 7, s)
        k = L.random_k(rng)
        a, b = L.random_subgroup(rng, "-"), L.random_subgroup(rng, "-")
        k1, x1 = L.dressing(b, k, "-")
        k2, x2 = L.dressing(a, k1, "-")
        k3, x3 = L.dressing(a * b, k, "-")
        act = max(act, k2.g().dist(k3.g()))
        coc = max(coc, x3.dist(x2 * x1))
    r.residual("dressing action law", act, 1e-10)
    r.residual("dressing cocycle law", coc, 1e-10)

    th, dth = 0.0, 0.0
    for s in range(20):
        rng = substream(seed, 8, s)
        g = L.random_g(rng)
        th = max(th, L.theta(L.theta(g)).dist(g))
        a, b = An.random_algvec(rng), An.random_algvec(rng)
        dth = max(dth, abs(L.pairing(L.dtheta(a), L.dtheta(b)) - np.conj(L.pairing(a, b))))
    r.residual("theta is an involution", th, 1e-13)
    r.residual("d theta conjugates the pairing", dth, 1e-12)

    anti, cz = 0.0, []
    for s in range(law_seeds):
        rng = substream(seed, 9, s)
        b, k = L.random_subgroup(rng, "-", 0.5), L.random_k(rng)
        x1, x2 = L.random_tangent(rng, "-"), L.random_tangent(rng, "-")
        anti = max(anti, abs(L.omega_Z_eval(b, k, x1, x2) + L.omega_Z_eval(b, k, x2, x1)))
    for s in range(5):
        im = L.im_form_check(L.random_k(substream(seed, 10, s)))
        cz.append(im)
    r.residual("Omega_Z antisymmetry", anti, 1e-9)
    cval = float(np.mean([c.c_Z for c in cz]))
    rep.constants["c_Z"] = cval
    r.residual("IM form: c_Z drift", _drift(cval, L.C_Z), PIN_DRIFT)
    r.residual("IM form: anchor = c_Z pi_Z(mu)", max(c.relative_residual for c in cz), 1e-6)
    return rep


# -- annulus-moduli ---------------------------------------------------------------------------

def moduli_suite(seeds: int = 50, seed: int = 0, tol: Optional[float] = None) -> SuiteReport:
    rep = SuiteReport("moduli", seed, {"seeds": seeds, "tol": tol})
    r = Recorder(rep, tol)

    # inner-arc words first: three parametrized families against their rows
    w_dm, w_z, w_w = 0.0, 0.0, 0.0
    for s in range(20):
        rng = substream(seed, 20, s)
        rho, (z, y, u, yp, up) = An.d_minus_family(rng)
        arcs = An.inner_arc_holonomies(rho)
        w_dm = max(w_dm, max(a.dist(b) for a, b in zip(arcs, (y, u, yp, up))),
                   max(An.boundary_check(rho, "D-").residuals))
        k = L.random_k(rng)
        b, a = L.random_subgroup(rng, "-", 0.5), L.random_subgroup(rng, "+", 0.5)
        w_z = max(w_z, max(An.boundary_check(An.lambda_Z_element(b, k), "Z").residuals))
        w_w = max(w_w, max(An.boundary_check(An.lambda_W_element(a, k), "W-bar").residuals))
    r.residual("inner-arc words on the D- family", w_dm, 1e-12)
    r.residual("Lambda_Z satisfies the Z row", w_z, 1e-12)
    r.residual("Lambda_W-bar satisfies the W-bar row", w_w, 1e-12)
    if not all(c.passed for c in rep.cases):
        rep.info["aborted"] = 1.0
        return rep

    anti, tau, tinv, inter, assoc, unit = 0.0, 0.0, 0.0, 0.0, 0.0, 0.0
    for s in range(seeds):
        rng = substream(seed, 21, s)
        rho = An.random_rep(rng)
        d, e = An.random_tangent(rng), An.random_tangent(rng)
        w = An.omega_annulus(rho, d, e)
        anti = max(anti, abs(w + An.omega_annulus(rho, e, d)))
        tw = An.omega_annulus(An.tau_real_structure(rho), An.tau_tangent(rho, d), An.tau_tangent(rho, e))
        tau = max(tau, abs(tw - np.conj(w)))
        tinv = max(tinv, An.tau_real_structure(An.tau_real_structure(rho)).dist(rho))
        c, z, v, dd = An.random_quadruple(rng)
        inter = max(inter, An.mult_v(An.mult_h(c, z), An.mult_h(v, dd)).dist(
            An.mult_h(An.mult_v(c, v), An.mult_v(z, dd))))
        r2 = An.composable_h(rng, rho)
        r3 = An.composable_h(rng, r2)
        assoc = max(assoc, An.mult_h(An.mult_h(rho, r2), r3).dist(An.mult_h(rho, An.mult_h(r2, r3))))
        unit = max(unit, An.mult_h(rho, An.unit_h(rho, "right")).dist(rho),
                   An.mult_h(An.unit_h(rho, "left"), rho).dist(rho),
                   An.mult_v(rho, An.unit_v(rho, "top")).dist(rho),
                   An.mult_v(An.unit_v(rho, "bottom"), rho).dist(rho))
    r.residual("Omega antisymmetry", anti, 1e-12)
    r.residual("tau^* Omega = conj Omega", tau, 1e-10)
    r.residual("tau is an involution", tinv, 1e-12)
    r.residual("interchange law", inter, 1e-12)
    r.residual("horizontal associativity", assoc, 1e-12)
    r.residual("unit laws", unit, 1e-12)

    for st in "hv":
        worst, free = 0.0, 0.0
        for s in range(seeds):
            rng = substream(seed, 22, ord(st), s)
            lab = An.LABEL_NAMES[s % len(An.LABEL_NAMES)]
            rho, rp, (d, dp), (e, ep) = An.constrained_pair(rng, st, lab)
            worst = max(worst, An.multiplicativity_residual(rho, rp, d, dp, e, ep, st))
        rng = substream(seed, 23, ord(st))
        rho = An.random_rep(rng)
        if st == "h":
            rp, d = An.composable_h(rng, rho), An.random_tangent(rng)
            e = An.random_tangent(rng)
            dp, ep = An.composable_tangent_h(rng, d), An.composable_tangent_h(rng, e)
        else:
            rp, d = An.composable_v(rng, rho), An.random_tangent(rng)
            e = An.random_tangent(rng)
            dp, ep = An.composable_tangent_v(rng, d), An.composable_tangent_v(rng, e)
        free = An.multiplicativity_residual(rho, rp, d, dp, e, ep, st)
        name = "horizontal" if st == "h" else "vertical"
        r.residual(f"{name} multiplicativity on boundary rows", worst, 1e-10)
        r.margin(f"{name} defect off the boundary rows (negative control)", free, 1e-6)

    lam = An.lagrangian_residual("lambda", seeds, seed=seed)
    lz = An.lagrangian_residual("Z", min(seeds, 20), seed=seed + 1, c_Z=An.ANNULUS_C_Z)
    lw = An.lagrangian_residual("W-bar", min(seeds, 20), seed=seed + 2)
    rep.constants["c_Z_annulus"] = lz.im_ratio
    rep.info["W-bar Im ratio"] = lw.im_ratio
    r.residual("lambda: Re pullback", lam.re_max, 1e-8)
    r.residual("Lambda_Z: Re pullback", lz.re_max, 1e-7)
    r.residual("Lambda_W-bar: Re pullback", lw.re_max, 1e-7)
    r.residual("Lambda_Z: Im pullback = c_Z Omega_Z", lz.im_residual, 1e-6)
    r.residual("Lambda_Z: pinned constant drift", _drift(lz.im_ratio, An.ANNULUS_C_Z), PIN_DRIFT)
    return rep


# -- hopf-surface ------------------------------------------------------------------------------

def hopf_suite(grid: int = 10, seed: int = 0, tol: Optional[float] = None, csv_path=None) -> SuiteReport:
    rep = SuiteReport("hopf", seed, {"grid": grid, "tol": tol})
    r = Recorder(rep, tol)
    r.residual("int_{-inf}^0 log(1+e^t) dt = pi^2/12", abs(Hp.softplus_integral(0.0) - math.pi ** 2 / 12), 1e-10)
    quad = max(abs(Hp.softplus_integral(s) - Hp.softplus_integral_quad(s)) for s in np.linspace(-8, 8, 17))
    r.residual("dilogarithm against quadrature", quad, 1e-10)
    r.residual("f(0,0) = pi^2/24", abs(Hp.potential_f(0j, 0j) - math.pi ** 2 / 24), 1e-12)
    pts = Hp.default_grid(grid)
    gen = Hp.generating_check(pts)
    r.residual("generating property on the grid", gen.max_residual, 1e-6)
    r.residual("f is real", gen.realness, 1e-12)
    rng = substream(seed, 30)
    rand_c = lambda: complex(*rng.uniform(-1, 1, 2))
    path = max(Hp.path_integral_check((rand_c(), rand_c()), (rand_c(), rand_c())) for _ in range(5))
    r.residual("path-integral cross-check", path, 1e-6)
    lag = Hp.graph_lagrangian_check(50, seed=seed)
    r.residual("Gr(psi) is Re-Lagrangian", lag.re_max, 1e-7)
    r.margin("Im of the form on Gr(psi) (negative control)", lag.im_max, 1e-3)
    cons = max(Hp.graph_consistency(complex(*rng.uniform(-2, 2, 2)), complex(*rng.uniform(-2, 2, 2)))
               for _ in range(50))
    r.residual("psi_map against graph_psi", cons, 1e-9)
    sig, inv_m, inv_p, law = 0.0, 0.0, 0.0, 0.0
    for s in range(20):
        rng = substream(seed, 31, s)
        p = Hp.SurfPoint(complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2)))
        sig = max(sig, abs(Hp.sigma_from_pairing(p) - Hp.hitchin_sigma(p)),
                  abs(Hp.hitchin_sigma(p, "-") + Hp.hitchin_sigma(p, "+")))
        g = L.random_g(rng)
        inv_m = max(inv_m, Hp.project_minus(g * L.random_subgroup(rng, "-")).dist(Hp.project_minus(g)))
        inv_p = max(inv_p, Hp.project_plus(L.random_subgroup(rng, "+") * g).dist(Hp.project_plus(g)))
        g1 = (complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2)))
        g2 = (complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2)))
        for which in ("A-", "B-"):
            two = Hp.groupoid_actions(g1, Hp.groupoid_actions(g2, p, which), which)
            one = Hp.groupoid_actions(Hp.semidirect_mult(g1, g2), p, which)
            law = max(law, two.dist(one))
        for which in ("A+", "B+"):
            two = Hp.groupoid_actions(g2, Hp.groupoid_actions(g1, p, which), which)
            one = Hp.groupoid_actions(Hp.semidirect_mult_op(g1, g2), p, which)
            law = max(law, two.dist(one))
    r.residual("sigma from the pairing = 2 z1 z2", sig, 1e-10)
    r.residual("p- is right G- invariant", inv_m, 1e-12)
    r.residual("p+ is left G+ invariant", inv_p, 1e-12)
    r.residual("affine action laws", law, 1e-12)
    if csv_path is not None:
        rep.info["csv rows"] = Hp.write_grid_csv(csv_path, pts)
    return rep


# -- commuting deformation --------------------------------------------------------------------

def deform_suite(t: float = 0.05, eps: float = 0.1, h: float = 1e-2, seed: int = 0,
                 tol: Optional[float] = None, n_points: int = 8) -> SuiteReport:
    rep = SuiteReport("deform", seed, {"t": t, "eps": eps, "h": h, "tol": tol})
    r = Recorder(rep, tol)
    cfg = C.FDConfig(h=h)
    base = C.flat_commuting_base()
    pts = substream(seed, 40).uniform(-1.2, 1.2, (n_points, 4))
    res = C.commuting_deform(C.gaussian_potential(eps), t, base, pts, cfg)
    r.residual("deformed structure passes verify_gk_chart", res.report.worst, 1e-5)
    r.margin("positivity margin", res.min_eig, 0.0)
    rep.info["same-sign variant pluriclosed residual"] = res.same_sign_pluriclosed
    zero = C.commuting_deform(C.scalar_field(4, lambda x: 0.0 * x[..., 0]), t, base, pts, cfg)
    ip = C.constant_field(4, base.Iplus())
    g0 = base.g(pts)
    ident = max(float(np.abs(zero.g(pts) - g0).max()),
                float(np.abs(zero.omega_plus(pts) - C.hermitian_form_field(base.g, ip)(pts)).max()))
    r.residual("f = 0 is the identity deformation", ident, 0.0)
    return rep


SUITES = {"point": point_suite, "group": group_suite, "moduli": moduli_suite,
          "hopf": hopf_suite, "deform": deform_suite}
