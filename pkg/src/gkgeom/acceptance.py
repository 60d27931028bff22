"""Acceptance runner: one PASS/FAIL line per criterion.

Run with ``python -m gkgeom.acceptance``.  Each criterion gathers named cases
from the suites plus a wall-clock budget where one is set.
"""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from . import suites as S


@dataclass
class Criterion:
    number: int
    title: str
    suite: str
    cases: Tuple[str, ...]
    budget: Optional[float] = None
    timing_key: Optional[str] = None


CRITERIA: List[Criterion] = [
    Criterion(1, "pointwise GK battery", "point",
              ("axioms: square, commutation, orthogonality", "generalized metric positive (negative part)"),
              5.0, "wall axioms"),
    Criterion(2, "Manin-triple battery", "point",
              ("triple dimensions n/n and direct-sum rank 2n", "triple isotropy",
               "matched pairs as gauge transforms", "gauge cycle identities"), 10.0, "wall triples"),
    Criterion(3, "Hitchin identity", "point",
              ("Hitchin: -piA g piB = -[I+,I-]g^-1/4", "real part of A+ - B+ equals Q")),
    Criterion(4, "reconstruction roundtrip", "point",
              ("reconstruction roundtrip", "compatibility equations")),
    Criterion(5, "group GK verification", "group",
              ("c0 calibration drift", "d^c+ w+ + d^c- w- on exponential charts",
               "observed order under h/2 (second-order scheme)", "Cartan constant drift",
               "Cartan constant spread over samples", "verify_gk_chart on an exponential chart"), 30.0, "total"),
    Criterion(6, "dressing laws", "group",
              ("factorization roundtrip (+)", "factorization roundtrip (-)",
               "dressing action law", "dressing cocycle law")),
    Criterion(7, "annulus moduli battery", "moduli",
              ("Omega antisymmetry", "horizontal multiplicativity on boundary rows",
               "vertical multiplicativity on boundary rows", "tau^* Omega = conj Omega", "interchange law",
               "inner-arc words on the D- family", "Lambda_Z satisfies the Z row",
               "Lambda_W-bar satisfies the W-bar row"), 20.0, "total"),
    Criterion(8, "bisection Lagrangianity", "moduli",
              ("lambda: Re pullback", "Lambda_Z: Re pullback", "Lambda_W-bar: Re pullback",
               "Lambda_Z: Im pullback = c_Z Omega_Z")),
    Criterion(9, "Hopf potential", "hopf",
              ("generating property on the grid", "path-integral cross-check",
               "int_{-inf}^0 log(1+e^t) dt = pi^2/12", "Gr(psi) is Re-Lagrangian"), 10.0, "total"),
    Criterion(10, "commuting-type deformation", "deform",
              ("deformed structure passes verify_gk_chart", "positivity margin",
               "f = 0 is the identity deformation")),
]

RUNNERS: Dict[str, Callable[[], S.SuiteReport]] = {
    "point": lambda: S.point_suite(100, (1, 2, 3, 4)),
    "group": lambda: S.group_suite(20, 1e-3),
    "moduli": lambda: S.moduli_suite(50),
    "hopf": lambda: S.hopf_suite(10),
    "deform": lambda: S.deform_suite(0.05, 0.1),
}


def run_suites() -> Dict[str, S.SuiteReport]:
    out = {}
    for name, fn in RUNNERS.items():
        t0 = time.perf_counter()
        rep = fn()
        rep.timing["total"] = time.perf_counter() - t0
        out[name] = rep
    return out


def evaluate(c: Criterion, reports: Dict[str, S.SuiteReport]) -> Tuple[bool, str]:
    rep = reports[c.suite]
    by_id = {x.id: x for x in rep.cases}
    missing = [i for i in c.cases if i not in by_id]
    bad = [by_id[i] for i in c.cases if i in by_id and not by_id[i].passed]
    parts = []
    if missing:
        parts.append("missing: " + ", ".join(missing))
    for x in bad:
        parts.append(f"{x.id} = {x.residual:.2e} (tol {x.tolerance:.0e})")
    worst = max((by_id[i] for i in c.cases if i in by_id and by_id[i].kind == "residual"),
                key=lambda x: x.residual / x.tolerance if x.tolerance else float(x.residual > 0), default=None)
    if worst is not None and not bad:
        parts.append(f"worst {worst.id} = {worst.residual:.2e} (tol {worst.tolerance:.0e})")
    ok = not missing and not bad
    if c.budget is not None:
        wall = rep.timing.get(c.timing_key, float("inf"))
        ok_t = wall < c.budget
        ok &= ok_t
        parts.append(f"{wall:.2f} s {'<' if ok_t else '>='} {c.budget:g} s")
    return ok, "; ".join(parts)


def main(argv=None) -> int:
    reports = run_suites()
    all_ok = True
    for c in CRITERIA:
        ok, detail = evaluate(c, reports)
        all_ok &= ok
        print(f"[{'PASS' if ok else 'FAIL'}] {c.number:2d}. {c.title}: {detail}")
    print(f"{'ALL PASS' if all_ok else 'SOME FAILED'}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
