"""Aggregated numerical checks behind ``dunkl-landau verify``.

Each check records its worst measured residual against a tolerance.
Required checks decide the exit status. Findings are measurements that
are reported but never fail the run.
"""
from __future__ import annotations

import math
import os
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import angular, dunkl2d, oracle, radial, spectrum
from .angular import Sector

SCHEMA_VERSION = "1"
DEFAULT_SEED = 20240617
SEED_ENV = "DUNKL_LANDAU_SEED"

MU_CONFIGS = ((0.3, 0.7), (1.1, 0.2), (0.5, 0.5))
FIELD_CONFIGS = ((0.0, 1.0), (1.0, 1.0))  # (scaled B, omega)
ORACLE_CONFIGS = (  # (ell, mu1, mu2): alpha from 0.6 to 5, both parities
    (0.0, 0.3, 0.3),
    (1.0, 0.3, 0.7),
    (0.5, 0.2, 0.4),
    (1.5, 1.1, 0.2),
    (2.0, 0.5, 0.5),
    (0.5, 1.5, 1.5),
)
DISCREPANCY_FIELDS = (0.0, 0.5, 1.0)


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float
    required: bool = True
    detail: dict = field(default_factory=dict)
    comparison: str = "<="

    @property
    def passed(self) -> bool:
        if self.comparison == "<=":
            return bool(self.residual <= self.tolerance)
        return bool(self.residual >= self.tolerance)

    def as_dict(self):
        out = asdict(self)
        out["passed"] = self.passed
        return out


def resolve_seed(seed=None) -> int:
    if seed is not None:
        return int(seed)
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def random_polynomials(seed: int, count: int = 50, max_degree: int = 8):
    rng = np.random.default_rng(seed)
    return [dunkl2d.DunklPolynomial2D.random(rng, int(rng.integers(1, max_degree + 1))) for _ in range(count)]


# --- individual suites -------------------------------------------------------

def operator_identity_checks(seed: int, count: int = 50):
    polys = random_polynomials(seed, count)
    worst: dict[str, float] = {}
    jh = 0.0
    split = {}
    refl = {}
    reversed_ = {}
    for mu1, mu2 in MU_CONFIGS:
        params = dunkl2d.DunklParams(mu1, mu2)
        for p in polys:
            for k, v in dunkl2d.identity_residuals(p, params).items():
                worst[k] = max(worst.get(k, 0.0), v)
            for k, v in dunkl2d.reversed_orientation_residuals(p, params).items():
                reversed_[k] = max(reversed_.get(k, 0.0), v)
            for b, w in FIELD_CONFIGS:
                for k, v in dunkl2d.commutator_split(p, params, b, w).items():
                    key = f"{k} (b={b:g})"
                    split[key] = max(split.get(key, 0.0), v)
                jh = max(jh, dunkl2d.hamiltonian_commutator_check(p, params, b, w).max_abs_coeff())
                for k, v in dunkl2d.reflection_commutator_residuals(p, params, b, w).items():
                    key = f"[{k},H] (b={b:g})"
                    refl[key] = max(refl.get(key, 0.0), v)
    checks = [
        Check("dunkl_identities", max(worst.values()), 1e-11, detail=worst),
        Check("jh_commutator", jh, 1e-11, detail={"polynomials": count, "mu_configs": len(MU_CONFIGS)}),
    ]
    findings = {
        "jh_commutator_split": split,
        "reflection_commutators": refl,
        "reversed_orientation_residuals": reversed_,
    }
    return checks, findings


def polar_form_checks(seed: int):
    rng = np.random.default_rng(seed + 1)
    worst_lap = worst_j2 = 0.0
    for mu1, mu2 in MU_CONFIGS:
        params = dunkl2d.DunklParams(mu1, mu2)
        p = dunkl2d.DunklPolynomial2D.random(rng, 4)
        phi = rng.uniform(0, 2 * np.pi, 12)
        phi = phi[dunkl2d.distance_to_axes(phi) > 0.05]
        samples = np.column_stack([rng.uniform(0.5, 1.5, len(phi)), phi])
        lap, j2 = dunkl2d.polar_laplacian_consistency(p, params, samples)
        worst_lap, worst_j2 = max(worst_lap, lap), max(worst_j2, j2)
    return [
        Check("polar_laplacian", worst_lap, 1e-5),
        Check("j_squared_pointwise", worst_j2, 1e-5),
    ]


def angular_checks(ell_max: float = 4.0):
    eig = gram = 0.0
    for mu1, mu2 in MU_CONFIGS:
        for eps in (1, -1):
            for s1 in (1, -1):
                sectors = angular.sectors_for_parity(eps, ell_max, s1)
                for s in sectors:
                    eig = max(eig, angular.eigen_residual(s, mu1, mu2))
                g = angular.gram_matrix(sectors, mu1, mu2)
                gram = max(gram, float(np.max(np.abs(g - np.eye(len(sectors))))))
    return [
        Check("angular_eigen", eig, 1e-6),
        Check("angular_gram", gram, 1e-8),
    ]


def _radial_sectors():
    return [Sector(1, 1, 0.0), Sector(1, 1, 2.0), Sector(1, -1, 0.5), Sector(-1, 1, 1.5)]


def su11_checks(seed: int, n_max: int = 6):
    rng = np.random.default_rng(seed + 2)
    comm = o0 = cas = ladder = resid = 0.0
    for mu1, mu2 in MU_CONFIGS:
        for s in _radial_sectors():
            rep = radial.Su11Realization(s, mu1, mu2)
            for _ in range(5):
                f = radial.random_quasi_polynomial(rng, 2 * s.ell)
                comm = max(comm, max(radial.commutator_residuals(rep, f).values()))
            k = rep.bargmann_index
            phase = radial.ladder_phase(s, mu1, mu2)
            for n in range(n_max + 1):
                rn = radial.radial_eigenfunction(n, s.ell, mu1, mu2)
                scale = rn.max_abs_coeff()
                o0 = max(o0, (rep.o0(rn) - rn * (n + k)).max_abs_coeff() / scale)
                cas = max(cas, (rep.casimir(rn) - rn * (k * (k - 1))).max_abs_coeff() / scale)
                e_t = radial.exact_e_tilde(n, s.ell, mu1, mu2)
                resid = max(resid, radial.radial_residual(rn, s, mu1, mu2, e_t).max_abs_coeff() / scale)
                ladder = max(ladder, *radial.ladder_coefficient_check(n, s, mu1, mu2, phase))
    return [
        Check("su11_commutators", comm, 1e-11),
        Check("su11_o0_eigen", o0, 1e-10),
        Check("su11_casimir", cas, 1e-10),
        Check("su11_ladder", ladder, 1e-10),
        Check("radial_residual", resid, 1e-10),
    ]


def normalization_checks(n_max: int = 4, ell_max: float = 4.0):
    worst = 0.0
    for mu1, mu2 in MU_CONFIGS:
        ell = 0.0
        while ell <= ell_max:
            g = radial.radial_gram_matrix(ell, mu1, mu2, n_max)
            worst = max(worst, float(np.max(np.abs(g - np.eye(n_max + 1)))))
            ell += 0.5
    return [Check("radial_gram", worst, 1e-8)]


def oracle_checks(n_levels: int = 6, grid: oracle.RadialGrid | None = None):
    grid = grid or oracle.RadialGrid()
    worst = 0.0
    detail = {}
    for ell, mu1, mu2 in ORACLE_CONFIGS:
        alpha = 2 * ell + mu1 + mu2
        levels = oracle.oracle_spectrum(ell, mu1, mu2, n_levels, grid)
        dev = max(abs(a - b) for a, b in zip(levels, oracle.exact_levels(alpha, n_levels)))
        detail[f"alpha={alpha:g}"] = dev
        worst = max(worst, dev)
    factors = []
    for ell, mu1, mu2 in (ORACLE_CONFIGS[0], ORACLE_CONFIGS[-1]):
        factors += oracle.convergence_factors(2 * ell + mu1 + mu2, 4)
    lo, hi = min(factors), max(factors)
    return [
        Check("oracle_levels", worst, 5e-4, detail=detail),
        Check("oracle_convergence_low", lo, 3.8, comparison=">=", detail={"factors": factors}),
        Check("oracle_convergence_high", hi, 4.2, detail={"factors": factors}),
    ]


def reduction_checks(params: spectrum.ModelParams):
    b0 = params.replace(B=0.0)
    worst_b0 = 0.0
    for s in spectrum.enumerate_sectors(3.0):
        for n in range(6):
            a = spectrum.energy_chain(b0, n, s).energy_squared
            b = spectrum.energy_paper_verbatim(b0, n, s).energy_squared
            worst_b0 = max(worst_b0, abs(a - b) / max(1.0, abs(a)))
    tiny = params.replace(mu1=1e-8, mu2=1e-8, B=max(params.B, 1.0))
    worst_cl = 0.0
    for s in spectrum.enumerate_sectors(3.0):
        for n in range(6):
            got = spectrum.energy_chain(tiny, n, s).E_plus
            worst_cl = max(worst_cl, abs(got - classical_landau_energy(tiny, n, s)))
    return [
        Check("b0_chain_equals_verbatim", worst_b0, 1e-12),
        Check("classical_limit", worst_cl, 1e-6),
    ]


def classical_landau_energy(params: spectrum.ModelParams, n: int, sector: Sector) -> float:
    """Klein-Gordon oscillator Landau levels without reflection terms."""
    p = params
    big = spectrum.omega_eff(p)
    k0 = sector.ell + 0.5
    lam0 = sector.lambda_sign * 2 * sector.ell
    bracket = 4 * (n + k0) + 2 * p.omega / big - p.e_abs * p.B / (p.hbar * p.m * big * p.c) * lam0
    return math.sqrt((p.m * p.c**2) ** 2 + p.hbar * p.m * big * p.c**2 * bracket)


def oracle_energy_checks(params: spectrum.ModelParams, grid=None):
    """Chain energies against oracle-assembled ones, at the configured B and at B = 1."""
    s = Sector(1, 1, 1.0, -1)
    fields = sorted({params.B, 1.0})
    checks, findings = [], {}
    for b in fields:
        rep = oracle.oracle_vs_chain(params.replace(B=b), s, 5, grid)
        worst = max(abs(r["dE_chain"]) / r["E_tolerance"] for r in rep.rows)
        checks.append(Check(f"oracle_energy_chain_B={b:g}", worst, 1.0, detail={"rows": rep.rows}))
        findings[f"oracle_energy_verbatim_max_deviation_B={b:g}"] = rep.max_verbatim_deviation
        findings[f"oracle_energy_chain_max_deviation_B={b:g}"] = rep.max_chain_deviation
    return checks, findings


def odd_sector_eigenvalue_finding(mu1=0.3, mu2=0.7, n_max=3):
    """Odd-parity O_0 eigenvalue n + k against the shortcut value n + 1."""
    rows = []
    for ell in (0.5, 1.5):
        s = Sector(1, -1, ell)
        rep = radial.Su11Realization(s, mu1, mu2)
        for n in range(n_max + 1):
            rn = radial.radial_eigenfunction(n, ell, mu1, mu2)
            measured = radial.inner(rep.o0(rn), rn, mu1, mu2)
            rows.append({"ell": ell, "n": n, "quarter_e_tilde": measured, "n_plus_1": n + 1,
                         "difference": measured - (n + 1)})
    return {"rows": rows, "max_abs_difference": max(abs(r["difference"]) for r in rows)}


def discrepancy_table(params: spectrum.ModelParams, n_max: int = 2, ell_max: float = 2.0):
    rows = []
    for b in DISCREPANCY_FIELDS:
        rows += spectrum.discrepancy_rows(params.replace(B=b), spectrum.enumerate_sectors(ell_max), n_max)
    return rows


# --- driver ------------------------------------------------------------------

@dataclass
class VerificationReport:
    checks: list
    findings: dict
    discrepancy: list
    seed: int
    elapsed: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.required)

    @property
    def failed_required(self):
        return [c.name for c in self.checks if c.required and not c.passed]

    def as_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "seed": self.seed,
            "passed": self.passed,
            "failed_required": self.failed_required,
            "elapsed_seconds": round(self.elapsed, 3),
            "checks": [c.as_dict() for c in self.checks],
            "findings": self.findings,
            "paper_formula_discrepancy": self.discrepancy,
        }


def run_verification(params: spectrum.ModelParams | None = None, seed=None, quick=False) -> VerificationReport:
    """Run every suite. ``quick`` trims sizes for smoke tests."""
    params = params or spectrum.ModelParams()
    seed = resolve_seed(seed)
    t0 = time.perf_counter()
    checks: list[Check] = []
    findings: dict = {}

    c, f = operator_identity_checks(seed, count=8 if quick else 50)
    checks += c
    findings.update(f)
    checks += polar_form_checks(seed)
    checks += angular_checks(ell_max=1.5 if quick else 4.0)
    checks += su11_checks(seed, n_max=3 if quick else 6)
    checks += normalization_checks(n_max=2 if quick else 4, ell_max=1.5 if quick else 4.0)
    grid = oracle.RadialGrid(0.0, 14.0, 4000) if quick else None
    if not quick:
        checks += oracle_checks(grid=grid)
    checks += reduction_checks(params)
    c, f = oracle_energy_checks(params, grid)
    checks += c
    findings.update(f)
    findings["odd_sector_quarter_e_tilde"] = odd_sector_eigenvalue_finding()
    return VerificationReport(checks, findings, discrepancy_table(params), seed, time.perf_counter() - t0)
