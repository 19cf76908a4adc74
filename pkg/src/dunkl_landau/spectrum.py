"""Physical parameters and assembly of the Landau-level energies.

Two routes are kept side by side:

* ``energy_chain`` takes the radial eigenvalue e_tilde = 4(n + k) and
  converts it to E^2 through the sector's shift, following the radial
  reduction step by step;
* ``energy_paper_verbatim`` evaluates the reference closed form, whose
  magnetic term is |e| B X / (hbar m Omega c) with X = ell + mu1 + mu2
  (even parity) or (ell + mu1)(ell + mu2) (odd parity).

They coincide at B = 0 and differ in the magnetic term otherwise.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .angular import Sector, angular_eigenvalue, f_eval
from .radial import radial_eval

CHAIN = "derivation-chain"
VERBATIM = "paper-verbatim"


@dataclass(frozen=True)
class ModelParams:
    m: float = 1.0
    c: float = 1.0
    hbar: float = 1.0
    omega: float = 1.0
    B: float = 0.0
    e_abs: float = 1.0
    mu1: float = 0.3
    mu2: float = 0.7

    def __post_init__(self):
        for name in ("m", "c", "hbar", "omega", "e_abs", "mu1", "mu2"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a finite positive number, got {value!r}")
        if not (math.isfinite(self.B) and self.B >= 0):
            raise ValueError(f"B must be >= 0, got {self.B!r}")

    @property
    def big_omega(self) -> float:
        return omega_eff(self)

    @property
    def length_scale(self) -> float:
        """sqrt(hbar / (m Omega)); r = rho / length_scale."""
        return math.sqrt(self.hbar / (self.m * self.big_omega))

    def replace(self, **changes):
        data = asdict(self)
        data.update(changes)
        return ModelParams(**data)


def omega_eff(params: ModelParams) -> float:
    """Omega = sqrt(omega^2 + |e|^2 B^2 / (4 m^2 c^2))."""
    p = params
    return math.sqrt(p.omega**2 + (p.e_abs * p.B) ** 2 / (4 * p.m**2 * p.c**2))


def bargmann_index(sector: Sector, mu1, mu2) -> float:
    return sector.ell + 0.5 * (1 + mu1 + mu2)


def reflection_coefficient(sector: Sector, mu1, mu2) -> float:
    """Eigenvalue of 1 + mu1 R1 + mu2 R2 on the (s1, s2) labels."""
    return 1 + sector.s1 * mu1 + sector.s2 * mu2


def magnetic_coupling(params: ModelParams) -> float:
    """|e| B / (hbar m Omega c), the coefficient of lambda in e_tilde."""
    p = params
    return p.e_abs * p.B / (p.hbar * p.m * omega_eff(p) * p.c)


def e_tilde_shift(params: ModelParams, sector: Sector) -> float:
    """Constant s with e_tilde = (E^2 - m^2 c^4) / (hbar m Omega c^2) + s."""
    p = params
    big = omega_eff(p)
    lam = angular_eigenvalue(sector, p.mu1, p.mu2)
    return -2 * (p.omega / big) * reflection_coefficient(sector, p.mu1, p.mu2) + magnetic_coupling(p) * lam


@dataclass(frozen=True)
class SpectrumRecord:
    n: int
    sector: Sector
    lam: float
    k: float
    e_tilde: float
    energy_squared: float
    E_plus: float
    E_minus: float
    source: str
    status: str = "ok"

    def row(self) -> dict:
        s = self.sector
        return {
            "n": self.n,
            "ell": s.ell,
            "s1": s.s1,
            "s2": s.s2,
            "lambda_sign": s.lambda_sign,
            "lambda": self.lam,
            "k": self.k,
            "e_tilde": self.e_tilde,
            "E_plus": self.E_plus,
            "E_minus": self.E_minus,
            "source": self.source,
            "status": self.status,
        }


def _record(params, n, sector, e_tilde, energy_sq, source):
    lam = angular_eigenvalue(sector, params.mu1, params.mu2)
    k = bargmann_index(sector, params.mu1, params.mu2)
    if energy_sq >= 0:
        e = math.sqrt(energy_sq)
        return SpectrumRecord(n, sector, lam, k, e_tilde, energy_sq, e, -e, source)
    return SpectrumRecord(n, sector, lam, k, e_tilde, energy_sq, math.nan, math.nan, source, "negative_discriminant")


def energy_squared_from_e_tilde(params: ModelParams, sector: Sector, e_tilde: float) -> float:
    p = params
    scale = p.hbar * p.m * omega_eff(p) * p.c**2
    return (p.m * p.c**2) ** 2 + scale * (e_tilde - e_tilde_shift(p, sector))


def energy_chain(params: ModelParams, n: int, sector: Sector) -> SpectrumRecord:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    e_tilde = 4 * (n + bargmann_index(sector, params.mu1, params.mu2))
    return _record(params, n, sector, e_tilde, energy_squared_from_e_tilde(params, sector, e_tilde), CHAIN)


def verbatim_bracket(params: ModelParams, n: int, sector: Sector) -> float:
    """The bracket multiplying 4 hbar Omega / (m c^2) in the reference closed form."""
    p = params
    big = omega_eff(p)
    ratio = p.omega / big
    ell = sector.ell
    bracket = (
        n
        + ell
        + 0.5 * (1 + ratio)
        + 0.5 * p.mu1 * (1 + sector.s1 * ratio)
        + 0.5 * p.mu2 * (1 + sector.s2 * ratio)
    )
    if sector.epsilon == 1:
        magnetic = ell + p.mu1 + p.mu2
    else:
        magnetic = (ell + p.mu1) * (ell + p.mu2)
    return bracket - p.e_abs * p.B * magnetic / (p.hbar * p.m * big * p.c)


def energy_paper_verbatim(params: ModelParams, n: int, sector: Sector) -> SpectrumRecord:
    """E = +-m c^2 sqrt(1 + 4 hbar Omega / (m c^2) * bracket).

    The reported e_tilde is the value implied by that E through the same
    shift used by the chain route.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    p = params
    big = omega_eff(p)
    mc2 = p.m * p.c**2
    energy_sq = mc2**2 * (1 + 4 * p.hbar * big / mc2 * verbatim_bracket(p, n, sector))
    e_tilde = (energy_sq - mc2**2) / (p.hbar * p.m * big * p.c**2) + e_tilde_shift(p, sector)
    return _record(p, n, sector, e_tilde, energy_sq, VERBATIM)


def wavefunction_eval(params: ModelParams, n: int, sector: Sector, rho, phi):
    """Psi(rho, phi) = s^(1 + mu1 + mu2) R_{n ell}(s rho) F(phi), s = sqrt(m Omega / hbar).

    The factor s^(1 + mu1 + mu2) keeps Psi normalised against
    |x|^(2 mu1) |y|^(2 mu2) dx dy in dimensional coordinates.
    """
    p = params
    s = 1.0 / p.length_scale
    rho = np.asarray(rho, dtype=float)
    radial = radial_eval(n, sector.ell, p.mu1, p.mu2, s * rho)
    return s ** (1 + p.mu1 + p.mu2) * radial * f_eval(sector, p.mu1, p.mu2, phi)


def enumerate_sectors(ell_max: float = 2.0):
    """All (s1, s2) sectors with ell <= ell_max, both lambda signs (only + at ell = 0)."""
    out = []
    for s1 in (-1, 1):
        for s2 in (-1, 1):
            ell = 0.0 if s1 * s2 == 1 else 0.5
            while ell <= ell_max + 1e-12:
                for sign in (-1, 1) if ell > 0 else (1,):
                    out.append(Sector(s1, s2, ell, sign))
                ell += 1.0
    return out


def spectrum_table(params: ModelParams, sectors, n_max: int, sources=(CHAIN, VERBATIM)):
    """Records ordered by (s1, s2, ell), then n, then lambda sign, then source."""
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    builders = {CHAIN: energy_chain, VERBATIM: energy_paper_verbatim}
    records = [builders[src](params, n, s) for s in sectors for n in range(n_max + 1) for src in sources]
    records.sort(key=lambda r: (r.sector.s1, r.sector.s2, r.sector.ell, r.n, r.sector.lambda_sign, r.source))
    return records


def discrepancy_rows(params: ModelParams, sectors, n_max: int):
    """Chain vs verbatim energies with per-row deltas."""
    rows = []
    for s in sectors:
        for n in range(n_max + 1):
            chain = energy_chain(params, n, s)
            verb = energy_paper_verbatim(params, n, s)
            rows.append(
                {
                    "B": params.B,
                    "n": n,
                    "s1": s.s1,
                    "s2": s.s2,
                    "ell": s.ell,
                    "lambda_sign": s.lambda_sign,
                    "E2_chain": chain.energy_squared,
                    "E2_verbatim": verb.energy_squared,
                    "delta_E2": verb.energy_squared - chain.energy_squared,
                    "E_plus_chain": chain.E_plus,
                    "E_plus_verbatim": verb.E_plus,
                }
            )
    return rows
