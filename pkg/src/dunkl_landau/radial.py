"""Radial eigenfunctions and the su(1,1) realisation on quasi-polynomials.

A quasi-polynomial is f(r) = sum_k c_k r^(a + 2k) exp(-r^2 / 2). The radial
operators used here (d^2/dr^2, (1/r) d/dr, r d/dr, r^2, 1/r^2) map that
family into itself, so every algebraic identity reduces to exact linear
algebra on coefficient vectors.

All functions work in the dimensionless radius r = sqrt(m Omega / hbar) rho.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angular import Sector, angular_eigenvalue
from .specfun import graded_rule, laguerre_coefficients, laguerre_eval, ln_gamma

TRIM_TOL = 1e-14


class ClosureError(ValueError):
    """An operator produced a negative power of r outside the family."""


@dataclass(frozen=True)
class QuasiPolynomial:
    alpha_exp: float
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coefficients, dtype=float)).copy()
        if c.size == 0:
            c = np.zeros(1)
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def zero(cls, alpha_exp=0.0):
        return cls(alpha_exp, np.zeros(1))

    def canonical(self, tol=TRIM_TOL):
        """Drop negligible leading and trailing coefficients.

        Leading zeros raise ``alpha_exp`` by 2 each; a negative power that
        survives trimming raises :class:`ClosureError`.
        """
        c = self.coefficients
        scale = max(np.max(np.abs(c)), 1.0)
        keep = np.nonzero(np.abs(c) > tol * scale)[0]
        if keep.size == 0:
            return QuasiPolynomial(max(self.alpha_exp, 0.0), np.zeros(1))
        lo, hi = keep[0], keep[-1]
        alpha = self.alpha_exp + 2 * lo
        if alpha < -1e-12:
            raise ClosureError(f"term r^{alpha:g} left the quasi-polynomial family")
        return QuasiPolynomial(alpha, c[lo : hi + 1])

    @property
    def powers(self):
        return self.alpha_exp + 2 * np.arange(len(self.coefficients))

    def _aligned(self, other):
        shift = (other.alpha_exp - self.alpha_exp) / 2
        if abs(shift - round(shift)) > 1e-12:
            raise ValueError("quasi-polynomials live on different power lattices")
        shift = int(round(shift))
        base = min(self.alpha_exp, other.alpha_exp)
        i0 = max(0, -shift)
        j0 = max(0, shift)
        n = max(i0 + len(self.coefficients), j0 + len(other.coefficients))
        a = np.zeros(n)
        b = np.zeros(n)
        a[i0 : i0 + len(self.coefficients)] = self.coefficients
        b[j0 : j0 + len(other.coefficients)] = other.coefficients
        return base, a, b

    def is_zero(self):
        return not np.any(self.coefficients)

    def __add__(self, other):
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        base, a, b = self._aligned(other)
        return QuasiPolynomial(base, a + b)

    def __sub__(self, other):
        return self + other * -1.0

    def __mul__(self, s):
        return QuasiPolynomial(self.alpha_exp, s * self.coefficients)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for c, p in zip(self.coefficients, self.powers):
            out = out + c * r**p
        return out * np.exp(-0.5 * r * r)

    def max_abs_coeff(self):
        return float(np.max(np.abs(self.coefficients)))


def apply_radial(f: QuasiPolynomial, d2=0.0, d1_over_r=0.0, r_d1=0.0, inv_r2=0.0, r2=0.0, const=0.0):
    """Apply d2 f'' + d1_over_r f'/r + r_d1 r f' + inv_r2 f/r^2 + r2 r^2 f + const f.

    On r^p e^{-r^2/2}:
      f''      = p(p-1) r^{p-2} - (2p+1) r^p + r^{p+2}
      f'/r     = p r^{p-2} - r^p
      r f'     = p r^p - r^{p+2}
    """
    c = f.coefficients
    p = f.powers
    n = len(c)
    out = np.zeros(n + 2)  # out[i] holds power alpha - 2 + 2i
    low = d2 * p * (p - 1) + d1_over_r * p + inv_r2
    mid = -d2 * (2 * p + 1) - d1_over_r + r_d1 * p + const
    high = d2 - r_d1 + r2
    out[:n] += low * c
    out[1 : n + 1] += mid * c
    out[2 : n + 2] += high * c
    return QuasiPolynomial(f.alpha_exp - 2, out).canonical()


def inner(f: QuasiPolynomial, g: QuasiPolynomial, mu1: float, mu2: float) -> float:
    """Closed-form integral of f g r^(1 + 2 mu1 + 2 mu2) over (0, inf).

    Uses int_0^inf r^s e^{-r^2} dr = Gamma((s + 1) / 2) / 2 term by term.
    The alternating terms cancel, so round-off grows with degree (about
    1e-8 relative for two degree-7 Laguerre factors); radial_gram_matrix
    is the better tool for overlaps of high states.
    """
    mu = mu1 + mu2
    total = 0.0
    for ci, pi in zip(f.coefficients, f.powers):
        for cj, pj in zip(g.coefficients, g.powers):
            s = pi + pj + 1 + 2 * mu
            total += ci * cj * 0.5 * math.exp(ln_gamma(0.5 * (s + 1)))
    return total


def norm(f, mu1, mu2):
    return math.sqrt(max(inner(f, f, mu1, mu2), 0.0))


# --- closed-form eigenfunctions ---------------------------------------------

@dataclass(frozen=True)
class RadialState:
    n: int
    sector: Sector
    mu1: float
    mu2: float

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"radial quantum number must be >= 0, got {self.n}")

    def function(self) -> QuasiPolynomial:
        return radial_eigenfunction(self.n, self.sector.ell, self.mu1, self.mu2)


def _check_ell(ell):
    if ell < 0 or (2 * ell) != int(2 * ell):
        raise ValueError(f"ell must be a non-negative integer or half-odd integer, got {ell}")


def laguerre_index(ell, mu1, mu2):
    return 2 * ell + mu1 + mu2


def normalization_constant(n, ell, mu1, mu2) -> float:
    _check_ell(ell)
    alpha = laguerre_index(ell, mu1, mu2)
    return math.exp(0.5 * (math.log(2.0) + ln_gamma(n + 1) - ln_gamma(n + alpha + 1)))


def radial_eigenfunction(n, ell, mu1, mu2) -> QuasiPolynomial:
    """C0 r^(2 ell) exp(-r^2/2) L_n^(2 ell + mu1 + mu2)(r^2)."""
    _check_ell(ell)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    alpha = laguerre_index(ell, mu1, mu2)
    return QuasiPolynomial(2 * ell, normalization_constant(n, ell, mu1, mu2) * laguerre_coefficients(n, alpha))


def reference_solution(n, alpha, r):
    """u(r) = C0 e^{-r^2/2} r^(alpha + 1/2) L_n^alpha(r^2), the Laguerre-type ODE solution."""
    c0 = math.exp(0.5 * (math.log(2.0) + ln_gamma(n + 1) - ln_gamma(n + alpha + 1)))
    r = np.asarray(r, dtype=float)
    return c0 * np.exp(-0.5 * r * r) * r ** (alpha + 0.5) * laguerre_eval(n, alpha, r * r)


def radial_eval(n, ell, mu1, mu2, r):
    """R_{n ell}(r) through the Laguerre recurrence (stable for pointwise use)."""
    _check_ell(ell)
    r = np.asarray(r, dtype=float)
    alpha = laguerre_index(ell, mu1, mu2)
    c0 = normalization_constant(n, ell, mu1, mu2)
    return c0 * np.exp(-0.5 * r * r) * r ** (2 * ell) * laguerre_eval(n, alpha, r * r)


def radial_gram_matrix(ell, mu1, mu2, n_max, r_max=16.0, nodes=300):
    """<R_m, R_n> for m, n <= n_max under r^(1 + 2 mu1 + 2 mu2) dr, by graded quadrature."""
    r, w = graded_rule(0.0, r_max, n=nodes, grade=4, ends="left")
    ww = w * r ** (1 + 2 * mu1 + 2 * mu2)
    vals = np.array([radial_eval(n, ell, mu1, mu2, r) for n in range(n_max + 1)])
    return (vals * ww) @ vals.T


def centrifugal_constant(sector: Sector, mu1, mu2) -> float:
    """lambda_+^2 for even parity, lambda_-^2 - 4 mu1 mu2 for odd parity."""
    lam = angular_eigenvalue(sector, mu1, mu2)
    if sector.epsilon == 1:
        return lam * lam
    return lam * lam - 4 * mu1 * mu2


def first_derivative_coefficient(mu1, mu2):
    return 1 + 2 * mu1 + 2 * mu2


def exact_e_tilde(n, ell, mu1, mu2):
    """4n + 2 + 2 alpha with alpha = 2 ell + mu1 + mu2."""
    return 4 * n + 2 + 2 * laguerre_index(ell, mu1, mu2)


def analytic_e_tilde(n, a_coef, b_coef):
    """4n + 2 + sqrt((A - 1)^2 + 4B) for the reference radial equation."""
    return 4 * n + 2 + math.sqrt((a_coef - 1) ** 2 + 4 * b_coef)


def radial_hamiltonian(f, sector: Sector, mu1, mu2):
    """-f'' - (A/r) f' + (B/r^2) f + r^2 f for the sector's radial equation."""
    return apply_radial(
        f,
        d2=-1.0,
        d1_over_r=-first_derivative_coefficient(mu1, mu2),
        inv_r2=centrifugal_constant(sector, mu1, mu2),
        r2=1.0,
    )


def radial_residual(f, sector: Sector, mu1, mu2, e_tilde):
    """H f - e_tilde f; identically zero on eigenfunctions."""
    return radial_hamiltonian(f, sector, mu1, mu2) - f * e_tilde


# --- su(1,1) -----------------------------------------------------------------

@dataclass(frozen=True)
class Su11Realization:
    """Generators O_0, O_+, O_- of su(1,1) for one radial equation.

    O_0 = H / 4
    O_+ = (-r d/dr + r^2 - (1 + mu1 + mu2) - 2 O_0) / 2
    O_- = ( r d/dr + r^2 + (1 + mu1 + mu2) - 2 O_0) / 2
    """

    sector: Sector
    mu1: float
    mu2: float

    @property
    def bargmann_index(self) -> float:
        return self.sector.ell + 0.5 * (1 + self.mu1 + self.mu2)

    @property
    def casimir_value(self) -> float:
        """(B + (mu1 + mu2)^2 - 1) / 4 from the generators' explicit form."""
        mu = self.mu1 + self.mu2
        return (centrifugal_constant(self.sector, self.mu1, self.mu2) + mu * mu - 1) / 4

    def o0(self, f):
        return radial_hamiltonian(f, self.sector, self.mu1, self.mu2) * 0.25

    def _ladder(self, f, sign):
        shift = 1 + self.mu1 + self.mu2
        part = apply_radial(f, r_d1=-sign * 1.0, r2=1.0, const=-sign * shift)
        return (part - self.o0(f) * 2.0) * 0.5

    def raising(self, f):
        return self._ladder(f, +1)

    def lowering(self, f):
        return self._ladder(f, -1)

    def casimir(self, f):
        """-O_+ O_- f + O_0 (O_0 - 1) f."""
        o0f = self.o0(f)
        return self.o0(o0f) - o0f - self.raising(self.lowering(f))


def su11_generators(sector: Sector, mu1, mu2):
    rep = Su11Realization(sector, mu1, mu2)
    return rep.o0, rep.raising, rep.lowering


def casimir_apply(sector, mu1, mu2, f):
    return Su11Realization(sector, mu1, mu2).casimir(f)


def commutator_residuals(rep: Su11Realization, f: QuasiPolynomial) -> dict[str, float]:
    """Relative coefficient residuals of the su(1,1) commutation relations on f."""
    o0, up, down = rep.o0, rep.raising, rep.lowering
    scale = f.max_abs_coeff() or 1.0
    checks = {
        "[O0,O+]=O+": (o0(up(f)) - up(o0(f))) - up(f),
        "[O0,O-]=-O-": (o0(down(f)) - down(o0(f))) + down(f),
        "[O-,O+]=2O0": (down(up(f)) - up(down(f))) - o0(f) * 2.0,
    }
    return {k: v.max_abs_coeff() / scale for k, v in checks.items()}


def ladder_phase(sector, mu1, mu2) -> float:
    """Sign of <O_+ R_0, R_1>; applied to every ladder step."""
    rep = Su11Realization(sector, mu1, mu2)
    r0 = radial_eigenfunction(0, sector.ell, mu1, mu2)
    r1 = radial_eigenfunction(1, sector.ell, mu1, mu2)
    return 1.0 if inner(rep.raising(r0), r1, mu1, mu2) >= 0 else -1.0


def ladder_coefficient_check(n, sector: Sector, mu1, mu2, phase=None):
    """Relative deviations (up, down) of the ladder actions on R_n.

    ||O_+ R_n - phase sqrt((n+1)(2k+n)) R_{n+1}|| and the lowering analogue,
    in the L^2 norm with measure r^(1 + 2 mu1 + 2 mu2) dr, each divided by
    the expected coefficient (the down deviation at n = 0 is absolute).
    """
    rep = Su11Realization(sector, mu1, mu2)
    k = rep.bargmann_index
    if phase is None:
        phase = ladder_phase(sector, mu1, mu2)
    ell = sector.ell
    rn = radial_eigenfunction(n, ell, mu1, mu2)
    up_coef = math.sqrt((n + 1) * (2 * k + n))
    up = rep.raising(rn) - radial_eigenfunction(n + 1, ell, mu1, mu2) * (phase * up_coef)
    down = rep.lowering(rn)
    down_scale = 1.0
    if n > 0:
        down_scale = math.sqrt(n * (2 * k + n - 1))
        down = down - radial_eigenfunction(n - 1, ell, mu1, mu2) * (phase * down_scale)
    return norm(up, mu1, mu2) / up_coef, norm(down, mu1, mu2) / down_scale


def random_quasi_polynomial(rng: np.random.Generator, alpha_exp: float, max_terms: int = 7):
    k = int(rng.integers(1, max_terms + 1))
    return QuasiPolynomial(alpha_exp, rng.uniform(-1.0, 1.0, size=k))
