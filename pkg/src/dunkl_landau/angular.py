"""Eigenfunctions of the Dunkl angular momentum J = i(x D_2 - y D_1).

Even total parity (s1 s2 = +1) carries integer ell, odd parity carries
half-odd ell. Each parity pairs two trigonometric-Jacobi functions whose
reflection labels are written ``"++"``, ``"--"`` (even) and ``"-+"``,
``"+-"`` (odd), first sign for R_1 and second for R_2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dunkl2d import _d1, distance_to_axes, polar_b_phi
from .specfun import graded_rule, jacobi_eval, ln_gamma

# Relative sign of the imaginary component that makes F an eigenfunction
# with lambda_sign = +1. Measured with j_apply_numeric (see
# measure_pairing) and pinned by tests.
EVEN_PAIRING = +1
ODD_PAIRING = -1


@dataclass(frozen=True)
class Sector:
    s1: int
    s2: int
    ell: float
    lambda_sign: int = 1

    def __post_init__(self):
        for name in ("s1", "s2", "lambda_sign"):
            if getattr(self, name) not in (1, -1):
                raise ValueError(f"{name} must be +1 or -1, got {getattr(self, name)}")
        ell = float(self.ell)
        if self.epsilon == 1:
            if ell < 0 or ell != int(ell):
                raise ValueError(f"even sector (s1 s2 = +1) needs integer ell >= 0, got {self.ell}")
        else:
            if ell < 0.5 or (ell - 0.5) != int(ell - 0.5):
                raise ValueError(f"odd sector (s1 s2 = -1) needs ell in 1/2, 3/2, ..., got {self.ell}")
        object.__setattr__(self, "ell", ell)

    @property
    def epsilon(self) -> int:
        return self.s1 * self.s2

    @property
    def case(self) -> str:
        return "I" if self.epsilon == 1 else "II"

    def key(self):
        return (self.s1, self.s2, self.ell, self.lambda_sign)


def angular_eigenvalue(sector: Sector, mu1: float, mu2: float) -> float:
    ell = sector.ell
    if sector.epsilon == 1:
        mag = 2.0 * math.sqrt(ell * (ell + mu1 + mu2))
    else:
        mag = 2.0 * math.sqrt((ell + mu1) * (ell + mu2))
    return sector.lambda_sign * mag


def _prefactor(kind, ell, mu1, mu2):
    mu = mu1 + mu2
    half = 0.5
    if kind == "++":
        num = ln_gamma(ell + mu) + ln_gamma(ell + 1)
        den = ln_gamma(ell + mu1 + half) + ln_gamma(ell + mu2 + half)
    elif kind == "--":
        num = ln_gamma(ell + mu + 1) + ln_gamma(ell)
        den = ln_gamma(ell + mu1 + half) + ln_gamma(ell + mu2 + half)
    elif kind == "-+":
        num = ln_gamma(ell + mu + half) + ln_gamma(ell + half)
        den = ln_gamma(ell + mu1 + 1) + ln_gamma(ell + mu2)
    else:
        num = ln_gamma(ell + mu + half) + ln_gamma(ell + half)
        den = ln_gamma(ell + mu1) + ln_gamma(ell + mu2 + 1)
    return math.sqrt((2 * ell + mu) / 2.0 * math.exp(num - den))


def phi_eval(kind: str, ell: float, mu1: float, mu2: float, phi):
    """Normalised trigonometric-Jacobi component Phi_ell^{kind}(phi)."""
    phi = np.asarray(phi, dtype=float)
    integer_ell = float(ell) == int(ell)
    if kind in ("++", "--"):
        if not integer_ell or ell < 0:
            raise ValueError(f"Phi^{kind} needs integer ell >= 0, got {ell}")
    elif kind in ("-+", "+-"):
        if integer_ell or ell < 0.5:
            raise ValueError(f"Phi^{kind} needs half-odd ell, got {ell}")
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if kind == "--" and ell == 0:
        return np.zeros_like(phi)
    x = -np.cos(2 * phi)
    c = _prefactor(kind, ell, mu1, mu2)
    if kind == "++":
        return c * jacobi_eval(int(ell), mu1 - 0.5, mu2 - 0.5, x)
    if kind == "--":
        return c * np.sin(phi) * np.cos(phi) * jacobi_eval(int(ell) - 1, mu1 + 0.5, mu2 + 0.5, x)
    n = int(ell - 0.5)
    if kind == "-+":
        return c * np.cos(phi) * jacobi_eval(n, mu1 + 0.5, mu2 - 0.5, x)
    return c * np.sin(phi) * jacobi_eval(n, mu1 - 0.5, mu2 + 0.5, x)


def f_eval(sector: Sector, mu1: float, mu2: float, phi):
    """Unit-norm eigenfunction F of J for the sector.

    F = (Phi_a + i sigma Phi_b) / sqrt(2), with sigma fixed by the pairing
    constants and the lambda sign. At ell = 0 (even parity) Phi^{--}
    vanishes and F = Phi^{++}.
    """
    phi = np.asarray(phi, dtype=float)
    ell = sector.ell
    if sector.epsilon == 1:
        first = phi_eval("++", ell, mu1, mu2, phi)
        if ell == 0:
            return first.astype(complex)
        second = phi_eval("--", ell, mu1, mu2, phi)
        sigma = EVEN_PAIRING * sector.lambda_sign
    else:
        first = phi_eval("-+", ell, mu1, mu2, phi)
        second = phi_eval("+-", ell, mu1, mu2, phi)
        sigma = ODD_PAIRING * sector.lambda_sign
    return (first + 1j * sigma * second) / math.sqrt(2.0)


def j_operator(f, mu1, mu2, h=1e-3):
    """Callable J f for an angular callable f (complex values allowed).

    Derivatives are central differences with one Richardson step; the
    reflections use exact evaluations at pi - phi and -phi.
    """

    def jf(phi):
        phi = np.asarray(phi, dtype=float)
        fp = f(phi)
        lf = (
            _d1(f, phi, h)
            + mu2 * np.cos(phi) / np.sin(phi) * (fp - f(-phi))
            - mu1 * np.tan(phi) * (fp - f(np.pi - phi))
        )
        return 1j * lf

    return jf


def check_grid(phi, clearance=1e-3):
    if np.any(distance_to_axes(phi) < clearance):
        raise ValueError(f"angular grid has nodes within {clearance} of a coordinate axis")


def j_apply_numeric(f, phi, mu1, mu2, h=1e-3):
    """J f sampled on ``phi``; ``f`` must be callable at reflected angles."""
    phi = np.asarray(phi, dtype=float)
    check_grid(phi)
    return j_operator(f, mu1, mu2, h)(phi)


def b_phi_operator(f, mu1, mu2, h=1e-3):
    return lambda phi: polar_b_phi(f, phi, mu1, mu2, h)


def uniform_grid(n=2000, clearance=1e-3):
    """Uniform grid on [0, 2 pi) offset by half a cell, axis-adjacent nodes dropped."""
    phi = (np.arange(n) + 0.5) * (2 * np.pi / n)
    return phi[distance_to_axes(phi) >= clearance]


def eigen_residual(sector: Sector, mu1, mu2, n=2000, h=1e-3) -> float:
    """||J F - lambda F||_inf / ||F||_inf on a uniform grid."""
    phi = uniform_grid(n)
    f = lambda t: f_eval(sector, mu1, mu2, t)  # noqa: E731
    jf = j_apply_numeric(f, phi, mu1, mu2, h)
    lam = angular_eigenvalue(sector, mu1, mu2)
    fv = f(phi)
    return float(np.max(np.abs(jf - lam * fv)) / np.max(np.abs(fv)))


def measure_pairing(epsilon: int, mu1=0.3, mu2=0.7) -> int:
    """Sign sigma such that Phi_a + i sigma Phi_b has J eigenvalue +|lambda|."""
    ell = 1.0 if epsilon == 1 else 0.5
    kinds = ("++", "--") if epsilon == 1 else ("-+", "+-")
    mag = abs(angular_eigenvalue(Sector(1, epsilon, ell), mu1, mu2))
    phi = uniform_grid(200)
    best = None
    for sigma in (1, -1):
        f = lambda t, s=sigma: phi_eval(kinds[0], ell, mu1, mu2, t) + 1j * s * phi_eval(kinds[1], ell, mu1, mu2, t)  # noqa: E731
        res = np.max(np.abs(j_apply_numeric(f, phi, mu1, mu2) - mag * f(phi)))
        if best is None or res < best[1]:
            best = (sigma, res)
    return best[0]


def _quadrant_rule(n, grade):
    nodes, weights = [], []
    for q in range(4):
        x, w = graded_rule(q * np.pi / 2, (q + 1) * np.pi / 2, n=n, grade=grade)
        nodes.append(x)
        weights.append(w)
    return np.concatenate(nodes), np.concatenate(weights)


def angular_weight(phi, mu1, mu2):
    return np.abs(np.cos(phi)) ** (2 * mu1) * np.abs(np.sin(phi)) ** (2 * mu2)


def angular_inner(f, g, mu1, mu2, n=200, grade=6) -> complex:
    """Integral of conj(f) g |cos|^{2 mu1} |sin|^{2 mu2} over [0, 2 pi)."""
    phi, w = _quadrant_rule(n, grade)
    return complex(np.sum(w * angular_weight(phi, mu1, mu2) * np.conj(f(phi)) * g(phi)))


def angular_norm(sector_a: Sector, sector_b: Sector, mu1, mu2, n=200) -> complex:
    return angular_inner(
        lambda t: f_eval(sector_a, mu1, mu2, t),
        lambda t: f_eval(sector_b, mu1, mu2, t),
        mu1,
        mu2,
        n=n,
    )


def sectors_for_parity(epsilon: int, ell_max: float, s1: int = 1):
    """Sectors of one parity up to ell_max, both lambda signs (only + at ell = 0)."""
    s2 = s1 * epsilon
    out = []
    ell = 0.0 if epsilon == 1 else 0.5
    while ell <= ell_max + 1e-12:
        for sign in (1, -1) if ell > 0 else (1,):
            out.append(Sector(s1, s2, ell, sign))
        ell += 1.0
    return out


def gram_matrix(sectors, mu1, mu2, n=200) -> np.ndarray:
    phi, w = _quadrant_rule(n, 6)
    ww = w * angular_weight(phi, mu1, mu2)
    vals = np.array([f_eval(s, mu1, mu2, phi) for s in sectors])
    return (np.conj(vals) * ww) @ vals.T


def phi_gram_matrix(components, mu1, mu2, n=200) -> np.ndarray:
    """Gram matrix of the real Phi components given as (kind, ell) pairs."""
    phi, w = _quadrant_rule(n, 6)
    ww = w * angular_weight(phi, mu1, mu2)
    vals = np.array([phi_eval(k, ell, mu1, mu2, phi) for k, ell in components])
    return (vals * ww) @ vals.T
