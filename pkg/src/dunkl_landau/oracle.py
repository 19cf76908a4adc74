"""Finite-difference eigenvalue oracle for the transformed radial equation

    -G'' + [(alpha^2 - 1/4) / r^2 + r^2] G = E G,   G(r_min) = G(r_max) = 0,

whose exact levels are 4n + 2 + 2 alpha. The matrix is symmetric
tridiagonal and its lowest eigenvalues come from Sturm-sequence bisection,
so nothing here depends on the closed-form radial code.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .angular import Sector
from .spectrum import (
    ModelParams,
    energy_chain,
    energy_paper_verbatim,
    energy_squared_from_e_tilde,
    omega_eff,
)

CENTRIFUGAL_MODES = ("indicial", "plain")


class GridConvergenceWarning(UserWarning):
    pass


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid r_min = r_0 < ... < r_{N-1} = r_max; unknowns live on the interior.

    ``r_min = 0`` puts the Dirichlet wall at the origin, which is the
    natural choice for the indicial centrifugal stencil.
    """

    r_min: float = 0.0
    r_max: float = 14.0
    n_points: int = 8000

    def __post_init__(self):
        if self.n_points < 500:
            raise ValueError(f"n_points must be >= 500, got {self.n_points}")
        if self.r_max < 12:
            raise ValueError(f"r_max must be >= 12, got {self.r_max}")
        if self.r_min < 0 or self.r_min >= self.r_max:
            raise ValueError(f"need 0 <= r_min < r_max, got r_min={self.r_min}")
        if 0 < self.r_min < 0.5 * self.h:
            raise ValueError(f"r_min must be 0 or >= h/2 = {0.5 * self.h:.3g}, got {self.r_min}")

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.n_points - 1)

    @property
    def interior(self) -> np.ndarray:
        return self.r_min + self.h * np.arange(1, self.n_points - 1)

    def refined(self) -> "RadialGrid":
        """Same interval, half the spacing."""
        return RadialGrid(self.r_min, self.r_max, 2 * self.n_points - 1)

    @classmethod
    def with_spacing(cls, r_min, r_max, h):
        n = int(round((r_max - r_min) / h)) + 1
        return cls(r_min, r_max, n)


@dataclass(frozen=True)
class TridiagonalMatrix:
    diagonal: np.ndarray
    off_diagonal: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diagonal, dtype=float)
        e = np.asarray(self.off_diagonal, dtype=float)
        if d.ndim != 1 or e.ndim != 1 or len(e) != max(len(d) - 1, 0):
            raise ValueError(f"off-diagonal length must be N-1 (N={len(d)}), got {len(e)}")
        object.__setattr__(self, "diagonal", d)
        object.__setattr__(self, "off_diagonal", e)

    @property
    def size(self) -> int:
        return len(self.diagonal)

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diagonal) + np.diag(self.off_diagonal, 1) + np.diag(self.off_diagonal, -1)

    def gershgorin(self):
        a = np.abs(self.off_diagonal)
        radius = np.zeros(self.size)
        radius[:-1] += a
        radius[1:] += a
        return float(np.min(self.diagonal - radius)), float(np.max(self.diagonal + radius))


def dirichlet_laplacian(n_interior: int, h: float, potential=None) -> TridiagonalMatrix:
    """-d^2/dr^2 + V on n_interior points with zero Dirichlet data."""
    diag = np.full(n_interior, 2.0 / h**2)
    if potential is not None:
        diag = diag + np.asarray(potential, dtype=float)
    return TridiagonalMatrix(diag, np.full(n_interior - 1, -1.0 / h**2))


def _indicial_centrifugal(r, h, alpha):
    # Chosen so that r^(alpha + 1/2) is annihilated exactly by the
    # discrete -d2 + centrifugal combination; tends to (alpha^2 - 1/4)/r^2.
    s = alpha + 0.5
    j = r / h
    return ((j + 1) ** s - 2 * j**s + (j - 1) ** s) / (h**2 * j**s)


def discretize_g_equation(alpha: float, grid: RadialGrid, centrifugal: str = "indicial") -> TridiagonalMatrix:
    """3-point stencil for -G'' + [(alpha^2 - 1/4)/r^2 + r^2] G.

    ``centrifugal="plain"`` samples (alpha^2 - 1/4)/r^2 at the nodes.
    ``"indicial"`` replaces it by a stencil-matched term that is exact on
    the small-r behaviour r^(alpha + 1/2), restoring O(h^2) convergence
    for every alpha >= 0.
    """
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    if centrifugal not in CENTRIFUGAL_MODES:
        raise ValueError(f"centrifugal must be one of {CENTRIFUGAL_MODES}, got {centrifugal!r}")
    r = grid.interior
    h = grid.h
    if centrifugal == "plain":
        cent = (alpha * alpha - 0.25) / r**2
    else:
        cent = _indicial_centrifugal(r, h, alpha)
    return dirichlet_laplacian(len(r), h, cent + r**2)


def sturm_count(M: TridiagonalMatrix, shifts) -> np.ndarray:
    """Number of eigenvalues strictly below each shift (vectorised over shifts)."""
    shifts = np.atleast_1d(np.asarray(shifts, dtype=float))
    d, e2 = M.diagonal, M.off_diagonal**2
    tiny = np.finfo(float).tiny
    count = np.zeros(shifts.shape, dtype=int)
    with np.errstate(over="ignore", invalid="ignore"):
        q = d[0] - shifts
        for i in range(M.size):
            if i > 0:
                q = (d[i] - shifts) - e2[i - 1] / q
            q = np.where(q == 0.0, -tiny, q)
            count += q < 0
    return count


def tridiag_eigenvalues(M: TridiagonalMatrix, count: int, tol: float = 1e-10, fan: int = 32):
    """The ``count`` smallest eigenvalues by Sturm multisection.

    Every pass splits each open bracket into ``fan`` pieces and keeps the
    piece that contains its eigenvalue, so all levels shrink together.
    """
    if not 0 <= count <= M.size:
        raise ValueError(f"count must be in [0, {M.size}], got {count}")
    if count == 0:
        return []
    lo_g, hi_g = M.gershgorin()
    pad = 1e-12 * max(1.0, abs(lo_g), abs(hi_g))
    lo = np.full(count, lo_g - pad)
    hi = np.full(count, hi_g + pad)
    target = np.arange(count)  # level i sits where the count passes i
    frac = np.arange(1, fan) / fan
    while np.max(hi - lo) > tol:
        active = hi - lo > tol
        idx = np.nonzero(active)[0]
        width = (hi[idx] - lo[idx])[:, None]
        shifts = lo[idx][:, None] + width * frac[None, :]
        counts = sturm_count(M, shifts.ravel()).reshape(shifts.shape)
        below = counts <= target[idx][:, None]
        # last shift with count <= i is a new lower bound, first with count > i a new upper
        n_below = below.sum(axis=1)
        rows = np.arange(len(idx))
        new_lo = np.where(n_below > 0, shifts[rows, np.maximum(n_below - 1, 0)], lo[idx])
        new_hi = np.where(n_below < fan - 1, shifts[rows, np.minimum(n_below, fan - 2)], hi[idx])
        stalled = (new_hi - new_lo) >= (hi[idx] - lo[idx])
        lo[idx], hi[idx] = new_lo, new_hi
        if np.all(stalled):
            break
    return sorted((0.5 * (lo + hi)).tolist())


def exact_levels(alpha: float, n_levels: int):
    return [4 * n + 2 + 2 * alpha for n in range(n_levels)]


def oracle_spectrum(
    ell,
    mu1,
    mu2,
    n_levels: int,
    grid: RadialGrid | None = None,
    centrifugal: str = "indicial",
    check_convergence: bool = False,
    threshold: float = 1e-4,
):
    """Lowest FD eigenvalues of the G-equation with alpha = 2 ell + mu1 + mu2.

    With ``check_convergence`` the solve is repeated at half the spacing and
    a GridConvergenceWarning is issued when any level moves by more than
    ``threshold``.
    """
    grid = grid or RadialGrid()
    alpha = 2 * ell + mu1 + mu2
    vals = tridiag_eigenvalues(discretize_g_equation(alpha, grid, centrifugal), n_levels)
    if check_convergence:
        fine = tridiag_eigenvalues(discretize_g_equation(alpha, grid.refined(), centrifugal), n_levels)
        jump = max(abs(a - b) for a, b in zip(vals, fine))
        if jump > threshold:
            warnings.warn(
                f"step halving moved an eigenvalue by {jump:.3g} (> {threshold:g}) for alpha={alpha}",
                GridConvergenceWarning,
                stacklevel=2,
            )
    return vals


def convergence_factors(alpha: float, n_levels: int, grid: RadialGrid | None = None, centrifugal="indicial"):
    """Error ratio |E_h - exact| / |E_{h/2} - exact| per level."""
    grid = grid or RadialGrid(0.0, 14.0, 2000)
    exact = exact_levels(alpha, n_levels)
    coarse = tridiag_eigenvalues(discretize_g_equation(alpha, grid, centrifugal), n_levels)
    fine = tridiag_eigenvalues(discretize_g_equation(alpha, grid.refined(), centrifugal), n_levels)
    return [abs(c - x) / abs(f - x) for c, f, x in zip(coarse, fine, exact)]


@dataclass
class OracleComparison:
    sector: Sector
    params: ModelParams
    rows: list = field(default_factory=list)

    @property
    def max_chain_deviation(self) -> float:
        return max(abs(r["dE_chain"]) for r in self.rows)

    @property
    def max_verbatim_deviation(self) -> float:
        return max(abs(r["dE_verbatim"]) for r in self.rows)

    def chain_within_tolerance(self) -> bool:
        return all(abs(r["dE_chain"]) <= r["E_tolerance"] for r in self.rows)

    def verbatim_within_tolerance(self) -> bool:
        return all(abs(r["dE_verbatim"]) <= r["E_tolerance"] for r in self.rows)


def oracle_vs_chain(params: ModelParams, sector: Sector, n_levels: int, grid: RadialGrid | None = None,
                    e_tolerance: float = 5e-4) -> OracleComparison:
    """Assemble E+ from oracle eigenvalues and compare with both closed forms.

    ``E_tolerance`` is the energy error induced by an eigenvalue error of
    ``e_tolerance``: dE = hbar m Omega c^2 * e_tolerance / (2 E).
    """
    levels = oracle_spectrum(sector.ell, params.mu1, params.mu2, n_levels, grid)
    scale = params.hbar * params.m * omega_eff(params) * params.c**2
    report = OracleComparison(sector, params)
    for n, e_fd in enumerate(levels):
        e2 = energy_squared_from_e_tilde(params, sector, e_fd)
        e_oracle = math.sqrt(e2) if e2 >= 0 else math.nan
        chain = energy_chain(params, n, sector)
        verb = energy_paper_verbatim(params, n, sector)
        report.rows.append(
            {
                "n": n,
                "e_tilde_oracle": e_fd,
                "e_tilde_exact": chain.e_tilde,
                "E_oracle": e_oracle,
                "E_chain": chain.E_plus,
                "E_verbatim": verb.E_plus,
                "dE_chain": chain.E_plus - e_oracle,
                "dE_verbatim": verb.E_plus - e_oracle,
                "E_tolerance": scale * e_tolerance / (2 * e_oracle),
            }
        )
    return report
