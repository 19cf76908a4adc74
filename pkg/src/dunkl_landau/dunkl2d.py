"""Exact Dunkl calculus on bivariate polynomials for the Z2 x Z2 reflection group.

Polynomials are stored as ``{(a, b): coeff}`` maps for ``x**a * y**b``.
Every operator here maps monomials to monomials, so identities between
operators can be checked coefficient by coefficient with no truncation
error.

Commutators follow the usual convention ``[A, B] = AB - BA``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

import numpy as np

COEFF_TOL = 1e-12

Monomial = tuple[int, int]


@dataclass(frozen=True)
class DunklParams:
    mu1: float
    mu2: float

    def __post_init__(self):
        # mu = 0 is the classical limit; the physical model requires mu > 0
        if self.mu1 < 0 or self.mu2 < 0:
            raise ValueError(f"Dunkl parameters must be >= 0, got mu1={self.mu1}, mu2={self.mu2}")

    def mu(self, axis: int) -> float:
        return self.mu1 if axis == 1 else self.mu2


@dataclass(frozen=True)
class DunklPolynomial2D:
    """Real bivariate polynomial, optionally carrying an overall factor ``i``.

    ``times_i`` is how the angular momentum keeps its imaginary unit without
    complex coefficients: ``J p`` is stored as the real polynomial ``L p``
    with ``times_i=True``.
    """

    coefficients: Mapping[Monomial, float] = field(default_factory=dict)
    times_i: bool = False

    def __post_init__(self):
        clean = {}
        for (a, b), c in self.coefficients.items():
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in monomial {(a, b)}")
            if c != 0.0:
                clean[(int(a), int(b))] = float(c)
        object.__setattr__(self, "coefficients", clean)

    # construction -----------------------------------------------------
    @classmethod
    def monomial(cls, a: int, b: int, coeff: float = 1.0):
        return cls({(a, b): coeff})

    @classmethod
    def constant(cls, c: float):
        return cls({(0, 0): c})

    @classmethod
    def rho_squared(cls, power: int = 1):
        """(x^2 + y^2)**power."""
        out = cls.constant(1.0)
        r2 = cls({(2, 0): 1.0, (0, 2): 1.0})
        for _ in range(power):
            out = out * r2
        return out

    @classmethod
    def random(cls, rng: np.random.Generator, degree: int, density: float = 0.7):
        """Seeded random polynomial of total degree <= ``degree``."""
        coeffs = {}
        for a in range(degree + 1):
            for b in range(degree + 1 - a):
                if rng.random() < density:
                    coeffs[(a, b)] = rng.uniform(-1.0, 1.0)
        if not coeffs:
            coeffs[(degree, 0)] = 1.0
        return cls(coeffs)

    # arithmetic -------------------------------------------------------
    def _combine(self, other: "DunklPolynomial2D", sign: float):
        if self.times_i != other.times_i and not (self.is_zero() or other.is_zero()):
            raise ValueError("cannot add real and imaginary Dunkl polynomials")
        flag = self.times_i if not self.is_zero() else other.times_i
        out = dict(self.coefficients)
        for m, c in other.coefficients.items():
            out[m] = out.get(m, 0.0) + sign * c
        return DunklPolynomial2D(out, flag)

    def __add__(self, other):
        return self._combine(other, 1.0)

    def __sub__(self, other):
        return self._combine(other, -1.0)

    def __neg__(self):
        return self.scale(-1.0)

    def scale(self, s: float):
        return DunklPolynomial2D({m: s * c for m, c in self.coefficients.items()}, self.times_i)

    __rmul__ = scale

    def __mul__(self, other):
        if not isinstance(other, DunklPolynomial2D):
            return self.scale(other)
        out: dict[Monomial, float] = {}
        for (a1, b1), c1 in self.coefficients.items():
            for (a2, b2), c2 in other.coefficients.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0.0) + c1 * c2
        sign = -1.0 if (self.times_i and other.times_i) else 1.0
        return DunklPolynomial2D(out, self.times_i != other.times_i).scale(sign)

    def times_imaginary_unit(self):
        """Multiply by i: toggles the flag, picking up -1 when i*i occurs."""
        if self.times_i:
            return DunklPolynomial2D(self.scale(-1.0).coefficients, False)
        return DunklPolynomial2D(self.coefficients, True)

    def map_monomials(self, fn: Callable[[int, int], Iterable[tuple[Monomial, float]]]):
        """Apply a linear operator given by its action on single monomials."""
        out: dict[Monomial, float] = {}
        for (a, b), c in self.coefficients.items():
            for m, w in fn(a, b):
                if w != 0.0:
                    out[m] = out.get(m, 0.0) + c * w
        return DunklPolynomial2D(out, self.times_i)

    # inspection -------------------------------------------------------
    def is_zero(self, tol: float = 0.0) -> bool:
        return self.max_abs_coeff() <= tol

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.coefficients.values()), default=0.0)

    def degree(self) -> int:
        return max((a + b for a, b in self.coefficients), default=0)

    def approx_equal(self, other, tol: float = COEFF_TOL) -> bool:
        if self.is_zero(tol) and other.is_zero(tol):
            return True
        return self.times_i == other.times_i and (self - other).is_zero(tol)

    def __call__(self, x, y):
        """Evaluate the real coefficient map (the ``i`` flag is not applied)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        total = np.zeros(np.broadcast(x, y).shape)
        for (a, b), c in self.coefficients.items():
            total = total + c * x**a * y**b
        return total


# --- elementary operators -------------------------------------------------

def multiply_x(p: DunklPolynomial2D, axis: int, power: int = 1) -> DunklPolynomial2D:
    if axis == 1:
        return p.map_monomials(lambda a, b: [((a + power, b), 1.0)])
    return p.map_monomials(lambda a, b: [((a, b + power), 1.0)])


def partial(p: DunklPolynomial2D, axis: int) -> DunklPolynomial2D:
    if axis == 1:
        return p.map_monomials(lambda a, b: [((a - 1, b), float(a))] if a else [])
    return p.map_monomials(lambda a, b: [((a, b - 1), float(b))] if b else [])


def reflect(p: DunklPolynomial2D, axis: int) -> DunklPolynomial2D:
    """R_1 f(x, y) = f(-x, y); R_2 f(x, y) = f(x, -y)."""
    if axis not in (1, 2):
        raise ValueError(f"axis must be 1 or 2, got {axis}")
    idx = axis - 1
    return p.map_monomials(lambda a, b: [((a, b), -1.0 if (a, b)[idx] % 2 else 1.0)])


def reflection_difference(p: DunklPolynomial2D, axis: int, mu: float) -> DunklPolynomial2D:
    """(mu / x_axis) (1 - R_axis) p; only odd powers survive, each giving 2 mu."""
    if axis == 1:
        return p.map_monomials(lambda a, b: [((a - 1, b), 2.0 * mu)] if a % 2 else [])
    return p.map_monomials(lambda a, b: [((a, b - 1), 2.0 * mu)] if b % 2 else [])


def dunkl_derivative(p: DunklPolynomial2D, axis: int, params: DunklParams) -> DunklPolynomial2D:
    if axis not in (1, 2):
        raise ValueError(f"axis must be 1 or 2, got {axis}")
    return partial(p, axis) + reflection_difference(p, axis, params.mu(axis))


def dunkl_laplacian(p: DunklPolynomial2D, params: DunklParams) -> DunklPolynomial2D:
    d1 = dunkl_derivative(dunkl_derivative(p, 1, params), 1, params)
    d2 = dunkl_derivative(dunkl_derivative(p, 2, params), 2, params)
    return d1 + d2


def angular_momentum_real(p: DunklPolynomial2D, params: DunklParams) -> DunklPolynomial2D:
    """x D_2 p - y D_1 p (the angular momentum without its factor i)."""
    return multiply_x(dunkl_derivative(p, 2, params), 1) - multiply_x(dunkl_derivative(p, 1, params), 2)


def angular_momentum_apply(p: DunklPolynomial2D, params: DunklParams) -> DunklPolynomial2D:
    """J p = i (x D_2 - y D_1) p, with the i carried on the ``times_i`` flag."""
    return angular_momentum_real(p, params).times_imaginary_unit()


def euler_operator(p: DunklPolynomial2D) -> DunklPolynomial2D:
    """x d/dx + y d/dy, i.e. rho d/drho on polynomials."""
    return p.map_monomials(lambda a, b: [((a, b), float(a + b))])


def angular_casimir(p: DunklPolynomial2D, params: DunklParams) -> DunklPolynomial2D:
    """2 B_phi p written in Cartesian form.

    From the polar Laplacian, 2 B_phi = E^2 + 2(mu1+mu2) E - rho^2 Lap_D with
    E the Euler operator; this form has no tan/cot singularities.
    """
    mu = params.mu1 + params.mu2
    e = euler_operator(p)
    return euler_operator(e) + e.scale(2.0 * mu) - DunklPolynomial2D.rho_squared() * dunkl_laplacian(p, params)


# --- Hamiltonian --------------------------------------------------------

@dataclass(frozen=True)
class ComplexDunkl:
    """Pair (re, im) of real polynomials standing for re + i im."""

    re: DunklPolynomial2D
    im: DunklPolynomial2D

    def __sub__(self, other):
        return ComplexDunkl(self.re - other.re, self.im - other.im)

    def max_abs_coeff(self) -> float:
        return max(self.re.max_abs_coeff(), self.im.max_abs_coeff())

    @classmethod
    def real(cls, p: DunklPolynomial2D):
        return cls(p, DunklPolynomial2D())


def _reflection_term(p, params):
    return p + reflect(p, 1).scale(params.mu1) + reflect(p, 2).scale(params.mu2)


def hamiltonian_real_part(p, params: DunklParams, scaled_b: float, omega: float):
    """Every piece of H_O except the -b J term, in units m = hbar = c = 1.

    -Lap_D + Omega^2 rho^2 + 2 omega (1 + mu1 R1 + mu2 R2) with
    Omega^2 = omega^2 + b^2 / 4 and b = |e| B.
    """
    big_omega_sq = omega**2 + 0.25 * scaled_b**2
    rho2 = DunklPolynomial2D.rho_squared()
    return (
        -dunkl_laplacian(p, params)
        + (rho2 * p).scale(big_omega_sq)
        + _reflection_term(p, params).scale(2.0 * omega)
    )


def hamiltonian_apply(z: ComplexDunkl, params, scaled_b, omega) -> ComplexDunkl:
    """H_O (re + i im) with H_O = H_real - b J and J = i L."""
    hr = lambda q: hamiltonian_real_part(q, params, scaled_b, omega)  # noqa: E731
    lre = angular_momentum_real(z.re, params)
    lim = angular_momentum_real(z.im, params)
    return ComplexDunkl(hr(z.re) + lim.scale(scaled_b), hr(z.im) - lre.scale(scaled_b))


def angular_momentum_complex(z: ComplexDunkl, params) -> ComplexDunkl:
    """J (re + i im) = -L im + i L re."""
    return ComplexDunkl(-angular_momentum_real(z.im, params), angular_momentum_real(z.re, params))


def reflect_complex(z: ComplexDunkl, axis: int) -> ComplexDunkl:
    return ComplexDunkl(reflect(z.re, axis), reflect(z.im, axis))


def hamiltonian_commutator_check(p, params, scaled_b, omega) -> ComplexDunkl:
    """Residual J(H_O p) - H_O(J p) as a (re, im) pair."""
    z = ComplexDunkl.real(p)
    h = lambda q: hamiltonian_apply(q, params, scaled_b, omega)  # noqa: E731
    j = lambda q: angular_momentum_complex(q, params)  # noqa: E731
    return j(h(z)) - h(j(z))


def reflection_commutator_residuals(p, params, scaled_b, omega) -> dict[str, float]:
    """Max coefficient residual of [R1, H_O], [R2, H_O] and [R1 R2, H_O] on p."""
    z = ComplexDunkl.real(p)
    h = lambda q: hamiltonian_apply(q, params, scaled_b, omega)  # noqa: E731
    ops = {
        "R1": lambda q: reflect_complex(q, 1),
        "R2": lambda q: reflect_complex(q, 2),
        "R1R2": lambda q: reflect_complex(reflect_complex(q, 1), 2),
    }
    return {name: (op(h(z)) - h(op(z))).max_abs_coeff() for name, op in ops.items()}


def commutator_split(p, params, scaled_b, omega) -> dict[str, float]:
    """Where [J, H_O] comes from.

    Returns max coefficient residuals of [J, H_O], of [J, H_O - 2 omega
    (mu1 R1 + mu2 R2)] and of the anticommutator {J, mu1 R1 + mu2 R2}.
    """
    z = ComplexDunkl.real(p)
    j = lambda q: angular_momentum_complex(q, params)  # noqa: E731

    def refl(q):
        r1, r2 = reflect_complex(q, 1), reflect_complex(q, 2)
        return ComplexDunkl(r1.re.scale(params.mu1) + r2.re.scale(params.mu2),
                            r1.im.scale(params.mu1) + r2.im.scale(params.mu2))

    def h(q):
        return hamiltonian_apply(q, params, scaled_b, omega)

    def h_bare(q):
        hq, rq = h(q), refl(q)
        return ComplexDunkl(hq.re - rq.re.scale(2 * omega), hq.im - rq.im.scale(2 * omega))

    anti = ComplexDunkl(j(refl(z)).re + refl(j(z)).re, j(refl(z)).im + refl(j(z)).im)
    return {
        "[J,H]": (j(h(z)) - h(j(z))).max_abs_coeff(),
        "[J,H-2w(mu1R1+mu2R2)]": (j(h_bare(z)) - h_bare(j(z))).max_abs_coeff(),
        "{J,mu1R1+mu2R2}": anti.max_abs_coeff(),
    }


# --- identity suite -------------------------------------------------------

def identity_residuals(p: DunklPolynomial2D, params: DunklParams) -> dict[str, float]:
    """Max coefficient residual of each reflection/Dunkl operator identity on p.

    The commutators involving x_i and the Laplacian are checked in the
    orientation in which they hold, [D_i, x_i] = 1 + 2 mu_i R_i and
    [Lap_D, x D_2] = 2 D_2 D_1; ``reversed_orientation_residuals`` reports the
    reversed bracket.
    """
    D = lambda q, i: dunkl_derivative(q, i, params)  # noqa: E731
    R = reflect
    X = multiply_x
    lap = lambda q: dunkl_laplacian(q, params)  # noqa: E731
    out = {}
    for i in (1, 2):
        mu = params.mu(i)
        out[f"R{i}D{i}=-D{i}R{i}"] = (R(D(p, i), i) + D(R(p, i), i)).max_abs_coeff()
        out[f"R{i}^2=1"] = (R(R(p, i), i) - p).max_abs_coeff()
        out[f"R{i}x{i}=-x{i}R{i}"] = (R(X(p, i), i) + X(R(p, i), i)).max_abs_coeff()
        out[f"[D{i},x{i}]=1+2mu{i}R{i}"] = (
            D(X(p, i), i) - X(D(p, i), i) - p - R(p, i).scale(2 * mu)
        ).max_abs_coeff()
        j = 3 - i
        out[f"[x{i},D{j}]=0"] = (X(D(p, j), i) - D(X(p, i), j)).max_abs_coeff()
        for k in range(1, 5):
            F = DunklPolynomial2D.rho_squared(k)
            out[f"[(mu{i}/x{i})(1-R{i}),rho^{2 * k}]=0"] = (
                reflection_difference(F * p, i, mu) - F * reflection_difference(p, i, mu)
            ).max_abs_coeff()
    out["R1R2=R2R1"] = (R(R(p, 2), 1) - R(R(p, 1), 2)).max_abs_coeff()
    out["[D1,D2]=0"] = (D(D(p, 2), 1) - D(D(p, 1), 2)).max_abs_coeff()
    xd2 = lambda q: X(D(q, 2), 1)  # noqa: E731
    yd1 = lambda q: X(D(q, 1), 2)  # noqa: E731
    out["[Lap,xD2]=2D2D1"] = (lap(xd2(p)) - xd2(lap(p)) - D(D(p, 1), 2).scale(2)).max_abs_coeff()
    out["[Lap,yD1]=2D1D2"] = (lap(yd1(p)) - yd1(lap(p)) - D(D(p, 2), 1).scale(2)).max_abs_coeff()
    lsq = angular_momentum_apply(angular_momentum_apply(p, params), params)
    jsq_rhs = angular_casimir(p, params) + (p - R(R(p, 1), 2)).scale(2 * params.mu1 * params.mu2)
    out["J^2=2B+2mu1mu2(1-R1R2)"] = (lsq - jsq_rhs).max_abs_coeff()
    return out


def reversed_orientation_residuals(p: DunklPolynomial2D, params: DunklParams) -> dict[str, float]:
    """Residuals of [x_i, D_i] = 1 + 2 mu_i R_i and [x D_2, Lap_D] = 2 D_2 D_1
    read with [A, B] = AB - BA. Nonzero: these hold with the opposite sign."""
    D = lambda q, i: dunkl_derivative(q, i, params)  # noqa: E731
    X = multiply_x
    lap = lambda q: dunkl_laplacian(q, params)  # noqa: E731
    xd2 = lambda q: X(D(q, 2), 1)  # noqa: E731
    yd1 = lambda q: X(D(q, 1), 2)  # noqa: E731
    out = {}
    for i in (1, 2):
        out[f"[x{i},D{i}]=1+2mu{i}R{i}"] = (
            X(D(p, i), i) - D(X(p, i), i) - p - reflect(p, i).scale(2 * params.mu(i))
        ).max_abs_coeff()
    out["[xD2,Lap]=2D2D1"] = (xd2(lap(p)) - lap(xd2(p)) - D(D(p, 1), 2).scale(2)).max_abs_coeff()
    out["[yD1,Lap]=2D1D2"] = (yd1(lap(p)) - lap(yd1(p)) - D(D(p, 2), 1).scale(2)).max_abs_coeff()
    return out


# --- polar form -------------------------------------------------------------

_AXIS_ANGLES = np.array([0.0, 0.5 * np.pi, np.pi, 1.5 * np.pi, 2.0 * np.pi])


def distance_to_axes(phi) -> np.ndarray:
    phi = np.mod(np.asarray(phi, dtype=float), 2 * np.pi)
    return np.min(np.abs(phi[..., None] - _AXIS_ANGLES), axis=-1)


def _d1(f, x, h):
    """First derivative, central differences with one Richardson step."""
    dh = (f(x + h) - f(x - h)) / (2 * h)
    dh2 = (f(x + h / 2) - f(x - h / 2)) / h
    return (4 * dh2 - dh) / 3


def _d2(f, x, h):
    fx = f(x)
    dh = (f(x + h) - 2 * fx + f(x - h)) / h**2
    dh2 = (f(x + h / 2) - 2 * fx + f(x - h / 2)) / (h / 2) ** 2
    return (4 * dh2 - dh) / 3


def polar_b_phi(f, phi, mu1, mu2, h=1e-3):
    """B_phi applied to an angular callable f(phi) (R1: phi -> pi - phi, R2: phi -> -phi)."""
    phi = np.asarray(phi, dtype=float)
    c, s = np.cos(phi), np.sin(phi)
    fp = f(phi)
    return (
        -0.5 * _d2(f, phi, h)
        + (mu1 * s / c - mu2 * c / s) * _d1(f, phi, h)
        + mu1 * (fp - f(np.pi - phi)) / (2 * c * c)
        + mu2 * (fp - f(-phi)) / (2 * s * s)
    )


def polar_angular_momentum_real(f, mu1, mu2, h=1e-3):
    """Callable for L f = d_phi f + mu2 cot(phi)(1 - R2) f - mu1 tan(phi)(1 - R1) f."""

    def lf(phi):
        phi = np.asarray(phi, dtype=float)
        fp = f(phi)
        return (
            _d1(f, phi, h)
            + mu2 * np.cos(phi) / np.sin(phi) * (fp - f(-phi))
            - mu1 * np.tan(phi) * (fp - f(np.pi - phi))
        )

    return lf


def polar_laplacian_consistency(p: DunklPolynomial2D, params: DunklParams, samples, h=1e-3, clearance=1e-3):
    """Compare the Cartesian Dunkl Laplacian with its polar form at (rho, phi) samples.

    Returns ``(laplacian_deviation, j_squared_deviation)``, the max pointwise
    absolute deviations; derivatives in the polar forms are finite
    differences with one Richardson step.
    """
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    rho, phi = samples[:, 0], samples[:, 1]
    if np.any(distance_to_axes(phi) < clearance):
        raise ValueError("sample angle too close to a coordinate axis")
    mu1, mu2 = params.mu1, params.mu2
    lap = dunkl_laplacian(p, params)
    exact = lap(rho * np.cos(phi), rho * np.sin(phi))

    worst_lap = 0.0
    worst_j2 = 0.0
    for r, ph, ex in zip(rho, phi, exact):
        # nested stencils reach 2h away from ph; keep them off the axes
        step = min(h, 0.25 * float(distance_to_axes(ph)))
        radial = lambda t: p(t * np.cos(ph), t * np.sin(ph))  # noqa: E731
        angular = lambda a, r=r: p(r * np.cos(a), r * np.sin(a))  # noqa: E731
        b_phi = polar_b_phi(angular, ph, mu1, mu2, step)
        polar = _d2(radial, r, h) + (1 + 2 * mu1 + 2 * mu2) / r * _d1(radial, r, h) - 2.0 / r**2 * b_phi
        worst_lap = max(worst_lap, abs(float(polar - ex)))

        # J^2 = -L^2 against 2 B_phi + 2 mu1 mu2 (1 - R1 R2)
        lf = polar_angular_momentum_real(angular, mu1, mu2, step)
        j2 = -polar_angular_momentum_real(lf, mu1, mu2, step)(ph)
        rhs = 2 * b_phi + 2 * mu1 * mu2 * (angular(ph) - angular(ph + np.pi))
        worst_j2 = max(worst_j2, abs(float(j2 - rhs)))
    return worst_lap, worst_j2
