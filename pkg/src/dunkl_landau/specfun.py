"""Special-function kernels: log-Gamma, Jacobi and Laguerre polynomials,
Gauss-Legendre rules and an endpoint-graded variant for weighted integrals."""
from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, f, a=-1.0, b=1.0):
        """Apply the rule on [a, b] to a vectorised callable."""
        half = 0.5 * (b - a)
        x = 0.5 * (a + b) + half * self.nodes
        return half * np.sum(self.weights * f(x))


def ln_gamma(x: float) -> float:
    if x <= 0:
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def _check_params(**kw):
    for name, value in kw.items():
        if value <= -1:
            raise ValueError(f"{name} must be > -1, got {value}")


def jacobi_eval(n, alpha, beta, x):
    """P_n^(alpha, beta)(x) by the three-term recurrence in n.

    ``n == -1`` is accepted as the empty polynomial and returns zeros.
    """
    _check_params(alpha=alpha, beta=beta)
    x = np.asarray(x, dtype=float)
    if n == -1:
        return np.zeros_like(x)
    if n < 0:
        raise ValueError(f"degree must be >= 0 (or -1 sentinel), got {n}")
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev
    ab = alpha + beta
    p = 0.5 * (alpha - beta) + 0.5 * (ab + 2.0) * x
    for k in range(2, n + 1):
        c = 2 * k + ab
        a1 = 2 * k * (k + ab) * (c - 2)
        a2 = (c - 1) * (alpha * alpha - beta * beta)
        a3 = (c - 2) * (c - 1) * c
        a4 = 2 * (k + alpha - 1) * (k + beta - 1) * c
        p_prev, p = p, ((a2 + a3 * x) * p - a4 * p_prev) / a1
    return p


def laguerre_eval(n, alpha, x):
    """Generalised Laguerre polynomial L_n^alpha(x), x >= 0."""
    _check_params(alpha=alpha)
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("laguerre_eval requires x >= 0")
    l_prev = np.ones_like(x)
    if n == 0:
        return l_prev
    l = 1.0 + alpha - x
    for k in range(1, n):
        l_prev, l = l, ((2 * k + 1 + alpha - x) * l - (k + alpha) * l_prev) / (k + 1)
    return l


def laguerre_coefficients(n, alpha):
    """Power-series coefficients c_j of L_n^alpha(x) = sum_j c_j x^j."""
    _check_params(alpha=alpha)
    c = np.empty(n + 1)
    c[0] = math.exp(ln_gamma(n + alpha + 1) - ln_gamma(n + 1) - ln_gamma(alpha + 1))
    for j in range(n):
        c[j + 1] = -c[j] * (n - j) / ((j + 1) * (alpha + j + 1))
    return c


def _legendre_with_derivative(n, x):
    p_prev, p = 1.0, x
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule on [-1, 1] (cached; arrays are read-only).

    Each positive root is bracketed between consecutive Chebyshev-type
    bounds and polished by safeguarded Newton steps; the negative half
    follows by symmetry.
    """
    if n < 1:
        raise ValueError("gauss_legendre needs n >= 1")
    if n == 1:
        return QuadratureRule(np.array([0.0]), np.array([2.0]))
    nodes = np.empty(n)
    weights = np.empty(n)
    for i in range(n // 2 + n % 2):
        # i-th largest root: theta in ((i+1/2)pi/(n+1/2), (i+1)pi/(n+1/2))
        lo = math.cos((i + 1) * math.pi / (n + 0.5))
        hi = math.cos((i + 0.5) * math.pi / (n + 0.5))
        if n % 2 == 1 and i == n // 2:
            x = 0.0
        else:
            x = math.cos(math.pi * (i + 0.75) / (n + 0.5))
            p_lo, _ = _legendre_with_derivative(n, lo)
            for _ in range(100):
                p, dp = _legendre_with_derivative(n, x)
                if (p < 0) == (p_lo < 0):
                    lo = x
                else:
                    hi = x
                step = p / dp
                x_new = x - step
                if not lo < x_new < hi:
                    x_new = 0.5 * (lo + hi)
                if abs(x_new - x) < 1e-16:
                    x = x_new
                    break
                x = x_new
        _, dp = _legendre_with_derivative(n, x)
        w = 2.0 / ((1.0 - x * x) * dp * dp)
        nodes[i], nodes[n - 1 - i] = x, -x
        weights[i] = weights[n - 1 - i] = w
    order = np.argsort(nodes)
    nodes, weights = nodes[order], weights[order]
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(nodes, weights)


def graded_rule(a, b, n=200, grade=6, ends="both"):
    """Nodes/weights on [a, b] clustered at the endpoints.

    Uses the map t = v^g / (v^g + (1-v)^g) (``ends="both"``) or t = v^g
    (``ends="left"``) composed with Gauss-Legendre in v, so integrands with
    integrable power-law endpoint behaviour converge fast.
    """
    rule = gauss_legendre(n)
    v = 0.5 * (rule.nodes + 1.0)
    wv = 0.5 * rule.weights
    g = float(grade)
    if ends == "both":
        num = v**g
        den = v**g + (1 - v) ** g
        t = num / den
        dt = g * (v * (1 - v)) ** (g - 1) / den**2
    elif ends == "left":
        t = v**g
        dt = g * v ** (g - 1)
    else:
        raise ValueError(f"unknown ends={ends!r}")
    return a + (b - a) * t, (b - a) * wv * dt
