"""Dunkl-Klein-Gordon oscillator in a uniform magnetic field.

Submodules: ``specfun`` (orthogonal polynomials, quadrature), ``dunkl2d``
(exact polynomial Dunkl operator algebra), ``angular`` and ``radial``
(separated eigenfunctions, su(1,1) structure), ``spectrum`` (energies),
``oracle`` (finite-difference eigenvalues) and ``cli``.
"""
from .angular import Sector, angular_eigenvalue, f_eval
from .oracle import RadialGrid, oracle_spectrum, tridiag_eigenvalues
from .radial import radial_eigenfunction, radial_eval
from .spectrum import ModelParams, energy_chain, energy_paper_verbatim, omega_eff, wavefunction_eval

__version__ = "0.1.0"

__all__ = [
    "ModelParams",
    "RadialGrid",
    "Sector",
    "angular_eigenvalue",
    "energy_chain",
    "energy_paper_verbatim",
    "f_eval",
    "omega_eff",
    "oracle_spectrum",
    "radial_eigenfunction",
    "radial_eval",
    "tridiag_eigenvalues",
    "wavefunction_eval",
]
