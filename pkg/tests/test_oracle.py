import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunkl_landau.angular import Sector
from dunkl_landau.oracle import (
    GridConvergenceWarning,
    RadialGrid,
    TridiagonalMatrix,
    convergence_factors,
    dirichlet_laplacian,
    discretize_g_equation,
    exact_levels,
    oracle_spectrum,
    oracle_vs_chain,
    sturm_count,
    tridiag_eigenvalues,
)
from dunkl_landau.spectrum import ModelParams


class TestTridiagonal:
    def test_diagonal_matrix(self):
        m = TridiagonalMatrix([1.0, 2.0, 3.0], [0.0, 0.0])
        assert tridiag_eigenvalues(m, 3) == pytest.approx([1.0, 2.0, 3.0], abs=1e-10)

    def test_two_by_two(self):
        m = TridiagonalMatrix([2.0, 2.0], [-1.0])
        assert tridiag_eigenvalues(m, 2) == pytest.approx([1.0, 3.0], abs=1e-10)

    def test_count_at_infinity(self):
        m = TridiagonalMatrix([1.0, -4.0, 2.5, 7.0], [0.3, -2.0, 1.0])
        assert sturm_count(m, [np.inf, 1e300])[1] == 4
        assert sturm_count(m, -1e300)[0] == 0

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            TridiagonalMatrix([1.0, 2.0], [0.0, 0.0])

    def test_count_bounds(self):
        m = TridiagonalMatrix([1.0, 2.0], [0.5])
        with pytest.raises(ValueError):
            tridiag_eigenvalues(m, 3)
        assert tridiag_eigenvalues(m, 0) == []

    def test_dirichlet_toy(self):
        # 5 interior points, spacing h: (2/h^2)(1 - cos(k pi / 6))
        h = 0.3
        got = tridiag_eigenvalues(dirichlet_laplacian(5, h), 5)
        expected = [2 / h**2 * (1 - math.cos(k * math.pi / 6)) for k in range(1, 6)]
        assert got == pytest.approx(expected, abs=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 40), st.integers(0, 2**32 - 1))
    def test_against_dense_solver(self, n, seed):
        rng = np.random.default_rng(seed)
        m = TridiagonalMatrix(rng.normal(size=n) * 5, rng.normal(size=n - 1))
        count = max(1, n // 2)
        ref = np.linalg.eigvalsh(m.to_dense())[:count]
        np.testing.assert_allclose(tridiag_eigenvalues(m, count), ref, atol=1e-9)

    @given(st.integers(0, 2**32 - 1))
    def test_count_monotone(self, seed):
        rng = np.random.default_rng(seed)
        m = TridiagonalMatrix(rng.normal(size=12), rng.normal(size=11))
        counts = sturm_count(m, np.linspace(-10, 10, 81))
        assert np.all(np.diff(counts) >= 0)

    def test_degenerate_levels(self):
        # decoupled blocks give a repeated eigenvalue
        m = TridiagonalMatrix([2.0, 2.0, 5.0, 2.0], [0.0, 0.0, 0.0])
        assert tridiag_eigenvalues(m, 4) == pytest.approx([2.0, 2.0, 2.0, 5.0], abs=1e-10)


class TestGrid:
    @pytest.mark.parametrize("kwargs", [dict(n_points=499), dict(r_max=11.0), dict(r_min=-1.0), dict(r_min=1e-5)])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            RadialGrid(**kwargs)

    def test_spacing(self):
        g = RadialGrid(0.0, 14.0, 8001)
        assert g.h == pytest.approx(14.0 / 8000)
        assert len(g.interior) == 7999
        assert g.refined().h == pytest.approx(g.h / 2)
        assert RadialGrid.with_spacing(0.0, 12.0, 0.01).n_points == 1201

    def test_offset_origin_allowed(self):
        g = RadialGrid(0.01, 14.0, 2000)
        assert g.r_min >= g.h / 2


class TestDiscretisation:
    def test_alpha_half_has_no_centrifugal_term(self):
        grid = RadialGrid(0.0, 12.0, 600)
        m = discretize_g_equation(0.5, grid)
        r = grid.interior
        np.testing.assert_allclose(m.diagonal, 2 / grid.h**2 + r**2, rtol=1e-13)
        plain = discretize_g_equation(0.5, grid, centrifugal="plain")
        np.testing.assert_allclose(plain.diagonal, m.diagonal, rtol=1e-13)

    def test_alpha_from_sector_values(self):
        # ell = 1, mu = (0.3, 0.7) gives alpha = 3, lowest level 8
        assert exact_levels(2 * 1 + 0.3 + 0.7, 1) == [8.0]

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            discretize_g_equation(-0.1, RadialGrid())
        with pytest.raises(ValueError):
            discretize_g_equation(1.0, RadialGrid(), centrifugal="other")

    def test_indicial_term_tends_to_centrifugal(self):
        grid = RadialGrid(0.0, 12.0, 2000)
        alpha = 2.3
        r = grid.interior
        ind = discretize_g_equation(alpha, grid).diagonal - 2 / grid.h**2 - r**2
        far = r > 2.0
        np.testing.assert_allclose(ind[far], (alpha**2 - 0.25) / r[far] ** 2, rtol=1e-5)


class TestSpectrum:
    def test_half_integer_alpha_levels(self):
        assert oracle_spectrum(0.0, 0.25, 0.25, 3) == pytest.approx([3.0, 7.0, 11.0], abs=5e-4)

    @pytest.mark.parametrize(
        "ell,mu1,mu2,expected,tol",
        [
            # alpha = 0 sits at the critical coupling, where the tolerance is looser
            (0.0, 0.0, 0.0, [2.0, 6.0, 10.0], 5e-3),
            (1.0, 0.3, 0.7, [8.0, 12.0, 16.0], 5e-4),
            (0.5, 0.2, 0.4, [5.2, 9.2, 13.2], 5e-4),
        ],
    )
    def test_examples(self, ell, mu1, mu2, expected, tol):
        assert oracle_spectrum(ell, mu1, mu2, 3) == pytest.approx(expected, abs=tol)

    def test_boundary_insensitivity(self):
        h = 14.0 / 5999
        near = oracle_spectrum(1.0, 0.3, 0.7, 6, RadialGrid.with_spacing(0.0, 12.0, h))
        far = oracle_spectrum(1.0, 0.3, 0.7, 6, RadialGrid.with_spacing(0.0, 16.0, h))
        assert max(abs(a - b) for a, b in zip(near, far)) < 1e-8

    def test_case_coincidence(self):
        # case I (ell=1, 0.3, 0.7) and case II (ell=1/2, 0.6, 1.4) both have alpha = 3
        grid = RadialGrid(0.0, 12.0, 1000)
        a = discretize_g_equation(2 * 1.0 + 0.3 + 0.7, grid)
        b = discretize_g_equation(2 * 0.5 + 0.6 + 1.4, grid)
        np.testing.assert_array_equal(a.diagonal, b.diagonal)
        lv1 = oracle_spectrum(1.0, 0.3, 0.7, 3, grid)
        lv2 = oracle_spectrum(0.5, 0.6, 1.4, 3, grid)
        assert lv1 == lv2

    @pytest.mark.parametrize("alpha", [0.6, 3.0])
    def test_second_order_convergence(self, alpha):
        factors = convergence_factors(alpha, 4)
        assert all(3.8 <= f <= 4.2 for f in factors), factors

    def test_plain_stencil_is_worse_for_small_alpha(self):
        grid = RadialGrid(0.0, 14.0, 2000)
        ind = oracle_spectrum(0.0, 0.05, 0.05, 1, grid)[0]
        plain = oracle_spectrum(0.0, 0.05, 0.05, 1, grid, centrifugal="plain")[0]
        exact = exact_levels(0.1, 1)[0]
        assert abs(ind - exact) < abs(plain - exact)

    def test_convergence_warning(self):
        with pytest.warns(GridConvergenceWarning):
            oracle_spectrum(1.0, 0.3, 0.7, 2, RadialGrid(0.0, 14.0, 500), check_convergence=True)

    def test_no_warning_on_fine_grid(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error", GridConvergenceWarning)
            oracle_spectrum(1.0, 0.3, 0.7, 2, RadialGrid(0.0, 14.0, 6000), check_convergence=True)


class TestOracleVsChain:
    def test_without_field_both_agree(self):
        p = ModelParams(B=0.0, mu1=0.3, mu2=0.7)
        rep = oracle_vs_chain(p, Sector(1, 1, 1), 4)
        assert rep.chain_within_tolerance() and rep.verbatim_within_tolerance()

    def test_with_field_only_chain_agrees(self):
        p = ModelParams(B=1.0, mu1=0.3, mu2=0.7)
        rep = oracle_vs_chain(p, Sector(1, 1, 1), 4)
        assert rep.chain_within_tolerance()
        assert not rep.verbatim_within_tolerance()
        assert rep.max_verbatim_deviation > 100 * rep.max_chain_deviation

    def test_case_two_sector(self):
        p = ModelParams(B=0.7, mu1=0.2, mu2=0.4)
        rep = oracle_vs_chain(p, Sector(-1, 1, 1.5, -1), 3)
        assert rep.chain_within_tolerance()

    def test_monotone_levels(self):
        p = ModelParams(B=1.0)
        rep = oracle_vs_chain(p, Sector(1, 1, 2, -1), 5)
        e = [r["E_oracle"] for r in rep.rows]
        assert all(b > a for a, b in zip(e, e[1:]))
        assert [r["n"] for r in rep.rows] == list(range(5))
