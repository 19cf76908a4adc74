import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from dunkl_landau.angular import (
    EVEN_PAIRING,
    ODD_PAIRING,
    Sector,
    angular_eigenvalue,
    angular_norm,
    eigen_residual,
    f_eval,
    gram_matrix,
    j_apply_numeric,
    j_operator,
    b_phi_operator,
    measure_pairing,
    phi_eval,
    phi_gram_matrix,
    sectors_for_parity,
    uniform_grid,
)

MU_CONFIGS = [(0.3, 0.7), (1.1, 0.2), (0.5, 0.5)]


class TestSector:
    def test_valid(self):
        assert Sector(1, 1, 2).case == "I"
        assert Sector(-1, 1, 1.5).epsilon == -1

    @pytest.mark.parametrize("args", [(1, 1, 0.5), (1, -1, 1.0), (1, -1, -0.5), (2, 1, 0), (1, 1, 1, 0)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            Sector(*args)


class TestEigenvalue:
    def test_examples(self):
        assert angular_eigenvalue(Sector(1, 1, 0), 0.3, 0.7) == 0.0
        assert angular_eigenvalue(Sector(1, 1, 1), 0.0, 0.0) == pytest.approx(2.0)
        assert angular_eigenvalue(Sector(1, -1, 0.5), 0.5, 0.5) == pytest.approx(2.0)
        assert angular_eigenvalue(Sector(1, 1, 1, -1), 0.3, 0.7) == pytest.approx(-2 * math.sqrt(2.0))

    @given(st.integers(0, 6), st.sampled_from([1, -1]))
    def test_classical_limit(self, n, parity):
        ell = n if parity == 1 else n + 0.5
        lam = angular_eigenvalue(Sector(1, parity, ell), 1e-8, 1e-8)
        assert lam == pytest.approx(2 * ell, abs=1e-6)


class TestPhi:
    def test_minus_minus_ground_vanishes(self):
        assert np.all(phi_eval("--", 0, 0.3, 0.7, np.linspace(0, 6, 7)) == 0.0)

    def test_constant_limit(self):
        assert phi_eval("++", 0, 1e-8, 1e-8, 0.3) == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-6)

    def test_pinned_value(self):
        ell, m1, m2 = 1, 0.3, 0.7
        lg = special.gammaln
        pref = math.sqrt((2 * ell + m1 + m2) / 2 * math.exp(lg(ell + m1 + m2) + lg(ell + 1) - lg(ell + m1 + 0.5) - lg(ell + m2 + 0.5)))
        expected = pref * special.eval_jacobi(1, -0.2, 0.2, -math.cos(2 * math.pi / 3))
        got = phi_eval("++", ell, m1, m2, math.pi / 3)
        assert got == pytest.approx(expected, rel=1e-12)
        assert got == pytest.approx(0.3627026061841538, rel=1e-12)

    @pytest.mark.parametrize("kind,ell", [("++", 0.5), ("--", 1.5), ("-+", 1.0), ("+-", 0.0), ("xx", 1.0)])
    def test_kind_mismatch(self, kind, ell):
        with pytest.raises(ValueError):
            phi_eval(kind, ell, 0.3, 0.7, 0.1)

    @pytest.mark.parametrize("mu", MU_CONFIGS)
    def test_components_orthonormal_against_scipy_quad(self, mu):
        # independent weighted integral of the real components
        m1, m2 = mu
        comps = [("++", 0), ("++", 1), ("--", 1), ("-+", 0.5), ("+-", 1.5)]
        def w(t):
            return abs(math.cos(t)) ** (2 * m1) * abs(math.sin(t)) ** (2 * m2)
        for a in comps:
            for b in comps:
                val = sum(
                    integrate.quad(lambda t: w(t) * phi_eval(*a, m1, m2, t) * phi_eval(*b, m1, m2, t), q * math.pi / 2, (q + 1) * math.pi / 2, limit=200, epsabs=1e-12)[0]
                    for q in range(4)
                )
                assert val == pytest.approx(1.0 if a == b else 0.0, abs=1e-8)

    def test_phi_gram_identity(self):
        comps = [("++", 0), ("++", 2), ("--", 1), ("--", 3)]
        g = phi_gram_matrix(comps, 0.3, 0.7)
        np.testing.assert_allclose(g, np.eye(4), atol=1e-10)


class TestF:
    def test_ground_state_real(self):
        f = f_eval(Sector(1, 1, 0), 0.3, 0.7, np.linspace(0, 6, 9))
        assert np.all(f.imag == 0)

    def test_classical_limit_at_zero_angle(self):
        # at phi = 0 only the cosine-type component survives
        f = f_eval(Sector(1, 1, 1), 1e-8, 1e-8, 0.0)
        assert f.imag == 0.0 and f.real != 0.0

    @settings(max_examples=30)
    @given(st.floats(0, 2 * math.pi), st.sampled_from([Sector(1, 1, 2, -1), Sector(-1, 1, 1.5), Sector(1, -1, 0.5, -1)]))
    def test_periodic(self, phi, sector):
        a = f_eval(sector, 0.3, 0.7, phi)
        b = f_eval(sector, 0.3, 0.7, phi + 2 * math.pi)
        assert abs(a - b) <= 1e-12

    def test_pairing_constants(self):
        assert measure_pairing(1) == EVEN_PAIRING
        assert measure_pairing(-1) == ODD_PAIRING

    @pytest.mark.parametrize("sign", [1, -1])
    def test_eigen_relation_reference_sector(self, sign):
        assert eigen_residual(Sector(1, 1, 1, sign), 0.3, 0.7) <= 1e-6

    @pytest.mark.parametrize("mu", MU_CONFIGS)
    @pytest.mark.parametrize("parity", [1, -1])
    def test_eigen_relation_all(self, mu, parity):
        for s1 in (1, -1):
            for sector in sectors_for_parity(parity, 4, s1):
                assert eigen_residual(sector, *mu) <= 1e-6

    @pytest.mark.parametrize("mu", MU_CONFIGS)
    @pytest.mark.parametrize("parity", [1, -1])
    def test_gram(self, mu, parity):
        sectors = sectors_for_parity(parity, 4)
        np.testing.assert_allclose(gram_matrix(sectors, *mu), np.eye(len(sectors)), atol=1e-8)

    def test_norm_examples(self):
        a = Sector(1, 1, 1)
        assert angular_norm(a, a, 0.3, 0.7) == pytest.approx(1.0, abs=1e-8)
        assert abs(angular_norm(a, Sector(1, 1, 2), 0.3, 0.7)) <= 1e-8
        g = Sector(1, 1, 0)
        assert angular_norm(g, g, 1e-8, 1e-8) == pytest.approx(1.0, abs=1e-6)


class TestJOperator:
    def test_constant_annihilated(self):
        phi = uniform_grid(400)
        out = j_apply_numeric(lambda t: np.ones_like(t), phi, 0.3, 0.7)
        assert np.max(np.abs(out)) <= 1e-12

    def test_axis_grid_rejected(self):
        with pytest.raises(ValueError):
            j_apply_numeric(np.cos, np.array([0.1, math.pi / 2]), 0.3, 0.7)

    @pytest.mark.parametrize("sector", [Sector(1, 1, 2), Sector(1, -1, 1.5, -1)])
    def test_j_squared(self, sector):
        # J J F against 2 B_phi F + 2 mu1 mu2 (F - R1 R2 F), same FD scheme
        m1, m2 = 0.3, 0.7
        f = lambda t: f_eval(sector, m1, m2, t)  # noqa: E731
        phi = uniform_grid(300)
        phi = phi[np.min(np.abs(phi[:, None] - np.arange(5) * math.pi / 2), axis=1) > 0.05]
        jj = j_operator(j_operator(f, m1, m2), m1, m2)(phi)
        rhs = 2 * b_phi_operator(f, m1, m2)(phi) + 2 * m1 * m2 * (f(phi) - f(phi + math.pi))
        assert np.max(np.abs(jj - rhs)) <= 1e-5
