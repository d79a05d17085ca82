import math

import numpy as np
import pytest

from optomott.bands import (
    BandData,
    ShallowLatticeWarning,
    bloch_bands,
    hubbard_from_depth,
    interaction_u,
    quartic_integral,
    site_overlap,
    tunneling_j,
    tunneling_j2,
    tunneling_j_wannier,
    wannier,
)

from oracles import mathieu_a0


def residual(bands: BandData) -> float:
    worst = 0.0
    s = bands.depth
    m = np.arange(-bands.m_pw, bands.m_pw + 1)
    for i, qk in enumerate(bands.q_over_k):
        diag = (qk + 2.0 * m) ** 2 + s / 2.0
        off = np.full(2 * bands.m_pw, -s / 4.0)
        T = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
        for n in range(bands.n_bands):
            v = bands.coefficients[i, n]
            worst = max(worst, float(np.linalg.norm(T @ v - bands.energies[i, n] * v)))
    return worst


class TestBlochBands:
    def test_empty_lattice_is_free_dispersion(self):
        b = bloch_bands(0.0)
        assert np.abs(b.energies[:, 0] - b.q_over_k**2).max() < 1e-10

    def test_mathieu_characteristic_value_at_s4(self):
        # sin^2 lattice at depth s maps to the Mathieu equation with
        # parameter q_M = s/4 and a = E - s/2; check the q = 0 ground state
        b = bloch_bands(4.0)
        i0 = int(np.argmin(np.abs(b.q_over_k)))
        assert b.q_over_k[i0] == 0.0
        a0 = mathieu_a0(1.0)
        assert a0 == pytest.approx(-0.455138604, abs=1e-9)
        assert b.energies[i0, 0] - 2.0 == pytest.approx(a0, abs=1e-6)

    def test_lowest_bandwidth_shrinks_with_depth(self):
        widths = []
        for s in np.linspace(2.0, 40.0, 13):
            e0 = bloch_bands(float(s), n_bands=1).energies[:, 0]
            widths.append(float(e0.max() - e0.min()))
        assert all(a > b for a, b in zip(widths, widths[1:]))

    @pytest.mark.parametrize("s", [0.0, 4.0, 30.0])
    def test_eigenpair_residuals(self, s):
        assert residual(bloch_bands(s)) <= 1e-10

    @pytest.mark.parametrize("s", [4.0, 50.0])
    def test_plane_wave_cutoff_converged(self, s):
        e_ref = bloch_bands(s, m_pw=16).energies[:, 0]
        e_wide = bloch_bands(s, m_pw=21).energies[:, 0]
        assert np.abs(e_ref - e_wide).max() < 1e-10

    def test_band_symmetry_in_quasimomentum(self):
        b = bloch_bands(7.0)
        qk = b.q_over_k
        for i, q in enumerate(qk):
            j = int(np.argmin(np.abs(qk + q)))
            if abs(qk[j] + q) < 1e-14:  # -q on the grid (q = 1 pairs with itself mod 2)
                assert b.energies[i] == pytest.approx(b.energies[j], abs=1e-11)

    def test_band_periodicity_in_reciprocal_vector(self):
        # shifting every quasimomentum by 2k reshuffles the plane-wave basis
        # but must reproduce the same energies
        s = 6.0
        m = np.arange(-16, 17)
        qk = np.arange(1, 33) * (2.0 / 32) - 1.0
        base = bloch_bands(s, n_q=32).energies
        from optomott._kernels import tridiag_lowest

        diag = ((qk + 2.0)[:, None] + 2.0 * m[None, :]) ** 2 + s / 2.0
        off = np.full((32, 32), -s / 4.0)
        shifted, _ = tridiag_lowest(diag, off, 3)
        assert np.abs(shifted - base).max() < 1e-9

    def test_ordering_and_unit_norm(self):
        b = bloch_bands(9.0)
        assert np.all(np.diff(b.energies, axis=1) >= -1e-12)
        norms = np.linalg.norm(b.coefficients, axis=2)
        assert np.abs(norms - 1.0).max() < 1e-12

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            bloch_bands(-1.0)
        with pytest.raises(ValueError):
            bloch_bands(5.0, n_q=1)
        with pytest.raises(ValueError):
            bloch_bands(5.0, n_bands=40, m_pw=8)


class TestWannier:
    def test_normalized_on_grid(self):
        from scipy.integrate import simpson

        for s in (3.0, 12.0, 40.0):
            w = wannier(bloch_bands(s, n_bands=1))
            assert abs(np.trapezoid(w.samples**2, w.grid) - 1.0) < 1e-8
            # independent quadrature rule agrees
            assert abs(simpson(w.samples**2, x=w.grid) - 1.0) < 1e-6

    def test_real_and_symmetric(self):
        w = wannier(bloch_bands(8.0, n_bands=1))
        peak = np.abs(w.samples).max()
        assert np.abs(w.samples - w.samples[::-1]).max() / peak < 1e-6

    def test_deep_lattice_matches_oscillator_ground_state(self):
        s = 30.0
        w = wannier(bloch_bands(s, n_bands=1))
        gauss = (math.sqrt(s) / math.pi) ** 0.25 * np.exp(-math.sqrt(s) * w.grid**2 / 2.0)
        overlap = np.trapezoid(w.samples * gauss, w.grid)
        assert overlap**2 > 0.99

    @pytest.mark.parametrize("s", [5.0, 10.0])
    def test_neighbor_orthogonality(self, s):
        w = wannier(bloch_bands(s, n_bands=1))
        assert abs(site_overlap(w, 1)) < 1e-3
        assert abs(site_overlap(w, 2)) < 1e-3

    def test_localization_improves_with_depth(self):
        o = [abs(site_overlap(wannier(bloch_bands(s, n_bands=1)), 1)) for s in (4.0, 16.0)]
        assert o[1] < o[0] + 1e-12

    def test_window_validation(self):
        b = bloch_bands(5.0, n_q=16, n_bands=1)
        with pytest.raises(ValueError):
            wannier(b, n_sites=17)
        with pytest.raises(ValueError):
            wannier(b, points_per_site=4)
        w = wannier(b, n_sites=8)
        with pytest.raises(ValueError):
            site_overlap(w, 9)


class TestTunneling:
    def test_asymptotic_law_at_s10(self):
        j = tunneling_j(bloch_bands(10.0, n_bands=1))
        asym = (4.0 / math.sqrt(math.pi)) * 10.0**0.75 * math.exp(-2.0 * math.sqrt(10.0))
        assert asym == pytest.approx(0.0227, abs=1e-4)
        assert abs(j - asym) / asym < 0.25

    @pytest.mark.parametrize("s", [5.0, 10.0, 20.0, 30.0])
    def test_dual_route_agreement(self, s):
        b = bloch_bands(s, n_bands=1)
        j_disp = tunneling_j(b)
        j_wann = tunneling_j_wannier(b)
        assert abs(j_disp - j_wann) / j_disp < 0.01

    def test_positive_with_accelerating_exponential_decay(self):
        # J ~ s^(3/4) exp(-2 sqrt(s)): log J falls monotonically and is
        # concave against sqrt(s) (in s itself the exponential of a square
        # root is log-convex, so concavity must be read on the sqrt axis)
        depths = np.linspace(5.0, 40.0, 11)
        js = np.array([tunneling_j(bloch_bands(float(s), n_bands=1)) for s in depths])
        assert np.all(js > 0.0)
        roots = np.sqrt(depths)
        logs = np.log(js)
        assert np.all(np.diff(logs) < 0.0)
        slopes = np.diff(logs) / np.diff(roots)
        assert np.all(np.diff(slopes) < 0.0)

    def test_free_band_still_evaluates(self):
        # no tight-binding meaning at s = 0, but the Fourier coefficient exists
        assert tunneling_j(bloch_bands(0.0, n_bands=1)) > 0.0

    def test_next_neighbor_is_subdominant(self):
        b = bloch_bands(10.0, n_bands=1)
        assert abs(tunneling_j2(b)) < 0.05 * tunneling_j(b)


class TestInteraction:
    def test_linear_in_coupling(self):
        w = wannier(bloch_bands(10.0, n_bands=1))
        assert interaction_u(w, 0.0) == 0.0
        assert interaction_u(w, 0.4) == pytest.approx(2.0 * interaction_u(w, 0.2), rel=1e-14)

    def test_gaussian_estimate_at_s30(self):
        w = wannier(bloch_bands(30.0, n_bands=1))
        i4 = quartic_integral(w)
        gauss = 30.0**0.25 / math.sqrt(2.0 * math.pi)
        assert abs(i4 - gauss) / gauss < 0.10

    def test_grid_refinement_converged(self):
        b = bloch_bands(12.0, n_bands=1)
        u1 = quartic_integral(wannier(b, points_per_site=128))
        u2 = quartic_integral(wannier(b, points_per_site=256))
        assert abs(u1 - u2) / u2 < 1e-6

    def test_negative_coupling_rejected(self):
        w = wannier(bloch_bands(10.0, n_bands=1))
        with pytest.raises(ValueError):
            interaction_u(w, -0.1)


class TestHubbardFromDepth:
    def test_monotonic_in_depth(self):
        depths = [3.0, 6.0, 12.0, 24.0, 40.0]
        results = [hubbard_from_depth(s, g=0.2) for s in depths]
        js = [r.tunneling for r in results]
        us = [r.interaction for r in results]
        ratios = [r.ratio for r in results]
        assert all(a > b for a, b in zip(js, js[1:]))
        assert all(a < b for a, b in zip(us, us[1:]))
        assert all(a > b for a, b in zip(ratios, ratios[1:]))

    def test_coupling_scales_interaction_only(self):
        r1 = hubbard_from_depth(10.0, g=0.2)
        r2 = hubbard_from_depth(10.0, g=0.4)
        assert r2.tunneling == r1.tunneling
        assert r2.interaction == pytest.approx(2.0 * r1.interaction, rel=1e-14)
        assert r2.ratio == pytest.approx(r1.ratio / 2.0, rel=1e-14)

    def test_ratio_definition(self):
        b = bloch_bands(10.0, n_bands=1)
        w = wannier(b)
        g = 0.2 / quartic_integral(w)  # calibrated so U = 0.2
        r = hubbard_from_depth(10.0, g=g)
        assert r.interaction == pytest.approx(0.2, rel=1e-10)
        assert r.ratio == pytest.approx(2.0 * tunneling_j(b) / 0.2, rel=1e-10)

    def test_shallow_lattice_warns(self):
        with pytest.warns(ShallowLatticeWarning):
            hubbard_from_depth(2.0, g=0.2)

    def test_zero_coupling_gives_infinite_ratio(self):
        r = hubbard_from_depth(10.0, g=0.0)
        assert r.interaction == 0.0
        assert math.isinf(r.ratio)
