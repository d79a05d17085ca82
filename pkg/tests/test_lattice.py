import math

import pytest

from optomott.cavity import steady_states, turning_points
from optomott.lattice import LatticeSpec, dimensionless_depth, displacement_check, lattice_from_branch
from optomott.units import AtomSpec, C_LIGHT, DriveSpec, derived_scales

K_985 = 2.0 * math.pi / 985e-9


@pytest.fixture(scope="module")
def sodium_scales():
    atom = AtomSpec(mass=3.81754e-26, omega_a=2.0 * math.pi * C_LIGHT / 589e-9, linewidth=2.0 * math.pi * 9.79e6)
    return derived_scales(atom, DriveSpec.from_wavelength(985e-9))


class TestLatticeFromBranch:
    def test_dark_cavity(self, fig2_mirror, sodium_scales):
        spec = lattice_from_branch(0.0, 0.0, fig2_mirror, sodium_scales, K_985, beam_area=2e-9)
        assert spec.depth == 0.0
        assert spec.offset == 0.0
        assert spec.depth_ratio == 0.0

    def test_red_detuning_gives_attractive_wells(self, fig2_mirror, sodium_scales):
        spec = lattice_from_branch(1e-3, 0.0, fig2_mirror, sodium_scales, K_985, beam_area=2e-9)
        assert spec.depth < 0.0
        assert spec.depth_ratio < 0.0

    def test_offset_to_depth_ratio_is_drive_independent(self, fig2_mirror, sodium_scales):
        # V_L / V_osc = ((1-r)/(1+r)) * pi/(4F) for any transmitted power
        expected = ((1.0 - fig2_mirror.r) / (1.0 + fig2_mirror.r)) * math.pi / (4.0 * fig2_mirror.finesse)
        ratios = []
        for power in (1e-4, 7e-4, 2e-3):
            spec = lattice_from_branch(power, 0.0, fig2_mirror, sodium_scales, K_985, beam_area=2e-9)
            ratios.append(spec.offset / spec.depth)
        for r in ratios:
            assert r == pytest.approx(expected, rel=1e-12)
        # tiny compared to the oscillating part
        assert expected == pytest.approx(6.3e-6, rel=2e-2)

    def test_monotone_transfer_of_bistable_roots(self, fig2_cavity):
        tp = turning_points(fig2_cavity)
        mid = 0.5 * (tp.drive_low + tp.drive_high)
        ys = [r.transmitted for r in steady_states(fig2_cavity, mid).roots]
        depths = [dimensionless_depth(fig2_cavity.finesse, y) for y in ys]
        assert depths == sorted(depths)
        assert len(depths) == 3

    def test_peak_depth_at_resonance(self, fig2_cavity):
        # the resonance-crossing root y = -phi0/beta maps to (4F/pi) * 0.05
        y_res = -fig2_cavity.phi0 / fig2_cavity.beta
        s = dimensionless_depth(fig2_cavity.finesse, y_res)
        assert s == pytest.approx(19.90, abs=0.01)

    def test_site_spacing_consistency_enforced(self):
        with pytest.raises(ValueError, match="site_spacing"):
            LatticeSpec(
                depth=-1e-30,
                offset=-1e-35,
                wavenumber=K_985,
                depth_ratio=-1.0,
                site_spacing=1.0,
                mirror_shift=0.0,
            )

    def test_negative_power_rejected(self, fig2_mirror, sodium_scales):
        with pytest.raises(ValueError):
            lattice_from_branch(-1e-3, 0.0, fig2_mirror, sodium_scales, K_985, beam_area=2e-9)


class TestDisplacementCheck:
    def make_spec(self, shift):
        return LatticeSpec(
            depth=-1e-29,
            offset=-1e-34,
            wavenumber=K_985,
            depth_ratio=-2.0,
            site_spacing=math.pi / K_985,
            mirror_shift=shift,
        )

    def test_zero_shift(self):
        assert displacement_check(self.make_spec(0.0)) == 0.0

    def test_thousandth_of_a_site(self):
        a = math.pi / K_985
        assert displacement_check(self.make_spec(a / 1000.0)) == pytest.approx(1e-3, rel=1e-12)

    def test_physical_scenario_stays_small(self, physical_scenario):
        # upper-branch displacement at the configured operating power
        sol = steady_states(physical_scenario.reduced, physical_scenario.drive.power)
        root = sol.stable_roots[-1]
        mech = physical_scenario.cavity.mech
        spec = lattice_from_branch(
            root.transmitted,
            mech.eta_per_power * root.transmitted,
            physical_scenario.mirror,
            physical_scenario.scales,
            physical_scenario.drive.k,
            beam_area=mech.beam_area,
        )
        ratio = displacement_check(spec)
        assert 1e-4 < ratio < 1e-2  # the ~1e-3 regime where well shifts are negligible
