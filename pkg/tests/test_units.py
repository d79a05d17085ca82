import math

import pytest

from optomott.units import (
    C_LIGHT,
    HBAR,
    AtomSpec,
    DerivedScales,
    DriveSpec,
    derived_scales,
    recoil_energy,
    stark_coefficient,
)

NA_MASS = 3.81754e-26
NA_LINEWIDTH = 2.0 * math.pi * 9.79e6


def sodium(g_1d=None):
    return AtomSpec(mass=NA_MASS, omega_a=2.0 * math.pi * C_LIGHT / 589e-9, linewidth=NA_LINEWIDTH, g_1d=g_1d)


class TestRecoilEnergy:
    def test_inverse_proportional_to_mass(self):
        drive = DriveSpec.from_wavelength(985e-9)
        light = sodium()
        heavy = AtomSpec(mass=2.0 * NA_MASS, omega_a=light.omega_a, linewidth=light.linewidth)
        assert recoil_energy(heavy, drive) == pytest.approx(recoil_energy(light, drive) / 2.0, rel=1e-14)

    def test_quadratic_in_wavenumber(self):
        atom = sodium()
        e1 = recoil_energy(atom, DriveSpec.from_wavelength(985e-9))
        e2 = recoil_energy(atom, DriveSpec.from_wavelength(985e-9 / 2.0))
        assert e2 == pytest.approx(4.0 * e1, rel=1e-14)

    def test_sodium_at_985nm_against_hand_evaluation(self):
        # independent evaluation with local constants
        k = 2.0 * math.pi / 985e-9
        expected = (1.054571817e-34 * k) ** 2 / (2.0 * 3.81754e-26)
        value = recoil_energy(sodium(), DriveSpec.from_wavelength(985e-9))
        assert value > 0.0
        assert value == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("scale", [0.5, 2.0, 3.7, 11.0])
    def test_scale_homogeneity(self, scale):
        atom = sodium()
        base = recoil_energy(atom, DriveSpec.from_wavelength(985e-9))
        scaled = recoil_energy(atom, DriveSpec.from_wavelength(985e-9 / scale))
        assert scaled == pytest.approx(scale**2 * base, rel=1e-12)


class TestStarkCoefficient:
    def test_odd_in_detuning(self):
        atom = sodium()
        red = DriveSpec.from_wavelength(985e-9)
        delta = red.omega - atom.omega_a
        blue = DriveSpec.from_wavelength(2.0 * math.pi * C_LIGHT / (atom.omega_a - delta))
        a_red = stark_coefficient(atom, red)
        a_blue = stark_coefficient(atom, blue)
        assert a_blue == pytest.approx(-a_red, rel=1e-9)

    def test_linear_in_linewidth(self):
        drive = DriveSpec.from_wavelength(985e-9)
        narrow = sodium()
        wide = AtomSpec(mass=narrow.mass, omega_a=narrow.omega_a, linewidth=2.0 * narrow.linewidth)
        assert stark_coefficient(wide, drive) == pytest.approx(2.0 * stark_coefficient(narrow, drive), rel=1e-14)

    def test_red_detuned_sodium_is_negative(self):
        # 985 nm drive below the D line: attractive lattice
        assert stark_coefficient(sodium(), DriveSpec.from_wavelength(985e-9)) < 0.0

    def test_zero_detuning_rejected(self):
        atom = sodium()
        resonant = DriveSpec(
            wavelength=2.0 * math.pi * C_LIGHT / atom.omega_a,
            omega=atom.omega_a,
            k=atom.omega_a / C_LIGHT,
        )
        with pytest.raises(ValueError, match="detuning"):
            stark_coefficient(atom, resonant)

    @pytest.mark.parametrize("lam", [700e-9, 985e-9, 1200e-9])
    def test_product_with_detuning_is_detuning_free(self, lam):
        atom = sodium()
        drive = DriveSpec.from_wavelength(lam)
        delta = drive.omega - atom.omega_a
        product = stark_coefficient(atom, drive) * delta
        expected = 3.0 * math.pi * C_LIGHT**2 * atom.linewidth / (2.0 * atom.omega_a**3)
        assert product == pytest.approx(expected, rel=1e-14)


class TestSpecs:
    def test_drive_consistency_enforced(self):
        k = 2.0 * math.pi / 985e-9
        with pytest.raises(ValueError, match="inconsistent"):
            DriveSpec(wavelength=985e-9, omega=C_LIGHT * k * (1.0 + 1e-6), k=k)

    def test_drive_negative_power_rejected(self):
        with pytest.raises(ValueError, match="power"):
            DriveSpec.from_wavelength(985e-9, power=-1.0)

    def test_drive_from_wavelength_consistent(self):
        d = DriveSpec.from_wavelength(985e-9, power=1e-3)
        assert d.k == pytest.approx(2.0 * math.pi / d.wavelength, rel=1e-15)
        assert d.k == pytest.approx(d.omega / C_LIGHT, rel=1e-15)

    @pytest.mark.parametrize("field", ["mass", "omega_a", "linewidth"])
    def test_atom_positivity(self, field):
        values = {"mass": NA_MASS, "omega_a": 3.2e15, "linewidth": 6.2e7}
        values[field] = 0.0
        with pytest.raises(ValueError, match=field):
            AtomSpec(**values)

    def test_atom_g_validated_when_given(self):
        with pytest.raises(ValueError, match="g_1d"):
            sodium(g_1d=-1e-40)
        assert sodium(g_1d=1e-40).g_1d == 1e-40

    def test_scales_sign_invariant(self):
        with pytest.raises(ValueError, match="sign"):
            DerivedScales(recoil=1e-30, stark=1e-37, detuning=-1e15)

    def test_derived_scales_bundle(self):
        atom = sodium()
        drive = DriveSpec.from_wavelength(985e-9)
        scales = derived_scales(atom, drive)
        assert scales.recoil == recoil_energy(atom, drive)
        assert scales.stark == stark_coefficient(atom, drive)
        assert scales.detuning == drive.omega - atom.omega_a
        assert scales.detuning < 0.0 and scales.stark < 0.0

    def test_hbar_and_c_are_codata_2018(self):
        assert HBAR == 1.054571817e-34
        assert C_LIGHT == 299792458.0
