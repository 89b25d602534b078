import numpy as np
import pytest

from movingwell import (
    ConfluentConfig,
    Family,
    WellConfig,
    confluent_missing_state,
    confluent_well_potential,
    confluent_well_state,
    instantaneous_energy,
    moving_box_potential,
    moving_box_state,
    norm,
    overlap,
    poschl_teller_potential,
    poschl_teller_state,
    wall_motion_energy_shift,
    wall_position,
)
from movingwell.errors import (
    InvalidQuantumNumberError,
    OutsideWellError,
    RegularityViolationError,
    SeedCollisionError,
)
from movingwell.verify import tdse_residual

CFG = WellConfig()
CC = ConfluentConfig(m=2, omega=0.4)


class TestMovingBoxPotential:
    def test_inside_and_outside(self):
        l = wall_position(1.0, CFG)
        assert moving_box_potential(l / 2, 1.0, CFG) == 0.0
        assert moving_box_potential(-0.1, 1.0, CFG) == np.inf
        assert moving_box_potential(l + 0.1, 1.0, CFG) == np.inf

    def test_vectorized(self):
        l = wall_position(0.5, CFG)
        vals = moving_box_potential(np.array([-1.0, l / 3, l + 1]), 0.5, CFG)
        assert vals[0] == np.inf and vals[1] == 0.0 and vals[2] == np.inf


class TestMovingBoxState:
    def test_zero_at_walls(self):
        l = wall_position(1.0, CFG)
        assert moving_box_state(1, 0.0, 1.0, CFG) == 0
        assert moving_box_state(1, l, 1.0, CFG) == 0

    def test_peak_density(self):
        # at t=1/4 the well has width 2, so the peak density is 2/ell = 1
        l = wall_position(0.25, CFG)
        assert abs(moving_box_state(1, l / 2, 0.25, CFG)) ** 2 == pytest.approx(1.0)

    def test_normalized(self):
        for n in (1, 3, 6):
            for t in (0.25, 0.75):
                val = norm(lambda x, tt: moving_box_state(n, x, tt, CFG), t, CFG)
                assert val == pytest.approx(1.0, abs=1e-10)

    def test_orthogonal(self):
        for t in (0.5, 1.0):
            for n in range(1, 6):
                for k in range(n + 1, 6):
                    val = overlap(
                        lambda x, tt: moving_box_state(n, x, tt, CFG),
                        lambda x, tt: moving_box_state(k, x, tt, CFG), t, CFG)
                    assert abs(val) < 1e-10

    def test_outside_well_raises(self):
        with pytest.raises(OutsideWellError):
            moving_box_state(1, 10.0, 0.25, CFG)
        with pytest.raises(OutsideWellError):
            moving_box_state(1, -0.01, 0.25, CFG)

    def test_non_default_constants_rejected(self):
        with pytest.raises(ValueError):
            moving_box_state(1, 0.5, 0.5, WellConfig(c1=2.0))


class TestPoschlTeller:
    def test_potential_midpoint(self):
        l = wall_position(1.0, CFG)
        assert poschl_teller_potential(l / 2, 1.0, CFG) == pytest.approx(
            2 * (np.pi / l) ** 2)

    def test_potential_quarter(self):
        # ell = 2 at t = 1/4; csc^2(pi/4) = 2
        l = wall_position(0.25, CFG)
        assert poschl_teller_potential(l / 4, 0.25, CFG) == pytest.approx(np.pi**2)

    def test_potential_walls(self):
        l = wall_position(1.0, CFG)
        assert poschl_teller_potential(0.0, 1.0, CFG) == np.inf
        assert poschl_teller_potential(l, 1.0, CFG) == np.inf

    def test_state_walls_and_midpoint(self):
        l = wall_position(1.0, CFG)
        assert poschl_teller_state(2, 0.0, 1.0, CFG) == 0
        assert poschl_teller_state(2, l, 1.0, CFG) == 0
        # bracket at the midpoint is [cot(pi/2) sin(pi) - 2 cos(pi)] = 2
        val = poschl_teller_state(2, l / 2, 1.0, CFG)
        assert abs(val) == pytest.approx(2 * np.pi * np.sqrt(2 / l), rel=1e-12)

    def test_tower_starts_at_two(self):
        with pytest.raises(InvalidQuantumNumberError):
            poschl_teller_state(1, 0.5, 0.5, CFG)


class TestConfluentFamily:
    def test_potential_regularity_gate(self):
        bad = ConfluentConfig(m=1, omega=-0.5)
        with pytest.raises(RegularityViolationError):
            confluent_well_potential(0.5, 0.25, CFG, bad)

    def test_admissible_omegas_finite_inside(self):
        t = 0.5
        l = wall_position(t, CFG)
        grid = np.linspace(0.01 * l, 0.99 * l, 301)
        for omega in (0.4, -1.0, 0.0, 10.0):
            cc = ConfluentConfig(m=2, omega=omega)
            vals = confluent_well_potential(grid, t, CFG, cc)
            assert np.all(np.isfinite(vals))

    def test_potential_walls_infinite(self):
        l = wall_position(0.5, CFG)
        assert confluent_well_potential(0.0, 0.5, CFG, CC) == np.inf
        assert confluent_well_potential(l, 0.5, CFG, CC) == np.inf

    def test_large_omega_approaches_box(self):
        t = 0.5
        l = wall_position(t, CFG)
        grid = np.linspace(0.01 * l, 0.99 * l, 501)
        devs = []
        for omega in (10.0, 1e2, 1e3, 1e4):
            cc = ConfluentConfig(m=2, omega=omega)
            devs.append(np.max(np.abs(confluent_well_potential(grid, t, CFG, cc))))
        assert all(b < a for a, b in zip(devs, devs[1:]))
        cc = ConfluentConfig(m=2, omega=1e6)
        assert np.max(np.abs(confluent_well_potential(grid, t, CFG, cc))) < 1e-4

    def test_state_walls(self):
        l = wall_position(1.0, CFG)
        for omega in (0.4, -1.0, 0.0):
            cc = ConfluentConfig(m=2, omega=omega)
            assert confluent_well_state(1, 0.0, 1.0, CFG, cc) == 0
            assert confluent_well_state(1, l, 1.0, CFG, cc) == 0

    def test_seed_collision(self):
        with pytest.raises(SeedCollisionError):
            confluent_well_state(2, 0.5, 0.5, CFG, CC)

    def test_state_finite_at_midpoint_omega_minus_one(self):
        cc = ConfluentConfig(m=2, omega=-1.0)
        l = wall_position(1.0, CFG)
        val = confluent_well_state(1, l / 2, 1.0, CFG, cc)
        assert np.isfinite(val.real) and np.isfinite(val.imag)
        assert abs(val) > 0


class TestMissingState:
    def test_walls_zero_for_regular_omega(self):
        l = wall_position(1.0, CFG)
        assert confluent_missing_state(0.0, 1.0, CFG, CC) == 0
        assert confluent_missing_state(l, 1.0, CFG, CC) == 0

    def test_norm_closed_form(self):
        # integral of |u|^2 / W^2 telescopes to 1/(omega (omega + 1))
        for omega in (0.4, 2.0, -3.0):
            cc = ConfluentConfig(m=2, omega=omega)
            val = norm(lambda x, t: confluent_missing_state(x, t, CFG, cc), 0.5, CFG,
                       panels=256)
            assert val == pytest.approx(1 / (omega * (omega + 1)), rel=1e-9)

    def test_divergent_norm_for_omega_zero(self):
        cc = ConfluentConfig(m=2, omega=0.0)
        state = lambda x, t: confluent_missing_state(x, t, CFG, cc)
        norms = [norm(state, 0.5, CFG, panels=p) for p in (64, 128, 256)]
        assert norms[0] < norms[1] < norms[2]
        assert norms[2] > 10 * norms[0]

    def test_wall_blowup_for_omega_minus_one(self):
        cc = ConfluentConfig(m=2, omega=-1.0)
        l = wall_position(0.5, CFG)
        vals = [abs(confluent_missing_state(l - eps * l, 0.5, CFG, cc))
                for eps in (1e-3, 1e-4, 1e-5)]
        assert vals[0] < vals[1] < vals[2]

    def test_density_shifted_toward_fixed_wall(self):
        # the 1/weight^2 factor reweights the seed's humps: the density peak
        # sits left of both the midpoint and the bare sin^2 hump at ell/4,
        # and dominates the right hump
        t = 0.5
        l = wall_position(t, CFG)
        x = np.linspace(0.001 * l, 0.999 * l, 4001)
        density = np.abs(confluent_missing_state(x, t, CFG, CC)) ** 2
        peak = x[np.argmax(density)]
        assert peak < 0.25 * l
        left = density[x < l / 2].max()
        right = density[x > l / 2].max()
        assert left > 2 * right


class TestSinDiffHelper:
    # reference values computed with 40-digit arithmetic, frozen here; they
    # bracket the series/direct switch point
    @pytest.mark.parametrize("z,expected", [
        (0.001, 1.6666665833333352e-10),
        (0.1, 0.00016658335317184768),
        (0.3, 0.0044797933386604245),
        (0.34999, 0.007101586288821859),
        (0.35001, 0.007102798834565224),
        (1.0, 0.1585290151921035),
        (2.5, 1.9015278558960436),
    ])
    def test_against_frozen_references(self, z, expected):
        from movingwell.families import _sin_diff
        assert float(_sin_diff(z)) == pytest.approx(expected, rel=5e-14)


class TestEnergies:
    def test_instantaneous_energy(self):
        assert instantaneous_energy(1, 0.0, CFG) == pytest.approx(np.pi**2)
        assert instantaneous_energy(2, 0.25, CFG) == pytest.approx(np.pi**2)
        assert instantaneous_energy(3, 1.0, CFG) == pytest.approx((3 * np.pi / 5) ** 2)

    def test_wall_motion_shift(self):
        # 4 L^2 (1/3 - 1/(2 n^2 pi^2))
        assert wall_motion_energy_shift(1, CFG) == pytest.approx(
            4 * (1 / 3 - 1 / (2 * np.pi**2)))
        big = wall_motion_energy_shift(50, CFG)
        assert big == pytest.approx(4 / 3, rel=1e-3)


class TestBoundaryDecay:
    @pytest.mark.parametrize("state", [
        lambda x, t: moving_box_state(1, x, t, CFG),
        lambda x, t: poschl_teller_state(3, x, t, CFG),
        lambda x, t: confluent_well_state(1, x, t, CFG, CC),
        lambda x, t: confluent_missing_state(x, t, CFG, CC),
    ])
    def test_decay_toward_walls(self, state):
        rng = np.random.default_rng(3)
        for t in 0.25 + rng.random(10) * 0.75:
            l = wall_position(t, CFG)
            left = [abs(state(eps * l, t)) for eps in (1e-3, 1e-4, 1e-5)]
            right = [abs(state(l - eps * l, t)) for eps in (1e-3, 1e-4, 1e-5)]
            assert left[0] > left[1] > left[2]
            assert right[0] > right[1] > right[2]


class TestSchroedingerResiduals:
    @pytest.mark.parametrize("label,state,potential", [
        ("box n=2",
         lambda x, t: moving_box_state(2, x, t, CFG),
         lambda x, t: moving_box_potential(x, t, CFG)),
        ("pt n=3",
         lambda x, t: poschl_teller_state(3, x, t, CFG),
         lambda x, t: poschl_teller_potential(x, t, CFG)),
        ("confluent n=1",
         lambda x, t: confluent_well_state(1, x, t, CFG, CC),
         lambda x, t: confluent_well_potential(x, t, CFG, CC)),
        ("confluent eps",
         lambda x, t: confluent_missing_state(x, t, CFG, CC),
         lambda x, t: confluent_well_potential(x, t, CFG, CC)),
    ])
    def test_residual_refines_at_fourth_order(self, label, state, potential):
        t = 1.0
        l = wall_position(t, CFG)
        steps = (1e-2, 5e-3, 2.5e-3)
        res = [max(abs(tdse_residual(state, potential, f * l, t, s * l, s * l))
                   for f in (0.18, 0.31))
               for s in steps]
        assert res[0] > res[1] > res[2]
        order = np.polyfit(np.log(steps), np.log(res), 1)[0]
        assert order > 3.9


class TestFamilySelectors:
    def test_valid(self):
        Family.box().validate_selector(1)
        Family.poschl_teller().validate_selector(2)
        Family.confluent_family(CC).validate_selector("eps")
        Family.confluent_family(CC).validate_selector(3)

    def test_invalid(self):
        with pytest.raises(InvalidQuantumNumberError):
            Family.box().validate_selector("eps")
        with pytest.raises(InvalidQuantumNumberError):
            Family.poschl_teller().validate_selector(1)
        with pytest.raises(SeedCollisionError):
            Family.confluent_family(CC).validate_selector(2)
        with pytest.raises(ValueError):
            Family("confluent")
        with pytest.raises(ValueError):
            Family("nope")

    def test_state_and_potential_callables(self):
        fam = Family.confluent_family(CC)
        state = fam.state(1, CFG)
        pot = fam.potential(CFG)
        l = wall_position(0.5, CFG)
        assert state(l / 3, 0.5) == confluent_well_state(1, l / 3, 0.5, CFG, CC)
        assert pot(l / 3, 0.5) == confluent_well_potential(l / 3, 0.5, CFG, CC)
