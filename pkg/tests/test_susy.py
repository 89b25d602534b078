import numpy as np
import pytest

from movingwell import (
    ConfluentConfig,
    TransformationFunction,
    WellConfig,
    confluent_intertwiner,
    confluent_partner_potential,
    confluent_solution,
    confluent_well_potential,
    confluent_well_state,
    first_order_intertwiner,
    gauge_magnitude,
    integrated_density,
    missing_state_first_order,
    moving_box_potential,
    moving_box_state,
    partner_potential,
    poschl_teller_potential,
    poschl_teller_state,
    reality_defect,
    standard_gauge,
    wall_position,
)
from movingwell.errors import NearNodeError, RealityViolationError, RegularityViolationError
from movingwell.verify import tdse_residual

CFG = WellConfig()
CC = ConfluentConfig(m=2, omega=0.4)
V0 = lambda x, t: moving_box_potential(x, t, CFG)


def seed(n):
    return TransformationFunction(
        lambda x, t: moving_box_state(n, x, t, CFG), CFG, f"state {n}")


class TestGaugeMagnitude:
    def test_linear_law(self):
        assert gauge_magnitude(seed(1), 1.0, 0.0) == pytest.approx(5.0, rel=1e-8)

    def test_empty_integral(self):
        assert gauge_magnitude(seed(1), 0.5, 0.5) == 1.0

    def test_seed_with_node(self):
        # probes sit at mid-well by default; the seed m=2 has its node there
        # and the probe must hop off it
        got = gauge_magnitude(seed(2), 0.75, 0.25)
        assert got == pytest.approx(2.0, rel=1e-8)

    def test_reversed_interval(self):
        assert gauge_magnitude(seed(1), 0.0, 1.0) == pytest.approx(0.2, rel=1e-8)

    def test_reality_violation_detected(self):
        mix = TransformationFunction(
            lambda x, t: moving_box_state(1, x, t, CFG)
            + 0.5 * moving_box_state(2, x, t, CFG), CFG, "mixture")
        with pytest.raises(RealityViolationError):
            gauge_magnitude(mix, 1.0, 0.5)


class TestFirstOrderIntertwiner:
    def test_matches_closed_form(self):
        L1 = first_order_intertwiner(seed(1))
        for n in (2, 3, 4):
            psi = lambda x, t: moving_box_state(n, x, t, CFG)
            for t in (0.25, 1.0):
                l = wall_position(t, CFG)
                errs, refs = [], []
                for f in (0.2, 0.45, 0.7):
                    got = L1.apply(psi, f * l, t)
                    ref = poschl_teller_state(n, f * l, t, CFG)
                    errs.append(abs(got - ref))
                    refs.append(abs(ref))
                assert max(errs) / max(refs) < 1e-8

    def test_annihilates_its_seed(self):
        u = seed(1)
        L1 = first_order_intertwiner(u)
        l = wall_position(0.5, CFG)
        val = L1.apply(u.u, 0.4 * l, 0.5)
        assert abs(val) / abs(u(0.4 * l, 0.5)) < 1e-8

    def test_near_node_raises(self):
        u = seed(2)
        L1 = first_order_intertwiner(u)
        l = wall_position(0.5, CFG)
        with pytest.raises(NearNodeError):
            L1.apply(lambda x, t: moving_box_state(1, x, t, CFG), l / 2, 0.5)


class TestPartnerPotential:
    def test_midpoint(self):
        l = wall_position(1.0, CFG)
        got = partner_potential(V0, seed(1), l / 2, 1.0)
        assert got == pytest.approx(2 * (np.pi / l) ** 2, rel=1e-6)

    def test_quarter_point(self):
        l = wall_position(0.25, CFG)
        got = partner_potential(V0, seed(1), l / 4, 0.25)
        assert got == pytest.approx(np.pi**2, rel=1e-6)

    def test_matches_closed_form_on_grid(self):
        t = 0.5
        l = wall_position(t, CFG)
        grid = np.linspace(0.01 * l, 0.99 * l, 401)
        closed = poschl_teller_potential(grid, t, CFG)
        numeric = np.array([partner_potential(V0, seed(1), x, t) for x in grid])
        assert np.max(np.abs(numeric - closed) / np.abs(closed)) < 1e-6

    def test_constant_modulus_source_keeps_potential(self):
        flat = TransformationFunction(lambda x, t: np.exp(0.7j * np.asarray(x)), CFG)
        l = wall_position(0.5, CFG)
        assert abs(partner_potential(V0, flat, 0.3 * l, 0.5)) < 1e-9

    def test_node_of_seed_raises(self):
        l = wall_position(0.5, CFG)
        with pytest.raises(NearNodeError):
            partner_potential(V0, seed(2), l / 2, 0.5)


class TestMissingState:
    def test_unit_modulus_source(self):
        flat = TransformationFunction(lambda x, t: np.exp(1.3j * np.asarray(x)), CFG)
        val = missing_state_first_order(flat, lambda t: 1.0, 0.7, 0.5)
        assert abs(val) == pytest.approx(1.0, rel=1e-12)

    def test_diverges_toward_wall(self):
        u = seed(1)
        l = wall_position(0.5, CFG)
        vals = [abs(missing_state_first_order(u, standard_gauge, eps * l, 0.5))
                for eps in (1e-2, 1e-3, 1e-4)]
        assert vals[0] < vals[1] < vals[2]

    def test_solves_partner_equation(self):
        u = seed(1)
        chi_eps = lambda x, t: missing_state_first_order(u, standard_gauge, x, t)
        v1 = lambda x, t: poschl_teller_potential(x, t, CFG)
        t = 0.5
        l = wall_position(t, CFG)
        res = abs(tdse_residual(chi_eps, v1, l / 3, t, 1e-3 * l, 1e-4))
        assert res < 1e-6


class TestConfluentPieces:
    def test_integrated_density_full_interval(self):
        for t in (0.25, 0.5):
            l = wall_position(t, CFG)
            assert integrated_density(seed(2), l, t) == pytest.approx(1.0, abs=1e-12)

    def test_solution_vanishes_at_origin_for_omega_zero(self):
        cc0 = ConfluentConfig(m=2, omega=0.0)
        l = wall_position(0.5, CFG)
        vals = [abs(confluent_solution(seed(2), cc0, standard_gauge, eps * l, 0.5))
                for eps in (1e-2, 1e-3)]
        assert vals[1] < vals[0]

    def test_solution_solves_partner_equation(self):
        # v built from the nodal seed satisfies the first-partner equation
        u = seed(2)
        v = lambda x, t: confluent_solution(u, CC, standard_gauge, x, t)
        v1 = lambda x, t: partner_potential(V0, u, x, t)
        t = 0.5
        l = wall_position(t, CFG)
        res = abs(tdse_residual(v, v1, 0.3 * l, t, 1e-3 * l, 1e-4))
        assert res < 1e-6

    def test_partner_matches_closed_form(self):
        t = 0.25
        l = wall_position(t, CFG)
        grid = np.linspace(0.02 * l, 0.98 * l, 201)
        closed = confluent_well_potential(grid, t, CFG, CC)
        numeric = np.array([confluent_partner_potential(V0, seed(2), CC, x, t)
                            for x in grid])
        assert np.max(np.abs(numeric - closed)) / np.max(np.abs(closed)) < 1e-6

    def test_confluent_succeeds_where_first_order_fails(self):
        # the nodal seed breaks the 1-SUSY construction at its node but the
        # confluent weight stays regular there
        l = wall_position(0.5, CFG)
        with pytest.raises(NearNodeError):
            partner_potential(V0, seed(2), l / 2, 0.5)
        val = confluent_partner_potential(V0, seed(2), CC, l / 2, 0.5)
        assert np.isfinite(val)

    def test_inadmissible_omega_raises(self):
        bad = ConfluentConfig(m=2, omega=-0.5)
        l = wall_position(0.5, CFG)
        with pytest.raises(RegularityViolationError):
            confluent_partner_potential(V0, seed(2), bad, 0.45 * l, 0.5)

    def test_large_omega_returns_box(self):
        cc = ConfluentConfig(m=2, omega=1e6)
        l = wall_position(0.5, CFG)
        for f in (0.2, 0.6):
            assert abs(confluent_partner_potential(V0, seed(2), cc, f * l, 0.5)) < 1e-4

    def test_ground_state_seed_at_omega_zero(self):
        # the omega=0 member built on the nodeless seed stays finite inside
        # and matches its closed form
        cc = ConfluentConfig(m=1, omega=0.0)
        t = 0.5
        l = wall_position(t, CFG)
        for f in (0.15, 0.4, 0.7):
            got = confluent_partner_potential(V0, seed(1), cc, f * l, t)
            ref = confluent_well_potential(f * l, t, CFG, cc)
            assert np.isfinite(got)
            assert got == pytest.approx(ref, abs=1e-6 * max(1.0, abs(ref)))


class TestConfluentIntertwiner:
    def test_annihilates_its_source(self):
        u = seed(2)
        L2 = confluent_intertwiner(u, CC)
        v = lambda x, t: confluent_solution(u, CC, standard_gauge, x, t)
        l = wall_position(0.5, CFG)
        assert abs(L2.apply(v, 0.37 * l, 0.5)) / abs(v(0.37 * l, 0.5)) < 1e-8

    @pytest.mark.parametrize("omega,n", [(0.4, 1), (0.4, 3), (-1.0, 1), (0.0, 3)])
    def test_composition_matches_closed_form(self, omega, n):
        cc = ConfluentConfig(m=2, omega=omega)
        u = seed(2)
        L1 = first_order_intertwiner(u)
        L2 = confluent_intertwiner(u, cc)
        psi = lambda x, t: moving_box_state(n, x, t, CFG)
        chi_num = lambda x, t: L1.apply(psi, x, t)
        t = 0.5
        l = wall_position(t, CFG)
        errs, refs = [], []
        for f in (0.22, 0.37, 0.61, 0.83):
            got = L2.apply(chi_num, f * l, t)
            ref = confluent_well_state(n, f * l, t, CFG, cc)
            errs.append(abs(got - ref))
            refs.append(abs(ref))
        assert max(errs) / max(refs) < 1e-8


class TestReality:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_box_states_satisfy_condition(self, n):
        for t in (0.25, 0.75):
            assert reality_defect(seed(n), t) < 1e-6

    def test_real_valued_source(self):
        real = TransformationFunction(
            lambda x, t: np.sin(np.asarray(x)) + 0.0j, CFG)
        assert reality_defect(real, 0.5, probe_fracs=(0.3, 0.5)) < 1e-12

    def test_mixture_violates(self):
        mix = TransformationFunction(
            lambda x, t: moving_box_state(1, x, t, CFG)
            + 0.5 * moving_box_state(2, x, t, CFG), CFG)
        assert reality_defect(mix, 0.5) > 1e-3


class TestIntertwiningIdentity:
    def test_first_step_residual_refines(self):
        # S1 (L1 psi) -> 0 under step refinement, with V1 built numerically
        u = seed(1)
        L1 = first_order_intertwiner(u)
        v1 = lambda x, t: partner_potential(V0, u, x, t)
        psi = lambda x, t: moving_box_state(3, x, t, CFG)
        chi_num = lambda x, t: L1.apply(psi, x, t)
        t = 0.5
        l = wall_position(t, CFG)
        steps = (2e-2, 1e-2, 5e-3)
        res = [abs(tdse_residual(chi_num, v1, 0.35 * l, t, s * l, s * l))
               for s in steps]
        assert res[0] > res[1] > res[2]
        order = np.polyfit(np.log(steps), np.log(res), 1)[0]
        assert order > 3.5
