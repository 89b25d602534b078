import numpy as np
import pytest

from movingwell import (
    Branch,
    ConfluentConfig,
    SampledField,
    WellConfig,
    fixed_wall_position,
    wall_position,
    well_width,
)
from movingwell.errors import (
    GridMismatchError,
    InadmissibleTimeError,
    SingularTimeError,
)


class TestWallPosition:
    def test_default_values(self):
        cfg = WellConfig()
        assert wall_position(0.0, cfg) == 1.0
        assert wall_position(0.25, cfg) == 2.0

    def test_general_constants(self):
        cfg = WellConfig(L=2.0, c1=3.0, c2=4.0)
        # 4*2*1 + 3*2 + 2
        assert wall_position(1.0, cfg) == 16.0

    def test_singular_time_rejected(self):
        cfg = WellConfig()
        with pytest.raises(SingularTimeError):
            wall_position(-0.25, cfg)

    def test_guard_band(self):
        cfg = WellConfig()
        with pytest.raises(SingularTimeError):
            wall_position(-0.25 + 5e-10, cfg)

    def test_wrong_branch(self):
        cfg = WellConfig()
        with pytest.raises(InadmissibleTimeError):
            wall_position(-1.0, cfg)
        contracting = WellConfig(branch=Branch.CONTRACTING)
        assert wall_position(-1.0, contracting) == -3.0
        with pytest.raises(InadmissibleTimeError):
            wall_position(0.5, contracting)

    def test_constant_velocity(self):
        cfg = WellConfig(L=1.5)
        rng = np.random.default_rng(7)
        times = -0.25 + 1e-3 + rng.random(30) * 5
        for t1, t2 in zip(times[:-1], times[1:]):
            if t1 == t2:
                continue
            v = (wall_position(t2, cfg) - wall_position(t1, cfg)) / (t2 - t1)
            assert v == pytest.approx(4 * cfg.L, rel=1e-9)

    def test_width_vanishes_at_singularity(self):
        cfg = WellConfig()
        assert well_width(-0.25 + 1e-6, cfg) == pytest.approx(4e-6, rel=1e-9)


def test_fixed_wall_position():
    assert fixed_wall_position(WellConfig()) == 0.0
    assert fixed_wall_position(WellConfig(c2=2.0)) == 1.0
    assert fixed_wall_position(WellConfig(c2=-4.0)) == -2.0


def test_well_config_validation():
    with pytest.raises(ValueError):
        WellConfig(L=0.0)
    with pytest.raises(ValueError):
        WellConfig(L=-1.0)


class TestConfluentConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            ConfluentConfig(m=0)
        with pytest.raises(ValueError):
            ConfluentConfig(omega=float("nan"))
        with pytest.raises(ValueError):
            ConfluentConfig(x0=0.5)

    @pytest.mark.parametrize("omega,regular", [
        (0.4, True), (0.0, True), (-1.0, True), (10.0, True), (-5.0, True),
        (-0.5, False), (-0.999, False), (-1e-9, False),
    ])
    def test_regularity_flag(self, omega, regular):
        assert ConfluentConfig(m=2, omega=omega).is_regular is regular

    @pytest.mark.parametrize("omega,normalizable", [
        (0.4, True), (10.0, True), (-2.0, True), (0.0, False), (-1.0, False),
    ])
    def test_missing_state_flag(self, omega, normalizable):
        cc = ConfluentConfig(m=2, omega=omega)
        assert cc.missing_state_normalizable is normalizable


class TestSampledField:
    def test_grid_metadata(self):
        f = SampledField(t=0.5, x_min=0.0, x_max=3.0, values=np.zeros(7))
        assert f.n_points == 7
        assert f.spacing == pytest.approx(0.5)
        assert np.allclose(f.x, np.linspace(0, 3, 7))

    def test_grid_mismatch(self):
        a = SampledField(t=0.0, x_min=0.0, x_max=1.0, values=np.zeros(5))
        b = SampledField(t=0.0, x_min=0.0, x_max=2.0, values=np.zeros(5))
        with pytest.raises(GridMismatchError):
            a.require_same_grid(b)

    def test_validation(self):
        with pytest.raises(ValueError):
            SampledField(t=0.0, x_min=1.0, x_max=0.0, values=np.zeros(5))
        with pytest.raises(ValueError):
            SampledField(t=0.0, x_min=0.0, x_max=1.0, values=np.zeros(1))
