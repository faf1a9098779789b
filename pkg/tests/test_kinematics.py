import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vortex_wigner.kinematics import (
    BoostParameter,
    PacketSpec,
    ParaxialityError,
    ParaxialityWarning,
    PhasePoint,
    boost_all,
    energy,
    invariant_p_form,
    invariant_x_form,
)

etas = st.floats(-2.0, 2.0)
unit = st.floats(-3.0, 3.0)


def test_energy_examples():
    spec = PacketSpec.from_ratios(0.01)
    assert energy(spec, [0, 0, 0]) == 1.0
    assert energy(spec, [0, 0, 1]) == pytest.approx(math.sqrt(2), rel=1e-15)
    assert energy(spec, [0.3, 0, 0.4]) == pytest.approx(1.118033988749895, rel=1e-15)


def test_derived_quantities():
    spec = PacketSpec.from_ratios(0.01, 0.75)
    assert spec.ebar == pytest.approx(1.25)
    assert spec.ubar == pytest.approx(0.6)
    assert spec.t_d == pytest.approx(1.25 / 1e-4)
    assert spec.compton == 1.0
    assert spec.gamma_ratio == pytest.approx(1.25)


def test_paraxiality_thresholds():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        PacketSpec.from_ratios(0.05)
    with pytest.warns(ParaxialityWarning):
        PacketSpec.from_ratios(0.1)
    with pytest.raises(ParaxialityError):
        PacketSpec.from_ratios(0.25)


@pytest.mark.parametrize("kw", [dict(mass=0.0), dict(sigma=-1e-3), dict(n_r=-1),
                                dict(pbar=math.inf)])
def test_invalid_spec(kw):
    base = dict(mass=1.0, sigma=0.01, pbar=0.0, ell=0, n_r=0)
    base.update(kw)
    with pytest.raises(ValueError):
        PacketSpec(**base)


@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.floats(-1e3, 1e3),
       st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))
def test_cartesian_round_trip(x, y, z, px, py, pz):
    pt = PhasePoint.from_cartesian([x, y, z], [px, py, pz])
    np.testing.assert_allclose(pt.r, [x, y, z], rtol=1e-14, atol=1e-12)
    np.testing.assert_allclose(pt.p, [px, py, pz], rtol=1e-14, atol=1e-15)
    assert 0 <= pt.phi_r < 2 * math.pi and 0 <= pt.phi_p < 2 * math.pi


def test_axis_azimuth_is_zero():
    pt = PhasePoint(rho=0.0, phi_r=1.3, p_perp=0.0, phi_p=-2.0)
    assert pt.phi_r == 0.0 and pt.phi_p == 0.0
    assert PhasePoint(rho=1.0, phi_r=-0.5).phi_r == pytest.approx(2 * math.pi - 0.5)


def _point(spec, a, b, c, d, t):
    return PhasePoint(abs(a) / spec.sigma, 0.4, b / spec.sigma, abs(c) * spec.sigma, 1.1,
                      spec.pbar + d * spec.sigma, t / spec.sigma)


def _fields(spec, pt):
    return np.array([spec.pbar, spec.ebar, pt.t, pt.z, pt.p_z])


def test_boost_identity_at_zero():
    spec = PacketSpec.from_ratios(0.01, 0.7, 1, 0)
    pt = _point(spec, 1, 0.3, 0.5, -0.2, 2.0)
    s2, p2 = boost_all(spec, pt, 0.0)
    assert s2 == spec and p2 == pt


@given(etas, unit, unit, unit, unit, unit)
def test_boost_inverse(eta, a, b, c, d, t):
    spec = PacketSpec.from_ratios(0.01, 0.7, 1, 0)
    pt = _point(spec, a, b, c, d, t)
    s1, p1 = boost_all(spec, pt, eta)
    s2, p2 = boost_all(s1, p1, -eta)
    scale = np.array([spec.ebar, spec.ebar, *[max(abs(pt.t), abs(pt.z), 1.0)] * 2, spec.ebar])
    assert np.all(np.abs(_fields(s2, p2) - _fields(spec, pt)) <= 1e-12 * scale)
    assert (p2.rho, p2.p_perp, p2.phi_r, p2.phi_p) == (pt.rho, pt.p_perp, pt.phi_r, pt.phi_p)


@given(etas, etas, unit, unit, unit, unit, unit)
def test_boost_composition(e1, e2, a, b, c, d, t):
    spec = PacketSpec.from_ratios(0.01, 0.3, 0, 0)
    pt = _point(spec, a, b, c, d, t)
    lhs = boost_all(*boost_all(spec, pt, e1), e2)
    rhs = boost_all(spec, pt, BoostParameter(e1).then(BoostParameter(e2)))
    scale = max(abs(pt.t), abs(pt.z), 1.0) * math.cosh(e1) * math.cosh(e2)
    diff = np.abs(_fields(*lhs) - _fields(*rhs))
    assert np.all(diff <= 1e-12 * np.array([20, 20, scale, scale, 20]))


def test_invariant_x_form_examples():
    spec = PacketSpec.from_ratios(0.01, 1.0)
    t = 50.0
    assert invariant_x_form(spec, PhasePoint(z=spec.ubar * t, t=t)) == pytest.approx(0, abs=1e-20)
    assert invariant_x_form(PacketSpec.from_ratios(0.01), PhasePoint(rho=100.0)) == 10000.0


@given(etas, unit, unit, unit)
def test_invariant_x_form_exact(eta, a, b, t):
    spec = PacketSpec.from_ratios(0.01, 0.5)
    pt = PhasePoint(abs(a) / spec.sigma, 0, b / spec.sigma, 0.01, 0, 0.5, t / spec.sigma)
    s1, p1 = boost_all(spec, pt, eta)
    before = invariant_x_form(spec, pt)
    assert invariant_x_form(s1, p1) == pytest.approx(before, rel=1e-12, abs=1e-12)


def test_ebar_z_minus_pbar_t_invariant():
    spec = PacketSpec.from_ratios(0.01, 1.0)
    pt = PhasePoint(z=120.0, t=-40.0)
    for eta in np.linspace(-2, 2, 9):
        s1, p1 = boost_all(spec, pt, eta)
        assert s1.ebar * p1.z - s1.pbar * p1.t == pytest.approx(
            spec.ebar * pt.z - spec.pbar * pt.t, rel=1e-12)


def test_invariant_p_form_examples():
    spec = PacketSpec.from_ratios(0.01, 1.0)
    assert invariant_p_form(spec, PhasePoint(p_z=1.0)) == 0.0
    assert invariant_p_form(spec, PhasePoint(p_perp=0.01, p_z=1.0)) == pytest.approx(1e-4)


def _p_residual(sigma, offset):
    spec = PacketSpec.from_ratios(sigma, 1.0)
    pt = PhasePoint(p_perp=offset[0] * sigma, p_z=1.0 + offset[1] * sigma)
    s1, p1 = boost_all(spec, pt, 1.0)
    before = invariant_p_form(spec, pt)
    return abs(invariant_p_form(s1, p1) - before) / before


def test_invariant_p_form_transverse_residual_quarters():
    # |p - pbar| = 2 sigma, transverse displacement: residual O(sigma^2)
    r1, r2 = _p_residual(0.01, (2.0, 0.0)), _p_residual(0.005, (2.0, 0.0))
    assert r1 <= 1e-3
    assert r1 / r2 == pytest.approx(4.0, rel=0.05)


def test_invariant_p_form_longitudinal_residual_is_first_order():
    # along z the default form misses the exact invariant at first order
    r1, r2 = _p_residual(0.01, (0.0, 2.0)), _p_residual(0.005, (0.0, 2.0))
    assert r1 / r2 == pytest.approx(2.0, rel=0.05)


@given(etas, unit, unit)
def test_covariant_p_form_exact(eta, c, d):
    spec = PacketSpec.from_ratios(0.01, 0.8)
    pt = PhasePoint(p_perp=abs(c) * 0.01, p_z=0.8 + d * 0.01)
    s1, p1 = boost_all(spec, pt, eta)
    before = invariant_p_form(spec, pt, covariant=True)
    # the form enters as exp(-form/sigma^2): compare on that scale
    assert invariant_p_form(s1, p1, covariant=True) == pytest.approx(before, rel=1e-12,
                                                                     abs=1e-12 * 0.01**2)


@given(unit, unit)
def test_paraxial_energy_expansion(c, d):
    spec = PacketSpec.from_ratios(0.01, 1.0)
    res = []
    for sigma in (0.01, 0.005):
        s = spec.with_(sigma=sigma)
        p = np.array([c * sigma, 0.0, s.pbar + d * sigma])
        res.append(abs(energy(s, p) - s.ebar - s.ubar * (p[2] - s.pbar)))
    assert res[0] <= 5 * 0.01**2 * (c * c + d * d) + 1e-15
    assert res[1] <= res[0] / 3.9 + 1e-15
