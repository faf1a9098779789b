import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vortex_wigner.kinematics import PacketSpec, PhasePoint, boost_all
from vortex_wigner.oracle import full_norm_numeric, marginal_numeric
from vortex_wigner.wigner import (
    WignerForm,
    marginal_p_alt,
    marginal_p_closed,
    marginal_x_closed,
    prefactor,
    wigner_closed,
    wigner_fermion_paraxial,
)

FORMS = list(WignerForm)
coord = st.floats(0.0, 4.0)
signed = st.floats(-4.0, 4.0)
modes = st.sampled_from([(0, 0), (1, 0), (2, 1), (3, 2), (-2, 1), (5, 0)])


def _pt(spec, a, b, c, d, t=0.0):
    return PhasePoint(a / spec.sigma, 0.3, b / (spec.sigma * spec.gamma_ratio), c * spec.sigma,
                      2.0, spec.pbar + d * spec.sigma * spec.gamma_ratio, t)


@pytest.mark.parametrize("form", FORMS)
@pytest.mark.parametrize("pbar", [0.0, 1.0])
def test_center_value_is_eight(form, pbar):
    spec = PacketSpec.from_ratios(0.01, pbar)
    assert wigner_closed(spec, PhasePoint(p_z=pbar), form) == pytest.approx(8.0, rel=1e-15)


def test_vortex_nodes():
    spec = PacketSpec.from_ratios(0.01, 0.5, 1, 0)
    assert wigner_closed(spec, PhasePoint(rho=0.0, p_perp=0.01, p_z=0.5), "position") == 0.0
    assert wigner_closed(spec, PhasePoint(rho=100.0, p_perp=0.0, p_z=0.5), "momentum") == 0.0


@pytest.mark.parametrize("ell,n", [(0, 0), (1, 0), (2, 1), (3, 2)])
@pytest.mark.parametrize("form", [WignerForm.MOMENTUM, WignerForm.POSITION])
def test_full_norm(ell, n, form):
    spec = PacketSpec.from_ratios(0.01, 1.0, ell, n)
    assert full_norm_numeric(spec, form) == pytest.approx(1.0, abs=1e-7)


def test_symmetric_norms_depart_from_one_for_vortices():
    # measured, not asserted equal to 1: the "approximately equal" prefactors
    # integrate to different totals once ell != 0
    assert full_norm_numeric(PacketSpec.from_ratios(0.01), "symmetric") == pytest.approx(1, 1e-12)
    spec = PacketSpec.from_ratios(0.01, 0.0, 3, 2)
    assert full_norm_numeric(spec, "symmetric") < 0.9
    assert full_norm_numeric(spec, "symmetric_product") < 0.9


def test_oracle_based_norm_is_paraxial():
    dev = [abs(full_norm_numeric(PacketSpec.from_ratios(s), "oracle") - 1) for s in (0.02, 0.01)]
    assert dev[0] < 10 * 0.02**2 and dev[0] / dev[1] == pytest.approx(4, rel=0.05)


@given(modes, coord, signed, coord, signed, st.floats(-3, 3), st.sampled_from(FORMS),
       st.floats(0, 1.5))
def test_positivity(mode, a, b, c, d, tau, form, pbar):
    spec = PacketSpec.from_ratios(0.01, pbar, *mode)
    v = wigner_closed(spec, _pt(spec, a, b, c, d, tau * spec.t_d), form)
    assert v >= 0.0 and math.isfinite(v)


@given(modes, coord, signed, coord, signed, st.sampled_from([-2.0, -1.0, -0.5, 0.5, 1.0, 2.0]),
       st.sampled_from(FORMS))
def test_covariant_boost_invariance(mode, a, b, c, d, eta, form):
    spec = PacketSpec.from_ratios(0.01, 0.0, *mode)
    pt = _pt(spec, a, b, c, d, 0.2 * spec.t_d)
    before = wigner_closed(spec, pt, form, covariant=True)
    after = wigner_closed(*boost_all(spec, pt, eta), form, covariant=True)
    assert after == pytest.approx(before, rel=1e-12, abs=1e-300)


def test_large_ell_no_overflow():
    spec = PacketSpec.from_ratios(0.01, 0.0, 40, 0)
    pt = PhasePoint(rho=math.sqrt(40) / 0.01, p_perp=math.sqrt(40) * 0.01, p_z=0.0)
    for form in FORMS:
        v = wigner_closed(spec, pt, form)
        assert math.isfinite(v) and v > 0


def test_broadcasting_matches_scalar_calls(rng):
    spec = PacketSpec.from_ratios(0.01, 1.0, 2, 1)
    n = 50
    pts = PhasePoint(rng.uniform(0, 300, n), 0.0, rng.uniform(-100, 100, n),
                     rng.uniform(0, 0.03, n), 0.0, 1.0 + rng.uniform(-0.03, 0.03, n), 10.0)
    vec = wigner_closed(spec, pts)
    for i in range(n):
        pt = PhasePoint(pts.rho[i], 0.0, pts.z[i], pts.p_perp[i], 0.0, pts.p_z[i], 10.0)
        assert vec[i] == wigner_closed(spec, pt)


@given(st.floats(0.01, 6), st.floats(0.01, 6), st.floats(0.5, 4))
def test_symmetric_product_prefactor_sigma_free(x, y, c):
    spec = PacketSpec.from_ratios(0.01, 0.0, 3, 1)
    pt = PhasePoint(rho=x / 0.01, p_perp=y * 0.01)
    a = prefactor(spec, pt, "symmetric_product")
    b = prefactor(spec.with_(sigma=0.01 * c / 4), pt, "symmetric_product")
    assert a == b


@given(modes, st.floats(0, 5))
def test_forms_agree_on_paraxial_shell(mode, s):
    spec = PacketSpec.from_ratios(0.01, 0.0, *mode)
    pt = PhasePoint(rho=s / spec.sigma, p_perp=s * spec.sigma)
    values = [prefactor(spec, pt, f) for f in FORMS]
    for v in values[1:]:
        assert v == pytest.approx(values[0], rel=1e-12, abs=1e-300)


def test_shared_exponential():
    spec = PacketSpec.from_ratios(0.01, 0.6, 2, 1)
    pt = PhasePoint(150.0, 0.2, 40.0, 0.015, 1.0, 0.61, 300.0)
    ratios = [wigner_closed(spec, pt, f) / prefactor(spec, pt, f) for f in FORMS]
    np.testing.assert_allclose(ratios, ratios[0], rtol=1e-12)


@given(modes, coord, signed, coord, signed)
def test_fermion_paraxial_is_scalar(mode, a, b, c, d):
    spec = PacketSpec.from_ratios(0.01, 0.4, *mode)
    pt = _pt(spec, a, b, c, d)
    assert wigner_fermion_paraxial(spec, pt) == wigner_closed(spec, pt)


def test_local_velocity_option_differs_from_mean():
    spec = PacketSpec.from_ratios(0.01, 1.0)
    pt = PhasePoint(0.0, 0.0, spec.ubar * spec.t_d, 0.0, 0.0, 1.02, spec.t_d)
    mean = wigner_closed(spec, pt, velocity="mean")
    local = wigner_closed(spec, pt, velocity="local")
    assert mean > 0 and local > 0 and local != mean
    with pytest.raises(ValueError):
        wigner_closed(spec, pt, velocity="other")


# -- marginals ---------------------------------------------------------------

@pytest.mark.parametrize("ell,n", [(0, 0), (1, 0), (2, 1), (3, 2)])
def test_x_marginal(ell, n, rng):
    spec = PacketSpec.from_ratios(0.01, 1.0, ell, n)
    for _ in range(5):
        p = np.array([*rng.uniform(-2, 2, 2) * 0.01, 1.0 + rng.uniform(-1, 1) * 0.014])
        closed = marginal_x_closed(spec, p)
        if closed < 1e-6 * 8:
            continue
        num = marginal_numeric(spec, "over_x", p)
        assert num == pytest.approx(closed, rel=1e-8)


def test_x_marginal_vortex_node():
    assert marginal_x_closed(PacketSpec.from_ratios(0.01, 0.0, 2, 0), [0, 0, 0.001]) == 0.0


@pytest.mark.parametrize("ell,n", [(0, 0), (3, 2)])
def test_x_marginal_integrates_to_one(ell, n):
    from vortex_wigner.wavepacket import momentum_norm
    # int d^3p/(2pi)^3 |Psi|^2/(2 ebar) is the momentum norm
    assert momentum_norm(PacketSpec.from_ratios(0.01, 0.5, ell, n)) == pytest.approx(1, abs=1e-8)


def test_p_marginal_center_and_mode_independence():
    spec = PacketSpec.from_ratios(0.01, 1.0)
    expect = spec.ebar * (0.01 / math.sqrt(math.pi)) ** 3
    assert marginal_p_closed(spec, [0, 0, 0]) == pytest.approx(expect, rel=1e-15)
    r = np.array([30.0, -40.0, 12.0])
    assert marginal_p_closed(spec, r) == marginal_p_closed(spec.with_(ell=3, n_r=2), r)


@pytest.mark.parametrize("ell,n", [(0, 0), (1, 0), (3, 2)])
def test_p_marginals(ell, n, rng):
    spec = PacketSpec.from_ratios(0.01, 1.0, ell, n)
    for _ in range(4):
        r = np.array([*rng.uniform(-150, 150, 2), rng.uniform(-100, 100)])
        num = marginal_numeric(spec, "over_p", r, source="momentum")
        assert num == pytest.approx(marginal_p_closed(spec, r), rel=1e-8)
        alt = marginal_p_alt(spec, r)
        if alt > 1e-6 * spec.sigma**3:
            num = marginal_numeric(spec, "over_p", r, source="position")
            assert num == pytest.approx(alt, rel=1e-8)


def test_p_alt_node_and_norm():
    from vortex_wigner.wavepacket import position_norm
    spec = PacketSpec.from_ratios(0.01, 0.0, 1, 0)
    assert marginal_p_alt(spec, [0, 0, 5.0]) == 0.0
    assert position_norm(spec, 0.0) == pytest.approx(1, abs=1e-8)


def test_position_form_x_marginal_is_not_momentum_density():
    spec = PacketSpec.from_ratios(0.01, 0.0, 1, 0)
    p = np.array([0.012, 0.0, 0.0])
    num = marginal_numeric(spec, "over_x", p, source="position")
    assert abs(num / marginal_x_closed(spec, p) - 1) > 0.1
