import math
from dataclasses import replace

import numpy as np
import pytest

from ottolab import engine
from ottolab.engine import EngineSpec, Mode, Regime, cumulant_report
from ottolab.qmath import (
    DimMismatch,
    KrausChannel,
    UnitaryOperator,
    dagger,
    hermitian_eigensystem,
)
from ottolab.qubit import (
    DivisionDegenerate,
    ParamOutOfRange,
    QubitParams,
    basis_comparisons,
    bounds_report,
    build_qubit_spec,
    coherence_decomposition,
    dephased_cf_closed,
    dephased_closed,
    efficiency_bounds,
    measurement_projectors,
    occupation_probs,
    qm_explicit_angles,
    theta_closed,
    transition_probs,
    undephased_closed,
)
from ottolab.sampling import haar_unitary, random_qubit_params

S2 = math.sqrt(2.0)


def params(**kw):
    base = dict(nu1=1.0, nu2=2.0, beta=0.6, delta=0.2, phi=0.0,
                alpha=math.pi / 4, chi=0.0)
    base.update(kw)
    return QubitParams(**base)


def synthetic_tp(**kw):
    from ottolab.qubit import TransitionProbs
    base = dict(delta_p=0.2, theta=0.3, zeta=0.2, theta_c=0.4,
                zeta_sup_c=0.25, zeta_sub_c=0.4)
    base.update(kw)
    return TransitionProbs(**base)


# ---------------------------------------------------------------------------
# builders


def test_param_validation():
    with pytest.raises(ParamOutOfRange):
        params(delta=1.5)
    with pytest.raises(ParamOutOfRange):
        params(nu1=-1.0)
    with pytest.raises(ParamOutOfRange):
        params(beta=-0.2)
    with pytest.raises(ParamOutOfRange):
        params(alpha=3.5)
    with pytest.raises(ParamOutOfRange):
        params(chi=7.0)
    params(beta=math.inf)  # zero temperature is fine


def test_adiabatic_drive_columns():
    phi = 0.8
    spec = build_qubit_spec(params(delta=0.0, phi=phi))
    u = spec.u.matrix
    plus = np.array([1.0, 1.0]) / S2
    minus = np.array([1.0, -1.0]) / S2
    assert np.allclose(u[:, 0], np.exp(-1j * phi) * plus, atol=1e-12)
    assert np.allclose(u[:, 1], np.exp(1j * phi) * minus, atol=1e-12)


def test_swap_drive_columns():
    spec = build_qubit_spec(params(delta=1.0, phi=0.4))
    u = spec.u.matrix
    plus = np.array([1.0, 1.0]) / S2
    minus = np.array([1.0, -1.0]) / S2
    assert np.allclose(u[:, 0], minus, atol=1e-12)
    assert np.allclose(u[:, 1], -plus, atol=1e-12)


def test_alpha0_channel_is_computational():
    spec = build_qubit_spec(params(alpha=0.0, chi=2.2))
    k1, k2 = spec.channel.kraus
    assert np.allclose(k1, np.diag([1.0, 0.0]), atol=1e-12)
    assert np.allclose(k2, np.diag([0.0, 1.0]), atol=1e-12)


def test_builder_unitarity_and_time_reversal():
    for phi in (0.0, 0.9, 2.7):
        spec = build_qubit_spec(params(delta=0.37, phi=phi))
        eye = np.eye(2)
        for m in (spec.u.matrix, spec.v.matrix):
            assert np.max(np.abs(dagger(m) @ m - eye)) < 1e-12
        assert np.max(np.abs(spec.v.matrix - spec.u.matrix.T)) < 1e-15
        gap = np.max(np.abs(spec.v.matrix - dagger(spec.u.matrix)))
        if phi == 0.0:
            assert gap < 1e-15  # time reversal equals the inverse drive
        else:
            assert gap > 1e-3


# ---------------------------------------------------------------------------
# transition probabilities


def test_delta_prime_equals_zeta_equals_delta():
    for delta in np.linspace(0.0, 1.0, 20):
        tp = transition_probs(build_qubit_spec(params(delta=float(delta),
                                                      phi=1.3, alpha=0.9,
                                                      chi=2.7)))
        assert tp.delta_p == pytest.approx(delta, abs=1e-12)
        assert tp.zeta == pytest.approx(delta, abs=1e-12)


def test_theta_special_angles():
    tp = transition_probs(build_qubit_spec(params(chi=math.pi / 2, alpha=1.1)))
    assert tp.theta == pytest.approx(0.5, abs=1e-12)
    tp = transition_probs(build_qubit_spec(params(chi=0.0, alpha=math.pi / 2)))
    assert tp.theta == pytest.approx(0.0, abs=1e-12)


def test_theta_closed_form():
    assert theta_closed(math.pi / 2, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert theta_closed(0.77, math.pi / 2) == pytest.approx(0.5, abs=1e-15)
    expected = (1 - math.cos(math.pi / 5) ** 2 * math.sin(math.pi / 3) ** 2) / 2
    assert theta_closed(math.pi / 3, math.pi / 5) == pytest.approx(expected)
    rng = np.random.default_rng(3)
    for _ in range(20):
        alpha = rng.uniform(0, math.pi)
        chi = rng.uniform(0, 2 * math.pi)
        tp = transition_probs(build_qubit_spec(params(alpha=alpha, chi=chi)))
        assert abs(tp.theta - theta_closed(alpha, chi)) < 1e-12
        assert tp.theta <= 0.5 + 1e-12


def test_transition_probs_requires_qubit():
    from ottolab.sampling import random_spec
    with pytest.raises(DimMismatch):
        transition_probs(random_spec(np.random.default_rng(0), 3))


def test_time_reversal_identities():
    # phi = 0 builder and explicit V = U-dagger cycles share the identities
    rng = np.random.default_rng(21)
    specs = [build_qubit_spec(params(delta=float(rng.uniform(0, 1)), phi=0.0,
                                     alpha=float(rng.uniform(0, math.pi)),
                                     chi=float(rng.uniform(0, 2 * math.pi))))
             for _ in range(10)]
    h1 = hermitian_eigensystem(np.diag([1.0, -1.0]).astype(complex))
    h2 = hermitian_eigensystem(2.0 * np.array([[0, 1], [1, 0]], dtype=complex))
    for _ in range(50):
        u = haar_unitary(rng, 2)
        ch = KrausChannel(kraus=measurement_projectors(
            float(rng.uniform(0, math.pi)), float(rng.uniform(0, 2 * math.pi))))
        specs.append(EngineSpec(h1=h1, h2=h2, u=UnitaryOperator(u),
                                v=UnitaryOperator(dagger(u)), channel=ch,
                                beta=float(rng.uniform(0, 3))))
    for spec in specs:
        tp = transition_probs(spec)
        assert abs(tp.zeta_sub_c - tp.theta_c) < 1e-12
        assert abs(tp.delta_p - tp.zeta) < 1e-12
        assert -1e-12 <= tp.zeta_sup_c <= 0.5 + 1e-12


# ---------------------------------------------------------------------------
# closed-form cumulants vs enumeration


def _assert_close_reports(closed, enum, tol=1e-10):
    assert closed.avg_w == pytest.approx(enum.avg_w, abs=tol)
    assert closed.avg_qm == pytest.approx(enum.avg_qm, abs=tol)
    assert closed.avg_qc == pytest.approx(enum.avg_qc, abs=tol)
    assert closed.var_w.real == pytest.approx(enum.var_w.real, abs=tol)
    assert closed.var_qm.real == pytest.approx(enum.var_qm.real, abs=tol)
    assert closed.var_qc == pytest.approx(enum.var_qc, abs=tol)
    for a, b in zip(closed.avg_e, enum.avg_e):
        assert a == pytest.approx(b, abs=tol)


def test_dephased_closed_peak_work_values():
    tp = synthetic_tp(delta_p=0.0, zeta=0.0, theta=0.5)
    rep = dephased_closed(tp, 1.0, 2.0, 0.6)
    assert rep.avg_w == pytest.approx(math.tanh(0.6), abs=1e-12)
    assert rep.avg_qm == pytest.approx(2 * math.tanh(0.6), abs=1e-12)


def test_dephased_closed_theta_zero_freezes_qm():
    rep = dephased_closed(synthetic_tp(theta=0.0), 1.0, 2.0, 0.8)
    assert rep.avg_qm == 0.0
    assert rep.var_qm == 0.0


def test_dephased_closed_saturation_at_zero_temperature():
    tp = synthetic_tp(delta_p=0.0, zeta=0.0, theta=0.5)
    rep = dephased_closed(tp, 1.0, 2.0, math.inf)
    assert rep.avg_w == pytest.approx(1.0, abs=1e-14)
    assert rep.reliability_w == pytest.approx(1.0, abs=1e-12)


def test_closed_forms_match_enumeration():
    rng = np.random.default_rng(30)
    for _ in range(60):
        p = random_qubit_params(rng)
        spec = build_qubit_spec(p)
        tp = transition_probs(spec)
        _assert_close_reports(dephased_closed(tp, p.nu1, p.nu2, p.beta),
                              cumulant_report(spec, Mode.DEPHASED))
        _assert_close_reports(undephased_closed(tp, p.nu1, p.nu2, p.beta),
                              cumulant_report(spec, Mode.UNDEPHASED))


def test_undephased_closed_figure_point():
    p = params(delta=0.3, phi=0.0, alpha=3 * math.pi / 4, chi=0.0, beta=10.0)
    spec = build_qubit_spec(p)
    _assert_close_reports(
        undephased_closed(transition_probs(spec), 1.0, 2.0, 10.0),
        cumulant_report(spec, Mode.UNDEPHASED))


def test_undephased_closed_degenerate_branches():
    rep = undephased_closed(synthetic_tp(zeta_sup_c=0.0), 1.0, 2.0, 0.7)
    assert rep.avg_qc == 0.0
    assert rep.var_qc == 0.0
    rep = undephased_closed(synthetic_tp(theta_c=0.2, delta_p=0.2), 1.0, 2.0, 0.7)
    assert rep.avg_qm == 0.0


# ---------------------------------------------------------------------------
# closed-form characteristic function


def test_dephased_cf_closed_normalization_and_oracle():
    rng = np.random.default_rng(31)
    for beta in (0.0, 0.6, 2.0, math.inf):
        p = params(delta=0.2, alpha=math.pi / 4, chi=0.0, beta=beta)
        spec = build_qubit_spec(p)
        tp = transition_probs(spec)
        assert dephased_cf_closed(tp, 1.0, 2.0, beta, (0, 0, 0, 0)) == \
            pytest.approx(1.0, abs=1e-12)
        for _ in range(8):
            g = tuple(rng.uniform(-2, 2, size=4))
            want = engine.characteristic_function(spec, Mode.DEPHASED, g)
            got = dephased_cf_closed(tp, 1.0, 2.0, beta, g)
            assert abs(got - want) < 1e-9


def test_dephased_cf_closed_phase_independent():
    g = (0.7, -0.4, 1.1, 0.2)
    vals = []
    for phi in (0.0, 1.0, 2.2):
        spec = build_qubit_spec(params(delta=0.3, phi=phi, alpha=1.0, chi=0.5))
        vals.append(dephased_cf_closed(transition_probs(spec), 1.0, 2.0, 0.6, g))
    assert abs(vals[0] - vals[1]) < 1e-12
    assert abs(vals[0] - vals[2]) < 1e-12


# ---------------------------------------------------------------------------
# explicit-angle heat and coherence split


def test_qm_explicit_angles_matches_closed_form():
    rng = np.random.default_rng(32)
    for _ in range(30):
        p = random_qubit_params(rng)
        spec = build_qubit_spec(p)
        rep = undephased_closed(transition_probs(spec), p.nu1, p.nu2, p.beta)
        assert abs(qm_explicit_angles(p) - rep.avg_qm) < 1e-12


def test_qm_explicit_angles_adiabatic_reduces_to_monitored():
    p = params(delta=0.0, alpha=1.1, chi=0.8, beta=0.9)
    spec = build_qubit_spec(p)
    rep = dephased_closed(transition_probs(spec), 1.0, 2.0, 0.9)
    assert abs(qm_explicit_angles(p) - rep.avg_qm) < 1e-12


def test_qm_explicit_angles_xz_plane_coherence_term():
    p = params(delta=0.3, phi=0.0, chi=0.0, alpha=1.2, beta=0.8)
    t = math.tanh(0.8)
    incoherent = (1 - 2 * 0.3) * (1 - math.sin(1.2) ** 2) * 2.0 * t
    # second term at phi = chi = 0: -2 nu2 sqrt(d(1-d)) sin(a) cos(a) tanh
    coherent = -2.0 * 2.0 * math.sqrt(0.3 * 0.7) * math.sin(1.2) \
        * math.cos(1.2) * t
    assert qm_explicit_angles(p) - incoherent == pytest.approx(
        coherent, abs=1e-12)


def test_coherence_split_vanishes_adiabatically():
    split = coherence_decomposition(build_qubit_spec(params(delta=0.0, phi=1.0,
                                                            alpha=0.9, chi=2.0)))
    assert abs(split.qm_coh) < 1e-12
    assert abs(split.qc_coh) < 1e-12
    assert abs(split.w_coh) < 1e-12


def test_coherence_split_reconciles_with_mode_difference():
    rng = np.random.default_rng(33)
    for _ in range(20):
        p = random_qubit_params(rng, betas=(0.0, 0.6, 2.0, math.inf))
        spec = build_qubit_spec(p)
        split = coherence_decomposition(spec)
        ru = cumulant_report(spec, Mode.UNDEPHASED)
        rd = cumulant_report(spec, Mode.DEPHASED)
        assert abs(split.qm_coh - (ru.avg_qm - rd.avg_qm)) < 1e-10
        assert abs(split.qc_coh - (ru.avg_qc - rd.avg_qc)) < 1e-10
        assert abs(split.w_coh - (ru.avg_w - rd.avg_w)) < 1e-10
        assert abs(split.qm_coh + split.qc_coh - split.w_coh) < 1e-12


def test_coherence_split_any_dimension():
    from ottolab.sampling import random_spec
    spec = random_spec(np.random.default_rng(34), 3, beta=0.8)
    split = coherence_decomposition(spec)
    ru = cumulant_report(spec, Mode.UNDEPHASED)
    rd = cumulant_report(spec, Mode.DEPHASED)
    assert abs(split.w_coh - (ru.avg_w - rd.avg_w)) < 1e-10


def test_coherence_split_with_fully_dephasing_channel():
    # channel that dephases in the eigenbasis of the second Hamiltonian
    p = params(delta=0.4, phi=0.9)
    base = build_qubit_spec(p)
    b2 = base.h2.eigenvectors
    kraus = tuple(np.outer(b2[:, i], b2[:, i].conj()) for i in range(2))
    spec = EngineSpec(h1=base.h1, h2=base.h2, u=base.u, v=base.v,
                      channel=KrausChannel(kraus=kraus), beta=p.beta)
    split = coherence_decomposition(spec)
    ru = cumulant_report(spec, Mode.UNDEPHASED)
    rd = cumulant_report(spec, Mode.DEPHASED)
    assert abs(split.qm_coh - (ru.avg_qm - rd.avg_qm)) < 1e-10


# ---------------------------------------------------------------------------
# bounds


def engine_point(**kw):
    base = dict(delta=0.1, chi=math.pi / 2, alpha=0.8, beta=0.6)
    base.update(kw)
    return params(**base)


def test_bound_chain_dephased_engine_region():
    spec = build_qubit_spec(engine_point())
    b = bounds_report(spec, Mode.DEPHASED)
    assert b.rf_w >= b.rf_qm - 1e-10
    assert b.rf_qm >= b.rf_qc - 1e-10
    assert b.rf_qc >= b.tur_bound - 1e-10
    assert b.rf_qc >= b.appc_bound - 1e-10
    assert b.eff_sq <= b.var_ratio + 1e-12
    assert b.var_ratio < 1.0
    assert b.r_w <= b.r_qm + 1e-10 <= 1.0 + 1e-10


def test_bounds_thm2_gap_closed_matches_enumeration():
    rng = np.random.default_rng(35)
    for _ in range(40):
        p = replace(random_qubit_params(rng, betas=(0.3, 1.0, 5.0)), phi=0.0)
        spec = build_qubit_spec(p)
        for mode in Mode:
            rep = cumulant_report(spec, mode)
            b = bounds_report(spec, mode)
            assert abs(b.thm2_gap - (rep.var_qm.real - rep.var_w.real)) < 1e-10


def test_bounds_kd_discriminant_and_equal_rfs_at_origin_angles():
    spec = build_qubit_spec(params(delta=0.3, phi=0.0, chi=0.0, alpha=2.0,
                                   beta=2.0))
    b = bounds_report(spec, Mode.UNDEPHASED)
    assert abs(b.kd_discriminant) < 1e-10
    assert abs(b.rf_w - b.rf_qm) < 1e-9
    assert abs(b.rf_w - b.rf_qc) < 1e-9


def test_bounds_absent_fields_when_degenerate():
    spec = build_qubit_spec(params(beta=0.0, delta=0.2))
    b = bounds_report(spec, Mode.DEPHASED)
    assert b.rf_w is None and b.rf_qm is None and b.rf_qc is None
    assert b.tur_bound is None and b.appc_bound is None
    spec = build_qubit_spec(params(beta=math.inf, delta=0.1,
                                   chi=math.pi / 2, alpha=1.0))
    b = bounds_report(spec, Mode.DEPHASED)
    assert b.tur_bound == -1.0  # entropy production diverges


def test_theorem1_region_sample():
    rng = np.random.default_rng(36)
    checked = 0
    while checked < 60:
        p = random_qubit_params(rng, betas=(0.3, 0.6, 1.0, 5.0, math.inf))
        if p.nu2 < p.nu1:
            p = replace(p, nu1=p.nu2, nu2=p.nu1)
        spec = build_qubit_spec(p)
        rep = cumulant_report(spec, Mode.DEPHASED)
        if rep.regime is not Regime.ENGINE:
            continue
        checked += 1
        b = bounds_report(spec, Mode.DEPHASED)
        assert b.r_w <= b.r_qm + 1e-10
        assert b.r_qm <= 1.0 + 1e-10


def test_theorem2_region_sample():
    rng = np.random.default_rng(37)
    checked = 0
    while checked < 60:
        p = replace(random_qubit_params(rng, betas=(0.3, 1.0, math.inf)),
                    phi=0.0)
        spec = build_qubit_spec(p)
        rep = cumulant_report(spec, Mode.UNDEPHASED)
        if rep.regime is not Regime.ENGINE:
            continue
        checked += 1
        assert rep.var_qm.real - rep.var_w.real >= -1e-10


# ---------------------------------------------------------------------------
# named-basis identities


def test_x_basis_work_frozen_value():
    p = params(delta=0.25, phi=0.7, alpha=math.pi / 2, chi=0.0)
    comp = basis_comparisons(p)
    expected = -0.75 * math.tanh(0.6)
    assert comp.x_basis_w == pytest.approx(expected, abs=1e-12)
    spec = build_qubit_spec(p)
    for mode in Mode:
        assert cumulant_report(spec, mode).avg_w == pytest.approx(
            expected, abs=1e-10)


def test_y_basis_gap_and_phi_zero_agreement():
    p = params(delta=0.3, phi=0.0, alpha=math.pi / 2, chi=math.pi / 2)
    spec = build_qubit_spec(p)
    ru = cumulant_report(spec, Mode.UNDEPHASED)
    rd = cumulant_report(spec, Mode.DEPHASED)
    assert abs(ru.avg_w - rd.avg_w) < 1e-10  # no gap at phi = 0
    p = replace(p, phi=1.1)
    comp = basis_comparisons(p)
    spec = build_qubit_spec(p)
    ru = cumulant_report(spec, Mode.UNDEPHASED)
    rd = cumulant_report(spec, Mode.DEPHASED)
    assert comp.y_basis_gap == pytest.approx(ru.avg_w - rd.avg_w, abs=1e-10)
    assert comp.y_basis_w == pytest.approx(ru.avg_w, abs=1e-10)


def test_z_basis_gap_matches_enumeration():
    p = params(delta=0.3, phi=0.8, alpha=0.0, chi=1.7)
    comp = basis_comparisons(p)
    spec = build_qubit_spec(p)
    ru = cumulant_report(spec, Mode.UNDEPHASED)
    rd = cumulant_report(spec, Mode.DEPHASED)
    assert comp.z_basis_gap == pytest.approx(ru.avg_w - rd.avg_w, abs=1e-10)
    assert comp.z_basis_w == pytest.approx(ru.avg_w, abs=1e-10)


def test_yz_plane_ordering_and_shared_heat():
    p = params(delta=0.3, phi=0.4, alpha=1.0, chi=math.pi / 2)
    comp = basis_comparisons(p)
    assert comp.z_basis_w >= comp.yz_plane_w - 1e-12
    assert comp.yz_plane_w >= comp.y_basis_w - 1e-12
    spec = build_qubit_spec(p)
    ru = cumulant_report(spec, Mode.UNDEPHASED)
    assert comp.yz_plane_w == pytest.approx(ru.avg_w, abs=1e-10)
    assert comp.yz_plane_qm == pytest.approx(ru.avg_qm, abs=1e-10)
    # heat absorbed is the same everywhere in the yz plane
    for alpha in (0.0, 0.7, 1.9, math.pi):
        s = build_qubit_spec(replace(p, alpha=alpha))
        assert cumulant_report(s, Mode.UNDEPHASED).avg_qm == pytest.approx(
            comp.yz_plane_qm, abs=1e-10)


# ---------------------------------------------------------------------------
# occupations and efficiency bounds


def test_occupation_probs_limits():
    p = params(delta=0.5, beta=1.2)
    occ = occupation_probs(p, Mode.DEPHASED)
    assert occ.p_eb == pytest.approx(0.5, abs=1e-12)
    p = params(delta=0.3, beta=0.0)
    for mode in Mode:
        occ = occupation_probs(p, mode)
        assert occ.p_eb == pytest.approx(0.5, abs=1e-12)
        assert occ.p_ec == pytest.approx(0.5, abs=1e-12)


def test_occupation_probs_monitored_ceiling():
    # strong flips with theta = 0.3 at low temperature: no heat absorbed
    alpha = math.acos(math.sqrt(0.6))
    p = params(delta=0.6, alpha=alpha, chi=0.0, beta=8.0)
    occ = occupation_probs(p, Mode.DEPHASED)
    assert occ.p_eb >= 0.5
    assert occ.p_ec <= occ.p_eb + 1e-12
    for mode in Mode:
        o = occupation_probs(p, mode)
        assert 0.0 <= o.p_eb <= 1.0 and 0.0 <= o.p_ec <= 1.0


def test_occupation_probs_match_average_energies():
    rng = np.random.default_rng(38)
    for _ in range(10):
        p = random_qubit_params(rng)
        spec = build_qubit_spec(p)
        for mode in Mode:
            occ = occupation_probs(p, mode)
            rep = cumulant_report(spec, mode)
            assert occ.p_eb == pytest.approx(
                (rep.avg_e[1] / p.nu2 + 1) / 2, abs=1e-10)
            assert occ.p_ec == pytest.approx(
                (rep.avg_e[2] / p.nu2 + 1) / 2, abs=1e-10)


def test_efficiency_bounds():
    tp = synthetic_tp(zeta_sup_c=0.0, theta_c=0.5, delta_p=0.2)
    eb = efficiency_bounds(tp, 1.0, 2.0, 0.8)
    assert eb.eff == pytest.approx(1.0)
    tp = synthetic_tp(zeta_sup_c=0.1, theta_c=0.5, delta_p=0.2)
    eb = efficiency_bounds(tp, 1.5, 1.5, 0.8)
    assert eb.eff == pytest.approx(eb.eff_lower)
    with pytest.raises(DivisionDegenerate):
        efficiency_bounds(synthetic_tp(theta_c=0.2, delta_p=0.2), 1.0, 2.0, 0.8)


def test_efficiency_bounds_hold_in_engine_region():
    rng = np.random.default_rng(39)
    checked = 0
    while checked < 40:
        p = replace(random_qubit_params(rng, betas=(0.3, 1.0, 5.0)), phi=0.0)
        if p.nu2 < p.nu1:
            p = replace(p, nu1=p.nu2, nu2=p.nu1)
        spec = build_qubit_spec(p)
        rep = cumulant_report(spec, Mode.UNDEPHASED)
        if rep.regime is not Regime.ENGINE:
            continue
        checked += 1
        tp = transition_probs(spec)
        eb = efficiency_bounds(tp, p.nu1, p.nu2, p.beta)
        assert eb.eff == pytest.approx(rep.efficiency, abs=1e-10)
        assert eb.eff <= 1.0 + 1e-12
        assert eb.eff >= eb.eff_lower - 1e-12
        assert rep.avg_w >= eb.w_lower - 1e-10


def test_otto_ceiling_dephased():
    rng = np.random.default_rng(40)
    checked = 0
    while checked < 40:
        p = random_qubit_params(rng, betas=(0.3, 0.6, 1.0, 5.0, math.inf))
        if p.nu2 < p.nu1:
            p = replace(p, nu1=p.nu2, nu2=p.nu1)
        spec = build_qubit_spec(p)
        rep = cumulant_report(spec, Mode.DEPHASED)
        if rep.regime is not Regime.ENGINE:
            continue
        checked += 1
        assert rep.efficiency <= 1.0 - p.nu1 / p.nu2 + 1e-10


# ---------------------------------------------------------------------------
# symmetries


def test_channel_symmetry_alpha_chi():
    rng = np.random.default_rng(41)
    for _ in range(6):
        p = random_qubit_params(rng)
        q = replace(p, alpha=math.pi - p.alpha,
                    chi=(p.chi + math.pi) % (2 * math.pi))
        for mode in Mode:
            r1 = cumulant_report(build_qubit_spec(p), mode)
            r2 = cumulant_report(build_qubit_spec(q), mode)
            assert abs(r1.avg_w - r2.avg_w) < 1e-10
            assert abs(r1.var_w - r2.var_w) < 1e-10
            assert abs(r1.var_qc - r2.var_qc) < 1e-10


def test_delta0_modes_agree():
    rng = np.random.default_rng(42)
    for _ in range(10):
        p = replace(random_qubit_params(rng), delta=0.0)
        spec = build_qubit_spec(p)
        rd = cumulant_report(spec, Mode.DEPHASED)
        ru = cumulant_report(spec, Mode.UNDEPHASED)
        assert abs(rd.avg_w - ru.avg_w) < 1e-10
        assert abs(rd.var_w - ru.var_w) < 1e-10
        assert abs(rd.var_qm - ru.var_qm) < 1e-10
        assert abs(rd.var_qc - ru.var_qc) < 1e-10


def test_dephased_phi_invariance_full_reports():
    base = params(delta=0.44, alpha=2.2, chi=5.1, beta=1.7)
    ref = cumulant_report(build_qubit_spec(base), Mode.DEPHASED)
    for phi in (math.pi / 5, math.pi / 2, 1.1 * math.pi):
        rep = cumulant_report(build_qubit_spec(replace(base, phi=phi)),
                              Mode.DEPHASED)
        assert abs(ref.avg_w - rep.avg_w) < 1e-12
        assert abs(ref.var_w - rep.var_w) < 1e-12
        assert np.max(np.abs(ref.cov - rep.cov)) < 1e-12
